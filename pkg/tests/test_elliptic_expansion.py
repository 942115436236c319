import cmath
import math
import random

import pytest
import sympy

from dp3asym import reference as R
from dp3asym.cas_kernel import get_space
from dp3asym.elliptic_expansion import (EllipticNumeric, branch_from_q, branches_from_Aphi,
                                        c1_coefficient_formula, check_b2_support,
                                        leading_term_elliptic, resonant_slot,
                                        solve_boutroux_constraints, weierstrass_bridge)
from dp3asym.errors import DegenerateModulus
from dp3asym.numerics import jacobi_eval
from dp3asym.verify import _a1, _b2, _fourier


def test_level_one_constant():
    A = _a1()
    sp = A.ctx.space
    assert A.generators[1][0] == sp.parse("8*p**2*(q**3 - 1)/(3*P**2*k2*q)")
    assert A.generators[1][0].subs({"q": sp.one()}).is_zero()


def test_occupancy_rule():
    A = _a1()
    for k in range(2, 5):
        assert (A.free_constants[k] is None) == (k % 3 == 1)
        assert (resonant_slot(k) is not None) == (k % 3 != 1)


def test_degenerate_modulus_at_unit_cube():
    sp = get_space(("q", "s"))
    q = sp.sym("q")
    assert (8 * q ** 3 + 1).subs({"q": sp.one()}) == 9
    for q0 in (1, 0):
        with pytest.raises(DegenerateModulus):
            branch_from_q(q0)


def test_symbolic_constraint_mode():
    out = solve_boutroux_constraints("symbolic-verify")
    assert all(v.is_zero() for v in out["defects"].values())
    assert out["kappa_relation"]


def test_branch_roundtrip_through_aphi():
    br = branch_from_q(0.8 + 0.3j)
    aphi = 2 ** (2 / 3) * (2 * br.q ** 3 + 1) / br.q ** 2
    qs = [b.q for b in branches_from_Aphi(aphi)]
    assert min(abs(q - br.q) for q in qs) < 1e-12
    assert abs(br.k2 - (br.s - 1) * (br.s + 3) / ((br.s + 1) * (br.s - 3))) < 1e-14


def test_b2_support_and_mirror():
    B = _b2(2)
    check_b2_support(B)
    m = B.mirror()
    for e, v in B.generators[1].items():
        assert m.coefficient(1, e) == v


def test_bottom_coefficient_level_two():
    B = _b2(2)
    big = B.ctx.space.extend("y")
    want = R.fe(big, R.B2_ELLIPTIC[2]) * big.sym("y") ** 2
    assert want.subs({"y": big.zero()}) == B.bottom(2).to_space(big)
    assert not B.bottom(2).is_zero()


def test_fourier_examples():
    F, _ = _fourier()
    s = sympy.Symbol("s")
    assert F.Q[2].as_expr() == 6
    assert sympy.Poly(F.Q[4], s).LC() == 2 ** 4 * 3 * 1241
    for k, v in F.b.items():
        free = v.subs({"c1": v.space.zero()})
        assert "c1" not in free.free_symbols()
    for k in range(2, 8):
        assert sympy.cancel(F.c1_part[k].to_sympy() - c1_coefficient_formula(k)) == 0


def test_bridge_identities():
    W = weierstrass_bridge()
    assert all(W.checks().values())
    sp = W.space
    want = sp.parse("-q*(s - 3)*t**2/(6*(s - 1))")
    assert W.reduce(W.mu2 - want).is_zero()


def test_trigonometric_limit():
    for u in (0.3, 1 + 0.5j, -2.0, 4 - 0.2j):
        J = jacobi_eval(u, 0)
        assert abs(J.sn - cmath.sin(u)) < 1e-14 and abs(J.dn - 1) < 1e-14


def test_two_routes_agree():
    rng = random.Random(11)
    ctx = EllipticNumeric(branch_from_q(0.8 + 0.3j), math.pi / 5, 0.3 + 0.1j)
    taus = [cmath.rect(rng.uniform(20, 200), math.pi / 5) for _ in range(20)]
    a, fa = leading_term_elliptic(ctx, taus, route="sn")
    b, fb = leading_term_elliptic(ctx, taus, route="xy")
    for x, y, f in zip(a, b, fa):
        if not f:
            assert abs(x - y) <= 1e-8 * max(1.0, abs(x))

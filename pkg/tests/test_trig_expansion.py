import pytest
import sympy

from dp3asym import reference as R
from dp3asym.cas_kernel import get_space
from dp3asym.errors import InvalidIndex
from dp3asym.series_oracle import TrigParams, oracle_trig_coeffs
from dp3asym.trig_expansion import (TrigContext, coefficient_formula, compute_B_infty,
                                    convert, diagonal_table, kappa_validity, symmetry_transform)
from dp3asym.verify import _a_route_default, _b_truncated, _doubly_truncated, _trig_oracle


@pytest.fixture(scope="module")
def A():
    return _a_route_default()


def test_parity_certificate(A):
    assert A.parity_certificate


def test_level_zero_diagonal(A):
    b = A.ctx.b1m1
    for n in range(1, 6):
        assert A.coefficient(n, -n) == n * b ** n / 6 ** (n - 1)


def test_a40_vanishes(A):
    assert A.coefficient(4, 0).is_zero()


def test_closed_form_matches_taylor(A):
    for k in (2, 4):
        tab = diagonal_table(A, k)
        for n in range(tab.valid_from, tab.valid_from + 4):
            assert tab.value(n) == A.coefficient(n, k - n)
        with pytest.raises(InvalidIndex):
            tab.value(tab.valid_from - 1)


def test_family_formula_against_oracle(A):
    grid = _trig_oracle(8).grid
    for fam, lvl in (("diag-2", 2), ("diag-4", 4)):
        for n in (7, 8):
            assert coefficient_formula(fam, n, A=A) == grid[(n, lvl - n)].to_space(A.ctx.space)


def test_coefficient_beyond_levels(A):
    with pytest.raises(InvalidIndex):
        A.coefficient(9, 9)


def test_b2_and_b4():
    data, _ = _doubly_truncated()
    sp = data.ctx.space
    assert data.b2n[0] == sp.parse("-I*alpha/2")
    assert data.b2n[1].is_zero()


def test_alpha_zero_kills_series():
    data, _ = _doubly_truncated()
    assert all(b.subs({"alpha": data.ctx.space.zero()}).is_zero() for b in data.b2n)


def test_two_term_solutions():
    """At alpha^2 = 12 every b_2n with n >= 2 vanishes."""
    data, _ = _doubly_truncated()
    al = sympy.Symbol("alpha")
    for b in data.b2n[1:]:
        assert sympy.rem(sympy.expand(b.to_sympy()), al ** 2 - 12, al) == 0


def test_mu5_literal():
    sp = get_space(("alpha",))
    assert sp.parse(R.MU[5]) == sp.parse("9*alpha**6 + 108*alpha**5 + 387*alpha**4 + 216*alpha**3"
                                         " - 645*alpha**2 + 300*alpha - 125/3")


def test_symmetry_involution(A):
    g = A.generators[2]
    assert symmetry_transform(symmetry_transform(g)).to_space(g.space) == g


def test_grid_symmetry_invariance():
    run = oracle_trig_coeffs(4, TrigParams.generic_b())
    t = symmetry_transform(run.grid)
    assert all((t[k].to_space(v.space) - v).is_zero() for k, v in run.grid.items())


def test_symmetry_maps_diagonals():
    run = oracle_trig_coeffs(4, TrigParams.generic_b())
    sp = run.grid[(1, 1)].space
    b11 = sp.sym("b11")
    for n in range(1, 5):
        assert run.grid[(n, n)] == n * b11 ** n / 6 ** (n - 1)


def test_truncated_consistency():
    """General B polynomials at b11 = kappa = 0 reproduce the truncated table."""
    bp, _ = _b_truncated(7)
    gen = compute_B_infty(5, TrigContext.generic_b())
    sp = bp.base.space
    for n in range(6):
        coeffs = gen.poly(n)
        sub = [c.subs({"b11": c.space.zero()}).to_space(sp) for c in coeffs]
        want = bp.poly(n)
        size = max(len(sub), len(want))
        sub += [sp.zero()] * (size - len(sub))
        want += [sp.zero()] * (size - len(want))
        assert all((u - v).is_zero() for u, v in zip(sub, want))


def test_degree_pattern():
    bp, _ = _b_truncated(13)
    assert [bp.degree(n) for n in range(14)] == [0, 0, 2, 2, 2, 4, 6, 6, 8, 8, 10, 10, 12, 12]


def test_convert_roundtrip():
    g, gb = TrigContext.generic(), TrigContext.generic_b()
    e = g.space.parse("alpha*kappa + b1m1**2")
    assert convert(convert(e, g, gb), gb, g) == e


@pytest.mark.parametrize("kappa,expect", [(0.25, (True, True)), (1.2, (True, False)),
                                          (-2, (False, False))])
def test_kappa_validity(kappa, expect):
    v = kappa_validity(kappa)
    assert (v["A_tilde_asymptotic"], v["leading_visible"]) == expect


def test_kappa_boundary_marginal():
    assert kappa_validity(1.0)["leading_visible"] == "marginal"

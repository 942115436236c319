import pytest

from dp3asym import reference as R
from dp3asym.cas_kernel import taylor_coefficients
from dp3asym.log_expansion import (LogContext, closed_form_level, compute_log_B,
                                   extract_log_coefficients, particular_A1, pole_order)
from dp3asym.series_oracle import oracle_log_coeffs
from dp3asym.verify import _log_a, _log_b, _log_oracle


@pytest.fixture(scope="module")
def A():
    return _log_a()


@pytest.fixture(scope="module")
def oracle():
    return oracle_log_coeffs(3, 4)


def test_level_zero(A):
    assert A.generators[0] == R.rf(A.ctx.space, "x", R.A0_LOG)


def test_pole_orders(A):
    assert [pole_order(A, k) for k in (0, 1)] == [2, 3]


def test_particular_part_plus_homogeneous(A):
    ctx = A.ctx
    rest = A.generators[1] - particular_A1(ctx)
    want = R.rf(ctx.space, "x", "C1*x**2*(C*x**2 - 4)/(C*x**2 + 4)**3", C1=R.C1_LOG)
    cv = {"C": ctx.c_value()}
    assert (rest.subs(cv) - want.subs(cv)).is_zero()


def test_sum_rules(A):
    cf = closed_form_level(A, 1)
    xi = cf.table
    sp = A.ctx.space
    assert (xi[(1, 0)] + xi[(2, 0)] + xi[(3, 0)]).is_zero()
    assert cf.poly_part[1] + xi[(1, 1)] + xi[(2, 1)] + xi[(3, 1)] == sp.parse("a*b/2")


def test_closed_form_coefficients_match_taylor(A):
    cf = closed_form_level(A, 1)
    t = taylor_coefficients(A.generators[1], 9).coeffs
    for n in range(9):
        assert cf.coefficient(n) == t[n]


def test_oracle_examples(oracle):
    g = oracle.grid
    sp = g[(1, 0)].space
    assert g[(3, -2)] == sp.parse("-b**2*(a**2 + 1)/4")
    assert g[(1, 0)] == sp.parse("a*b/2")
    assert g[(-1, 1)].is_zero()
    assert g[(3, -1)] == sp.parse("-b**2*((a**2 + 1)*ct - a**2 - 1/2)")


def test_a_and_b_routes_agree(A, oracle):
    ctx = LogContext()
    lo = ctx.specialize
    for key, v in extract_log_coefficients(A, 1, 4).items():
        if key in oracle.grid:
            assert lo(v) == oracle.grid[key].to_space(lo(v).space)
    B = compute_log_B(2)
    for k in range(3):
        for key, v in extract_log_coefficients(B, k, 6).items():
            if key in oracle.grid:
                assert v == oracle.grid[key].to_space(v.space)


def test_b0_leading_terms():
    g = _log_b().generators[0]
    t = taylor_coefficients(g, 4).coeffs
    sp = g.space
    assert t[0].is_zero() and t[1].is_zero()
    assert t[2] == sp.parse("-1/4") and t[3] == sp.sym("ct")


def test_b0_differs_from_literal_closed_form_by_quarter():
    g = _log_b().generators[0]
    lit = R.rf(g.space, "y", R.B0_LOG)
    assert not (g - lit).is_zero()
    assert (g * 4 - lit).is_zero()


def test_c_specialization():
    ctx = LogContext()
    e = ctx.space.parse("C + b**2*(a**2 + 1)/4")
    assert ctx.specialize(e).is_zero()


def test_growth_law():
    """ct[4l+1, -2l] / (-C/4)^l is quadratic in l: third differences vanish."""
    ctx = LogContext()
    g = _log_oracle().grid
    sp = g[(5, -2)].space
    C = ctx.specialize(ctx.C).to_space(sp)
    r = [g[(4 * l + 1, -2 * l)] / (-C / 4) ** l for l in range(1, 5)]
    d1 = [y - x for x, y in zip(r, r[1:])]
    d2 = [y - x for x, y in zip(d1, d1[1:])]
    assert not d2[0].is_zero() or not d1[0].is_zero()
    assert (d2[1] - d2[0]).is_zero()

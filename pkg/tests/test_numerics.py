import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dp3asym.elliptic_expansion import EllipticNumeric, branch_from_q
from dp3asym.errors import ConfigError, IncompatibleMap, PoleProximity
from dp3asym.numerics import (DP3Params, PathSpec, bind_truncated, dp3_residual, elliptic_residual,
                              eval_series, integrate_dp3, jacobi_eval, jacobi_series, prefactor,
                              track_sqrt)
from dp3asym.verify import _doubly_truncated, check_integrator_order, check_series_ode

moduli = st.builds(lambda r, t: cmath.rect(0.9 * r, t), st.floats(0, 1), st.floats(-math.pi, math.pi))
args = st.builds(lambda r, t: cmath.rect(5 * r, t), st.floats(0, 1), st.floats(-math.pi, math.pi))


def test_jacobi_at_zero():
    J = jacobi_eval(0, 0.5 + 0.2j)
    assert (J.sn, J.cn, J.dn) == (0, 1, 1)


@given(args, moduli)
def test_jacobi_identities(u, m):
    J = jacobi_eval(u, m)
    assert max(J.identity_defects()) < 1e-12


@given(args, moduli)
def test_jacobi_two_routes(u, m):
    J, S = jacobi_eval(u, m), jacobi_series(u, m)
    for x, y in ((J.sn, S.sn), (J.cn, S.cn), (J.dn, S.dn)):
        assert abs(x - y) <= 1e-10 * max(1.0, abs(x))


def test_track_sqrt_continuity():
    vals = [cmath.exp(1j * t) for t in np.linspace(0, 4 * math.pi, 200)]
    roots = track_sqrt(vals)
    assert all(abs(b - a) < 0.1 for a, b in zip(roots, roots[1:]))
    assert abs(roots[-1] - 1) < 1e-12


def test_power_solution_residual_is_zero():
    prm = DP3Params(a=0)
    for tau in (1.0, 7.5, 30 + 4j):
        u = prefactor(tau, prm)
        assert abs(dp3_residual(tau, u, u / (3 * tau), -2 * u / (9 * tau * tau), prm)) < 1e-12


def test_power_solution_one_decade():
    prm = DP3Params(a=0)
    f = lambda t: prefactor(t, prm)
    path = PathSpec(0.0, 1.0, 10.0, 50)
    sol = integrate_dp3(prm, (1 + 0j, f(1.0), f(1.0) / 3), path)
    assert max(abs(sol(r)[0] - f(r)) / abs(f(r)) for r in path.radii()) < 1e-10


def test_reverse_integration_returns():
    data, _ = _doubly_truncated()
    prm = DP3Params(a=1)
    ser = bind_truncated(data.b2n, 1, prm)
    u0, du0 = ser.value(5, 50.0), ser.derivative(5, 50.0)
    fwd = integrate_dp3(prm, (50 + 0j, u0, du0), PathSpec(0.0, 50.0, 20.0, 10), rtol=1e-13, atol=1e-16)
    u1, du1 = fwd(20.0)
    back = integrate_dp3(prm, (20 + 0j, u1, du1), PathSpec(0.0, 20.0, 50.0, 10), rtol=1e-13, atol=1e-16)
    assert abs(back(50.0)[0] - u0) < 1e-10 * abs(u0)


def test_series_is_prefactor_at_a_zero():
    data, _ = _doubly_truncated()
    prm = DP3Params(a=0)
    ser = bind_truncated(data.b2n, 0, prm)
    assert ser.nonzero_terms() == []
    assert ser.value(0, 12.0) == prefactor(12.0, prm)


def test_next_term_heuristic():
    data, _ = _doubly_truncated()
    prm = DP3Params(a=1)
    ser = bind_truncated(data.b2n, 1, prm)
    diff = abs(ser.value(6, 20.0) - ser.value(5, 20.0))
    b12 = abs(prefactor(20.0, prm) * ser.term(6, 20.0))
    assert b12 / 3 <= diff <= 3 * b12


def test_integrator_order():
    ok, detail = check_integrator_order()
    assert ok, detail


def test_series_ode_consistency():
    ok, detail = check_series_ode()
    assert ok, detail


def test_path_validation():
    with pytest.raises(ConfigError):
        PathSpec(0.0, -1.0, 10.0)
    with pytest.raises(ConfigError):
        PathSpec(0.0, 1.0, 10.0, samples=1)
    with pytest.raises(ConfigError):
        DP3Params(eps=2)


def test_initial_point_must_start_path():
    prm = DP3Params(a=0)
    with pytest.raises(ConfigError):
        integrate_dp3(prm, (2 + 0j, 1, 1), PathSpec(0.0, 1.0, 10.0))


def test_pole_proximity_reported():
    prm = DP3Params(a=0)
    with pytest.raises(PoleProximity):
        integrate_dp3(prm, (1 + 0j, 1e-3, -50.0), PathSpec(0.0, 1.0, 10.0), band=(1e-4, 1e4))


def test_incompatible_map():
    data, _ = _doubly_truncated()
    ser = bind_truncated(data.b2n, 1)
    with pytest.raises(IncompatibleMap):
        eval_series(ser, "elliptic-hat", 10.0, 2)
    assert eval_series(ser, "xy-infty", 10.0, 2) == ser.value(2, 10.0)


def test_elliptic_residual_excludes_poles():
    ctx = EllipticNumeric(branch_from_q(0.8 + 0.3j), math.pi / 5, 0.3 + 0.1j)
    vals = [elliptic_residual(ctx, cmath.rect(r, math.pi / 5), pole_radius=0.5) for r in np.linspace(100, 110, 200)]
    assert any(v is None for v in vals) and any(v is not None for v in vals)

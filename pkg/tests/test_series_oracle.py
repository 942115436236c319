import dataclasses

import pytest

from dp3asym.series_oracle import (TrigParams, oracle_log_coeffs, oracle_trig_coeffs,
                                   residual_check)
from dp3asym.serialization import dumps
from dp3asym.verify import _trig_oracle


@pytest.fixture(scope="module")
def run():
    return _trig_oracle(5)


def test_level_two_examples(run):
    g = run.grid
    sp = g[(2, 0)].space
    assert g[(2, 0)] == sp.parse("-I*(alpha + 12*kappa)/2")
    assert g[(2, 1)].is_zero() and g[(2, -1)].is_zero()


def test_offsets_fill_the_band(run):
    for n in range(1, 6):
        assert {j for (k, j) in run.grid if k == n} == set(range(-n, n + 1))


def test_residual_order(run):
    assert run.residual_order > 5
    assert residual_check("trig", run.grid, 5) == 6


@pytest.mark.parametrize("key", [(2, 0), (3, 1), (4, -2)])
def test_mutation_detected(run, key):
    bad = dict(run.grid)
    bad[key] = bad[key] + 1
    # an entry is pinned at its own level or the next one
    assert key[0] <= residual_check("trig", bad, 5) <= key[0] + 1


def test_constant_solution_has_zero_residual():
    prm = TrigParams.doubly_truncated()
    prm0 = dataclasses.replace(prm, alpha=prm.space.zero())
    g = oracle_trig_coeffs(4, prm0).grid
    assert g[(0, 0)] == prm.space.one()
    assert all(v.is_zero() for k, v in g.items() if k != (0, 0))
    assert residual_check("trig", g, 4, prm0) == 5


def test_deterministic_bytes():
    a = dumps("oracle/trig", oracle_trig_coeffs(3).grid)
    b = dumps("oracle/trig", oracle_trig_coeffs(3).grid)
    assert a == b


def test_log_examples():
    g = oracle_log_coeffs(2, 4).grid
    sp = g[(1, 0)].space
    assert g[(3, -2)] == sp.parse("-b**2*(a**2 + 1)/4")
    assert g[(1, 0)] == sp.parse("a*b/2")
    assert residual_check("log", g, 2) == 3


@pytest.mark.parametrize("key,level", [((1, 1), 1), ((3, 0), 2)])
def test_log_mutation_detected(key, level):
    g = dict(oracle_log_coeffs(2, 4).grid)
    g[key] = g[key] + 1
    assert residual_check("log", g, 2) == level


def test_log_truncated_levels_are_checked_only_where_complete():
    g = oracle_log_coeffs(2, 4).grid
    assert residual_check("log", g, 1) == 2
    short = {k: v for k, v in g.items() if k[0] < 3}
    assert residual_check("log", short, 2) == 2


def test_oracle_is_independent_of_generators():
    import dp3asym.series_oracle as so
    src = open(so.__file__).read()
    assert "trig_expansion" not in src and "log_expansion" not in src and "elliptic_expansion" not in src


def test_unknown_residual_kind():
    with pytest.raises(ValueError):
        residual_check("nope", {}, 1)

"""Numeric evaluation of truncated expansions through their variable maps."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ..cas_kernel.field import evaluate_float
from ..errors import IncompatibleMap
from .integrate import DP3Params


def prefactor(tau, prm: DP3Params):
    """eps (eps b)^(2/3) / 2 * tau^(1/3), principal branches."""
    eb = complex(prm.eps * prm.b)
    return prm.eps * eb ** (2 / 3) / 2 * complex(tau) ** (1 / 3)


def Theta(prm: DP3Params):
    return 3 ** 0.75 * complex(prm.eps * prm.b) ** (1 / 6)


def alpha_of(a):
    return 2j * math.sqrt(3) * a


@dataclass
class TruncatedSeries:
    """1 + sum b_2n Theta^(-2n) tau^(-2n/3)."""
    b2n: list
    params: DP3Params

    kind = "trig-truncated"

    def nonzero_terms(self):
        return [(n, c) for n, c in enumerate(self.b2n, start=1) if abs(c) > 0]

    def term(self, idx, tau):
        """idx-th nonzero correction (1-based) without the prefactor."""
        terms = self.nonzero_terms()
        if idx > len(terms):
            raise IndexError("not enough nonzero coefficients")
        n, c = terms[idx - 1]
        return c * (Theta(self.params) ** 2 * complex(tau) ** (2 / 3)) ** (-n)

    def partial(self, N, tau):
        return 1 + sum(self.term(i, tau) for i in range(1, N + 1))

    def value(self, N, tau):
        return prefactor(tau, self.params) * self.partial(N, tau)

    def derivative(self, N, tau):
        """d/dtau of value(N, tau); the n-th term scales as tau^(1/3 - 2n/3)."""
        tau = complex(tau)
        acc = 1 / 3
        for i, (n, _) in enumerate(self.nonzero_terms()[:N], start=1):
            acc += (1 / 3 - 2 * n / 3) * self.term(i, tau)
        return prefactor(tau, self.params) * acc / tau


def bind_truncated(b2n_exact, a, params: DP3Params = None) -> TruncatedSeries:
    params = params or DP3Params(a=a)
    al = alpha_of(a)
    return TruncatedSeries([evaluate_float(c, {"alpha": al}) for c in b2n_exact], params)


@dataclass
class TrigGridSeries:
    """1 + sum_n s^n sum_j at[n, j] w^j, s = tau^(-1/3)/Theta, w = tau^(2 kappa/3) e^(i Theta^2 tau^(2/3))."""
    grid: dict
    kappa: complex
    params: DP3Params

    kind = "trig"

    def value(self, N, tau):
        Th = Theta(self.params)
        tau = complex(tau)
        s = tau ** (-1 / 3) / Th
        w = tau ** (2 * self.kappa / 3) * cmath.exp(1j * Th ** 2 * tau ** (2 / 3))
        acc = 1 + 0j
        for (n, j), c in self.grid.items():
            if 1 <= n <= N:
                acc += c * s ** n * w ** j
        return prefactor(tau, self.params) * acc


_MAPS = {
    "trig-truncated": {"xy-infty"},
    "trig": {"xy-infty"},
    "elliptic": {"elliptic-xy", "elliptic-hat"},
}


def eval_series(expansion, variable_map: str, tau, truncation: int):
    kind = getattr(expansion, "kind", None)
    if variable_map not in _MAPS.get(kind, ()):
        raise IncompatibleMap(f"map {variable_map!r} does not apply to a {kind!r} expansion")
    if kind == "elliptic":
        from ..elliptic_expansion import leading_term_elliptic
        route = "sn" if variable_map == "elliptic-xy" else "xy"
        vals, _ = leading_term_elliptic(expansion, [tau], route=route)
        return vals[0]
    return expansion.value(truncation, tau)

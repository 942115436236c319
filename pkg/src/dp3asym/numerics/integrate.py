"""Complex integration of u'' = u'^2/u - u'/tau + (-8 eps u^2 + 2ab)/tau + b^2/u
along a ray tau = rho e^(i phi), in the real variable t = rho^(2/3)."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import ConfigError, PoleProximity, StiffnessFailure


@dataclass(frozen=True)
class DP3Params:
    a: complex = 0
    b: float = 1.0
    eps: int = 1

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ConfigError("eps must be +1 or -1")
        if self.b == 0:
            raise ConfigError("b must be nonzero")


@dataclass(frozen=True)
class PathSpec:
    angle: float
    r_start: float
    r_end: float
    samples: int = 200
    exclusion_radius: float = 0.0

    def __post_init__(self):
        if self.r_start <= 0 or self.r_end <= 0:
            raise ConfigError("path radii must be positive")
        if self.samples < 2:
            raise ConfigError("need at least two samples")
        if self.exclusion_radius < 0:
            raise ConfigError("exclusion radius must be nonnegative")

    def tau(self, rho):
        return rho * cmath.exp(1j * self.angle)

    def radii(self):
        return np.linspace(self.r_start, self.r_end, self.samples)


def dp3_rhs(tau, u, v, prm: DP3Params):
    return v * v / u - v / tau + (-8 * prm.eps * u * u + 2 * prm.a * prm.b) / tau + prm.b ** 2 / u


def dp3_residual(tau, u, du, ddu, prm: DP3Params):
    return ddu - dp3_rhs(tau, u, du, prm)


@dataclass
class NumericSolution:
    path: PathSpec
    params: DP3Params
    nodes: np.ndarray
    values: np.ndarray
    derivs: np.ndarray
    error_estimates: np.ndarray = None
    events: list = field(default_factory=list)
    _dense: object = None

    def __call__(self, rho):
        """(u, u') at radius rho on the ray from the dense interpolant."""
        y = self._dense(rho ** (2 / 3))
        return complex(y[0]), complex(y[1])

    def derivative_mismatch(self, rhos, h=1e-4):
        """|d/dtau u_dense - u'_dense| / |u'| at off-node radii (dense-output consistency)."""
        e = cmath.exp(1j * self.path.angle)
        out = []
        for r in rhos:
            up, _ = self(r + h)
            um, _ = self(r - h)
            _, du = self(r)
            out.append(abs((up - um) / (2 * h * e) - du) / max(abs(du), 1e-300))
        return out


def integrate_dp3(params: DP3Params, initial, path: PathSpec, rtol=1e-12, atol=1e-14,
                  band=(1e-8, 1e8), estimate_error=False) -> NumericSolution:
    """initial = (tau0, u0, du0) with tau0 on the path start."""
    tau0, u0, du0 = initial
    if abs(tau0 - path.tau(path.r_start)) > 1e-9 * abs(tau0):
        raise ConfigError("initial point is not the start of the path")
    if u0 == 0:
        raise ConfigError("u0 must be nonzero")
    e = cmath.exp(1j * path.angle)
    lo, hi = band

    def f(t, y):
        rho = t ** 1.5
        tau = rho * e
        dtau = 1.5 * math.sqrt(t) * e
        u, v = y
        return [v * dtau, dp3_rhs(tau, u, v, params) * dtau]

    def ev_low(t, y):
        return abs(y[0]) - lo

    def ev_high(t, y):
        return hi - abs(y[0])

    ev_low.terminal = ev_high.terminal = True
    t0, t1 = path.r_start ** (2 / 3), path.r_end ** (2 / 3)
    radii = path.radii()
    sol = solve_ivp(f, (t0, t1), [complex(u0), complex(du0)], method="DOP853", rtol=rtol,
                    atol=atol, dense_output=True, events=[ev_low, ev_high], t_eval=radii ** (2 / 3))
    events = []
    if sol.status == 1:
        te = sol.t_events[0].tolist() + sol.t_events[1].tolist()
        where = te[0] ** 1.5 * e if te else None
        events.append(("pole-proximity", where))
        raise PoleProximity(where)
    if sol.status < 0:
        where = sol.t[-1] ** 1.5 * e if len(sol.t) else tau0
        raise StiffnessFailure(where, sol.message)
    nodes = radii * e
    err = None
    if estimate_error:
        coarse = solve_ivp(f, (t0, t1), [complex(u0), complex(du0)], method="DOP853",
                           rtol=rtol * 100, atol=atol * 100, t_eval=radii ** (2 / 3))
        err = np.abs(coarse.y[0] - sol.y[0])
    events.append(("steps", int(sol.nfev)))
    return NumericSolution(path, params, nodes, sol.y[0], sol.y[1], err, events, sol.sol)

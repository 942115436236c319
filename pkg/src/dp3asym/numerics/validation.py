"""Asymptotic-quality measurements: error decay against an integrated solution and
residual decay of the elliptic leading term."""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .integrate import DP3Params, dp3_rhs
from .jacobi import jacobi_eval


@dataclass
class DecayReport:
    orders: list
    errors: dict
    next_terms: dict
    factor: float
    monotone: bool = False
    within_factor: bool = False
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.monotone and self.within_factor

    def lines(self):
        out = []
        for N in self.orders:
            out.append(f"N={N}  err={self.errors[N]:.3e}  next={self.next_terms[N]:.3e}")
        return out


def asymptotic_validation(sol, series, orders, rhos=None, factor=10.0) -> DecayReport:
    """err(N) = max over rhos of |u_num - S_N|; next(N) = max of the (N+1)-th term
    times the prefactor.  PASS needs err strictly decreasing in N and
    next/factor <= err <= factor * next."""
    from .series_eval import prefactor
    if rhos is None:
        rhos = [abs(t) for t in sol.nodes]
    e = cmath.exp(1j * sol.path.angle)
    errs, nxt = {}, {}
    for N in orders:
        worst = worst_next = 0.0
        for r in rhos:
            tau = r * e
            u, _ = sol(r)
            worst = max(worst, abs(u - series.value(N, tau)))
            worst_next = max(worst_next, abs(prefactor(tau, series.params) * series.term(N + 1, tau)))
        errs[N], nxt[N] = worst, worst_next
    rep = DecayReport(list(orders), errs, nxt, factor)
    rep.monotone = all(errs[a] > errs[b] for a, b in zip(orders, orders[1:]))
    rep.within_factor = all(nxt[N] / factor <= errs[N] <= factor * nxt[N] for N in orders)
    return rep


def elliptic_derivatives(ctx, tau):
    """u, u', u'' of the elliptic leading term, from d sn/dz = cn dn etc."""
    br = ctx.branch
    m = br.k2
    Kc = br.q * (br.s - 3) / (br.s - 1)
    tau = complex(tau)
    r = ctx.r_of(tau)
    e = cmath.exp(-1j * ctx.phi0)
    z = ctx.vartheta(tau) / 2
    z1 = ctx.Theta ** 2 * ctx.P / 3 * r ** (-1 / 3) * e
    z2 = -ctx.Theta ** 2 * ctx.P / 9 * r ** (-4 / 3) * e * e
    J = jacobi_eval(z, m)
    sn, cn, dn = J.sn, J.cn, J.dn
    F = br.q - Kc / sn ** 2
    Fz = 2 * Kc * cn * dn / sn ** 3
    dcd = -sn * dn * dn - m * sn * cn * cn
    Fzz = 2 * Kc * (dcd / sn ** 3 - 3 * cn * cn * dn * dn / sn ** 4)
    C = ctx.eps * complex(ctx.eps * ctx.b) ** (2 / 3) / 2
    t13 = tau ** (1 / 3)
    u = C * t13 * F
    du = C * (t13 / (3 * tau) * F + t13 * Fz * z1)
    ddu = C * (-2 * t13 / (9 * tau * tau) * F + 2 * t13 / (3 * tau) * Fz * z1
               + t13 * (Fzz * z1 * z1 + Fz * z2))
    return u, du, ddu, sn


def elliptic_residual(ctx, tau, pole_radius=0.05):
    """|residual| / max |term| of the equation on the leading term, or None near an sn zero."""
    u, du, ddu, sn = elliptic_derivatives(ctx, tau)
    if abs(sn) < pole_radius:
        return None
    prm = DP3Params(a=0, b=ctx.b, eps=ctx.eps)
    tau = complex(tau)
    terms = [ddu, du * du / u, du / tau, 8 * ctx.eps * u * u / tau, ctx.b ** 2 / u]
    res = ddu - dp3_rhs(tau, u, du, prm)
    return abs(res) / max(abs(t) for t in terms)


def elliptic_residual_profile(ctx, radii, pole_radius=0.05):
    e = cmath.exp(1j * ctx.phi0)
    return [(r, elliptic_residual(ctx, r * e, pole_radius)) for r in radii]

"""Brute-force coefficient oracle: substitute the double series straight into

    u u'' = u'^2 - u u'/tau + (-8 eps u^3 + 2 a b u)/tau + b^2

and solve level by level.  Nothing here consumes generating-function output.

Trigonometric ansatz (large tau).  With delta = tau d/dtau the equation reads
u delta^2 u - (delta u)^2 = tau(-8 eps u^3 + 2ab u) + b^2 tau^2.  Put
u = eps (eps b)^(2/3)/2 tau^(1/3) V, s = tau^(-1/3)/Theta, Theta^4 = 27 (eps b)^(2/3),
w = tau^(2 kappa/3) exp(i Theta^2 tau^(2/3)) and V = 1 + sum at[k,j] s^k w^j with
at[k,j] = Theta^k a[k,j].  Then delta = (2/3) D' where
    D'(s^k w^j) = (-k/2 + j kappa) s^k w^j + i j s^(k-2) w^j,
and after clearing factors
    3 s^4 (V D'^2 V - (D'V)^2) + V^3 - 1 + (3 i alpha/2) s^2 V = 0,   alpha = 2 i sqrt(3) a.
The s^k coefficient is linear in at[k,j] with factor 3(1 - j^2); the j = +-1
components instead fix at[k-2,+-1] through a 2x2 affine system.

Logarithmic ansatz (small tau).  A = tau u, L = ln tau, z = 1/L and
A = sum_n tau^(2n) g_n(z), g_n = sum_m ct[2n-1, m] z^m.  With D = tau d/dtau:
    A D^2 A - (DA)^2 + 8 A^3 - 2ab tau^2 A - b^2 tau^4 = 0,
D(tau^(2n) g) = tau^(2n) (2n g + dg/dL) and dz^m/dL = -m z^(m+1).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cas_kernel.field import FieldElement, ParamSpace, get_space
from .cas_kernel.linalg import determinant, solve_affine
from .errors import OracleInconsistency

# ---------------------------------------------------------------------------
# Laurent polynomials as dicts exponent -> FieldElement


def _ladd(p, q, scale=None):
    out = dict(p)
    for k, v in q.items():
        if scale is not None:
            v = v * scale
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _lmul(p, q):
    out = {}
    for i, a in p.items():
        for j, b in q.items():
            t = a * b
            k = i + j
            out[k] = out[k] + t if k in out else t
    return {k: v for k, v in out.items() if not v.is_zero()}


def _lmap(p, fn):
    out = {}
    for k, v in p.items():
        c = fn(k)
        if not (isinstance(c, FieldElement) and c.is_zero()) and c != 0:
            out[k] = v * c
    return {k: v for k, v in out.items() if not v.is_zero()}


def _lsubs(p, mapping):
    out = {k: v.subs(mapping) for k, v in p.items()}
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------

@dataclass
class TrigParams:
    """Values (in `space`) substituted for alpha, kappa, b11 = at[1,1], b1m1 = at[1,-1]."""
    space: ParamSpace
    alpha: FieldElement
    kappa: FieldElement
    b11: FieldElement
    b1m1: FieldElement

    @classmethod
    def generic(cls):
        """Parameters (alpha, kappa, b1m1) with b11 = -3 i kappa / b1m1."""
        sp = get_space(("alpha", "kappa", "b1m1"))
        al, ka, bm = sp.syms("alpha", "kappa", "b1m1")
        return cls(sp, al, ka, -3 * sp.I * ka / bm, bm)

    @classmethod
    def generic_b(cls):
        """Parameters (alpha, b11, b1m1) with kappa = i b11 b1m1 / 3."""
        sp = get_space(("alpha", "b11", "b1m1"))
        al, b1, bm = sp.syms("alpha", "b11", "b1m1")
        return cls(sp, al, sp.I * b1 * bm / 3, b1, bm)

    @classmethod
    def truncated(cls):
        """kappa = 0, b11 = 0, free b1m1."""
        sp = get_space(("alpha", "b1m1"))
        al, bm = sp.syms("alpha", "b1m1")
        return cls(sp, al, sp.zero(), sp.zero(), bm)

    @classmethod
    def doubly_truncated(cls):
        sp = get_space(("alpha",))
        return cls(sp, sp.sym("alpha"), sp.zero(), sp.zero(), sp.zero())

    def constraint(self):
        return 3 * self.space.I * self.kappa + self.b11 * self.b1m1


@dataclass
class OracleRun:
    kind: str
    depth: int
    free_symbols: tuple
    grid: dict
    residual_order: int
    meta: dict = field(default_factory=dict)


def _pname(k, sign):
    return f"pend{k}{'p' if sign > 0 else 'm'}"


def trig_level_residual(V, k, prm: TrigParams):
    """Coefficient of s^k (as Laurent polynomial in w) of the trig equation for a
    level list V (V[0] == {0: 1}); levels beyond len(V)-1 are treated as zero."""
    sp = V[0][0].space
    kappa = prm.kappa.to_space(sp) if prm.kappa.space != sp else prm.kappa
    alpha = prm.alpha.to_space(sp) if prm.alpha.space != sp else prm.alpha
    I = sp.I

    def lvl(m):
        return V[m] if 0 <= m < len(V) else {}

    dcache = {}

    def dV(m):
        # (D'V) at level m = P_m V_m + Q V_{m+2}
        if m not in dcache:
            a = _lmap(lvl(m), lambda j: kappa * j - sp.const(m) / 2)
            b = _lmap(lvl(m + 2), lambda j: I * j)
            dcache[m] = _ladd(a, b)
        return dcache[m]

    ddcache = {}

    def ddV(m):
        if m not in ddcache:
            a = _lmap(dV(m), lambda j: kappa * j - sp.const(m) / 2)
            b = _lmap(dV(m + 2), lambda j: I * j)
            ddcache[m] = _ladd(a, b)
        return ddcache[m]

    E = {}
    # D' lowers the level by 2, so (D'V) lives on levels >= -2
    for a in range(-2, k + 1):
        b = k - 4 - a
        if a >= 0:
            E = _ladd(E, _lmul(lvl(a), ddV(b)), sp.const(3))
        E = _ladd(E, _lmul(dV(a), dV(b)), sp.const(-3))
    # V^3
    for a in range(0, k + 1):
        for b in range(0, k + 1 - a):
            c = k - a - b
            if lvl(a) and lvl(b) and lvl(c):
                E = _ladd(E, _lmul(_lmul(lvl(a), lvl(b)), lvl(c)))
    if k == 0:
        E = _ladd(E, {0: -sp.one()})
    if k >= 2:
        E = _ladd(E, lvl(k - 2), alpha * I * sp.const(3) / 2)
    return E


def oracle_trig_coeffs(depth: int, params: TrigParams = None) -> OracleRun:
    """Grid {(k, j): at[k, j]} for 0 <= k <= depth (at = Theta^k a)."""
    prm = params or TrigParams.generic()
    if not prm.constraint().is_zero():
        raise OracleInconsistency("parameters violate 3 i kappa + b11 b1m1 = 0")
    names = []
    for k in range(2, depth + 3):
        names += [_pname(k, 1), _pname(k, -1)]
    sp = prm.space.extend(*names)
    base = prm.space
    mv = lambda e: e.to_space(sp)
    prm_ext = TrigParams(sp, mv(prm.alpha), mv(prm.kappa), mv(prm.b11), mv(prm.b1m1))
    V = [{0: sp.one()}]
    lvl1 = {}
    if not prm_ext.b11.is_zero():
        lvl1[1] = prm_ext.b11
    if not prm_ext.b1m1.is_zero():
        lvl1[-1] = prm_ext.b1m1
    V.append(lvl1)
    for k in range(1, depth + 3):
        if k >= 2:
            V.append({1: sp.sym(_pname(k, 1)), -1: sp.sym(_pname(k, -1))})
        E = trig_level_residual(V, k, prm_ext)
        for j in E:
            if abs(j) > k:
                raise OracleInconsistency(f"level {k}: component w^{j} outside |j| <= k")
        # j = +-1 components fix level k-2 pending entries
        if k - 2 >= 2:
            unknowns = [_pname(k - 2, 1), _pname(k - 2, -1)]
            eqs = [E.get(1, sp.zero()), E.get(-1, sp.zero())]
            A, rhs = [], []
            for e in eqs:
                coeffs = e.coeffs_in(unknowns[0])
                lin1 = coeffs.get(1, sp.zero())
                rest = coeffs.get(0, sp.zero())
                c2 = rest.coeffs_in(unknowns[1])
                lin2 = c2.get(1, sp.zero())
                const = c2.get(0, sp.zero())
                if any(d > 1 for d in coeffs) or any(d > 1 for d in c2):
                    raise OracleInconsistency(f"level {k}: nonlinear in pending entries")
                A.append([lin1, lin2])
                rhs.append(-const)
            if determinant(A, sp).is_zero():
                raise OracleInconsistency(f"level {k}: singular system for level {k - 2}")
            sol, null = solve_affine(A, rhs, sp)
            mapping = {unknowns[0]: sol[0], unknowns[1]: sol[1]}
            V = [_lsubs(v, mapping) for v in V]
            E = {j: e.subs(mapping) for j, e in E.items()}
        else:
            for j in (1, -1):
                if j in E and not E[j].is_zero():
                    raise OracleInconsistency(f"level {k}: w^{j} component does not vanish: {E[j]}")
        new = dict(V[k])
        for j, e in E.items():
            if abs(j) == 1 or e.is_zero():
                continue
            new[j] = -e / (3 * (1 - j * j))
        V[k] = {j: v for j, v in new.items() if not v.is_zero()}
    grid = {}
    for k in range(0, depth + 1):
        for j in range(-k, k + 1):
            v = V[k].get(j, sp.zero())
            if v.free_symbols() - set(base.names):
                raise OracleInconsistency(f"entry ({k},{j}) still pending")
            grid[(k, j)] = v.to_space(base)
    Vb = [{j: grid[(k, j)] for j in range(-k, k + 1) if not grid[(k, j)].is_zero()} or {}
          for k in range(depth + 1)]
    Vb[0] = {0: base.one()}
    res = trig_residual_order(Vb, depth, prm)
    return OracleRun("trig", depth, tuple(base.names), grid, res)


def trig_residual_order(V, order, prm: TrigParams):
    """Lowest level k <= order whose equation fails (order + 1 when none).

    The w^(+-1) part of level k involves level k+2 entries; those components are
    only checked for k <= order - 2."""
    for k in range(0, order + 1):
        E = trig_level_residual(V, k, prm)
        for j, e in E.items():
            if abs(j) == 1 and k + 2 > order:
                continue
            if not e.is_zero():
                return k
    return order + 1


def grid_to_levels(grid, depth, space):
    V = []
    for k in range(depth + 1):
        lv = {}
        for j in range(-k, k + 1):
            v = grid.get((k, j))
            if v is not None and not v.is_zero():
                lv[j] = v
        V.append(lv)
    V[0] = {0: space.one()}
    return V


# ---------------------------------------------------------------------------
# logarithmic oracle


@dataclass
class LogParams:
    space: ParamSpace
    a: FieldElement
    b: FieldElement
    c3: FieldElement  # ct[-1, 3]

    @classmethod
    def generic(cls):
        sp = get_space(("a", "b", "ct"))
        a, b, c = sp.syms("a", "b", "ct")
        return cls(sp, a, b, c)


def _dL(p):
    """d/dL on a Laurent polynomial in z = 1/L."""
    return {m + 1: c * (-m) for m, c in p.items() if m != 0 and not c.is_zero()}


def _trunc(p, top):
    return {m: c for m, c in p.items() if m <= top}


def log_level_residual(G, n, prm: LogParams, top):
    """tau^(2n) coefficient of the log equation, truncated to z-powers <= top."""
    sp = prm.space

    def g(k):
        return G[k] if 0 <= k < len(G) else {}

    def D1(k):
        return _ladd(_lmap(g(k), lambda m: 2 * k), _dL(g(k)))

    def D2(k):
        d = D1(k)
        return _ladd(_lmap(d, lambda m: 2 * k), _dL(d))

    E = {}
    for a in range(n + 1):
        b = n - a
        if not g(a) or not g(b):
            continue
        E = _ladd(E, _trunc(_lmul(g(a), D2(b)), top))
        E = _ladd(E, _trunc(_lmul(D1(a), D1(b)), top), sp.const(-1))
    for a in range(n + 1):
        for b in range(n + 1 - a):
            c = n - a - b
            if g(a) and g(b) and g(c):
                E = _ladd(E, _trunc(_lmul(_trunc(_lmul(g(a), g(b)), top + 10), g(c)), top),
                          sp.const(8))
    if n >= 1:
        E = _ladd(E, _trunc(g(n - 1), top), -2 * prm.a * prm.b)
    if n == 2:
        E = _ladd(E, {0: -prm.b * prm.b})
    return E


def _log_low(n):
    return -2 * (n // 2)


def _coef(p, q, t):
    """z^t coefficient of p*q (None when zero)."""
    acc = None
    for i, a in p.items():
        b = q.get(t - i)
        if b is not None:
            acc = a * b if acc is None else acc + a * b
    return acc


def _D1(g, k):
    return _ladd(_lmap(g, lambda m: 2 * k), _dL(g))


class _LogLevelState:
    """Single-coefficient evaluation of the level-n residual; products of
    completed levels are cached."""

    def __init__(self, prm):
        self.prm = prm
        self.G = []
        self.D1 = []
        self.D2 = []
        self.S2 = []

    def close_level(self, g):
        k = len(self.G)
        self.G.append(g)
        d1 = _D1(g, k)
        self.D1.append(d1)
        self.D2.append(_D1(d1, k))
        s = {}
        for a in range(k + 1):
            b = k - a
            s = _ladd(s, _lmul(self.G[a], self.G[b]))
        self.S2.append(s)

    def coeff(self, n, g, t):
        sp = self.prm.space
        G = self.G + [g]
        d1n = _D1(g, n)
        D1 = self.D1 + [d1n]
        D2 = self.D2 + [_D1(d1n, n)]
        acc = sp.zero()
        for a in range(n + 1):
            b = n - a
            for p, q, sgn in ((G[a], D2[b], 1), (D1[a], D1[b], -1)):
                c = _coef(p, q, t)
                if c is not None:
                    acc = acc + c if sgn > 0 else acc - c
        eight = sp.const(8)
        for s in range(n):
            c = _coef(self.S2[s], G[n - s], t)
            if c is not None:
                acc = acc + c * eight
        # s = n: sum_{a+b=n} g_a g_b against g_0, g_n still being filled
        tmp = sp.zero()
        for i, c0 in G[0].items():
            j = t - i
            for a in range(n + 1):
                c = _coef(G[a], G[n - a], j)
                if c is not None:
                    tmp = tmp + c * c0
        acc = acc + tmp * eight
        if n >= 1 and t in G[n - 1]:
            acc = acc - G[n - 1][t] * (2 * self.prm.a * self.prm.b)
        if n == 2 and t == 0:
            acc = acc - self.prm.b * self.prm.b
        return acc


def oracle_log_coeffs(depth_k: int, depth_m: int, params: LogParams = None) -> OracleRun:
    """Grid {(2n-1, m): ct[2n-1, m]} for n <= depth_k and m <= depth_m."""
    prm = params or LogParams.generic()
    sp = prm.space
    # extra precision needed at lower levels to feed level depth_k up to depth_m
    tops = [depth_m + 3 * (depth_k - n) + 2 for n in range(depth_k + 1)]
    st = _LogLevelState(prm)
    c2 = sp.const(-1) / 4
    g0 = {2: c2, 3: prm.c3}
    for m in range(4, tops[0] + 1):
        e = st.coeff(0, g0, m + 4)
        coeff = c2 * (m * (m - 3))
        val = -e / coeff
        g0[m] = val
    g0 = {m: c for m, c in g0.items() if not c.is_zero()}
    E = log_level_residual([g0], 0, prm, tops[0] + 4)
    for m, e in E.items():
        if not e.is_zero():
            raise OracleInconsistency(f"level 0 residual at z^{m}")
    st.close_level(g0)
    for n in range(1, depth_k + 1):
        top = tops[n]
        gn = {}
        for m in range(_log_low(n), top + 1):
            if m == _log_low(n):
                for t in range(m - 4, m + 2):
                    e = st.coeff(n, gn, t)
                    if not e.is_zero():
                        raise OracleInconsistency(f"level {n}: residual at z^{t}")
            val = st.coeff(n, gn, m + 2) / (n * n)
            if not val.is_zero():
                gn[m] = val
        st.close_level(gn)
    G = st.G
    grid = {}
    for n in range(depth_k + 1):
        for m in range(_log_low(n), depth_m + 1):
            grid[(2 * n - 1, m)] = G[n].get(m, sp.zero())
    res = log_residual_order(G, depth_k, prm, tops)
    return OracleRun("log", depth_k, tuple(sp.names), grid, res,
                     {"depth_m": depth_m, "levels": G, "tops": tops})


def log_residual_order(G, order, prm, tops):
    for n in range(order + 1):
        E = log_level_residual(G, n, prm, tops[n] + (4 if n == 0 else 2))
        if any(not e.is_zero() for e in E.values()):
            return n
    return order + 1


def _complete_top(span, n):
    """Highest z-power whose level-n residual coefficient is fixed by the data.

    span[k] = (low, top) of the supplied z-range of level k.  A product term
    g_a * X_b is complete at z^t while t <= top_b + low_a."""
    if any(span[k] is None for k in range(n + 1)):
        return None
    lo = [s[0] for s in span[:n + 1]]
    hi = [s[1] for s in span[:n + 1]]
    bound = []
    for a in range(n + 1):
        b = n - a
        bound += [hi[b] + lo[a], hi[a] + lo[b]]
        for c in range(n + 1 - a):
            d = n - a - c
            bound += [hi[a] + lo[c] + lo[d], hi[c] + lo[a] + lo[d], hi[d] + lo[a] + lo[c]]
    if n >= 1:
        bound.append(hi[n - 1])
    return min(bound)


def residual_check(kind, data, order, params=None):
    """Lowest level at which the substituted series fails the equation.

    kind 'trig': data is a grid {(k, j): at} ; kind 'log': data is a list of level
    Laurent polynomials g_n(z) (or a grid {(2n-1, m): ct})."""
    if kind == "trig":
        prm = params or TrigParams.generic()
        V = grid_to_levels(data, order, prm.space)
        return trig_residual_order(V, order, prm)
    if kind == "log":
        prm = params or LogParams.generic()
        if isinstance(data, dict):
            G, span = [], []
            for n in range(order + 1):
                row = {m: v for (k, m), v in data.items() if k == 2 * n - 1}
                span.append((min(row), max(row)) if row else None)
                G.append({m: v for m, v in row.items() if not v.is_zero()})
        else:
            G = data
            span = [(min(g), max(g)) if g else None for g in G]
        for n in range(order + 1):
            top = _complete_top(span, n)
            if top is None:
                return n
            E = log_level_residual(G, n, prm, top)
            if any(not e.is_zero() for e in E.values()):
                return n
        return order + 1
    raise ValueError(f"unknown residual kind {kind!r}")

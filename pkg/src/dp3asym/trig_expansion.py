"""Generating functions for the trigonometric expansion at tau = infinity.

With x = s w^-1, y = w (s = tau^(-1/3)/Theta) the double series
V = sum at[n, j] s^n w^j becomes A(x, y) = sum at[n, j] x^n y^(n+j), so
    A_k(x) = sum_n at[n, k-n] x^n        (A-route, powers of y)
    B_n(y) = sum_j at[n, j] y^(n+j)      (B-route, powers of x)
where at[n, j] = Theta^n a[n, j].  The operator
    D = -x/2 d/dx + (kappa + i/(x^2 y^2)) (y d/dy - x d/dx)
turns the equation into
    3 x^4 y^4 (A D^2 A - (D A)^2) + A^3 - 1 + (3 i alpha/2) x^2 y^2 A = 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .cas_kernel.bivariate import BiSeries, apply_linear
from .cas_kernel.field import FieldElement, ParamSpace, get_space
from .cas_kernel.linalg import determinant, solve_affine
from .cas_kernel.univariate import (RationalFunction, partial_fraction_decompose,
                                    taylor_coefficients)
from .errors import (AlgorithmInvariantViolation, DeterminantVanished, EmptySolutionSet,
                     InvalidIndex, MissingAnchor)
from .ode_rational import RationalAnsatz, ode_from_affine, solve_euler_polynomial, solve_rational_ansatz
from .series_oracle import TrigParams

PARAM_NAMES = ("alpha", "kappa", "b11", "b1m1")


@dataclass
class TrigContext:
    """alpha, kappa, b11 = at[1,1], b1m1 = at[1,-1] as elements of `space`."""
    space: ParamSpace
    alpha: FieldElement
    kappa: FieldElement
    b11: FieldElement
    b1m1: FieldElement
    constrained: bool = True
    label: str = "generic"

    @classmethod
    def _from(cls, prm: TrigParams, label, constrained=True):
        return cls(prm.space, prm.alpha, prm.kappa, prm.b11, prm.b1m1, constrained, label)

    @classmethod
    def generic(cls):
        """Free alpha, kappa, b1m1; b11 = -3 i kappa / b1m1."""
        return cls._from(TrigParams.generic(), "generic")

    @classmethod
    def generic_b(cls):
        """Free alpha, b11, b1m1; kappa = i b11 b1m1 / 3 (polynomial arithmetic)."""
        return cls._from(TrigParams.generic_b(), "generic_b")

    @classmethod
    def unconstrained(cls):
        sp = get_space(PARAM_NAMES)
        al, ka, b1, bm = sp.syms(*PARAM_NAMES)
        return cls(sp, al, ka, b1, bm, False, "unconstrained")

    @classmethod
    def truncated(cls):
        """Upper truncation: b11 = 0, kappa = 0."""
        return cls._from(TrigParams.truncated(), "truncated")

    @classmethod
    def doubly_truncated(cls):
        return cls._from(TrigParams.doubly_truncated(), "doubly_truncated")

    def xi2(self):
        al, ka = self.alpha, self.kappa
        return 3 * (al ** 2 + 8 * al * ka + 10 * ka ** 2 + 4 * al)

    def constraint(self):
        return 3 * self.space.I * self.kappa + self.b11 * self.b1m1

    def params(self):
        return TrigParams(self.space, self.alpha, self.kappa, self.b11, self.b1m1)

    def extend(self, *names):
        sp = self.space.extend(*names)
        mv = lambda e: e.to_space(sp)
        return TrigContext(sp, mv(self.alpha), mv(self.kappa), mv(self.b11), mv(self.b1m1),
                           self.constrained, self.label)


def convert(e: FieldElement, src: TrigContext, dst: TrigContext) -> FieldElement:
    """Rewrite an element of src.space in dst.space through the shared parameters."""
    if src.space == dst.space:
        return e
    names = tuple(n for n in PARAM_NAMES if n in src.space.names or n in dst.space.names)
    big = get_space(tuple(src.space.names) + tuple(n for n in dst.space.names
                                                    if n not in src.space.names))
    e = e.to_space(big)
    binding = {}
    for nm in names:
        if nm in src.space.names and nm not in dst.space.names:
            binding[nm] = getattr(dst, nm).to_space(big)
    return e.subs(binding).to_space(dst.space)


# ---------------------------------------------------------------------------
# operator on two-variable series

def apply_trig_D(s: BiSeries, ctx: TrigContext) -> BiSeries:
    """D on x^a y^b: (-a/2 + kappa (b - a)) x^a y^b + i (b - a) x^(a-2) y^(b-2)."""
    I, ka = ctx.space.I, ctx.kappa

    def rule(a, b):
        out = [(0, 0, ka * (b - a) - ctx.space.const(a) / 2)]
        if b != a:
            out.append((-2, -2, I * (b - a)))
        return out

    return apply_linear(s, rule, -2)


def trig_pde_residual(A: BiSeries, ctx: TrigContext) -> BiSeries:
    sp = ctx.space
    DA = apply_trig_D(A, ctx)
    DDA = apply_trig_D(DA, ctx)
    x4y4 = BiSeries.monomial(sp, 4, 4)
    x2y2 = BiSeries.monomial(sp, 2, 2, 3 * sp.I * ctx.alpha / 2)
    one = BiSeries.monomial(sp, 0, 0)
    return ((A * DDA - DA * DA) * x4y4).scale(3) + A * A * A - one + x2y2 * A


def grid_to_biseries(grid, ctx: TrigContext, order: int) -> BiSeries:
    """A(x, y) from at[n, j], truncated at y^order."""
    terms = {}
    for (n, j), v in grid.items():
        if n + j < order:
            terms[(n, n + j)] = v
    return BiSeries(ctx.space, terms, order)


# ---------------------------------------------------------------------------
# A-route

@dataclass
class AInfExpansion:
    generators: list
    ctx: TrigContext
    constants: dict = field(default_factory=dict)
    pole_orders: dict = field(default_factory=dict)

    @property
    def parity_certificate(self):
        """True when every odd generator vanishes identically."""
        return all(g.is_zero() for k, g in enumerate(self.generators) if k % 2)

    def coefficient(self, n, j):
        k = n + j
        if not 0 <= k < len(self.generators):
            raise InvalidIndex(f"level {k} not computed")
        t = taylor_coefficients(self.generators[k], n + 1).coeffs
        return t[n] if n < len(t) else self.ctx.space.zero()

    def grid(self, depth):
        """at[n, j] for n <= depth, |j| <= n, n + j below the computed levels."""
        out = {}
        for k, g in enumerate(self.generators):
            t = taylor_coefficients(g, depth + 1).coeffs
            for n in range(depth + 1):
                j = k - n
                if abs(j) <= n:
                    out[(n, j)] = t[n] if n < len(t) else self.ctx.space.zero()
        return out


def _x_power(sp, f, p):
    return f.mul_factor_power([sp.zero(), sp.one()], p)


def _a_ops(ctx: TrigContext):
    sp = ctx.space
    I, ka = sp.I, ctx.kappa
    half = sp.const(1) / 2

    def same(f, k):
        return f.theta() * (-half - ka) + f * (ka * k)

    def low(f, k):
        return _x_power(sp, f * k - f.theta(), -2) * I

    return same, low


def _a_level_residual(levels, m, ctx: TrigContext):
    sp = ctx.space
    zero = RationalFunction(sp, "x", [], ())
    same, low = _a_ops(ctx)

    def A(k):
        return levels[k] if 0 <= k < len(levels) else zero

    DA = {}
    for l in range(-2, m + 1):
        v = zero
        if l >= 0 and not A(l).is_zero():
            v = v + same(A(l), l)
        if not A(l + 2).is_zero():
            v = v + low(A(l + 2), l + 2)
        DA[l] = v

    def da(l):
        return DA.get(l, zero)

    D2 = {}
    for l in range(-4, m - 3):
        v = zero
        if l >= -2 and not da(l).is_zero():
            v = v + same(da(l), l)
        if not da(l + 2).is_zero():
            v = v + low(da(l + 2), l + 2)
        D2[l] = v
    P = zero
    for i in range(0, m + 1):
        j = m - 4 - i
        if not A(i).is_zero() and not D2.get(j, zero).is_zero():
            P = P + A(i) * D2[j]
    for i in range(-2, m - 1):
        j = m - 4 - i
        if not da(i).is_zero() and not da(j).is_zero():
            P = P - da(i) * da(j)
    E = _x_power(sp, P, 4) * 3
    sq = {}
    for i in range(m + 1):
        for j in range(m + 1 - i):
            if not A(i).is_zero() and not A(j).is_zero():
                t = A(i) * A(j)
                sq[i + j] = sq[i + j] + t if i + j in sq else t
    for s, v in sq.items():
        if not A(m - s).is_zero():
            E = E + v * A(m - s)
    if m == 0:
        E = E - RationalFunction(sp, "x", [sp.one()], ())
    if m >= 2 and not A(m - 2).is_zero():
        E = E + _x_power(sp, A(m - 2), 2) * (3 * sp.I * ctx.alpha / 2)
    return E


def trig_A0(ctx: TrigContext) -> RationalFunction:
    """1 + b x/(1 - b x/6)^2 with b = b1m1."""
    sp = ctx.space
    b = ctx.b1m1
    if b.is_zero():
        return RationalFunction(sp, "x", [sp.one()], ())
    pole = [sp.one(), -b / 6]
    return RationalFunction(sp, "x", [sp.one()], ()) + \
        RationalFunction(sp, "x", [sp.zero(), b], [(pole, 2)])


def trig_homogeneous(ctx: TrigContext, k: int) -> RationalFunction:
    """x^(k+1) (b x + 6)/(b x - 6)^3, the rational kernel at level k >= 1."""
    sp = ctx.space
    b = ctx.b1m1
    num = [sp.zero()] * (k + 1) + [sp.const(6), b]
    return RationalFunction(sp, "x", num, [([sp.const(-6), b], 3)])


def compute_A_infty(kmax: int, ctx: TrigContext = None, anchors=None) -> AInfExpansion:
    """A_0 .. A_kmax; the free constant of level k is fixed by at[k+1, -1]."""
    ctx = ctx or TrigContext.generic()
    sp = ctx.space
    if ctx.b1m1.is_zero():
        raise AlgorithmInvariantViolation("the A-route needs b1m1 != 0")
    levels = [trig_A0(ctx)]
    if not _a_level_residual(levels, 0, ctx).is_zero():
        raise AlgorithmInvariantViolation("A_0 does not solve the level-0 equation")
    if kmax >= 1 and anchors is None:
        anchors = anchors_from_B(kmax + 1, ctx)
    pole = [sp.one(), -ctx.b1m1 / 6]
    consts, orders = {}, {0: 2}
    for k in range(1, kmax + 1):
        key = (k + 1, -1)
        if key not in anchors:
            raise MissingAnchor(f"at[{k + 1}, -1] needed for level {k}")
        anchor = anchors[key]
        if anchor.space != sp:
            anchor = anchor.to_space(sp)
        ode = ode_from_affine(lambda f: _a_level_residual(levels + [f], k, ctx), sp, "x")
        fam = None
        e = max(3, k // 2 + 2)
        while fam is None:
            try:
                fam = solve_rational_ansatz(ode, RationalAnsatz(pole, e, k + k // 2 + 1))
            except EmptySolutionSet:
                e += 1
                if e > k + 4:
                    raise AlgorithmInvariantViolation(f"level {k}: no rational solution")
        if fam.dimension != 1:
            raise AlgorithmInvariantViolation(
                f"level {k}: rational kernel of dimension {fam.dimension}")
        hom = trig_homogeneous(ctx, k)
        part = fam.particular
        h = taylor_coefficients(hom, k + 2).coeffs[k + 1]       # = -1/36
        p = taylor_coefficients(part, k + 2).coeffs
        pk = p[k + 1] if k + 1 < len(p) else sp.zero()
        part = part - hom * (pk / h)          # normalized: no x^(k+1) term
        c = anchor / h
        consts[k] = c
        Ak = part + hom * c
        levels.append(Ak)
        orders[k] = Ak.pole_order(pole)
    return AInfExpansion(levels, ctx, consts, orders)


# ---------------------------------------------------------------------------
# B-route

def _cname(m):
    return f"C{m}"


@dataclass
class BInfPolynomials:
    levels: list                 # dict y-power -> FieldElement, level n = B_n
    ctx: TrigContext             # context over the extended space (pending C's)
    base: TrigContext
    ledger: dict                 # m -> FieldElement or "pending"
    constraint: FieldElement = None
    determinants: dict = field(default_factory=dict)
    resolved_upto: int = 0

    def poly(self, n):
        """Coefficient list of B_n in the base space (n <= resolved_upto)."""
        if n > self.resolved_upto:
            raise InvalidIndex(f"B_{n} still depends on pending constants")
        lv = self.levels[n]
        deg = max(lv) if lv else -1
        return [lv.get(p, self.ctx.space.zero()).to_space(self.base.space) for p in range(deg + 1)]

    def degree(self, n):
        lv = self.levels[n]
        return max(lv) if lv else -1

    def grid(self, depth=None):
        depth = self.resolved_upto if depth is None else min(depth, self.resolved_upto)
        out = {}
        sp = self.base.space
        for n in range(depth + 1):
            lv = self.levels[n]
            for j in range(-n, n + 1):
                v = lv.get(n + j)
                out[(n, j)] = v.to_space(sp) if v is not None else sp.zero()
        return out

    def ledger_value(self, m):
        v = self.ledger.get(m, "pending")
        if isinstance(v, str):
            return v
        return v.to_space(self.base.space) if not (v.free_symbols() - set(self.base.space.names)) else v


def _ladd(p, q, c=None):
    out = dict(p)
    for k, v in q.items():
        if c is not None:
            v = v * c
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _lmul(p, q):
    out = {}
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] = out[i + j] + a * b if i + j in out else a * b
    return {k: v for k, v in out.items() if not v.is_zero()}


def _b_level_residual(B, n, ctx: TrigContext):
    """x^n coefficient; B[k] dicts y-power -> FE, missing levels are zero."""
    sp = ctx.space
    I, ka = sp.I, ctx.kappa

    def lv(k):
        return B[k] if 0 <= k < len(B) else {}

    def same(g, k):
        return {p: v * (ka * (p - k) - sp.const(k) / 2) for p, v in g.items()
                if not (ka * (p - k) - sp.const(k) / 2).is_zero()}

    def low(g, k):
        return {p - 2: v * (I * (p - k)) for p, v in g.items() if p != k}

    DB = {}
    for l in range(-2, n + 1):
        DB[l] = _ladd(same(lv(l), l) if l >= 0 else {}, low(lv(l + 2), l + 2))
    D2 = {}
    for l in range(-4, n - 3):
        a = same(DB[l], l) if l >= -2 else {}
        D2[l] = _ladd(a, low(DB.get(l + 2, {}), l + 2))
    P = {}
    for i in range(0, n + 1):
        j = n - 4 - i
        if lv(i) and D2.get(j):
            P = _ladd(P, _lmul(lv(i), D2[j]))
    for i in range(-2, n - 1):
        j = n - 4 - i
        if DB.get(i) and DB.get(j):
            P = _ladd(P, _lmul(DB[i], DB[j]), sp.const(-1))
    E = {p + 4: v * 3 for p, v in P.items()}
    sq = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            if lv(i) and lv(j):
                sq[i + j] = _ladd(sq.get(i + j, {}), _lmul(lv(i), lv(j)))
    for s, v in sq.items():
        if lv(n - s):
            E = _ladd(E, _lmul(v, lv(n - s)))
    if n == 0:
        E = _ladd(E, {0: -sp.one()})
    if n >= 2 and lv(n - 2):
        E = _ladd(E, {p + 2: v for p, v in lv(n - 2).items()}, 3 * I * ctx.alpha / 2)
    return E


def _linear_in(e: FieldElement, names):
    """(coefficients, constant) of e, which must be affine in `names`."""
    coeffs = []
    rest = e
    for nm in names:
        parts = rest.coeffs_in(nm)
        if any(d > 1 for d in parts):
            raise AlgorithmInvariantViolation(f"nonlinear dependence on {nm}")
        coeffs.append(parts.get(1, e.space.zero()))
        rest = parts.get(0, e.space.zero())
    return coeffs, rest


def level3_constraint(base: TrigContext = None) -> FieldElement:
    """Resonant part at n = 3 with kappa, b11, b1m1 all free.  Both resonant
    coefficients are multiples of the returned rationality constraint."""
    ctx = TrigContext.unconstrained().extend("C3", "C4")
    sp = ctx.space
    B = [{0: sp.one()}, {2: ctx.b11, 0: ctx.b1m1}]
    R2 = _b_level_residual(B, 2, ctx)
    rep = solve_euler_polynomial(2, [R2.get(p, sp.zero()) for p in range(max(R2) + 1)], sp, scale=3)
    B.append(_ladd({p: v for p, v in enumerate(rep.particular)},
                   {3: sp.sym("C4"), 1: sp.sym("C3")}))
    R3 = _b_level_residual(B, 3, ctx)
    target = ctx.constraint()
    lhs = [R3.get(4, sp.zero()), R3.get(2, sp.zero())]
    for v in lhs:
        q = v / target
        if not q.is_polynomial():
            raise AlgorithmInvariantViolation("level-3 resonance is not proportional to the constraint")
    return target


def compute_B_infty(nmax: int, ctx: TrigContext = None, extra: int = 2) -> BInfPolynomials:
    """B_0 .. B_(nmax+extra); levels up to nmax are free of pending constants.

    Level n is solved by the Euler operator; its resonant y^(n+1), y^(n-1)
    right-hand-side coefficients (the log terms) must vanish, which fixes the
    constants C_(2n-4), C_(2n-5) left open at level n-2."""
    base = ctx or TrigContext.generic_b()
    top = nmax + extra
    names = [_cname(m) for m in range(3, 2 * top + 1)]
    cx = base.extend(*names)
    sp = cx.space
    B = [{0: sp.one()}]
    lvl1 = {}
    if not cx.b11.is_zero():
        lvl1[2] = cx.b11
    if not cx.b1m1.is_zero():
        lvl1[0] = cx.b1m1
    B.append(lvl1)
    ledger = {m: "pending" for m in range(3, 2 * top + 1)}
    dets = {}
    constraint = level3_constraint() if base.constrained else None
    for n in range(2, top + 1):
        R = _b_level_residual(B, n, cx)
        if R and min(R) < 0:
            raise AlgorithmInvariantViolation(f"level {n}: negative powers of y in the right-hand side")
        res = [R.get(n + 1, sp.zero()), R.get(n - 1, sp.zero())]
        if n >= 4:
            unknowns = [_cname(2 * n - 4), _cname(2 * n - 5)]
            rows, rhs = [], []
            for r in res:
                co, const = _linear_in(r, unknowns)
                rows.append(co)
                rhs.append(-const)
            det = determinant(rows, sp)
            dets[n] = det
            if det.is_zero():
                raise DeterminantVanished(n, "log-term system for the pending constants")
            sol, _ = solve_affine(rows, rhs, sp)
            mapping = dict(zip(unknowns, sol))
            for nm, v in mapping.items():
                ledger[int(nm[1:])] = v
            B = [{p: v.subs(mapping) for p, v in lv.items()} for lv in B]
            B = [{p: v for p, v in lv.items() if not v.is_zero()} for lv in B]
            R = {p: v.subs(mapping) for p, v in R.items()}
            R = {p: v for p, v in R.items() if not v.is_zero()}
            for m, v in list(ledger.items()):
                if not isinstance(v, str):
                    ledger[m] = v.subs(mapping)
        else:
            for r in (R.get(n + 1, sp.zero()), R.get(n - 1, sp.zero())):
                if not r.is_zero():
                    raise AlgorithmInvariantViolation(f"level {n}: log term does not vanish")
        deg = max(R) if R else 0
        rep = solve_euler_polynomial(n, [R.get(p, sp.zero()) for p in range(deg + 1)], sp, scale=3)
        new = {p: v for p, v in enumerate(rep.particular) if not v.is_zero()}
        new = _ladd(new, {n + 1: sp.sym(_cname(2 * n)), n - 1: sp.sym(_cname(2 * n - 1))})
        B.append(new)
    resolved = max(1, top - 2)
    return BInfPolynomials(B, cx, base, ledger, constraint, dets, min(nmax, resolved))


def anchors_from_B(kmax_plus: int, ctx: TrigContext):
    """at[n, -1] for n <= kmax_plus via the B-route, rewritten in ctx.space."""
    if ctx.label in ("generic",):
        bctx = TrigContext.generic_b()
    else:
        bctx = ctx
    bp = compute_B_infty(kmax_plus, bctx)
    out = {}
    for n in range(1, kmax_plus + 1):
        v = bp.levels[n].get(n - 1, bp.ctx.space.zero()).to_space(bctx.space)
        out[(n, -1)] = convert(v, bctx, ctx)
    return out


# ---------------------------------------------------------------------------
# closed formulas along diagonals

@dataclass
class DiagonalTable:
    level: int
    poly_part: list
    table: dict          # l -> numerator over (1 - b x/6)^l
    b: FieldElement

    @property
    def valid_from(self):
        return len(self.poly_part)

    def value(self, n):
        if n < self.valid_from:
            raise InvalidIndex(f"n = {n} below the range of the closed form (n >= {self.valid_from})")
        s = self.b.space.zero()
        for l, v in self.table.items():
            s = s + v * comb(n + l - 1, l - 1)
        return s * (self.b / 6) ** n


def diagonal_table(A: AInfExpansion, k: int) -> DiagonalTable:
    g = A.generators[k]
    sp = A.ctx.space
    b = A.ctx.b1m1
    basis = [[sp.one(), -b / 6]]
    poly, parts = partial_fraction_decompose(g, basis)
    table = {}
    for (_, l), num in parts.items():
        if num:
            table[l] = num[0]
    return DiagonalTable(k, list(poly), table, b)


_FAMILIES = {"diag": 0, "diag-2": 2, "diag-4": 4}
_table_cache = {}


def coefficient_formula(family: str, n: int, ctx: TrigContext = None, A: AInfExpansion = None):
    """at[n, level - n] from the partial-fraction table of generator `level`."""
    if family not in _FAMILIES:
        raise InvalidIndex(f"unknown family {family!r}")
    k = _FAMILIES[family]
    ctx = ctx or (A.ctx if A is not None else TrigContext.generic())
    if A is None:
        key = (ctx.label, tuple(ctx.space.names), k)
        if key not in _table_cache:
            _table_cache[key] = diagonal_table(compute_A_infty(k, ctx), k)
        tab = _table_cache[key]
    else:
        tab = diagonal_table(A, k)
    return tab.value(n)


# ---------------------------------------------------------------------------
# symmetry (j, i, alpha, kappa) -> (-j, -i, -alpha, -kappa)

def _sym_fe(e: FieldElement, space: ParamSpace):
    names = set(space.names)
    swap = {}
    if "alpha" in names:
        swap["alpha"] = -space.sym("alpha")
    if "kappa" in names:
        swap["kappa"] = -space.sym("kappa")
    if "b11" in names and "b1m1" in names:
        swap["b11"] = space.sym("b1m1")
        swap["b1m1"] = space.sym("b11")
    return e.to_space(space).conjugate_i().subs(swap)


def symmetry_space(space: ParamSpace) -> ParamSpace:
    extra = [n for n in ("b11", "b1m1") if n not in space.names and
             ("b11" in space.names or "b1m1" in space.names)]
    return space.extend(*extra) if extra else space


def symmetry_transform(g, space: ParamSpace = None):
    """Apply the involution to a grid {(k, j): v}, a FieldElement or a RationalFunction."""
    if isinstance(g, FieldElement):
        sp = space or symmetry_space(g.space)
        return _sym_fe(g, sp)
    if isinstance(g, RationalFunction):
        sp = space or symmetry_space(g.space)
        return g.to_space(sp).map_coeffs(lambda c: _sym_fe(c, sp))
    if isinstance(g, dict):
        if not g:
            return {}
        first = next(iter(g.values()))
        sp = space or symmetry_space(first.space)
        return {(k, -j): _sym_fe(v, sp) for (k, j), v in g.items()}
    raise TypeError(f"cannot transform {type(g).__name__}")


# ---------------------------------------------------------------------------
# validity strips

def _strip(x, lo, hi, lo_closed=False, hi_closed=False):
    eps = 1e-12
    if abs(x - lo) < eps:
        return "marginal" if not lo_closed else True
    if abs(x - hi) < eps:
        return "marginal" if not hi_closed else True
    return lo < x < hi


def kappa_validity(kappa) -> dict:
    """Classification by Re kappa; exact boundaries are reported as 'marginal'."""
    r = complex(kappa).real
    a_tilde = _strip(r, -0.5, 1.5)
    visible = _strip(r, 0.0, 1.0)
    a_form = _strip(r, -1.5, 0.5, hi_closed=True)
    if a_form is True and abs(r - 0.5) < 1e-12:
        a_form = "marginal"
    return {"A_tilde_asymptotic": a_tilde, "leading_visible": visible, "A_asymptotic": a_form,
            "re_kappa": r}


# ---------------------------------------------------------------------------
# truncated series

@dataclass
class TruncatedData:
    case: str
    ctx: TrigContext
    b2n: list = field(default_factory=list)            # both-zero: [b_2, b_4, ...]
    generators: list = field(default_factory=list)     # A_2k / x^2k at kappa = 0
    polynomials: list = field(default_factory=list)    # B_n coefficient lists
    tables: dict = field(default_factory=dict)         # level -> DiagonalTable of A_2k/x^2k


def compute_truncated(case: str, nmax: int) -> TruncatedData:
    """both-zero: b_2..b_(2 nmax); upper-zero: A_0 .. A_(2 nmax) / x^(2k);
    lower-zero: the mirror image of upper-zero."""
    if case == "both-zero":
        ctx = TrigContext.doubly_truncated()
        bp = compute_B_infty(2 * nmax, ctx)
        sp = ctx.space
        b = []
        for n in range(1, nmax + 1):
            v = bp.levels[2 * n].get(2 * n, bp.ctx.space.zero())
            b.append(v.to_space(sp))
        polys = [bp.poly(n) for n in range(2 * nmax + 1)]
        return TruncatedData(case, ctx, b2n=b, polynomials=polys)
    if case in ("upper-zero", "lower-zero"):
        ctx = TrigContext.truncated()
        A = compute_A_infty(2 * nmax, ctx)
        sp = ctx.space
        gens, tabs = [], {}
        for k in range(0, 2 * nmax + 1, 2):
            g = _x_power(sp, A.generators[k], -k)
            gens.append(g)
            basis = [[sp.one(), -ctx.b1m1 / 6]]
            poly, parts = partial_fraction_decompose(g, basis)
            tabs[k] = DiagonalTable(k, list(poly), {l: num[0] for (_, l), num in parts.items() if num},
                                    ctx.b1m1)
        data = TruncatedData("upper-zero", ctx, generators=gens, tables=tabs)
        if case == "lower-zero":
            data.case = "lower-zero"
            data.generators = [symmetry_transform(g) for g in gens]
            data.tables = {}
        return data
    raise InvalidIndex(f"unknown truncation case {case!r}")

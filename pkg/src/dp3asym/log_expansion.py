"""Generating functions for the logarithmic expansion at tau = 0.

A(x, y) = tau u(tau) with x = tau^2 ln tau, y = 1/ln tau.  With
D = (y + 2) x d/dx - y^2 d/dy the equation for A is
    A D^2 A - (D A)^2 + 8 A^3 - 2 a b x y A - b^2 x^2 y^2 = 0.
The A-route expands in powers of y (A = sum y^k A_k(x)), the B-route in powers
of x (A = sum x^n B_n(y)).  Coefficients are ct[2n-1, m] of
u = sum tau^(2n-1) sum_m ct[2n-1, m] (ln tau)^(-m):
    A_k(x) = sum_n ct[2n-1, k-n] x^n,     B_n(y) = sum_j ct[2n-1, j-n] y^j.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .cas_kernel.bivariate import BiSeries, apply_linear
from .cas_kernel.field import FieldElement, ParamSpace, get_space
from .cas_kernel.univariate import (RationalFunction, partial_fraction_decompose,
                                    taylor_coefficients)
from .errors import AlgorithmInvariantViolation, EmptySolutionSet, MissingAnchor
from .ode_rational import RationalAnsatz, ode_from_affine, solve_rational_ansatz
from .series_oracle import LogParams, oracle_log_coeffs


@dataclass
class LogContext:
    """Parameters a, b, ct = ct[-1, 3] and the level-0 constant C (eps = +1).

    C is kept as an independent symbol in the A-route; its value is
    C = -b^2 (a^2 + 1)/4, applied by `specialize`."""
    space: ParamSpace = field(default_factory=lambda: get_space(("a", "b", "C", "ct")))
    eps: int = 1

    @property
    def a(self):
        return self.space.sym("a")

    @property
    def b(self):
        return self.space.sym("b")

    @property
    def C(self):
        return self.space.sym("C")

    @property
    def ct(self):
        return self.space.sym("ct")

    def c_value(self):
        return -self.b ** 2 * (self.a ** 2 + 1) / 4

    def specialize(self, e: FieldElement, dst: ParamSpace = None) -> FieldElement:
        """Substitute C and move to the (a, b, ct) space."""
        dst = dst or get_space(("a", "b", "ct"))
        return e.subs({"C": self.c_value()}).to_space(dst)

    def oracle_params(self):
        return LogParams.generic()


@dataclass
class LogExpansion:
    kind: str            # "A" or "B"
    generators: list     # RationalFunction per level
    ctx: LogContext
    grading: dict = field(default_factory=lambda: {"x": "tau^2 ln tau", "y": "1/ln tau"})
    constants: dict = field(default_factory=dict)
    specialized_from: int = None   # first level at which C was replaced by its value

    @property
    def var(self):
        return "x" if self.kind == "A" else "y"


# ---------------------------------------------------------------------------
# operator on two-variable series

def apply_log_D(s: BiSeries) -> BiSeries:
    """D = (y + 2) x d/dx - y^2 d/dy."""
    def rule(a, b):
        return [(0, 1, a - b), (0, 0, 2 * a)]
    return apply_linear(s, rule, 0)


def expansion_to_biseries(e: LogExpansion, order: int, xdeg: int) -> BiSeries:
    """Taylor data of the generators as a BiSeries truncated at y^order."""
    sp = e.generators[0].space
    terms = {}
    for k, g in enumerate(e.generators):
        t = taylor_coefficients(g, xdeg + 1)
        for n, c in enumerate(t.coeffs):
            if e.kind == "A":
                if k < order:
                    terms[(n, k)] = c
            else:
                if n < order:
                    terms[(k, n)] = c
    return BiSeries(sp, terms, order)


def log_pde_residual(A: BiSeries, ctx_a, ctx_b) -> BiSeries:
    """A D^2 A - (DA)^2 + 8 A^3 - 2ab x y A - b^2 x^2 y^2 on a truncated series."""
    sp = A.space
    DA = apply_log_D(A)
    DDA = apply_log_D(DA)
    xy = BiSeries.monomial(sp, 1, 1)
    x2y2 = BiSeries.monomial(sp, 2, 2, ctx_b * ctx_b)
    R = A * DDA - DA * DA + (A * A * A).scale(8) - (xy * A).scale(2 * ctx_a * ctx_b) - x2y2
    return R


# ---------------------------------------------------------------------------
# A-route (levels in y)

def _D_levels(levels, k):
    """(D A) at y-level k for A = sum y^j levels[j](x): D(y^j f) = y^j 2 theta f + y^(j+1) (theta f - j f)."""
    def g(j):
        return levels[j] if 0 <= j < len(levels) else None
    out = None
    f = g(k)
    if f is not None:
        out = f.theta() * 2
    f = g(k - 1)
    if f is not None:
        t = f.theta() - f * (k - 1)
        out = t if out is None else out + t
    return out


def _a_level_residual(levels, k, ctx: LogContext):
    sp = ctx.space
    var = "x"
    zero = RationalFunction(sp, var, [], ())
    n = len(levels)
    D1 = [(_D_levels(levels, j) or zero) for j in range(k + 1)]
    D2 = [(_D_levels(D1, j) or zero) for j in range(k + 1)]
    E = zero

    def g(j):
        return levels[j] if 0 <= j < n else zero

    for i in range(k + 1):
        j = k - i
        E = E + g(i) * D2[j] - D1[i] * D1[j]
    sq = [zero] * (k + 1)
    for i in range(k + 1):
        for j in range(k + 1 - i):
            if not g(i).is_zero() and not g(j).is_zero():
                sq[i + j] = sq[i + j] + g(i) * g(j)
    for i in range(k + 1):
        if not sq[i].is_zero() and not g(k - i).is_zero():
            E = E + sq[i] * g(k - i) * 8
    if k >= 1:
        E = E - g(k - 1) * [sp.zero(), 2 * ctx.a * ctx.b]
    if k == 2:
        E = E - RationalFunction(sp, var, [sp.zero(), sp.zero(), ctx.b ** 2], ())
    return E


def log_A0(ctx: LogContext) -> RationalFunction:
    sp = ctx.space
    C = ctx.C
    return RationalFunction(sp, "x", [sp.zero(), sp.zero(), C],
                            [([sp.one(), sp.zero(), C / 4], 2)])


def log_A_pole(ctx):
    sp = ctx.space
    return [sp.one(), sp.zero(), ctx.C / 4]


def log_A_homogeneous(ctx) -> RationalFunction:
    """x^2 (C x^2 - 4)/(C x^2 + 4)^3, the rational kernel shared by all levels k >= 1."""
    sp = ctx.space
    C = ctx.C
    return RationalFunction(sp, "x", [sp.zero(), sp.zero(), sp.const(-4), sp.zero(), C],
                            [([sp.const(4), sp.zero(), C], 3)])


def log_anchor_grid(kmax, ctx: LogContext):
    """Level-2 oracle row ct[3, m] for m <= kmax - 2."""
    run = oracle_log_coeffs(2, max(kmax - 2, 0), ctx.oracle_params())
    return run.grid


def compute_log_A(kmax: int, ctx: LogContext = None, anchors=None) -> LogExpansion:
    ctx = ctx or LogContext()
    sp = ctx.space
    A0 = log_A0(ctx)
    levels = [A0]
    if not _a_level_residual(levels, 0, ctx).is_zero():
        raise AlgorithmInvariantViolation("A_0 does not solve the level-0 equation")
    work = list(levels)  # what the recursion sees; C-specialized once needed
    if kmax >= 1 and anchors is None:
        anchors = log_anchor_grid(kmax, ctx)
    consts = {}
    pole = log_A_pole(ctx)
    specialized_from = None
    for k in range(1, kmax + 1):
        key = (3, k - 2)
        if anchors is None or key not in anchors:
            raise MissingAnchor(f"ct[3, {k - 2}] needed for level {k}")
        anchor = anchors[key].to_space(sp)
        ode = ode_from_affine(lambda f: _a_level_residual(work + [f], k, ctx), sp, "x")
        try:
            fam = solve_rational_ansatz(ode, RationalAnsatz(pole, k + 2, 1))
        except EmptySolutionSet:
            if specialized_from is not None:
                raise
            # solvability needs the level-0 value of C from here on
            specialized_from = k
            cval = {"C": ctx.c_value()}
            work = [g.subs(cval) for g in work]
            pole = [c.subs(cval) for c in pole]
            anchor = anchor.subs(cval)
            ode = ode_from_affine(lambda f: _a_level_residual(work + [f], k, ctx), sp, "x")
            fam = solve_rational_ansatz(ode, RationalAnsatz(pole, k + 2, 1))
        if fam.dimension != 1:
            raise AlgorithmInvariantViolation(
                f"level {k}: expected a one-dimensional rational kernel, got {fam.dimension}")
        hom = fam.basis[0]
        p2 = taylor_coefficients(fam.particular, 3).coeffs[2]
        h2 = taylor_coefficients(hom, 3).coeffs[2]
        c = (anchor - p2) / h2
        # report the constant against the normalized kernel x^2 (C x^2 - 4)/(C x^2 + 4)^3
        ref = log_A_homogeneous(ctx)
        if specialized_from is not None:
            ref = ref.subs({"C": ctx.c_value()})
        r2 = taylor_coefficients(ref, 3).coeffs[2]
        consts[f"C{k}"] = c * h2 / r2
        Ak = fam.particular + hom * c
        work.append(Ak)
        levels.append(Ak)
    out = LogExpansion("A", levels, ctx, constants=consts)
    out.specialized_from = specialized_from
    return out


def particular_A1(ctx: LogContext) -> RationalFunction:
    """The C_1-free part of A_1 in closed form."""
    x = "x"
    return RationalFunction.parse(
        ctx.space, x,
        "x*(a*b*(C*x**2-12)*(C**2*x**4+56*C*x**2-48)+2304*C*x)/(18*(C*x**2+4)**3)")


# ---------------------------------------------------------------------------

def extract_log_coefficients(e: LogExpansion, k: int, upto: int):
    """{(2n-1, m): ct} from generator k; n runs over Taylor orders 0..upto."""
    g = e.generators[k]
    t = taylor_coefficients(g, upto + 1)
    out = {}
    for n, c in enumerate(t.coeffs):
        if e.kind == "A":
            out[(2 * n - 1, k - n)] = c
        else:
            out[(2 * k - 1, n - k)] = c
    return out


@dataclass
class ClosedForm:
    level: int
    poly_part: list
    table: dict          # (i, e) -> xi_{i,e}: numerator coefficient of x^e over (1 + C x^2/4)^i
    C: FieldElement

    def coefficient(self, n: int) -> FieldElement:
        """Taylor coefficient of x^n from the partial-fraction data (binomial form)."""
        sp = self.C.space
        acc = self.poly_part[n] if n < len(self.poly_part) else sp.zero()
        e = n % 2
        l = n // 2
        s = sp.zero()
        for (i, ee), xi in self.table.items():
            if ee == e:
                s = s + xi * comb(l + i - 1, i - 1)
        return acc + s * (-self.C / 4) ** l


def closed_form_level(e: LogExpansion, k: int) -> ClosedForm:
    if e.kind != "A":
        raise ValueError("closed forms are defined for the A-route")
    ctx = e.ctx
    g = e.generators[k]
    C = ctx.C
    if e.specialized_from is not None and k >= e.specialized_from:
        C = ctx.c_value()
    sp = ctx.space
    basis = [[sp.one(), sp.zero(), C / 4]]
    poly, parts = partial_fraction_decompose(g, basis)
    table = {}
    for (i, power), num in parts.items():
        for ee in (0, 1):
            if ee < len(num) and not num[ee].is_zero():
                table[(power, ee)] = num[ee]
            elif num:
                table.setdefault((power, ee), ctx.space.zero())
    return ClosedForm(k, list(poly), table, C)


def pole_order(e: LogExpansion, k: int) -> int:
    g = e.generators[k]
    pole = log_A_pole(e.ctx)
    if e.specialized_from is not None and k >= e.specialized_from:
        pole = [c.subs({"C": e.ctx.c_value()}) for c in pole]
    return g.pole_order(pole)


# ---------------------------------------------------------------------------
# B-route (levels in x)

def _D_level_B(f: RationalFunction, n: int) -> RationalFunction:
    """D(x^n g(y)) = x^n ((y + 2) n g - y^2 g')."""
    sp = f.space
    return f * [sp.const(2 * n), sp.const(n)] - f.derivative() * [sp.zero(), sp.zero(), sp.one()]


def _b_level_residual(levels, n, prm: LogParams):
    sp = prm.space
    zero = RationalFunction(sp, "y", [], ())

    def g(j):
        return levels[j] if 0 <= j < len(levels) else zero

    D1 = [_D_level_B(g(j), j) for j in range(n + 1)]
    D2 = [_D_level_B(D1[j], j) for j in range(n + 1)]
    E = zero
    for i in range(n + 1):
        j = n - i
        if not g(i).is_zero():
            E = E + g(i) * D2[j]
        if not D1[i].is_zero() and not D1[j].is_zero():
            E = E - D1[i] * D1[j]
    sq = [zero] * (n + 1)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            if not g(i).is_zero() and not g(j).is_zero():
                sq[i + j] = sq[i + j] + g(i) * g(j)
    for i in range(n + 1):
        if not sq[i].is_zero() and not g(n - i).is_zero():
            E = E + sq[i] * g(n - i) * 8
    if n >= 1:
        E = E - g(n - 1) * [sp.zero(), 2 * prm.a * prm.b]
    if n == 2:
        E = E - RationalFunction(sp, "y", [sp.zero(), sp.zero(), prm.b ** 2], ())
    return E


def log_B0(prm: LogParams) -> RationalFunction:
    """-y^2 / (4 (1 + 2 ct y)^2)."""
    sp = prm.space
    return RationalFunction(sp, "y", [sp.zero(), sp.zero(), sp.const(-1) / 4],
                            [([sp.one(), 2 * prm.c3], 2)])


def compute_log_B(kmax: int, prm: LogParams = None, max_pole: int = None) -> LogExpansion:
    prm = prm or LogParams.generic()
    sp = prm.space
    B0 = log_B0(prm)
    levels = [B0]
    if not _b_level_residual(levels, 0, prm).is_zero():
        raise AlgorithmInvariantViolation("B_0 does not solve the level-0 equation")
    pole = [sp.one(), 2 * prm.c3]
    for n in range(1, kmax + 1):
        ode = ode_from_affine(lambda f: _b_level_residual(levels + [f], n, prm), sp, "y")
        fam = None
        e = 2 * n + 1
        cap = max_pole or 4 * n + 8
        while fam is None:
            try:
                fam = solve_rational_ansatz(ode, RationalAnsatz(pole, e, n + 2))
            except EmptySolutionSet:
                e += 2
                if e > cap:
                    raise
        if fam.dimension:
            raise AlgorithmInvariantViolation(f"level {n}: homogeneous equation has rational solutions")
        levels.append(fam.particular)
    ctx = LogContext()
    return LogExpansion("B", levels, ctx, grading={"x": "tau^2 ln tau", "y": "1/ln tau"})

"""Elliptic (Boutroux-type) expansions at tau = infinity, a = 0.

Two variable systems are used.  In the first, x ~ tau^(-1/3) dn^(-1/2) e^(-2i am)
and y = e^(2i am); the super-generating function A1(x, y) = sum y^k A1_k(x) has
polynomial coefficients in x^2.  In the symmetric system x, y ~ tau^(-1/3)
dn^(-1/2) e^(-+i am) the expansion B2(x, y) = sum x^k B2_k(y) has Laurent
polynomial coefficients in y, and A2_k(x; P) = B2_k(x; -P) gives the
conjugate family.  k2 stands for kappa^2 throughout.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from math import factorial

import sympy

from .cas_kernel.bivariate import BiSeries, apply_linear
from .cas_kernel.field import FieldElement, ParamSpace, get_space
from .cas_kernel.relations import Relation, reduce_modulo_relations
from .errors import AlgorithmInvariantViolation, DegenerateModulus

BASE_NAMES = ("k2", "P", "p", "q")


@dataclass
class EllipticContext:
    space: ParamSpace
    k2: FieldElement
    P: FieldElement
    p: FieldElement
    q: FieldElement

    @classmethod
    def generic(cls, extra=()):
        sp = get_space(BASE_NAMES + tuple(extra))
        return cls(sp, *sp.syms(*BASE_NAMES))

    def constrained_space(self):
        """Same names with k2 replaced by s."""
        return get_space(("s",) + tuple(n for n in self.space.names if n != "k2"))

    def impose(self, e: FieldElement, eliminate_q=False) -> FieldElement:
        """Reduce e under k2 = (s-1)(s+3)/((s+1)(s-3)), P^2/p^2 = 2q(s-3)/(3(s-1)),
        s^2 = 8q^3 + 1 (or q^3 = (s^2-1)/8 when eliminate_q)."""
        dst = self.constrained_space()
        big = get_space(tuple(self.space.names) + ("s",))
        s, q, p = big.syms("s", "q", "p")
        e = e.to_space(big).subs({"k2": kappa2_of_s(s)}).to_space(dst)
        return reduce_under_constraints(e, eliminate_q)


def kappa2_of_s(s):
    return (s - 1) * (s + 3) / ((s + 1) * (s - 3))


def constraint_relations(space: ParamSpace, eliminate_q=False):
    s, q, p = space.syms("s", "q", "p")
    rels = [Relation("P", 2, p ** 2 * 2 * q * (s - 3) / (3 * (s - 1)))]
    if eliminate_q:
        rels.append(Relation("q", 3, (s ** 2 - 1) / 8))
    else:
        rels.append(Relation("s", 2, 8 * q ** 3 + 1))
    return rels


def reduce_under_constraints(e: FieldElement, eliminate_q=False) -> FieldElement:
    return reduce_modulo_relations(e, constraint_relations(e.space, eliminate_q))


# ---------------------------------------------------------------------------
# helpers on x-power dictionaries

def _row(s: BiSeries, b):
    return {a: v for a, v in s.y_slice(b).items() if not v.is_zero()}


def _inv_quadratic_series(c0, c1, c2, n, one):
    """Taylor coefficients of 1/(c0 + c1 t + c2 t^2) up to t^(n-1)."""
    w = []
    inv0 = one / c0
    for j in range(n):
        acc = one if j == 0 else one * 0
        if j >= 1:
            acc = acc - c1 * w[j - 1]
        if j >= 2:
            acc = acc - c2 * w[j - 2]
        w.append(acc * inv0)
    return w


# ---------------------------------------------------------------------------
# first system: A1(x, y) = sum y^k A1_k(x)

def _g_series(ctx: EllipticContext, n):
    """G(y) = 1 + k2 (y^2 - 1) / (4 W), W = k2 + (4 - 2 k2) y + k2 y^2."""
    sp, k2 = ctx.space, ctx.k2
    w = _inv_quadratic_series(k2, 4 - 2 * k2, k2, n, sp.one())
    g = []
    for j in range(n):
        t = (w[j - 2] if j >= 2 else sp.zero()) - w[j]
        g.append(t * k2 / 4 + (1 if j == 0 else 0))
    return g


def apply_D1(s: BiSeries, ctx: EllipticContext, g) -> BiSeries:
    """D on x^a y^b: i P b x^(a-2) y^(b-2) - a/2 x^a y^b - i P a x^(a-2) y^(b-2) G(y)."""
    iP = ctx.space.I * ctx.P

    def rule(a, b):
        out = [(0, 0, ctx.space.const(-a) / 2)] if a else []
        out.append((-2, -2, iP * (b - a * g[0])))
        if a:
            for j in range(1, len(g)):
                out.append((-2, j - 2, -iP * a * g[j]))
        return out

    return apply_linear(s, rule, -2)


def a1_residual(A: BiSeries, ctx: EllipticContext, g=None) -> BiSeries:
    """3 W x^4 y^4 (A D^2 A - (D A)^2) + 4 p^2 y (A^3 - 1)."""
    sp, k2 = ctx.space, ctx.k2
    if g is None:
        g = _g_series(ctx, (A.yorder or 8) + 4)
    DA = apply_D1(A, ctx, g)
    DDA = apply_D1(DA, ctx, g)
    W = BiSeries(sp, {(4, 4): k2 * 3, (4, 5): (4 - 2 * k2) * 3, (4, 6): k2 * 3})
    cube = A * A * A - BiSeries.monomial(sp, 0, 0)
    return (A * DDA - DA * DA) * W + cube * BiSeries.monomial(sp, 0, 1, 4 * ctx.p ** 2)


def D_km(k, m):
    return 4 * (2 * k - 3 * m) * (2 * k - 3 * m - 1)


def resonant_slot(k):
    """x-power n = 2m with D_k(m) = 0 and m >= 0, or None."""
    for num in (2 * k, 2 * k - 1):
        if num % 3 == 0 and num >= 0:
            return 2 * (num // 3)
    return None


@dataclass
class EllExpansionA1:
    generators: list                      # {x-power: FE}
    ctx: EllipticContext
    free_constants: dict                  # level -> name of q_{2(N+1)} or None
    R: dict = field(default_factory=dict)  # level -> {2m: R_{k,2m}}

    def at_zero(self, k):
        return self.generators[k].get(0, self.ctx.space.zero())

    def degree(self, k):
        return max((n for n, v in self.generators[k].items() if not v.is_zero()), default=0)

    def to_biseries(self, order):
        terms = {}
        for k, gen in enumerate(self.generators[:order]):
            for n, v in gen.items():
                terms[(n, k)] = v
        return BiSeries(self.ctx.space, terms, order)


def a1_space(kmax):
    names = [f"q{resonant_slot(k)}" for k in range(2, kmax + 1) if resonant_slot(k)]
    return names


def compute_A1_elliptic(kmax: int = 7, ctx: EllipticContext = None) -> EllExpansionA1:
    if ctx is None:
        ctx = EllipticContext.generic(a1_space(kmax))
    sp = ctx.space
    g = _g_series(ctx, kmax + 4)
    gens = [{0: ctx.q}]
    free = {0: None}
    R = {}
    for k in range(1, kmax + 1):
        A = BiSeries(sp, {(n, j): v for j, gen in enumerate(gens) for n, v in gen.items()}, k + 1)
        r = _row(a1_residual(A, ctx, g), k)
        if any(n < 0 or n % 2 for n in r):
            raise AlgorithmInvariantViolation(f"level {k}: right-hand side is not a polynomial in x^2")
        slot = resonant_slot(k)
        gen = {}
        for n in sorted(set(r) | ({slot} if slot is not None else set())):
            mono = BiSeries.monomial(sp, n, k, yorder=k + 3)
            lam = _row(a1_residual_linear(mono, ctx, g), k).get(n)
            if lam is None or lam.is_zero():
                if n in r:
                    raise AlgorithmInvariantViolation(f"level {k}: resonant x^{n} forced nonzero")
                name = f"q{n}"
                gen[n] = sp.sym(name) if name in sp.names else sp.zero()
                free[k] = name
                continue
            gen[n] = -r[n] / lam
        free.setdefault(k, None)
        gens.append({n: v for n, v in gen.items() if not v.is_zero() or n == slot})
        scale = ctx.P ** (2 * k) * ctx.k2 ** k * ctx.q ** (2 * k - 1)
        R[k] = {n: gens[k][n] * D_km(k, n // 2) * scale
                for n in gens[k] if D_km(k, n // 2) != 0}
    # level 0 closes as well
    A = BiSeries(sp, {(0, 0): ctx.q}, 1)
    if _row(a1_residual(A, ctx, g), 0):
        raise AlgorithmInvariantViolation("A1_0 = q does not close level 0")
    return EllExpansionA1(gens, ctx, free, R)


def a1_residual_linear(mono: BiSeries, ctx: EllipticContext, g) -> BiSeries:
    """Part of the residual linear in a top-level monomial, around A = q."""
    sp, k2 = ctx.space, ctx.k2
    DDA = apply_D1(apply_D1(mono, ctx, g), ctx, g)
    W = BiSeries(sp, {(4, 4): k2 * 3, (4, 5): (4 - 2 * k2) * 3, (4, 6): k2 * 3})
    return (DDA * W).scale(ctx.q)


# ---------------------------------------------------------------------------
# symmetric system: B2(x, y) = sum x^k B2_k(y), A2(x, y) = sum y^k A2_k(x)

def _h_series(ctx: EllipticContext, n, sign):
    """k2 (y^2 - x^2) / (4 V) as sign * (1 - t^2) / (4 (1 + beta t + t^2)),
    t = x/y (sign +1) or y/x (sign -1), beta = (4 - 2 k2)/k2."""
    sp = ctx.space
    beta = (4 - 2 * ctx.k2) / ctx.k2
    c = _inv_quadratic_series(sp.one(), beta, sp.one(), n, sp.one())
    return [((c[j] - (c[j - 2] if j >= 2 else sp.zero())) / 4) * sign for j in range(n)]


def _conj_rule(ctx, h, along_x):
    """Monomial rule of the symmetric-system operator.

    along_x: keys are (y-power, x-power) and H is expanded in x/y; otherwise keys
    are (x-power, y-power) and H is expanded in y/x.  On x^a y^b the operator gives
    (a+b)/2 x^a y^b + i P x^(a-1) y^(b-1) ((a-b)/2 + (a+b) H)."""
    sp = ctx.space
    iP = sp.I * ctx.P

    def rule(u, v):
        a, b = (v, u) if along_x else (u, v)
        out = []
        if a + b:
            out.append((0, 0, sp.const(a + b) / 2))
        lead = sp.const(a - b) / 2 + h[0] * (a + b)
        out.append((-1, -1, iP * lead))
        if a + b:
            for j in range(1, len(h)):
                # H term t^j: along_x multiplies by x^j y^-j
                out.append((-1 - j, -1 + j, iP * h[j] * (a + b)))
        return out

    return rule


def conj_residual(A: BiSeries, ctx: EllipticContext, along_x=True, h=None) -> BiSeries:
    """3 x y V (A D^2 A - (D A)^2) + 4 p^2 (A^3 - 1), V = 4xy + k2 (y - x)^2."""
    sp, k2 = ctx.space, ctx.k2
    if h is None:
        h = _h_series(ctx, (A.yorder or 8) + 4, 1 if along_x else -1)
    rule = _conj_rule(ctx, h, along_x)
    DA = apply_linear(A, rule, -1)
    DDA = apply_linear(DA, rule, -1)
    # x y V = k2 x y^3 + (4 - 2 k2) x^2 y^2 + k2 x^3 y
    if along_x:
        V = {(3, 1): k2 * 3, (2, 2): (4 - 2 * k2) * 3, (1, 3): k2 * 3}
    else:
        V = {(1, 3): k2 * 3, (2, 2): (4 - 2 * k2) * 3, (3, 1): k2 * 3}
    cube = A * A * A - BiSeries.monomial(sp, 0, 0)
    return (A * DDA - DA * DA) * BiSeries(sp, V) + cube.scale(4 * ctx.p ** 2)


@dataclass
class EllExpansionB2:
    generators: list                     # {y-power: FE}
    ctx: EllipticContext
    constants: dict                      # level -> (name of c_{2k}, name of c_{2k-1})
    mode: str = "all"

    def coefficient(self, k, e):
        return self.generators[k].get(e, self.ctx.space.zero())

    def bottom(self, k):
        return self.coefficient(k, -k)

    def to_biseries(self, order):
        terms = {}
        for k, gen in enumerate(self.generators[:order]):
            for e, v in gen.items():
                terms[(e, k)] = v
        return BiSeries(self.ctx.space, terms, order)

    def mirror(self):
        """P -> -P on every coefficient (the A2 family in the variable x)."""
        P = self.ctx.P
        gens = [{e: v.subs({"P": -P}) for e, v in gen.items()} for gen in self.generators]
        return EllExpansionB2(gens, self.ctx, dict(self.constants), self.mode)

    def mirror_biseries(self, order):
        """A2(x, y) = sum y^k A2_k(x) keyed by (x-power, y-power)."""
        terms = {}
        for k, gen in enumerate(self.mirror().generators[:order]):
            for e, v in gen.items():
                terms[(e, k)] = v
        return BiSeries(self.ctx.space, terms, order)


def b2_constant_names(kmax, mode):
    if mode == "all":
        return tuple(f"c{n}" for n in range(1, 2 * kmax + 1))
    if mode == "c1":
        return ("c1",)
    return ()


def compute_B2_elliptic(kmax: int = 7, ctx: EllipticContext = None, mode="all") -> EllExpansionB2:
    """mode 'all' keeps every c_n symbolic, 'c1' sets c_n = 0 for n >= 2,
    'none' sets all of them to zero."""
    if ctx is None:
        ctx = EllipticContext.generic(b2_constant_names(kmax, mode))
    sp = ctx.space
    h = _h_series(ctx, kmax + 4, 1)
    rule = _conj_rule(ctx, h, True)
    V1 = BiSeries(sp, {(3, 1): ctx.k2 * 3, (2, 2): (4 - 2 * ctx.k2) * 3, (1, 3): ctx.k2 * 3})
    gens = [{0: ctx.q}]
    consts = {}

    def const(name):
        return sp.sym(name) if name in sp.names else sp.zero()

    for k in range(1, kmax + 1):
        B = BiSeries(sp, {(e, j): v for j, gen in enumerate(gens) for e, v in gen.items()}, k + 1)
        r = _row(conj_residual(B, ctx, True, h), k - 1)
        gen = {}
        for e1 in sorted(r):
            e = e1 - 1
            if (e + k) % 2 or not -k <= e <= 3 * k:
                raise AlgorithmInvariantViolation(f"level {k}: y^{e} outside the support")
        for e in range(-k, 3 * k + 1, 2):
            mono = BiSeries.monomial(sp, e, k, yorder=k + 3)
            DDm = apply_linear(apply_linear(mono, rule, -1), rule, -1)
            lam = _row((DDm * V1).scale(ctx.q), k - 1).get(e + 1)
            if lam is None or lam.is_zero():
                if e + 1 in r:
                    raise AlgorithmInvariantViolation(f"level {k}: resonant y^{e} forced nonzero")
                name = f"c{2 * k}" if e == 3 * k else f"c{2 * k - 1}"
                gen[e] = const(name)
                continue
            if e + 1 in r:
                gen[e] = -r[e + 1] / lam
        consts[k] = (f"c{2 * k}", f"c{2 * k - 1}")
        gens.append({e: v for e, v in gen.items() if not v.is_zero()})
    return EllExpansionB2(gens, ctx, consts, mode)


def check_b2_support(e: EllExpansionB2):
    """Support pattern, free top coefficients and c-free bottoms; raises on violation."""
    for k in range(1, len(e.generators)):
        for ex in e.generators[k]:
            if (ex + k) % 2 or not -k <= ex <= 3 * k:
                raise AlgorithmInvariantViolation(f"B2_{k}: y^{ex} outside the support")
        cnames = {n for n in e.ctx.space.names if n.startswith("c")}
        if e.bottom(k).free_symbols() & cnames:
            raise AlgorithmInvariantViolation(f"B2_{k}: bottom coefficient depends on c")
    return True


# ---------------------------------------------------------------------------
# Boutroux constraints

def ratio_defects(A1: EllExpansionA1, kmax=4):
    """A1_k(0)/A1_1(0) - k reduced under the constraints, k = 2..kmax."""
    base = A1.at_zero(1)
    return {k: A1.ctx.impose(A1.at_zero(k) / base - k) for k in range(2, kmax + 1)}


def derive_kappa_relation(A1: EllExpansionA1):
    """Eliminate P^2 with the k = 2 ratio and return the k = 3 condition as a
    sympy polynomial in k2 and q (numerator, content removed)."""
    k2, P, p, q = sympy.symbols("k2 P p q")
    P2 = sympy.Symbol("P2")
    e2 = sympy.together((A1.at_zero(2) / A1.at_zero(1) - 2).to_sympy())
    e3 = sympy.together((A1.at_zero(3) / A1.at_zero(1) - 3).to_sympy())
    if e3.has(sympy.I) or e2.has(sympy.I):
        raise AlgorithmInvariantViolation("ratios at x = 0 are expected to be real rational")
    n2 = sympy.numer(e2).subs(P ** 2, P2)
    sol = sympy.solve(sympy.expand(n2), P2)
    if len(sol) != 1:
        raise AlgorithmInvariantViolation("k = 2 ratio is not linear in P^2")
    n3 = sympy.numer(sympy.together(sympy.expand(sympy.numer(e3)).subs(P ** 2, P2).subs(P2, sol[0])))
    poly = sympy.factor(n3)
    return sol[0], poly


def kappa_relation_holds(poly):
    """Independent check: does k2 = (s-1)(s+3)/((s+1)(s-3)) with s^2 = 8q^3+1
    annihilate one factor of the k = 3 condition?"""
    k2, q, p = sympy.symbols("k2 q p")
    s = sympy.Symbol("s")
    for fac, _ in sympy.factor_list(poly)[1]:
        if not fac.has(k2):
            continue
        num = sympy.numer(sympy.together(fac.subs(k2, (s - 1) * (s + 3) / ((s + 1) * (s - 3)))))
        red = sympy.rem(sympy.Poly(sympy.expand(num), s), sympy.Poly(s ** 2 - 8 * q ** 3 - 1, s))
        if red.is_zero:
            return True
    return False


@dataclass
class BoutrouxBranch:
    q: complex
    s: complex
    k2: complex
    P_over_p: complex
    s_sign: int
    P_sign: int


def branch_from_q(q, s_sign=1, P_sign=1) -> BoutrouxBranch:
    q = complex(q)
    s = s_sign * cmath.sqrt(8 * q ** 3 + 1)
    for bad in (1, -1, 3, -3):
        if abs(s - bad) < 1e-12:
            raise DegenerateModulus(f"s = {bad}: trigonometric limit")
    k2 = (s - 1) * (s + 3) / ((s + 1) * (s - 3))
    Pp = P_sign * cmath.sqrt(2 * q * (s - 3) / (3 * (s - 1)))
    return BoutrouxBranch(q, s, k2, Pp, s_sign, P_sign)


def branches_from_Aphi(Aphi, s_sign=1, P_sign=1):
    """All three roots z of 4 z^3 - Aphi z^2 + 1 = 0, q = 2^(1/3) z."""
    import numpy as np
    roots = np.roots([4, -complex(Aphi), 0, 1])
    return [branch_from_q(2 ** (1 / 3) * z, s_sign, P_sign) for z in roots]


def solve_boutroux_constraints(mode="symbolic-verify", value=None, s_sign=1, P_sign=1, kmax=4):
    if mode == "symbolic-verify":
        A1 = compute_A1_elliptic(max(kmax, 4))
        defects = ratio_defects(A1, kmax)
        _, poly = derive_kappa_relation(A1)
        return {"defects": defects, "kappa_relation": kappa_relation_holds(poly),
                "condition": poly}
    if mode == "numeric-from-q":
        return branch_from_q(value, s_sign, P_sign)
    if mode == "numeric-from-Aphi":
        return branches_from_Aphi(value, s_sign, P_sign)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Weierstrass data over (q, s, t) modulo s^2 = 8q^3 + 1, t^3 = 2

@dataclass
class WeierstrassData:
    space: ParamSpace
    e: tuple
    mu2: FieldElement
    g2: FieldElement
    g3: FieldElement
    Aphi: FieldElement
    relations: list

    def reduce(self, x):
        return reduce_modulo_relations(x, self.relations)

    def checks(self):
        e1, e2, e3 = self.e
        t = self.space.sym("t")
        q, s = self.space.syms("q", "s")
        return {
            "sum_of_roots": self.reduce(e1 + e2 + e3).is_zero(),
            "g2": self.reduce(self.g2 - self.Aphi ** 2 / 12).is_zero(),
            "g3": self.reduce(self.g3 - (self.Aphi ** 3 / 216 - 1)).is_zero(),
            "Aphi_q": self.reduce(t * self.Aphi / 12
                                  - q * (s ** 2 + 3) / (3 * (s ** 2 - 1))).is_zero(),
        }


def weierstrass_bridge() -> WeierstrassData:
    sp = get_space(("q", "s", "t"))
    q, s, t = sp.syms("q", "s", "t")
    rels = [Relation("s", 2, 8 * q ** 3 + 1), Relation("t", 3, sp.const(2))]
    k2 = kappa2_of_s(s)
    # t^2 / 2 = 2^(-1/3)
    mu2 = -q * (s - 3) * t ** 2 / (2 * 3 * (s - 1))
    e1, e2, e3 = (2 - k2) * mu2, (2 * k2 - 1) * mu2, -(k2 + 1) * mu2
    g2 = -4 * (e1 * e2 + e1 * e3 + e2 * e3)
    g3 = 4 * e1 * e2 * e3
    Aphi = t ** 2 * (2 * q ** 3 + 1) / q ** 2
    red = lambda x: reduce_modulo_relations(x, rels)
    return WeierstrassData(sp, (red(e1), red(e2), red(e3)), red(mu2), red(g2), red(g3),
                           red(Aphi), rels)


def phase_map_symbolic():
    """vartheta_0 = -2 sqrt(3) i mu x0+ with mu = -i 2^(-2/3) P/p, as a sympy expression."""
    mu, x0, P, p = sympy.symbols("mu x0p P p")
    mu_val = -sympy.I * P / (2 ** sympy.Rational(2, 3) * p)
    return sympy.simplify(-2 * sympy.sqrt(3) * sympy.I * mu_val * x0)


# ---------------------------------------------------------------------------
# Fourier correction

@dataclass
class FourierCorrection:
    b: dict           # k -> b_{e,k}^{2-k} reduced (space s, P, p, c1)
    Q: dict           # k -> sympy Poly in s with integer coefficients (k >= 2)
    c1_part: dict     # k -> coefficient of 2 c1 p


def _split_P_c1(e: FieldElement):
    """e = P * u + w with u, w free of P (e already reduced mod P^2)."""
    parts = e.coeffs_in("P")
    if set(parts) - {0, 1}:
        raise AlgorithmInvariantViolation("P survives above degree one after reduction")
    sp = e.space
    return parts.get(1, sp.zero()), parts.get(0, sp.zero())


def fourier_correction(kmax: int = 7, B2: EllExpansionB2 = None) -> FourierCorrection:
    if B2 is None:
        B2 = compute_B2_elliptic(kmax, mode="c1")
    ctx = B2.ctx
    b, Qs, c1p = {}, {}, {}
    ssym = sympy.Symbol("s")
    for k in range(1, kmax + 1):
        raw = B2.coefficient(k, 2 - k) * ctx.p
        red = ctx.impose(raw, eliminate_q=True)
        if "q" in red.free_symbols():
            raise AlgorithmInvariantViolation(f"b_{k}: q survives the reduction")
        b[k] = red
        sp = red.space
        Ppart, rest = _split_P_c1(red)
        s, p = sp.syms("s", "p")
        cpart = rest.coeffs_in("c1") if "c1" in sp.names else {0: rest}
        if set(cpart) - {0, 1} or not cpart.get(0, sp.zero()).is_zero():
            raise AlgorithmInvariantViolation(f"b_{k}: P-free part is not proportional to c1")
        c1p[k] = cpart.get(1, sp.zero()) / (2 * p)
        if k >= 2:
            Qe = Ppart * p / (-4 * sp.I) * factorial(2 * k - 1) * ((s + 3) * (s - 1)) ** (k - 2)
            Qs[k] = sympy.Poly(sympy.expand(Qe.to_sympy()), ssym)
    return FourierCorrection(b, Qs, c1p)


def c1_coefficient_formula(k):
    s = sympy.Symbol("s")
    return sympy.cancel(((2 * (k - 1) ** 2 + 1) * (s - 3) * (s + 1) + 4 * s) / ((s + 3) * (s - 1)))


# ---------------------------------------------------------------------------
# leading term of u(tau)

@dataclass
class EllipticNumeric:
    kind = "elliptic"

    branch: BoutrouxBranch
    phi0: float
    theta0: complex = 0j
    b: float = 1.0
    eps: int = 1

    @property
    def p(self):
        return cmath.exp(2j * self.phi0 / 3)

    @property
    def Theta(self):
        return 3 ** 0.75 * (self.eps * self.b) ** (1 / 6)

    @property
    def P(self):
        return self.branch.P_over_p * self.p

    def r_of(self, tau):
        return tau * cmath.exp(-1j * self.phi0)

    def vartheta(self, tau):
        r = self.r_of(tau)
        return self.Theta ** 2 * self.P * r ** (2 / 3) + self.theta0

    def prefactor(self, tau):
        return self.eps * (self.eps * self.b) ** (2 / 3) / 2 * tau ** (1 / 3)


def leading_term_elliptic(ctx: EllipticNumeric, taus, route="sn", pole_radius=1e-3):
    """Leading-term values of u(tau); route 'sn' uses the sn^2 form, route 'xy'
    the symmetric-variable form with the unreduced B2_1 bottom coefficient.
    Returns (values, flags) with flags[i] True when sample i sits within
    pole_radius of an sn zero (value set to nan)."""
    from .numerics.jacobi import jacobi_eval
    br = ctx.branch
    vals, flags = [], []
    coef = 8 * ctx.p ** 2 * (br.q ** 3 - 1) / (3 * br.k2 * ctx.P ** 2 * br.q)
    for tau in taus:
        J = jacobi_eval(ctx.vartheta(tau) / 2, br.k2)
        if abs(J.sn) < pole_radius:
            vals.append(complex("nan"))
            flags.append(True)
            continue
        if route == "sn":
            A = br.q - (br.s - 3) / (br.s - 1) * br.q / J.sn ** 2
        else:
            r = ctx.r_of(tau)
            base = 1 / (ctx.Theta * r ** (1 / 3) * cmath.sqrt(J.dn))
            x = base / J.E
            y = base * J.E
            w = cmath.sqrt(y / x)
            A = br.q + coef / (w - 1 / w) ** 2
        vals.append(ctx.prefactor(tau) * A)
        flags.append(False)
    return vals, flags

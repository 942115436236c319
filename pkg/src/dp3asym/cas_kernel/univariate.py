"""Dense univariate polynomials, rational functions and truncated Taylor series
with FieldElement coefficients."""
from __future__ import annotations

import sympy

from ..errors import DivisionByZero, InvalidBasis, PoleAtExpansionPoint
from .field import FieldElement, ParamSpace


# ---------------------------------------------------------------------------
# dense polynomial helpers; index = power of the main variable

def ptrim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def padd(p, q, space):
    n = max(len(p), len(q))
    z = space.zero()
    return ptrim([(p[i] if i < len(p) else z) + (q[i] if i < len(q) else z) for i in range(n)])


def pneg(p):
    return [-c for c in p]


def psub(p, q, space):
    return padd(p, pneg(q), space)


def pscale(p, c):
    if c.is_zero():
        return []
    return ptrim([a * c for a in p])


def pmul(p, q, space):
    if not p or not q:
        return []
    out = [space.zero() for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * b
    return ptrim(out)


def ppow(p, k, space):
    r = [space.one()]
    for _ in range(k):
        r = pmul(r, p, space)
    return r


def pshift(p, k, space):
    """Multiply by var**k (k >= 0)."""
    if not p:
        return []
    return [space.zero()] * k + list(p)


def pdivmod(p, q, space):
    q = ptrim(q)
    if not q:
        raise DivisionByZero("polynomial division by zero")
    p = ptrim(p)
    if len(p) < len(q):
        return [], p
    lc_inv = q[-1].inverse()
    quo = [space.zero() for _ in range(len(p) - len(q) + 1)]
    r = list(p)
    for k in range(len(p) - len(q), -1, -1):
        c = r[k + len(q) - 1] * lc_inv
        quo[k] = c
        if c.is_zero():
            continue
        for j, b in enumerate(q):
            r[k + j] = r[k + j] - c * b
    return ptrim(quo), ptrim(r[:len(q) - 1])


def pderiv(p, space):
    return ptrim([p[i] * i for i in range(1, len(p))])


def ptheta(p, space):
    return ptrim([p[i] * i for i in range(len(p))])


def peval(p, v, space):
    acc = space.zero()
    for c in reversed(p):
        acc = acc * v + c
    return acc


def pcompose(p, q, space):
    """p(q(var))."""
    acc = []
    for c in reversed(p):
        acc = padd(pmul(acc, q, space), [c], space)
    return acc


def pmonic(p):
    p = ptrim(p)
    inv = p[-1].inverse()
    return [c * inv for c in p]


def pequal(p, q):
    p, q = ptrim(p), ptrim(q)
    return len(p) == len(q) and all(a == b for a, b in zip(p, q))


def pgcd(p, q, space):
    p, q = ptrim(p), ptrim(q)
    while q:
        _, r = pdivmod(p, q, space)
        p, q = q, r
    return pmonic(p) if p else []


def pextgcd(p, q, space):
    """(g, s, t) with s*p + t*q = g monic."""
    r0, r1 = ptrim(p), ptrim(q)
    s0, s1 = [space.one()], []
    t0, t1 = [], [space.one()]
    while r1:
        quo, r = pdivmod(r0, r1, space)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(quo, s1, space), space)
        t0, t1 = t1, psub(t0, pmul(quo, t1, space), space)
    inv = r0[-1].inverse()
    return pscale(r0, inv), pscale(s0, inv), pscale(t0, inv)


def pdegree(p):
    p = ptrim(p)
    return len(p) - 1 if p else -1


def poly_from_sympy(space: ParamSpace, expr, var):
    """Dense coefficient list of a sympy expression polynomial in var."""
    x = sympy.Symbol(var)
    expr = sympy.expand(sympy.sympify(expr, locals=dict(space._sym, **{var: x})))
    P = sympy.Poly(expr, x)
    coeffs = P.all_coeffs()[::-1]
    return ptrim([space.from_sympy(c) for c in coeffs])


def poly_to_sympy(p, var):
    x = sympy.Symbol(var)
    return sympy.Add(*[c.to_sympy() * x ** i for i, c in enumerate(p)])


# ---------------------------------------------------------------------------

class RationalFunction:
    """num(var) / prod(factor_i(var)**mult_i) with monic factors."""

    __slots__ = ("space", "var", "num", "den")

    def __init__(self, space: ParamSpace, var: str, num, den=(), normalize=True):
        self.space = space
        self.var = var
        num = ptrim(num)
        den = [(ptrim(f), int(m)) for f, m in den if m]
        if normalize:
            num, den = _normalize_rf(space, num, den)
        self.num = tuple(num)
        self.den = tuple((tuple(f), m) for f, m in den)

    # constructors -----------------------------------------------------
    @classmethod
    def from_poly(cls, space, var, p):
        return cls(space, var, p, ())

    @classmethod
    def constant(cls, space, var, c):
        return cls(space, var, [space.const(c)], ())

    @classmethod
    def parse(cls, space, var, text):
        """Build from a sympy-syntax rational expression in var and parameters."""
        x = sympy.Symbol(var)
        expr = sympy.sympify(text, locals=dict(space._sym, **{var: x}))
        num, den = sympy.fraction(sympy.together(expr))
        nump = poly_from_sympy(space, num, var)
        denp = poly_from_sympy(space, den, var)
        # split the denominator into powers of x and a leftover factor with sympy's help
        factors = []
        for fac, mult in sympy.factor_list(sympy.expand(den), x)[1]:
            fp = poly_from_sympy(space, fac, var)
            if pdegree(fp) >= 1:
                factors.append((fp, mult))
        prod = [space.one()]
        for fp, m in factors:
            prod = pmul(prod, ppow(fp, m, space), space)
        ratio, rem = pdivmod(denp, prod, space)
        if rem or pdegree(ratio) != 0:
            raise ValueError("could not factor denominator")
        nump = pscale(nump, ratio[0].inverse())
        return cls(space, var, nump, factors)

    # basic views --------------------------------------------------------
    def den_poly(self):
        out = [self.space.one()]
        for f, m in self.den:
            out = pmul(out, ppow(list(f), m, self.space), self.space)
        return out

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return not self.den

    def pole_order(self, factor):
        factor = pmonic(factor)
        for f, m in self.den:
            if pequal(f, factor):
                return m
        return 0

    def _like(self, num, den, normalize=True):
        return RationalFunction(self.space, self.var, num, den, normalize)

    def _coerce(self, o):
        if isinstance(o, RationalFunction):
            if o.var != self.var:
                raise TypeError("main variable mismatch")
            return o
        if isinstance(o, (list, tuple)):
            return self._like(list(o), ())
        return self._like([self.space.const(o)], ())

    # arithmetic -----------------------------------------------------------
    def _common(self, o):
        facs = []
        for f, m in list(self.den) + list(o.den):
            for i, (g, k) in enumerate(facs):
                if pequal(f, g):
                    break
            else:
                facs.append((f, 0))
        mults = []
        for f, _ in facs:
            mults.append((self.pole_order(list(f)), o.pole_order(list(f))))
        return facs, mults

    def __add__(self, o):
        o = self._coerce(o)
        S = self.space
        if not self.den and not o.den:
            return self._like(padd(self.num, o.num, S), (), normalize=False)
        facs, mults = self._common(o)
        n1, n2 = list(self.num), list(o.num)
        den = []
        for (f, _), (m1, m2) in zip(facs, mults):
            M = max(m1, m2)
            if M > m1:
                n1 = pmul(n1, ppow(list(f), M - m1, S), S)
            if M > m2:
                n2 = pmul(n2, ppow(list(f), M - m2, S), S)
            den.append((list(f), M))
        return self._like(padd(n1, n2, S), den)

    __radd__ = __add__

    def __neg__(self):
        return self._like(pneg(self.num), self.den, normalize=False)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, FieldElement) or not isinstance(o, (RationalFunction, list, tuple)):
            c = o if isinstance(o, FieldElement) else self.space.const(o)
            return self._like(pscale(list(self.num), c), self.den, normalize=False)
        o = self._coerce(o)
        S = self.space
        facs, mults = self._common(o)
        den = [(list(f), m1 + m2) for (f, _), (m1, m2) in zip(facs, mults)]
        return self._like(pmul(list(self.num), list(o.num), S), den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, RationalFunction):
            raise TypeError("division by a RationalFunction is not supported; use mul_factor_power")
        c = o if isinstance(o, FieldElement) else self.space.const(o)
        return self * c.inverse()

    def __pow__(self, k):
        r = self._like([self.space.one()], ())
        for _ in range(k):
            r = r * self
        return r

    def mul_factor_power(self, factor, k):
        """Multiply by factor**k, k possibly negative; factor need not be monic."""
        S = self.space
        factor = ptrim(factor)
        lc = factor[-1]
        mon = pmonic(factor)
        if k >= 0:
            return self._like(pmul(list(self.num), ppow(factor, k, S), S), self.den)
        num = pscale(list(self.num), lc ** k)
        den = [(list(f), m) for f, m in self.den] + [(mon, -k)]
        return self._like(num, den)

    # calculus -------------------------------------------------------------
    def derivative(self):
        S = self.space
        N = list(self.num)
        if not self.den:
            return self._like(pderiv(N, S), (), normalize=False)
        prod = [S.one()]
        for f, _ in self.den:
            prod = pmul(prod, list(f), S)
        term1 = pmul(pderiv(N, S), prod, S)
        term2 = []
        for i, (f, m) in enumerate(self.den):
            others = [S.one()]
            for j, (g, _) in enumerate(self.den):
                if j != i:
                    others = pmul(others, list(g), S)
            term2 = padd(term2, pscale(pmul(pderiv(list(f), S), others, S), S.const(m)), S)
        num = psub(term1, pmul(N, term2, S), S)
        den = [(list(f), m + 1) for f, m in self.den]
        return self._like(num, den)

    def theta(self):
        d = self.derivative()
        return d._like(pshift(list(d.num), 1, self.space), d.den)

    # evaluation -----------------------------------------------------------
    def evaluate(self, v):
        S = self.space
        v = v if isinstance(v, FieldElement) else S.const(v)
        den = S.one()
        for f, m in self.den:
            den = den * peval(list(f), v, S) ** m
        if den.is_zero():
            raise DivisionByZero("rational function evaluated at a pole")
        return peval(list(self.num), v, S) / den

    def map_coeffs(self, fn):
        num = [fn(c) for c in self.num]
        den = [([fn(c) for c in f], m) for f, m in self.den]
        space = num[0].space if num else self.space
        for f, _ in den:
            if f:
                space = f[0].space
        return RationalFunction(space, self.var, num, den)

    def subs(self, mapping):
        return self.map_coeffs(lambda c: c.subs(mapping))

    def to_space(self, dst, extra=None):
        return RationalFunction(dst, self.var, [c.to_space(dst, extra) for c in self.num],
                                [([c.to_space(dst, extra) for c in f], m) for f, m in self.den])

    def __eq__(self, o):
        if not isinstance(o, RationalFunction):
            try:
                o = self._coerce(o)
            except TypeError:
                return NotImplemented
        d = self - o
        return d.is_zero()

    def __hash__(self):
        return hash((self.var, len(self.num), len(self.den)))

    def to_sympy(self):
        den = sympy.Mul(*[poly_to_sympy(list(f), self.var) ** m for f, m in self.den])
        return poly_to_sympy(list(self.num), self.var) / den

    def __repr__(self):
        return f"RationalFunction({self.to_sympy()})"

    def latex(self):
        return sympy.latex(self.to_sympy())


def _normalize_rf(space, num, den):
    if any(not f for f, _ in den):
        raise DivisionByZero("zero factor in denominator basis")
    if not num:
        return [], []
    merged = []
    for f, m in den:
        if pdegree(f) == 0:
            num = pscale(num, f[0] ** (-m))
            continue
        lc = f[-1]
        if not lc == 1:
            num = pscale(num, lc ** (-m))
            f = pmonic(f)
        for i, (g, k) in enumerate(merged):
            if pequal(f, g):
                merged[i] = (g, k + m)
                break
        else:
            merged.append((f, m))
    out = []
    for f, m in merged:
        while m > 0:
            q, r = pdivmod(num, f, space)
            if r:
                break
            num = q
            m -= 1
        if m > 0:
            out.append((f, m))
    out.sort(key=lambda fm: (len(fm[0]), str(fm[0][0].to_sympy()) if fm[0] else ""))
    return num, out


def normalize_rational(f: RationalFunction) -> RationalFunction:
    """Canonical form: monic pairwise-merged factors, all cancellations done."""
    return RationalFunction(f.space, f.var, list(f.num), [(list(g), m) for g, m in f.den])


# ---------------------------------------------------------------------------

class TaylorSeries:
    """Truncated power series sum coeffs[n] var**n + O(var**order)."""

    __slots__ = ("space", "var", "coeffs", "order")

    def __init__(self, space, var, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        coeffs = coeffs[:order] + [space.zero()] * max(0, order - len(coeffs))
        self.space = space
        self.var = var
        self.coeffs = tuple(coeffs)
        self.order = order

    def __len__(self):
        return self.order

    def __getitem__(self, n):
        return self.coeffs[n]

    def _check(self, o):
        if o.var != self.var:
            raise TypeError("main variable mismatch")

    def __add__(self, o):
        self._check(o)
        n = min(self.order, o.order)
        return TaylorSeries(self.space, self.var, [self.coeffs[i] + o.coeffs[i] for i in range(n)], n)

    def __sub__(self, o):
        self._check(o)
        n = min(self.order, o.order)
        return TaylorSeries(self.space, self.var, [self.coeffs[i] - o.coeffs[i] for i in range(n)], n)

    def __neg__(self):
        return TaylorSeries(self.space, self.var, [-c for c in self.coeffs], self.order)

    def __mul__(self, o):
        if not isinstance(o, TaylorSeries):
            c = o if isinstance(o, FieldElement) else self.space.const(o)
            return TaylorSeries(self.space, self.var, [a * c for a in self.coeffs], self.order)
        self._check(o)
        n = min(self.order, o.order)
        out = []
        for k in range(n):
            acc = self.space.zero()
            for i in range(k + 1):
                a, b = self.coeffs[i], o.coeffs[k - i]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return TaylorSeries(self.space, self.var, out, n)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if not isinstance(o, TaylorSeries):
            c = o if isinstance(o, FieldElement) else self.space.const(o)
            return self * c.inverse()
        self._check(o)
        if o.coeffs[0].is_zero():
            raise PoleAtExpansionPoint("series division by a series vanishing at 0")
        n = min(self.order, o.order)
        inv0 = o.coeffs[0].inverse()
        out = []
        for k in range(n):
            acc = self.coeffs[k]
            for i in range(1, k + 1):
                b = o.coeffs[i]
                if not b.is_zero():
                    acc = acc - b * out[k - i]
            out.append(acc * inv0)
        return TaylorSeries(self.space, self.var, out, n)

    def derivative(self):
        return TaylorSeries(self.space, self.var,
                            [self.coeffs[i] * i for i in range(1, self.order)], self.order - 1)

    def log_derivative(self):
        return series_arith(self, None, "log-derivative")

    def __eq__(self, o):
        if not isinstance(o, TaylorSeries):
            return NotImplemented
        return (self.var == o.var and self.order == o.order
                and all(a == b for a, b in zip(self.coeffs, o.coeffs)))

    def __repr__(self):
        return f"TaylorSeries({[str(c) for c in self.coeffs]}, order={self.order})"


def series_arith(a: TaylorSeries, b, op: str) -> TaylorSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "log-derivative":
        if a.coeffs[0].is_zero():
            raise PoleAtExpansionPoint("log-derivative of a series vanishing at 0")
        d = a.derivative()
        trunc = TaylorSeries(a.space, a.var, a.coeffs[:d.order], d.order)
        return d / trunc
    raise ValueError(f"unknown series operation {op!r}")


def taylor_coefficients(f: RationalFunction, order: int) -> TaylorSeries:
    S = f.space
    f = normalize_rational(f)
    den = f.den_poly()
    if den[0].is_zero():
        raise PoleAtExpansionPoint("denominator vanishes at the expansion point")
    num = TaylorSeries(S, f.var, list(f.num), order)
    return num / TaylorSeries(S, f.var, den, order)


def taylor_to_poly(t: TaylorSeries):
    return ptrim(list(t.coeffs))


# ---------------------------------------------------------------------------
# partial fractions

def _looks_reducible(space, f):
    deg = pdegree(f)
    if deg <= 1:
        return False
    if f[0].is_zero():
        return True
    if not pgcd(f, pderiv(f, space), space) == [space.one()]:
        return True
    if all(not c.has_i() for c in f):
        expr = sympy.together(poly_to_sympy(f, "__v"))
        num, _ = sympy.fraction(expr)
        facs = sympy.factor_list(num, sympy.Symbol("__v"))[1]
        nontriv = [g for g, m in facs if sympy.degree(g, sympy.Symbol("__v")) >= 1]
        if len(nontriv) > 1 or any(m > 1 for g, m in facs if sympy.degree(g, sympy.Symbol("__v")) >= 1):
            return True
    return False


def partial_fraction_decompose(f: RationalFunction, basis):
    """Return (polynomial_part, {(i, power): numerator}) with f equal to
    polynomial_part + sum numerator / basis[i]**power and deg numerator < deg basis[i]."""
    S = f.space
    basis = [ptrim(b) for b in basis]
    for i, b in enumerate(basis):
        if pdegree(b) < 1 or _looks_reducible(S, b):
            raise InvalidBasis(f"basis factor {i} is constant or reducible")
        for j in range(i):
            if pdegree(pgcd(b, basis[j], S)) > 0:
                raise InvalidBasis(f"basis factors {j} and {i} are not coprime")
    f = normalize_rational(f)
    num = list(f.num)
    mults = [0] * len(basis)
    for g, m in f.den:
        for i, b in enumerate(basis):
            if pequal(g, pmonic(b)):
                num = pscale(num, b[-1] ** m)  # g**m = b**m / lc**m
                mults[i] = m
                break
        else:
            raise InvalidBasis("denominator factor not in the basis")
    D = [S.one()]
    for b, m in zip(basis, mults):
        D = pmul(D, ppow(b, m, S), S)
    poly_part, R = pdivmod(num, D, S)
    out = {}
    for i, (b, m) in enumerate(zip(basis, mults)):
        if m == 0:
            out[(i, 1)] = []
            continue
        bm = ppow(b, m, S)
        other = [S.one()]
        for j, (c, k) in enumerate(zip(basis, mults)):
            if j != i and k:
                other = pmul(other, ppow(c, k, S), S)
        # A_i = R * other^{-1} mod b^m
        if len(other) == 1:
            Ai = pscale(R, other[0].inverse())
            _, Ai = pdivmod(Ai, bm, S)
        else:
            g, s, _ = pextgcd(other, bm, S)
            _, Ai = pdivmod(pmul(R, s, S), bm, S)
        # b-adic expansion of A_i
        for k in range(m, 0, -1):
            Ai, r = pdivmod(Ai, b, S)
            out[(i, k)] = r
    return poly_part, out


def recombine(space, var, poly_part, parts, basis):
    acc = RationalFunction(space, var, poly_part, ())
    for (i, k), r in parts.items():
        if r:
            acc = acc + RationalFunction(space, var, r, ()).mul_factor_power(basis[i], -k)
    return acc

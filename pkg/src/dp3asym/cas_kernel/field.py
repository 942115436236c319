"""Parameter polynomials and their fraction field over Q(i).

Polynomials are sympy sparse polynomials over QQ whose first generator is the
imaginary unit ``I``; every product is reduced with I**2 = -1, so a reduced
polynomial has I-degree at most one and equality of reduced forms is equality
in Q(i)[params].  Working over QQ keeps sympy's fast rational gcd available;
Gaussian gcds are handled by exact-division probes plus the gcd of the real
and imaginary parts (see ``_gcd``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from ..errors import DivisionByZero, MissingBinding
from .gaussian import GaussianRational, _frac


# ---------------------------------------------------------------------------
# raw polynomial helpers (PolyElement over QQ, generator 0 is I)

def _reduce_i(p):
    if not p:
        return p
    if max(m[0] for m in p) < 2:
        return p
    out = {}
    for m, c in p.items():
        e = m[0]
        if e >= 2:
            if (e // 2) % 2:
                c = -c
            m = (e % 2,) + m[1:]
        out[m] = out.get(m, 0) + c
    return p.ring.from_dict({m: c for m, c in out.items() if c})


def _split(p):
    """p = p0 + I*p1 with p0, p1 free of I."""
    R = p.ring
    d0, d1 = {}, {}
    for m, c in p.items():
        if m[0]:
            d1[(0,) + m[1:]] = c
        else:
            d0[m] = c
    return R.from_dict(d0), R.from_dict(d1)


def _conj(p):
    if not any(m[0] for m in p):
        return p
    return p.ring.from_dict({m: (-c if m[0] else c) for m, c in p.items()})


def _i_free(p) -> bool:
    return not any(m[0] for m in p)


def _is_gaussian_const(p) -> bool:
    return all(not any(m[1:]) for m in p)


def _gaussian_of(p) -> GaussianRational:
    re = im = 0
    for m, c in p.items():
        if m[0]:
            im = c
        else:
            re = c
    return GaussianRational(_frac(re), _frac(im))


def _scale_gaussian(p, g: GaussianRational):
    """p * g for a Gaussian constant g."""
    R = p.ring
    if g.im == 0:
        return p * _qq(g.re)
    c = R.from_dict({(0,) * R.ngens: _qq(g.re), (1,) + (0,) * (R.ngens - 1): _qq(g.im)})
    return _reduce_i(p * c)


def _qq(f: Fraction):
    return QQ(f.numerator, f.denominator)


def _exquo(f, g):
    """Exact quotient f/g over Q(i)[params] or None."""
    if not g:
        raise DivisionByZero("exact division by zero polynomial")
    if _i_free(g):
        try:
            return f.exquo(g)
        except ExactQuotientFailed:
            return None
    gb = _conj(g)
    ng = _reduce_i(g * gb)
    try:
        return _reduce_i(f * gb).exquo(ng)
    except ExactQuotientFailed:
        return None


def _gcd(f, g):
    # a gcd taken with I as a plain variable divides both in Q(i)[params]
    h = f.gcd(g)
    if _i_free(f) and _i_free(g):
        return h
    if not h.is_ground:
        f, g = f.exquo(h), g.exquo(h)
    else:
        h = f.ring.one
    if len(g) <= len(f):
        if _exquo(f, g) is not None:
            return _reduce_i(h * g)
    else:
        if _exquo(g, f) is not None:
            return _reduce_i(h * f)
    # every common factor has its norm dividing gcd(N(f), N(g)) over Q
    R = f.ring
    G = _reduce_i(f * _conj(f)).gcd(_reduce_i(g * _conj(g)))
    if G.is_ground:
        return h
    for phi, _ in G.factor_list()[1]:
        cands = [phi]
        if _exquo(f, phi) is None or _exquo(g, phi) is None:
            expr = phi.as_expr()
            cands = []
            for psi, _m in sympy.factor_list(expr, gaussian=True)[1]:
                cands.append(_reduce_i(R.from_expr(sympy.expand(psi.subs(sympy.I, R.symbols[0])))))
        for psi in cands:
            if psi.is_ground:
                continue
            while True:
                qf, qg = _exquo(f, psi), _exquo(g, psi)
                if qf is None or qg is None:
                    break
                f, g = qf, qg
                h = _reduce_i(h * psi)
    return h


def _monomial_content(n, d):
    nv = n.ring.ngens
    mins = [None] * nv
    for p in (n, d):
        for m in p:
            for i in range(1, nv):
                e = m[i]
                if mins[i] is None or e < mins[i]:
                    mins[i] = e
    return tuple(0 if (i == 0 or mins[i] is None) else mins[i] for i in range(nv))


def _shift(p, mono, sign=-1):
    return p.ring.from_dict({tuple(a + sign * b for a, b in zip(m, mono)): c for m, c in p.items()})


def _unit_normalize(n, d):
    # leading monomial of d ignoring the I exponent; make that coefficient 1
    M = max(m[1:] for m in d)
    c0 = d.get((0,) + M, 0)
    c1 = d.get((1,) + M, 0)
    g = GaussianRational(_frac(c0), _frac(c1))
    if g == 1:
        return n, d
    inv = GaussianRational(1) / g
    return _scale_gaussian(n, inv), _scale_gaussian(d, inv)


def _normalize(n, d):
    R = n.ring
    if not d:
        raise DivisionByZero("zero denominator")
    if not n:
        return R.zero, R.one
    if d == R.one:
        return n, d
    mono = _monomial_content(n, d)
    if any(mono):
        n = _shift(n, mono)
        d = _shift(d, mono)
    if _is_gaussian_const(d):
        inv = GaussianRational(1) / _gaussian_of(d)
        return _scale_gaussian(n, inv), R.one
    if len(d) > 1:
        g = _gcd(n, d)
        if not _is_gaussian_const(g):
            n2 = _exquo(n, g)
            d2 = _exquo(d, g)
            if n2 is not None and d2 is not None:
                n, d = n2, d2
    return _unit_normalize(n, d)


# ---------------------------------------------------------------------------

class ParamSpace:
    """Ordered list of formal parameters with a shared polynomial ring."""

    def __init__(self, names):
        names = tuple(names)
        if "I" in names:
            raise ValueError("'I' is reserved for the imaginary unit")
        if len(set(names)) != len(names):
            raise ValueError("duplicate parameter names")
        self.names = names
        self.ring = PolyRing(("I",) + names, QQ, sympy.polys.orderings.lex)
        self._index = {nm: i + 1 for i, nm in enumerate(names)}
        self._sym = {nm: sympy.Symbol(nm) for nm in names}

    def __repr__(self):
        return f"ParamSpace({list(self.names)})"

    def __eq__(self, other):
        return isinstance(other, ParamSpace) and other.names == self.names

    def __hash__(self):
        return hash(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a parameter of {self!r}") from None

    # constructors -----------------------------------------------------
    def sym(self, name) -> "FieldElement":
        return FieldElement(self, self.ring.gens[self.index(name)], self.ring.one, True)

    def syms(self, *names):
        return tuple(self.sym(n) for n in names)

    @property
    def I(self) -> "FieldElement":
        return FieldElement(self, self.ring.gens[0], self.ring.one, True)

    def zero(self):
        return FieldElement(self, self.ring.zero, self.ring.one, True)

    def one(self):
        return FieldElement(self, self.ring.one, self.ring.one, True)

    def const(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            return v.to_space(self)
        g = GaussianRational.coerce(v)
        return FieldElement(self, _scale_gaussian(self.ring.one, g), self.ring.one, True)

    def __call__(self, v) -> "FieldElement":
        if isinstance(v, str):
            return self.parse(v)
        return self.const(v)

    def parse(self, text) -> "FieldElement":
        """Parse a sympy-syntax expression; ``I`` is the imaginary unit."""
        loc = dict(self._sym)
        expr = sympy.sympify(text, locals=loc) if isinstance(text, str) else sympy.sympify(text)
        return self.from_sympy(expr)

    def from_sympy(self, expr) -> "FieldElement":
        Isym = sympy.Symbol("I")
        expr = sympy.sympify(expr).subs(sympy.I, Isym)
        num, den = sympy.fraction(sympy.together(expr))
        num = self.ring.from_expr(sympy.expand(num)) if num != 0 else self.ring.zero
        den = self.ring.from_expr(sympy.expand(den))
        return FieldElement(self, _reduce_i(num), _reduce_i(den))

    def extend(self, *names) -> "ParamSpace":
        new = [n for n in names if n not in self._index]
        return get_space(self.names + tuple(new))

    def poly(self, p) -> "ParamPoly":
        return ParamPoly(self, p)


@lru_cache(maxsize=None)
def _space_cached(names):
    return ParamSpace(names)


def get_space(names) -> ParamSpace:
    return _space_cached(tuple(names))


class ParamPoly:
    """Public view of a reduced polynomial in a ParamSpace."""

    __slots__ = ("space", "p")

    def __init__(self, space: ParamSpace, p):
        self.space = space
        self.p = _reduce_i(p)

    @classmethod
    def from_terms(cls, space, terms):
        R = space.ring
        acc = R.zero
        for exps, coef in terms.items():
            g = GaussianRational.coerce(coef)
            if len(exps) != len(space.names):
                raise ValueError("exponent vector length mismatch")
            mono = R.from_dict({(0,) + tuple(exps): QQ(1)})
            acc += _scale_gaussian(mono, g)
        return cls(space, acc)

    def terms(self):
        out = {}
        for m, c in self.p.items():
            key = tuple(m[1:])
            g = out.get(key, GaussianRational(0))
            part = GaussianRational(0, _frac(c)) if m[0] else GaussianRational(_frac(c))
            out[key] = g + part
        return {k: v for k, v in sorted(out.items(), reverse=True) if v}

    def _wrap(self, p):
        return ParamPoly(self.space, p)

    def _coerce(self, o):
        if isinstance(o, ParamPoly):
            return o.p
        return _scale_gaussian(self.space.ring.one, GaussianRational.coerce(o))

    def __add__(self, o):
        return self._wrap(self.p + self._coerce(o))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(self.p - self._coerce(o))

    def __rsub__(self, o):
        return self._wrap(self._coerce(o) - self.p)

    def __neg__(self):
        return self._wrap(-self.p)

    def __mul__(self, o):
        return self._wrap(_reduce_i(self.p * self._coerce(o)))

    __rmul__ = __mul__

    def __pow__(self, k):
        r = self.space.ring.one
        for _ in range(k):
            r = _reduce_i(r * self.p)
        return self._wrap(r)

    def __eq__(self, o):
        if isinstance(o, ParamPoly):
            return self.space == o.space and self.p == o.p
        try:
            return self.p == self._coerce(o)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.p.items())))

    def __repr__(self):
        return f"ParamPoly({FieldElement(self.space, self.p, self.space.ring.one, True)})"


class FieldElement:
    """Element num/den of Q(i)(params) kept in normalized form."""

    __slots__ = ("space", "n", "d")

    def __init__(self, space: ParamSpace, n, d=None, normalized=False):
        self.space = space
        if d is None:
            d = space.ring.one
        if not normalized:
            n, d = _normalize(n, d)
        self.n = n
        self.d = d

    # views ---------------------------------------------------------------
    @property
    def num(self) -> ParamPoly:
        return ParamPoly(self.space, self.n)

    @property
    def den(self) -> ParamPoly:
        return ParamPoly(self.space, self.d)

    def _new(self, n, d, normalized=False):
        return FieldElement(self.space, n, d, normalized)

    def _coerce(self, o) -> "FieldElement":
        if isinstance(o, FieldElement):
            if o.space is self.space or o.space == self.space:
                return o
            raise TypeError(f"mixing parameter spaces {self.space} and {o.space}")
        return self.space.const(o)

    # arithmetic ----------------------------------------------------------
    def __add__(self, o):
        try:
            o = self._coerce(o)
        except (TypeError, ValueError):
            return NotImplemented
        one = self.space.ring.one
        if self.d == one and o.d == one:
            return self._new(self.n + o.n, one, True)
        if self.d == o.d:
            return self._new(self.n + o.n, self.d)
        return self._new(_reduce_i(self.n * o.d + o.n * self.d), _reduce_i(self.d * o.d))

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.n, self.d, True)

    def __sub__(self, o):
        try:
            o = self._coerce(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        try:
            o = self._coerce(o)
        except (TypeError, ValueError):
            return NotImplemented
        one = self.space.ring.one
        if self.d == one and o.d == one:
            return self._new(_reduce_i(self.n * o.n), one, True)
        return self._new(_reduce_i(self.n * o.n), _reduce_i(self.d * o.d))

    __rmul__ = __mul__

    def inverse(self):
        if not self.n:
            raise DivisionByZero("inverse of zero")
        return self._new(self.d, self.n)

    def __truediv__(self, o):
        try:
            o = self._coerce(o)
        except (TypeError, ValueError):
            return NotImplemented
        if not o.n:
            raise DivisionByZero("division by zero field element")
        return self._new(_reduce_i(self.n * o.d), _reduce_i(self.d * o.n))

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.space.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    # predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.n

    def __bool__(self):
        return bool(self.n)

    def __eq__(self, o):
        try:
            o = self._coerce(o)
        except (TypeError, ValueError):
            return NotImplemented
        if self.n == o.n and self.d == o.d:
            return True
        return _reduce_i(self.n * o.d) == _reduce_i(o.n * self.d)

    def __hash__(self):
        return hash((tuple(sorted(self.n.items())), tuple(sorted(self.d.items()))))

    def is_polynomial(self) -> bool:
        return _is_gaussian_const(self.d)

    def is_constant(self) -> bool:
        return _is_gaussian_const(self.n) and _is_gaussian_const(self.d)

    def as_gaussian(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _gaussian_of(self.n) / _gaussian_of(self.d)

    def free_symbols(self):
        used = set()
        for p in (self.n, self.d):
            for m in p:
                for i, e in enumerate(m[1:]):
                    if e:
                        used.add(self.space.names[i])
        return used

    def has_i(self) -> bool:
        return not (_i_free(self.n) and _i_free(self.d))

    # structure -----------------------------------------------------------
    def conjugate_i(self):
        """Image under i -> -i (parameters untouched)."""
        return self._new(_conj(self.n), _conj(self.d))

    def degree(self, name) -> int:
        i = self.space.index(name)
        return max((m[i] for m in self.n), default=0)

    def coeffs_in(self, name):
        """Coefficients of num in powers of a parameter, each over den."""
        i = self.space.index(name)
        R = self.space.ring
        buckets = {}
        for m, c in self.n.items():
            e = m[i]
            mm = m[:i] + (0,) + m[i + 1:]
            buckets.setdefault(e, {})[mm] = c
        return {e: FieldElement(self.space, R.from_dict(t), self.d) for e, t in buckets.items()}

    def subs(self, mapping):
        """Simultaneous substitution name -> FieldElement/number."""
        if not mapping:
            return self
        vals = {self.space.index(k): self._coerce(v) for k, v in mapping.items()}
        return _poly_subs(self.space, self.n, vals) / _poly_subs(self.space, self.d, vals)

    def to_space(self, dst: ParamSpace, extra=None):
        """Re-home into another space; names absent from dst need values in extra."""
        if dst == self.space:
            return FieldElement(dst, self.n, self.d, True)
        extra = extra or {}
        missing = self.free_symbols() - set(dst.names) - set(extra)
        if missing:
            raise MissingBinding(f"cannot move {sorted(missing)} into {dst}")
        if extra:
            src = self.subs({k: v for k, v in extra.items() if k in self.space._index})
            return src.to_space(dst)
        perm = [0] + [dst._index.get(nm) for nm in self.space.names]

        def mv(p):
            out = {}
            for m, c in p.items():
                mm = [0] * dst.ring.ngens
                for i, e in enumerate(m):
                    if e:
                        mm[perm[i]] += e
                out[tuple(mm)] = c
            return dst.ring.from_dict(out)

        return FieldElement(dst, mv(self.n), mv(self.d), True)

    def map_params(self, fn):
        """Apply fn(name) -> FieldElement to every parameter (a ring map)."""
        return self.subs({nm: fn(nm) for nm in self.free_symbols()})

    # evaluation / display -------------------------------------------------
    def to_sympy(self):
        names = ("I",) + self.space.names
        syms = [sympy.I] + [sympy.Symbol(n) for n in names[1:]]

        def conv(p):
            return sympy.Add(*[sympy.Rational(int(c.numerator), int(c.denominator))
                               * sympy.Mul(*[s ** e for s, e in zip(syms, m) if e])
                               for m, c in p.items()])

        return conv(self.n) / conv(self.d)

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        return str(self.to_sympy())

    def latex(self):
        return sympy.latex(self.to_sympy())


def _poly_subs(space, p, vals):
    R = space.ring
    one = space.one()
    acc = space.zero()
    cache = {}
    idx = sorted(vals)
    groups = {}
    for m, c in p.items():
        key = tuple(m[i] for i in idx)
        mm = list(m)
        for i in idx:
            mm[i] = 0
        groups.setdefault(key, {})[tuple(mm)] = c
    for key, t in groups.items():
        term = FieldElement(space, R.from_dict(t), R.one, True)
        for i, e in zip(idx, key):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = vals[i] ** e
                term = term * cache[(i, e)]
        acc = acc + term
    return acc if p else acc * one


# ---------------------------------------------------------------------------
# numeric evaluation

def _exact_value(v):
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (int, Fraction)):
        return GaussianRational(v)
    c = complex(v)
    return GaussianRational(Fraction(c.real), Fraction(c.imag))


def evaluate_complex(e: FieldElement, assignment) -> complex:
    """Exact rational evaluation of e at the given point followed by one rounding."""
    names = e.free_symbols()
    missing = names - set(assignment)
    if missing:
        raise MissingBinding(f"unassigned parameters {sorted(missing)}")
    vals = [GaussianRational(0, 1)] + [
        _exact_value(assignment[nm]) if nm in names else GaussianRational(0)
        for nm in e.space.names]

    def ev(p):
        acc = GaussianRational(0)
        pw = {}
        for m, c in p.items():
            t = GaussianRational(_frac(c))
            for i, k in enumerate(m):
                if k:
                    key = (i, k)
                    if key not in pw:
                        pw[key] = vals[i] ** k
                    t = t * pw[key]
            acc = acc + t
        return acc

    den = ev(e.d)
    if not den:
        raise DivisionByZero("denominator vanishes at the assignment")
    return complex(ev(e.n) / den)


def evaluate_float(e: FieldElement, assignment) -> complex:
    """Plain double-precision evaluation (independent of evaluate_complex)."""
    names = e.free_symbols()
    missing = names - set(assignment)
    if missing:
        raise MissingBinding(f"unassigned parameters {sorted(missing)}")
    vals = [1j] + [complex(assignment.get(nm, 0)) for nm in e.space.names]

    def ev(p):
        s = 0j
        for m, c in p.items():
            t = float(c)
            for i, k in enumerate(m):
                if k:
                    t = t * vals[i] ** k
            s += t
        return s

    den = ev(e.d)
    if den == 0:
        raise DivisionByZero("denominator vanishes at the assignment")
    return ev(e.n) / den


class CompiledFE:
    """Fast repeated complex evaluation of a fixed FieldElement."""

    def __init__(self, e: FieldElement):
        self.names = e.space.names
        self.num = [(tuple(m), float(c)) for m, c in e.n.items()]
        self.den = [(tuple(m), float(c)) for m, c in e.d.items()]
        self.used = e.free_symbols()

    def __call__(self, assignment):
        missing = self.used - set(assignment)
        if missing:
            raise MissingBinding(f"unassigned parameters {sorted(missing)}")
        vals = [1j] + [complex(assignment.get(nm, 0)) for nm in self.names]

        def ev(terms):
            s = 0j
            for m, c in terms:
                t = c
                for i, k in enumerate(m):
                    if k:
                        t = t * vals[i] ** k
                s += t
            return s

        return ev(self.num) / ev(self.den)

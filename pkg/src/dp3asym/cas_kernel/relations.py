"""Rewriting modulo parameter relations symbol**k = rhs."""
from __future__ import annotations

import sympy

from ..errors import UnsupportedRelation
from .field import FieldElement, ParamSpace
from .linalg import solve_affine


class Relation:
    __slots__ = ("symbol", "k", "rhs")

    def __init__(self, symbol: str, k: int, rhs: FieldElement):
        if k < 1:
            raise UnsupportedRelation("relation exponent must be positive")
        if symbol in rhs.free_symbols():
            raise UnsupportedRelation(f"right-hand side still contains {symbol}")
        self.symbol = symbol
        self.k = int(k)
        self.rhs = rhs

    @classmethod
    def parse(cls, space: ParamSpace, text: str) -> "Relation":
        """Parse 'lhs = rhs' where lhs must be exactly symbol**k."""
        lhs_s, rhs_s = text.split("=")
        lhs = sympy.sympify(lhs_s, locals=space._sym)
        if lhs.is_Symbol:
            sym, k = lhs, 1
        elif lhs.is_Pow and lhs.base.is_Symbol and lhs.exp.is_Integer:
            sym, k = lhs.base, int(lhs.exp)
        else:
            raise UnsupportedRelation(f"left side {lhs} is not a monic power of a symbol")
        return cls(str(sym), k, space.parse(rhs_s))

    def __repr__(self):
        return f"Relation({self.symbol}**{self.k} = {self.rhs})"


def _reduce_poly(space, p, rel):
    """Coefficient list (in rel.symbol, length k) of a raw polynomial reduced mod rel."""
    idx = space.index(rel.symbol)
    R = space.ring
    buckets = {}
    for m, c in p.items():
        e = m[idx]
        mm = m[:idx] + (0,) + m[idx + 1:]
        buckets.setdefault(e, {})[mm] = c
    out = [space.zero() for _ in range(rel.k)]
    pw = {}
    for e, t in buckets.items():
        q, r = divmod(e, rel.k)
        term = FieldElement(space, R.from_dict(t), R.one, True)
        if q:
            if q not in pw:
                pw[q] = rel.rhs ** q
            term = term * pw[q]
        out[r] = out[r] + term
    return out


def _mul_mod(a, b, rel):
    k = rel.k
    sp = rel.rhs.space
    out = [sp.zero() for _ in range(k)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if y.is_zero():
                continue
            t = x * y
            if i + j >= k:
                out[i + j - k] = out[i + j - k] + t * rel.rhs
            else:
                out[i + j] = out[i + j] + t
    return out


def _inverse_mod(d, rel):
    """Inverse of sum d[i] sym**i in the quotient ring; linear solve on the multiplication matrix."""
    k = rel.k
    sp = rel.rhs.space
    if all(c.is_zero() for c in d[1:]):
        return [d[0].inverse()] + [sp.zero()] * (k - 1)
    cols = []
    for j in range(k):
        e = [sp.zero()] * k
        e[j] = sp.one()
        cols.append(_mul_mod(d, e, rel))
    A = [[cols[j][i] for j in range(k)] for i in range(k)]
    b = [sp.one()] + [sp.zero()] * (k - 1)
    sol = solve_affine(A, b, sp)
    if sol is None or sol[1]:
        raise ZeroDivisionError("element is a zero divisor modulo the relation")
    return sol[0]


def reduce_modulo_relation(e: FieldElement, rel: Relation) -> FieldElement:
    """Canonical representative of e modulo rel: numerator of symbol-degree < k,
    denominator free of the symbol."""
    space = e.space
    if rel.symbol not in e.free_symbols():
        return e
    sym = space.sym(rel.symbol)
    rhs = rel.rhs.to_space(space) if rel.rhs.space != space else rel.rhs
    rel = Relation(rel.symbol, rel.k, rhs)
    if rel.k == 1:
        return e.subs({rel.symbol: rhs})
    num = _reduce_poly(space, e.n, rel)
    den = _reduce_poly(space, e.d, rel)
    prod = _mul_mod(num, _inverse_mod(den, rel), rel)
    acc = space.zero()
    for i, c in enumerate(prod):
        if not c.is_zero():
            acc = acc + c * sym ** i
    return acc


def reduce_modulo_relations(e: FieldElement, rels) -> FieldElement:
    """Apply a list of relations in order until nothing changes."""
    for _ in range(8):
        before = e
        for r in rels:
            e = reduce_modulo_relation(e, r)
        if e.n == before.n and e.d == before.d:
            break
    return e

"""Sparse two-variable truncated Laurent series sum c[a,b] x^a y^b.

Terms with y-power >= yorder are unknown; everything below is exact.
"""
from __future__ import annotations

from ..errors import InsufficientTruncation


class BiSeries:
    __slots__ = ("space", "terms", "yorder")

    def __init__(self, space, terms=None, yorder=None):
        self.space = space
        self.yorder = yorder
        t = {}
        for k, v in (terms or {}).items():
            if v.is_zero():
                continue
            if yorder is not None and k[1] >= yorder:
                continue
            t[k] = v
        self.terms = t

    @classmethod
    def monomial(cls, space, a, b, coeff=None, yorder=None):
        return cls(space, {(a, b): coeff if coeff is not None else space.one()}, yorder)

    def _order(self, o):
        if self.yorder is None:
            return o.yorder
        if o.yorder is None:
            return self.yorder
        return min(self.yorder, o.yorder)

    def __add__(self, o):
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return BiSeries(self.space, out, self._order(o))

    def __neg__(self):
        return BiSeries(self.space, {k: -v for k, v in self.terms.items()}, self.yorder)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return BiSeries(self.space, {k: v * c for k, v in self.terms.items()}, self.yorder)

    def __mul__(self, o):
        if not isinstance(o, BiSeries):
            return self.scale(o)
        # a product is exact below min(order_self + low_o, order_o + low_self)
        lows = min((k[1] for k in self.terms), default=0)
        lowo = min((k[1] for k in o.terms), default=0)
        cands = []
        if self.yorder is not None:
            cands.append(self.yorder + lowo)
        if o.yorder is not None:
            cands.append(o.yorder + lows)
        order = min(cands) if cands else None
        out = {}
        for (a1, b1), v1 in self.terms.items():
            for (a2, b2), v2 in o.terms.items():
                k = (a1 + a2, b1 + b2)
                if order is not None and k[1] >= order:
                    continue
                t = v1 * v2
                out[k] = out[k] + t if k in out else t
        return BiSeries(self.space, out, order)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def coeff(self, a, b):
        return self.terms.get((a, b), self.space.zero())

    def y_slice(self, b):
        """{a: coeff} of the y^b row."""
        return {a: v for (a, bb), v in self.terms.items() if bb == b}

    def __eq__(self, o):
        if not isinstance(o, BiSeries):
            return NotImplemented
        return (self - o).is_zero()

    def __repr__(self):
        body = " + ".join(f"({v})*x^{a}*y^{b}" for (a, b), v in sorted(self.terms.items()))
        return f"BiSeries({body or '0'}; O(y^{self.yorder}))"


def apply_linear(s: BiSeries, rule, shift_y=0) -> BiSeries:
    """Apply an operator given on monomials: rule(a, b) -> list of (da, db, coeff).

    shift_y is the most negative y-shift the rule can produce; it lowers the
    truncation order of the result."""
    out = {}
    for (a, b), v in s.terms.items():
        for da, db, c in rule(a, b):
            if isinstance(c, int) and c == 0:
                continue
            k = (a + da, b + db)
            t = v * c
            out[k] = out[k] + t if k in out else t
    order = None if s.yorder is None else s.yorder + shift_y
    live = [k[1] for k, v in out.items() if not v.is_zero()]
    if order is not None and live and order <= min(live):
        raise InsufficientTruncation("truncation too small to absorb the y-shift")
    return BiSeries(s.space, out, order)

"""Rational and polynomial solutions of the linear second-order ODEs that the
generating-function recursions produce."""
from __future__ import annotations

from dataclasses import dataclass, field

from .cas_kernel.field import ParamSpace
from .cas_kernel.linalg import solve_affine
from .cas_kernel.univariate import (RationalFunction, pdegree, pmul, ppow, ptrim)
from .errors import EmptySolutionSet, UnsupportedRHS


# ---------------------------------------------------------------------------
# Euler equations y^2 B'' - (2n-1) y B' + (n^2-1) B = rhs

@dataclass
class EulerSolveReport:
    n: int
    particular: list
    hom_exponents: tuple
    log_coeffs: tuple
    free_constants: tuple

    def general(self, c_hi, c_lo):
        """Particular part plus c_hi*y^(n+1) + c_lo*y^(n-1) as a coefficient list."""
        sp = c_hi.space
        hi, lo = self.hom_exponents
        size = max(len(self.particular), hi + 1)
        out = list(self.particular) + [sp.zero()] * (size - len(self.particular))
        out[hi] = out[hi] + c_hi
        if lo >= 0:
            out[lo] = out[lo] + c_lo
        return ptrim(out)


def euler_apply(n, coeffs, space, scale=1):
    """scale * (y^2 B'' - (2n-1) y B' + (n^2-1) B) on a coefficient list."""
    out = []
    for m, c in enumerate(coeffs):
        out.append(c * (scale * ((m - n) ** 2 - 1)))
    return ptrim(out)


def solve_euler_polynomial(n: int, rhs, space: ParamSpace = None, scale=1) -> EulerSolveReport:
    """Solve scale*(y^2 B'' - (2n-1) y B' + (n^2-1) B) = rhs for polynomial rhs.

    y^m is mapped to ((m-n)^2-1) y^m, so only y^(n+1) and y^(n-1) are resonant;
    their rhs coefficients feed the log terms with L(y^(n+-1) ln y) = +-2 y^(n+-1).
    """
    if isinstance(rhs, RationalFunction):
        if not rhs.is_polynomial():
            raise UnsupportedRHS("right-hand side has poles")
        space = rhs.space
        rhs = list(rhs.num)
    rhs = ptrim(rhs)
    if space is None:
        if not rhs:
            raise ValueError("space required for a zero right-hand side")
        space = rhs[0].space
    inv_scale = space.const(scale).inverse()
    part = []
    L1 = L2 = space.zero()
    for m, r in enumerate(rhs):
        r = r * inv_scale
        d = (m - n) ** 2 - 1
        if d == 0:
            if m == n + 1:
                L1 = r / 2
            else:
                L2 = -r / 2
            part.append(space.zero())
        else:
            part.append(r / d)
    return EulerSolveReport(n, ptrim(part), (n + 1, n - 1), (L1, L2),
                            (f"C{2 * n}", f"C{2 * n - 1}"))


# ---------------------------------------------------------------------------

@dataclass
class LinearODE2:
    """p2 f'' + p1 f' + p0 f = rhs with polynomial p's in main_var."""
    space: ParamSpace
    main_var: str
    p2: list
    p1: list
    p0: list
    rhs: RationalFunction = None

    def __post_init__(self):
        self.p2, self.p1, self.p0 = ptrim(self.p2), ptrim(self.p1), ptrim(self.p0)
        if not self.p2:
            raise ValueError("leading coefficient p2 vanishes")
        if self.rhs is None:
            self.rhs = RationalFunction(self.space, self.main_var, [], ())

    def apply(self, f: RationalFunction) -> RationalFunction:
        d1 = f.derivative()
        d2 = d1.derivative()
        acc = d2 * list(self.p2) + d1 * list(self.p1)
        return acc + f * list(self.p0)

    def homogeneous(self):
        return LinearODE2(self.space, self.main_var, self.p2, self.p1, self.p0, None)


@dataclass
class RationalAnsatz:
    pole: list
    max_pole_order: int
    max_degree: int
    laurent_at_zero: bool = False


@dataclass
class RationalFamily:
    particular: RationalFunction
    basis: list
    bounds: dict = field(default_factory=dict)

    @property
    def dimension(self):
        return len(self.basis)


def _ord0(p):
    for i, c in enumerate(p):
        if not c.is_zero():
            return i
    return None


def _integer_roots(coeffs_by_k, space, lo=-40, hi=40):
    """Integer m with sum_k c_k * m(m-1)...(m-k+1) = 0."""
    roots = []
    for m in range(lo, hi + 1):
        acc = space.zero()
        for k, c in coeffs_by_k.items():
            ff = 1
            for j in range(k):
                ff *= m - j
            if ff:
                acc = acc + c * ff
        if acc.is_zero():
            roots.append(m)
    return roots


def indicial_data(ode: LinearODE2):
    """(shift0, roots0, shiftinf, rootsinf): x^m maps to x^(m+shift) at leading order."""
    ps = {2: ode.p2, 1: ode.p1, 0: ode.p0}
    sp = ode.space
    low = {k: _ord0(p) - k for k, p in ps.items() if p}
    mu0 = min(low.values())
    roots0 = _integer_roots({k: ps[k][_ord0(ps[k])] for k in low if low[k] == mu0}, sp)
    high = {k: pdegree(p) - k for k, p in ps.items() if p}
    muinf = max(high.values())
    rootsinf = _integer_roots({k: ps[k][-1] for k in high if high[k] == muinf}, sp)
    return mu0, roots0, muinf, rootsinf


def _rf_orders(f: RationalFunction):
    """(order at 0, degree at infinity) of a nonzero rational function."""
    o = _ord0(list(f.num))
    for g, m in f.den:
        if g[0].is_zero():
            o -= m * (_ord0(list(g)))
    deg = pdegree(list(f.num)) - sum(pdegree(list(g)) * m for g, m in f.den)
    return o, deg


def _common_numerators(rfs, space, var):
    facs = []
    for f in rfs:
        for g, m in f.den:
            for i, (h, k) in enumerate(facs):
                if len(h) == len(g) and all(a == b for a, b in zip(h, g)):
                    facs[i] = (h, max(k, m))
                    break
            else:
                facs.append((g, m))
    out = []
    for f in rfs:
        num = list(f.num)
        for h, k in facs:
            have = f.pole_order(list(h))
            if k > have:
                num = pmul(num, ppow(list(h), k - have, space), space)
        out.append(num)
    return out


def solve_rational_ansatz(ode: LinearODE2, ansatz: RationalAnsatz) -> RationalFamily:
    """Rational solutions x^low * N(x) / pole^e of ode with degree bounds from the
    indicial exponents at 0 and infinity (never below the ansatz bounds)."""
    sp, var = ode.space, ode.main_var
    mu0, roots0, muinf, rootsinf = indicial_data(ode)
    low = min([0] + roots0) if ansatz.laurent_at_zero else 0
    top = max([ansatz.max_degree] + rootsinf)
    if not ode.rhs.is_zero():
        r0, rdeg = _rf_orders(ode.rhs)
        if ansatz.laurent_at_zero:
            low = min(low, r0 - mu0)
        top = max(top, rdeg - muinf)
    e = ansatz.max_pole_order
    pole = ptrim(ansatz.pole)
    D = top - low + e * pdegree(pole)
    if D < 0:
        raise EmptySolutionSet("empty search space")
    basis_rf = []
    for i in range(D + 1):
        mono = [sp.zero()] * (i + max(low, 0)) + [sp.one()]
        f = RationalFunction(sp, var, mono, [(pole, e)] if e else [])
        if low < 0:
            f = f.mul_factor_power([sp.zero(), sp.one()], low)
        basis_rf.append(f)
    images = [ode.apply(f) for f in basis_rf]
    nums = _common_numerators(images + [ode.rhs], sp, var)
    size = max(len(n) for n in nums)
    A = [[(nums[j][r] if r < len(nums[j]) else sp.zero()) for j in range(D + 1)]
         for r in range(size)]
    b = [(nums[-1][r] if r < len(nums[-1]) else sp.zero()) for r in range(size)]
    sol = solve_affine(A, b, sp)
    bounds = {"low": low, "top": top, "pole_order": e, "unknowns": D + 1}
    if sol is None:
        raise EmptySolutionSet(f"no rational solution within bounds {bounds}")
    part, null = sol

    def build(vec):
        acc = RationalFunction(sp, var, [], ())
        for c, f in zip(vec, basis_rf):
            if not c.is_zero():
                acc = acc + f * c
        return acc

    return RationalFamily(build(part), [build(v) for v in null], bounds)


def ode_from_affine(residual, space: ParamSpace, var: str) -> LinearODE2:
    """LinearODE2 for residual(f) = 0 where residual is affine in f.

    The operator is read off from its action on 1, x, x^2 and every coefficient
    is multiplied by the common denominator of p2, p1, p0."""
    one = RationalFunction(space, var, [space.one()], ())
    xx = RationalFunction(space, var, [space.zero(), space.one()], ())
    x2 = RationalFunction(space, var, [space.zero(), space.zero(), space.one()], ())
    zero = RationalFunction(space, var, [], ())
    r0 = residual(zero)
    p0 = residual(one) - r0
    p1 = residual(xx) - r0 - xx * p0
    p2 = (residual(x2) - r0 - xx * p1 * 2 - x2 * p0) / 2
    facs = []
    for f in (p2, p1, p0):
        for g, m in f.den:
            for i, (h, k) in enumerate(facs):
                if len(h) == len(g) and all(a == b for a, b in zip(h, g)):
                    facs[i] = (h, max(k, m))
                    break
            else:
                facs.append((g, m))

    def clear(f):
        for h, k in facs:
            f = f.mul_factor_power(list(h), k)
        return f

    q2, q1, q0 = clear(p2), clear(p1), clear(p0)
    return LinearODE2(space, var, list(q2.num), list(q1.num), list(q0.num), clear(-r0))


def verify_solution(ode: LinearODE2, f: RationalFunction) -> bool:
    return (ode.apply(f) - ode.rhs).is_zero()

"""Jacobi sn, cn, dn for complex argument and complex parameter m = k^2.

The main route reduces u modulo {2K, 2iK'} (tracking signs) and then runs the
descending Landen recursion down to a tiny modulus, where the trigonometric
limit is exact to double precision.  A second, independent route (Maclaurin
series plus argument doubling) is kept for cross-checks.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ..errors import EvaluationFailure

DEPTH_CAP = 24


@dataclass(frozen=True)
class JacobiValue:
    u: complex
    m: complex
    sn: complex
    cn: complex
    dn: complex

    @property
    def E(self):
        """cn + i sn; equals exp(i am) and E^2 = exp(2 i am)."""
        return self.cn + 1j * self.sn

    def identity_defects(self):
        """Relative defects of sn^2 + cn^2 = 1 and dn^2 + m sn^2 = 1."""
        s2 = self.sn * self.sn
        scale = max(1.0, abs(s2))
        return (abs(s2 + self.cn ** 2 - 1) / scale,
                abs(self.dn ** 2 + self.m * s2 - 1) / max(1.0, abs(self.m * s2)))


def agm(a, b, tol=1e-15, cap=64):
    for _ in range(cap):
        if abs(a - b) <= tol * abs(a):
            return a
        an, bn = (a + b) / 2, cmath.sqrt(a * b)
        # keep the "right" choice of square root
        if abs(an - bn) > abs(an + bn):
            bn = -bn
        if an == a and bn == b:
            return a
        a, b = an, bn
    raise EvaluationFailure("AGM did not converge")


def complete_K(m):
    kp = cmath.sqrt(1 - m)
    if abs(kp) < 1e-300:
        raise EvaluationFailure("K diverges at m = 1")
    return math.pi / (2 * agm(1, kp))


def quarter_periods(m):
    return complete_K(m), complete_K(1 - m)


def _reduce(u, m):
    """(v, n, l) with u = v + 2nK + 2liK' and v in the central cell."""
    if abs(m) < 1e-18:
        # trigonometric limit: K' is infinite, only the real period survives
        n = round(u.real / math.pi)
        return u - n * math.pi, n, 0
    K, Kp = quarter_periods(m)
    w1, w2 = 2 * K, 2j * Kp
    det = w1.real * w2.imag - w1.imag * w2.real
    if abs(det) < 1e-300:
        return u, 0, 0
    x = (u.real * w2.imag - u.imag * w2.real) / det
    y = (w1.real * u.imag - w1.imag * u.real) / det
    n, l = round(x), round(y)
    return u - n * w1 - l * w2, n, l


def _landen(u, m, depth=0):
    if abs(m) < 1e-18:
        return cmath.sin(u), cmath.cos(u), 1 + 0j
    if depth >= DEPTH_CAP:
        raise EvaluationFailure(f"Landen recursion exceeded depth {DEPTH_CAP}")
    if abs(m) < 1e-15:
        s, c = cmath.sin(u), cmath.cos(u)
        t = (u - s * c) * m / 4
        return s - t * c, c + t * s, 1 - m * s * s / 2
    kp = cmath.sqrt(1 - m)
    if kp.real < 0:
        kp = -kp
    k1 = (1 - kp) / (1 + kp)
    w = u / (1 + k1)
    s, c, d = _landen(w, k1 * k1, depth + 1)
    den = 1 + k1 * s * s
    sn = (1 + k1) * s / den
    cn = c * d / den
    dn = (1 - k1 * s * s) / den
    return sn, cn, dn


def jacobi_eval(u, m, reduce=True) -> JacobiValue:
    u, m = complex(u), complex(m)
    if abs(1 - m) < 1e-14:
        raise EvaluationFailure("parameter too close to 1 for the Landen route")
    v, n, l = _reduce(u, m) if reduce else (u, 0, 0)
    sn, cn, dn = _landen(v, m)
    # sn(v + 2K) = -sn, cn(v + 2K) = -cn; cn(v + 2iK') = -cn, dn(v + 2iK') = -dn
    sn = -sn if n % 2 else sn
    cn = -cn if (n + l) % 2 else cn
    dn = -dn if l % 2 else dn
    return JacobiValue(u, m, sn, cn, dn)


# ---------------------------------------------------------------------------
# independent route: Taylor series at small argument plus doubling

def _taylor_snd(u, m, order=24):
    """sn, cn, dn by the Taylor recurrences of s' = c d, c' = -s d, d' = -m s c."""
    s, c, d = [0j], [1 + 0j], [1 + 0j]
    for n in range(order):
        cd = sum(c[i] * d[n - i] for i in range(n + 1))
        sd = sum(s[i] * d[n - i] for i in range(n + 1))
        sc = sum(s[i] * c[n - i] for i in range(n + 1))
        s.append(cd / (n + 1))
        c.append(-sd / (n + 1))
        d.append(-m * sc / (n + 1))

    def ev(a):
        acc = 0j
        for coef in reversed(a):
            acc = acc * u + coef
        return acc

    return ev(s), ev(c), ev(d)


def jacobi_series(u, m, small=0.05) -> JacobiValue:
    u, m = complex(u), complex(m)
    n = 0
    w = u
    while abs(w) > small:
        w /= 2
        n += 1
    s, c, d = _taylor_snd(w, m)
    for _ in range(n):
        den = 1 - m * s ** 4
        s, c, d = 2 * s * c * d / den, (c * c - s * s * d * d) / den, (d * d - m * s * s * c * c) / den
    return JacobiValue(u, m, s, c, d)


def track_sqrt(values, start=None):
    """Square roots along a sampled path with the sign chosen for continuity."""
    out = []
    prev = start
    for v in values:
        r = cmath.sqrt(v)
        if prev is not None and abs(r - prev) > abs(r + prev):
            r = -r
        out.append(r)
        prev = r
    return out

"""Closed-form reference values used by the equality suites.

Every entry is a sympy-syntax string over the parameter names of the module it
checks (``I`` is the imaginary unit).  ``Xi2`` abbreviates
3 (alpha^2 + 8 alpha kappa + 10 kappa^2 + 4 alpha) and ``b`` stands for b1m1
in the trigonometric formulas.
"""
from __future__ import annotations

import sympy

from .cas_kernel.field import FieldElement, ParamSpace
from .cas_kernel.univariate import RationalFunction

XI2 = "(3*(alpha**2 + 8*alpha*kappa + 10*kappa**2 + 4*alpha))"

# ---------------------------------------------------------------------------
# trigonometric expansion, doubly truncated case: b_2 .. b_20

DOUBLY_TRUNCATED = {
    2: "-I*alpha/2",
    4: "0",
    6: "-I*alpha*(alpha**2 - 12)/24",
    8: "alpha**2*(alpha**2 - 12)/48",
    10: "3*I*alpha*(alpha**2 - 12)/8",
    12: "alpha**2*(alpha**2 - 12)*(alpha**2 - 66)/144",
    14: "5*I*alpha*(alpha**2 - 12)*(alpha**4 - 12*alpha**2 - 2160)/1152",
    16: "-3*alpha**2*(alpha**2 - 12)*(2*alpha**2 - 99)/16",
    18: "7*I*alpha*(alpha**2 - 12)*(11*alpha**6 - 2208*alpha**4 + 24912*alpha**2 + 2721600)/41472",
    20: "-alpha**2*(alpha**2 - 12)*(13*alpha**6 - 150*alpha**4 - 294264*alpha**2 + 13055904)/10368",
}

# ---------------------------------------------------------------------------
# trigonometric B-route, general parameters (alpha, b11, b1m1, kappa) with
# the integration constants C3 .. C6 left symbolic; B3 after the rationality
# condition 3 i kappa + b11 b1m1 = 0

B_GENERAL = {
    0: "1",
    1: "b11*y**2 + b1m1",
    2: "C4*y**3 + C3*y + b11**2*y**4/3 - (I*alpha - 4*b11*b1m1)*y**2/2 + b1m1**2/3",
    3: ("b11**3*y**6/12 + 2*C4*b11*y**5/3 + C6*y**4 + 2*(C4*b1m1 + C3*b11)*y**3"
        " + C5*y**2 + 2*C3*b1m1*y/3 + b1m1**3/12"),
}

RATIONALITY_CONDITION = "3*I*kappa + b11*b1m1"

# truncated case b11 = kappa = 0
B_TRUNCATED = {
    0: "1",
    1: "b1m1",
    2: "-I*alpha*y**2/2 + b1m1**2/3",
    3: "-I*(alpha**2 + 4*alpha - 1)*b1m1*y**2/8 + b1m1**3/12",
    4: "-I*(alpha**2 + 4*alpha + Rational(1, 3))*b1m1**2*y**2/12 + b1m1**4/54",
    5: ("-(alpha + 3)**2*(alpha - Rational(1, 3))*(alpha - 3)*b1m1*y**4/2**7"
        " - I*(alpha**2 + 4*alpha + Rational(1, 9))*b1m1**3*y**2/2**5 + 5*b1m1**5/6**4"),
    6: ("-I*alpha*(alpha**2 - 12)*y**6/24"
        " - (3*alpha**4 + 16*alpha**3 - 10*alpha**2 - 128*alpha - 57)*b1m1**2*y**4/(2**5*3**2)"
        " - I*(alpha**2 + 4*alpha - Rational(1, 6))*b1m1**4*y**2/(2**2*3**3) + b1m1**6/6**4"),
    7: ("I*(alpha**6 - 4*alpha**5 - 67*alpha**4 - 152*alpha**3 + 579*alpha**2 + 2076*alpha - 225)"
        "*b1m1*y**6/(2**10*3)"
        " - (9*alpha**4 + 56*alpha**3 + 10*alpha**2 - 328*alpha - Rational(329, 3))*b1m1**3*y**4/(2**9*3)"
        " - I*(25*alpha**2 + 100*alpha - Rational(29, 3))*b1m1**5*y**2/(2**7*3**4)"
        " + 7*b1m1**7/6**6"),
}

# ---------------------------------------------------------------------------
# trigonometric A-route, generic parameters (alpha, kappa, b1m1)

A0_TRIG = "1 + b1m1*x/(1 - b1m1*x/6)**2"

A2_PARTICULAR = (
    "-I*x/(12*b1m1*(x*b1m1 - 6)**3)*((kappa + 1)*b1m1**5*x**5"
    " + 6*(alpha + 9*kappa + 9)*b1m1**4*x**4 - 108*(4*alpha + 53*kappa + 53)*b1m1**3*x**3"
    " - 216*(6*alpha + 143*kappa + 151)*b1m1**2*x**2 - 1296*(alpha + 9*kappa)*b1m1*x"
    " - 7776*kappa)")

C2_TRIG = "3*I/2*(3*alpha**2 + 24*alpha*kappa + 30*kappa**2 - 6*alpha - 272*kappa - 305)*b1m1"

ETA = {
    1: "-27*(3*Xi2 + 42*kappa - 47)",
    2: "9*(7*Xi2 + 162*kappa - 59)",
    3: "-18*(Xi2 + 30*kappa - 5)",
}

A2_POLY = ("I/b1m1**2*(-(kappa + 1)/12*b1m1**3*x**3 - (alpha + 12*kappa + 12)/2*b1m1**2*x**2"
           " + Rational(3, 2)*(Xi2 - 20*kappa - 53)*b1m1*x + 36*(Xi2 + 6*kappa - 23))")

# A_4: particular part with C4 = 0 (the x^1 term carries b1m1 x; see ledger)
A4_PARTICULAR = (
    "-x**2/(864*b1m1**2*(x*b1m1 - 6)**4)*(2*(kappa + 1)**2*b1m1**8*x**8"
    " + 3*(kappa + 1)*(Xi2 + 24*alpha + 124*kappa + 91)*b1m1**7*x**7"
    " - 72*(kappa + 1)*(Xi2 + 24*alpha + 134*kappa + 101)*b1m1**6*x**6"
    " + 54*(Xi2**2 + 60*kappa*Xi2 + 52*Xi2 + 336*alpha*(2*kappa + 1) + 5068*kappa**2"
    " + 5728*kappa + 1539)*b1m1**5*x**5"
    " + 648*(Xi2**2 + 60*kappa*Xi2 - 38*Xi2 - 96*alpha*(2*kappa + 1) - 548*kappa**2"
    " - 2588*kappa - 423)*b1m1**4*x**4"
    " + 93312*kappa*(Xi2 - 24*alpha - 74*kappa - 3)*b1m1**2*x**2"
    " - 139968*kappa*(Xi2 - 24*alpha - 64*kappa - 3)*b1m1*x + 3359232*kappa**2)")

C4_TRIG = ("b1m1/32*(Xi2**2 - 16*alpha*Xi2 - 72*kappa*Xi2 - 14*Xi2 + 48*alpha*(4*kappa - 1)"
           " - 2000*kappa**3 - 1892*kappa**2 - 168*kappa + 81)")

NU = {
    1: ("Rational(135, 4)*(25*Xi2**2 + (80*alpha + 2060*kappa + 78)*Xi2 + 240*alpha*(10*kappa + 3)"
        " + 10000*kappa**3 + 55452*kappa**2 + 12692*kappa + 2773)"),
    2: ("-Rational(27, 4)*(91*Xi2**2 + (176*alpha + 6692*kappa - 246)*Xi2"
        " + 528*alpha*(10*kappa + 3) + 22000*kappa**3 + 153012*kappa**2 + 14012*kappa + 6943)"),
    3: ("27*(9*Xi2**2 + (8*alpha + 596*kappa - 62)*Xi2 + 24*alpha*(10*kappa + 3)"
        " + 5*(200*kappa**3 + 2256*kappa**2 - 188*kappa + 87))"),
    4: "-Rational(81, 2)*(Xi2 + 30*kappa - 5)**2",
}

# polynomial part of A_4, as printed apart from the b1m1 powers of the x^2 and
# x^3 terms (the homogeneity A_4(x) = b1m1^-4 F(b1m1 x) fixes them)
A4_POLY = (
    "-1/b1m1**4*((kappa + 1)**2/432*b1m1**6*x**6"
    " + (kappa + 1)/288*(Xi2 + 24*alpha + 140*kappa + 107)*b1m1**5*x**5"
    " + Rational(1, 32)*(Xi2**2 + (16*alpha + 168*kappa + 94)*Xi2 + 144*alpha*(4*kappa + 1)"
    " + 2000*kappa**3 + 8732*kappa**2 + 5824*kappa + 493)*b1m1**3*x**3"
    " + Rational(3, 2)*(Xi2**2 + (8*alpha + 116*kappa + 30)*Xi2 + 24*alpha*(10*kappa + 3)"
    " + 1000*kappa**3 + 4370*kappa**2 + 2108*kappa + 247)*b1m1**2*x**2"
    " + Rational(81, 8)*(3*Xi2**2 + (16*alpha + 292*kappa + 42)*Xi2 + 48*alpha*(10*kappa + 3)"
    " + 2000*kappa**3 + 9444*kappa**2 + 3484*kappa + 511)*b1m1*x"
    " + 432*(Xi2**2 + (4*alpha + 88*kappa + 7)*Xi2 + 12*alpha*(10*kappa + 3)"
    " + 500*kappa**3 + 2562*kappa**2 + 742*kappa + 133))")

# truncated case: A_2k / x^(2k) at kappa = 0
A2_TRUNC = ("-I*b1m1*x/12 - I*alpha/2 - 6*I - I*(3*alpha**2 + 12*alpha - 5)/(2*(1 - b1m1*x/6)**3)"
            " + 3*I*(3*alpha**2 + 12*alpha - 13)/(4*(1 - b1m1*x/6)**2)"
            " - I*(3*alpha**2 + 12*alpha - 53)/(4*(1 - b1m1*x/6))")

A4_TRUNC = ("-b1m1*x/48*(b1m1*x/9 + (3*alpha**2 + 36*alpha + 107)/6"
            " - (9*alpha**4 + 88*alpha**3 + 234*alpha**2 + 152*alpha + 165)/(4*(1 - x*b1m1/6)**3)"
            " + (9*alpha**4 + 72*alpha**3 + 114*alpha**2 - 120*alpha + 25)/(4*(1 - x*b1m1/6)**4)"
            " + (9*alpha**4 + 120*alpha**3 + 618*alpha**2 + 1272*alpha + 493)"
            "/(24*(1 - x*b1m1/6)**2))")

MU = {
    1: "(3*alpha**6 + 84*alpha**5 + 1041*alpha**4 + 7240*alpha**3 + 31141*alpha**2 + 63204*alpha + 15383)/8",
    2: ("-(45*alpha**6 + 876*alpha**5 + 7167*alpha**4 + 31288*alpha**3 + 81483*alpha**2"
        " + 116828*alpha + Rational(111787, 3))/8"),
    3: ("(75*alpha**6 + 1188*alpha**5 + 7257*alpha**4 + 21576*alpha**3 + 33865*alpha**2"
        " + 28996*alpha + Rational(24689, 3))/4"),
    4: ("-(45*alpha**6 + 612*alpha**5 + 2871*alpha**4 + 5208*alpha**3 + 2769*alpha**2"
        " + 540*alpha - Rational(2875, 3))/2"),
    5: "9*alpha**6 + 108*alpha**5 + 387*alpha**4 + 216*alpha**3 - 645*alpha**2 + 300*alpha - Rational(125, 3)",
}

A6_TRUNC_POLY = (
    "I*b1m1**3*x**3/(2**8*3**4) + I*(3*alpha**2 + 36*alpha + 85)*b1m1**2*x**2/(2**6*3**4)"
    " + I*(3*alpha**4 + 56*alpha**3 + 238*alpha**2 - 328*alpha - 2289)*b1m1*x/(2**9*3**2)"
    " - I*(alpha**3 + 18*alpha**2 + 60*alpha - 30)/24")

# ---------------------------------------------------------------------------
# logarithmic expansion at tau = 0 (parameters a, b, ct = ct[-1,3], C)

C_LOG = "-b**2*(a**2 + 1)/4"
A0_LOG = "C*x**2/(1 + C*x**2/4)**2"
C1_LOG = "-8*(8*C*ct - 12*C - b**2)"
A1_LOG = ("C1*x**2*(C*x**2 - 4)/(C*x**2 + 4)**3"
          " + x*(a*b*(C*x**2 - 12)*(C**2*x**4 + 56*C*x**2 - 48) + 2304*C*x)/(18*(C*x**2 + 4)**3)")
XI_LOG = {
    (1, 1): "4*a*b/9",
    (2, 1): "-32*a*b/9",
    (3, 1): "32*a*b/9",
    (1, 0): "-16*ct + 2*b**2/C + 24",
    (2, 0): "48*ct - 6*b**2/C - 64",
    (3, 0): "-32*ct + 4*b**2/C + 40",
}
A1_LOG_POLY = "a*b/18"
B0_LOG = "-1/(1/y + 2*ct)**2"

# ---------------------------------------------------------------------------
# elliptic expansions (k2 = kappa^2, parameters P, p, q, q2, q4, c1, c2, ...)

A1_ELLIPTIC = {
    0: "q",
    1: "8*p**2*(q**3 - 1)/(3*P**2*k2*q)",
    2: "q2*x**2 + R2/(48*P**4*k2**2*q**3)",
    3: "q4*x**4 + R32*x**2/(24*P**6*k2**3*q**5) + R30/(120*P**6*k2**3*q**5)",
}
R_ELLIPTIC = {
    "R2": "256*p**2*(q**3 - 1)*(3*P**2*q**2*(k2 - 2) + 2*p**2*(4*q**3 - 1))/9",
    "R32": ("16*P**3*q**3*k2**2*(3*P**3*q**2*q2*(2 - k2) + 4*P*p**2*q2*(4*q**3 - 1)"
            " + 8*I*p**2*q*(q**3 - 1))/3"),
    "R30": ("64*p**2*(q**3 - 1)*(9*P**4*q**4*(23*k2**2 - 128*k2 + 128)"
            " + 240*P**2*p**2*q**2*(4*q**3*k2 - 8*q**3 - k2 + 2)"
            " + 32*p**4*(34*q**6 - 26*q**3 + 1))/81"),
}
B2_ELLIPTIC = {
    0: "q",
    1: "c2*y**3 + c1*y + 8*p**2*(q**3 - 1)/(3*k2*P**2*q*y)",
    2: ("c4*y**6 + c3*y**4"
        " + (3*k2*P**2*q*c1**2 + 6*I*k2*P*q**2*c1 - 12*(k2 - 2)*P**2*q**2*c2"
        " + 16*p**2*(2*q**3 + 1)*c2)/(6*k2*P**2*q**2)*y**2"
        " - 2*(3*(k2 - 2)*P**3*q**2*c1 - 4*P*p**2*(4*q**3 - 1)*c1 + 8*I*p**2*q*(q**3 - 1))"
        "/(9*k2*P**3*q**2)"
        " + 16*p**2*(q**3 - 1)*(3*(k2 - 2)*P**2*q**2 + 2*p**2*(4*q**3 - 1))/(27*k2**2*P**4*q**3*y**2)"),
}
KAPPA2_OF_S = "(s - 1)*(s + 3)/((s + 1)*(s - 3))"
P2_OVER_p2 = "2*q*(s - 3)/(3*(s - 1))"
Q_ELLIPTIC = {
    2: "6",
    3: "2**6*3**2*(s**2 - 5)",
    4: "2**4*3*(1241*s**4 + 2436*s**3 - 13266*s**2 - 11340*s + 16065)",
    5: "2**12*3**3*(71*s**6 + 284*s**5 - 585*s**4 - 3264*s**3 + 2037*s**2 + 3780*s - 2835)",
    6: ("2**8*3**3*(197823*s**8 + 1184920*s**7 - 824620*s**6 - 11736120*s**5 - 16680534*s**4"
        " + 47405160*s**3 + 2899764*s**2 - 46153800*s + 22920975)"),
    7: ("2**13*3**3*(1398679*s**10 + 11187384*s**9 + 7677153*s**8 - 147117360*s**7"
        " - 79588362*s**6 + 30783168*s**5 + 721058418*s**4 - 875438928*s**3"
        " - 222469821*s**2 + 1313512200*s - 492567075)"),
}
B_E = {
    1: "c1*p",
    2: "-4*I*P/p + (3*s**2 - 2*s - 9)/((s + 3)*(s - 1))*2*c1*p",
}
C1_PART_ELLIPTIC = "((2*(k - 1)**2 + 1)*(s - 3)*(s + 1) + 4*s)/((s + 3)*(s - 1))"


# ---------------------------------------------------------------------------

def expand_text(text: str, **named) -> str:
    """Insert Xi2 and any named sub-expressions (as parenthesized text)."""
    out = text.replace("Xi2", XI2)
    for k, v in named.items():
        out = out.replace(k, f"({v})")
    return out


def fe(space: ParamSpace, text: str, **named) -> FieldElement:
    return space.parse(expand_text(text, **named))


def rf(space: ParamSpace, var: str, text: str, **named) -> RationalFunction:
    return RationalFunction.parse(space, var, expand_text(text, **named))


def sym(text: str, **named):
    """Plain sympy expression (used for polynomials in s)."""
    return sympy.sympify(expand_text(text, **named))

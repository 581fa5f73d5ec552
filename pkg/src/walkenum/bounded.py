"""Rational generating functions for walks confined to a band [b, a].

Free walks: one unknown f_{m,n} per band placement of the start (m upper,
n lower room, m - n = a - b); the first step shifts the band, giving a linear
system of a-b+1 equations over Q(t).  Bridges: first-passage-to-axis unknowns
e_c for each nonzero altitude in the band, then a single sequence formula.
Both systems are solved exactly; the results are reduced RatFun values whose
Taylor expansions match the DP oracle coefficient by coefficient.
"""

from fractions import Fraction

from .algebra.linsolve import linear_solve
from .algebra.mpoly import MPoly
from .algebra.polynomials import RatFun, UniPoly
from .stepset import validate, WalkClass


def _free_label(m, n):
    return f"f[{m},{n}]"


def _passage_label(c):
    return f"e[{c}]"


def free_system(s, a, b):
    """Equations (as MPoly, lhs = 0) and labels for the band free-walk family.

    Band width w = a - b; unknown f[m, m-w] counts walks starting at 0 that
    stay within [m-w, m].  First-step decomposition: every step with
    m-w <= dy <= m shifts the band, staying inside the family.
    """
    width = a - b
    labels = [_free_label(m, m - width) for m in range(width + 1)]
    vars_ = tuple(labels) + ("t",)
    one = MPoly.const(vars_, 1)
    eqs = []
    for m in range(width + 1):
        n = m - width
        rhs = one
        for st in s.steps:
            if n <= st.dy <= m:
                term = MPoly.variable(vars_, _free_label(m - st.dy, n - st.dy))
                rhs = rhs + term * MPoly.t_monomial(vars_, int(st.dx), st.w)
        eqs.append(MPoly.variable(vars_, _free_label(m, n)) - rhs)
    return labels, eqs


def solve_free_family(s, a, b):
    """Every f[m,n] of the band family as a RatFun, keyed by (m, n)."""
    labels, eqs = free_system(s, a, b)
    sol = linear_solve(eqs, labels)
    width = a - b
    return {(m, m - width): sol[_free_label(m, m - width)] for m in range(width + 1)}


def bounded_free_gf(s, a, b):
    """G.f. of walks from 0 staying within [b, a] (internal bounds)."""
    validate(WalkClass("bounded-free", a=a, b=b), s)
    wc = WalkClass("bounded-free", a=a, b=b).internal(s.y_gcd)
    return solve_free_family(s, wc.a, wc.b)[(wc.a, wc.b)]


def passage_system(s, a, b):
    """First-passage-to-axis unknowns e[c]: walks from altitude c in [b, a]
    hitting 0 for the first time at their final vertex."""
    alts = [c for c in range(b, a + 1) if c != 0]
    labels = [_passage_label(c) for c in alts]
    vars_ = tuple(labels) + ("t",)
    eqs = []
    for c in alts:
        rhs = MPoly.const(vars_, 0)
        for st in s.steps:
            z = c + st.dy
            if z == 0:
                rhs = rhs + MPoly.t_monomial(vars_, int(st.dx), st.w)
            elif b <= z <= a:
                rhs = rhs + MPoly.variable(vars_, _passage_label(z)) * MPoly.t_monomial(
                    vars_, int(st.dx), st.w
                )
        eqs.append(MPoly.variable(vars_, _passage_label(c)) - rhs)
    return alts, labels, eqs


def bounded_bridge_gf(s, a, b):
    """G.f. of walks from 0 to 0 staying within [b, a] (internal bounds).

    A bridge is a sequence of returns to the axis; each return is either a
    direct dy=0 step or a step to a nonzero altitude followed by a first
    passage back.  With R(t) the total return weight, the g.f. is 1/(1 - R).
    """
    validate(WalkClass("bounded-bridge", a=a, b=b), s)
    wc = WalkClass("bounded-bridge", a=a, b=b).internal(s.y_gcd)
    a, b = wc.a, wc.b
    alts, labels, eqs = passage_system(s, a, b)
    passage = linear_solve(eqs, labels) if labels else {}
    ret = RatFun.from_poly(UniPoly())
    for st in s.steps:
        x = int(st.dx)
        if st.dy == 0:
            ret = ret + RatFun.from_poly(UniPoly.t_power(x, st.w))
        elif b <= st.dy <= a:
            ret = ret + passage[_passage_label(st.dy)] * RatFun.from_poly(
                UniPoly.t_power(x, st.w)
            )
    one = RatFun.from_poly(UniPoly.const(1))
    return one / (one - ret)


def taylor_coeffs(g, N, scale=1):
    """Exact series prefix of a rational g.f. (denominator recurrence)."""
    return g.taylor(N, scale)

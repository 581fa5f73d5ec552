"""Growth-rate analysis for walk counting sequences.

The exponential base of an algebraic counting sequence comes out of its
minimal polynomial: singularities of the generating function sit among the
roots of the discriminant, and the dominant one is the smallest positive
real root.  Everything around that heuristic is deliberately soft: the
polynomial correction exponent and leading constant are fit numerically,
and the excursion-to-bridge ratio sequence is handed back exactly so the
caller can stare at it.
"""

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra.polynomials import UniPoly
from .algebra.roots import refine_root, smallest_positive_real_root
from .algebra.series import format_rational, parse_rational
from .errors import InsufficientTerms
from .oracle import dp_enumerate
from .stepset import WalkClass, validate

#: default width of the reported base interval
BASE_TOL = Fraction(1, 10**9)


@dataclass
class AsymptoticEstimate:
    """Growth data for a counting sequence B(n) ~ c * b^n * n^alpha.

    base is an exact rational enclosure of b in external length units;
    defining_poly is the squarefree discriminant factor whose root is 1/b
    (in the minimal polynomial's own t units).  The empirical fields are
    floating-point fits and carry no guarantee, which is the point.
    """

    base: tuple
    defining_poly: UniPoly = None
    empirical_alpha: float = None
    empirical_constant: float = None
    ratio_constant: float = None
    flags: tuple = ()

    @property
    def base_midpoint(self):
        lo, hi = self.base
        return (lo + hi) / 2

    def to_json(self):
        lo, hi = self.base
        out = {"base": [format_rational(lo), format_rational(hi)]}
        if self.defining_poly is not None:
            out["defining_poly"] = self.defining_poly.to_json()
        for name in ("empirical_alpha", "empirical_constant", "ratio_constant"):
            v = getattr(self, name)
            if v is not None:
                out[name] = repr(float(v))
        if self.flags:
            out["flags"] = list(self.flags)
        return out

    @classmethod
    def from_json(cls, doc):
        lo, hi = (parse_rational(v) for v in doc["base"])
        poly = doc.get("defining_poly")
        return cls(
            (lo, hi),
            UniPoly.from_json(poly) if poly is not None else None,
            *(float(doc[n]) if n in doc else None
              for n in ("empirical_alpha", "empirical_constant", "ratio_constant")),
            tuple(doc.get("flags", ())),
        )


def _defining_factor(disc, lo, hi):
    """The squarefree factor of disc vanishing inside the enclosure [lo, hi]."""
    factors = [f for f, _ in disc.squarefree_decomposition()]
    while True:
        if lo == hi:
            hits = [f for f in factors if f(lo) == 0]
        else:
            hits = [f for f in factors if f(lo) * f(hi) < 0]
        if len(hits) == 1:
            return hits[0], lo, hi
        # enclosure still straddles a root of a second factor; shrink on the
        # full squarefree part, which has a sign change at the true root
        sf = disc.squarefree_part()
        lo, hi = refine_root(sf, lo, hi, (hi - lo) / 4)


def asymptotic_base(p, tol=BASE_TOL):
    """Exponential growth base from a certified minimal polynomial.

    Takes the discriminant with respect to the function variable, isolates
    its smallest positive real root rho, and returns base = (1/rho)^scale
    as an interval of width <= tol, scale being the step-set denominator
    so the base counts external length units.  The defining factor is
    reported in the polynomial's own t units.  Raises NoPositiveRealRoot
    where the heuristic does not apply.
    """
    poly = p.poly if hasattr(p, "poly") else p
    prov = getattr(p, "provenance", {}) or {}
    scale = int(prov.get("scale", 1))
    if poly.degree_f == 1:
        # a(t)F + b(t): the function is rational and its singularities are
        # plain poles, so the denominator stands in for the discriminant
        disc = poly.lc_f().content_and_primitive()[1]
    else:
        disc = poly.discriminant()
    lo, hi = smallest_positive_real_root(disc, tol)
    factor, lo, hi = _defining_factor(disc, lo, hi)
    while True:
        if lo > 0:
            blo = (1 / hi) ** scale
            bhi = (1 / lo) ** scale
            if bhi - blo <= tol:
                break
        lo, hi = refine_root(factor, lo, hi, (hi - lo) / 4 if hi > lo else 0)
    flags = ("unverified-for-meanders",) if prov.get("class") == "meander" else ()
    return AsymptoticEstimate((blo, bhi), defining_poly=factor, flags=flags)


def _log_big(v):
    # math.log handles arbitrary-size ints, but a huge Fraction would first
    # be squeezed through float and overflow; split it
    f = Fraction(v)
    return math.log(f.numerator) - math.log(f.denominator)


def empirical_growth(seq, window, base_hint=None):
    """Least-squares fit of log B(n) ~ n log b + alpha log n + log c.

    Uses the trailing `window` strictly positive terms, so parity-aerated
    sequences fit on their support.  When base_hint (an AsymptoticEstimate
    or a number) disagrees with the fitted base by more than 1% the
    estimate is flagged and a warning is emitted.
    """
    pts = [(n, v) for n, v in enumerate(seq) if n > 0 and v > 0]
    if len(pts) < window:
        raise InsufficientTerms(
            f"growth fit wants {window} positive terms, have {len(pts)}"
        )
    if window < 3:
        raise InsufficientTerms("growth fit needs a window of at least 3")
    ns = np.array([float(n) for n, _ in pts[-window:]])
    design = np.column_stack([ns, np.log(ns), np.ones_like(ns)])
    ys = np.array([_log_big(v) for _, v in pts[-window:]])
    (logb, alpha, logc), *_ = np.linalg.lstsq(design, ys, rcond=None)
    # fit runs over internal indices; report in external length units so the
    # base lines up with asymptotic_base (alpha is unit-free)
    scale = getattr(seq, "scale", 1)
    b = math.exp(logb) ** scale
    logc = logc + alpha * math.log(scale)
    flags = ()
    if base_hint is not None:
        ref = base_hint.base_midpoint if hasattr(base_hint, "base_midpoint") else base_hint
        if abs(b - float(ref)) > 0.01 * abs(float(ref)):
            flags = ("empirical-base-disagrees",)
            warnings.warn(
                f"empirical base {b:.6g} disagrees with {float(ref):.6g} by >1%"
            )
    enclosure = Fraction(b).limit_denominator(10**9)
    return AsymptoticEstimate(
        (enclosure, enclosure),
        empirical_alpha=alpha,
        empirical_constant=math.exp(logc),
        flags=flags,
    )


def ratio_excursions_bridges(s, N):
    """Exact n * B(n)/C(n) for excursions B and bridges C of the same set.

    Entry m of the result covers internal length m (external n = m/scale),
    for m up to N*scale; lengths where C vanishes get a None marker.
    """
    validate(WalkClass("nonneg-excursion"), s)
    validate(WalkClass("bridge"), s)
    M = N * s.scale
    exc = dp_enumerate(s, WalkClass("nonneg-excursion"), M)
    br = dp_enumerate(s, WalkClass("bridge"), M)
    out = []
    for m in range(M + 1):
        if br[m] == 0:
            out.append(None)
        else:
            out.append(Fraction(m, s.scale) * exc[m] / br[m])
    return out

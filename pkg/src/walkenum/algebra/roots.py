"""Exact isolation of positive real roots of rational polynomials.

Uses Descartes' rule of signs with interval bisection (Vincent-Collins-Akritas
style): a sign-variation count of 0 on an interval certifies no root, a count
of 1 certifies exactly one.  All arithmetic is in Fractions, so the returned
enclosures are exact statements about the polynomial, never float artifacts.
"""

from fractions import Fraction
from math import gcd

from ..errors import NoPositiveRealRoot
from .polynomials import UniPoly


def rational_roots(p):
    """All rational roots of a UniPoly, each checked exactly."""
    if p.is_zero():
        return []
    coeffs = list(p.coeffs)
    val = 0
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
        val += 1
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = set([Fraction(0)] if val else [])
    if ints:
        a0, lead = abs(ints[0]), abs(ints[-1])

        def divisors(n):
            out = []
            k = 1
            while k * k <= n:
                if n % k == 0:
                    out.append(k)
                    out.append(n // k)
                k += 1
            return out

        for num in divisors(a0):
            for dv in divisors(lead):
                for cand in (Fraction(num, dv), Fraction(-num, dv)):
                    if p(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _shift1(coeffs):
    """Coefficients of p(x+1) given coefficients of p (synthetic Taylor shift)."""
    c = list(coeffs)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _variations(coeffs):
    count = 0
    last = 0
    for c in coeffs:
        if not c:
            continue
        s = 1 if c > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def _variations_01(coeffs):
    """Sign variations of (x+1)^n p(1/(x+1)); bounds roots of p inside (0, 1)."""
    return _variations(_shift1(list(reversed(coeffs))))


def _half_low(coeffs):
    """p(x/2) scaled by 2^n (roots in (0,1) -> roots of p in (0,1/2) doubled)."""
    n = len(coeffs) - 1
    return [c * (1 << (n - i)) for i, c in enumerate(coeffs)]


def _half_high(coeffs):
    """p((x+1)/2) scaled by 2^n."""
    return _shift1(_half_low(coeffs))


def isolate_positive_roots(p):
    """Disjoint isolating intervals for the positive real roots of p.

    p must be squarefree with p(0) != 0.  Returns a sorted list of
    (lo, hi) Fraction pairs, each containing exactly one root; lo == hi
    marks an exact rational root.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = list(p.coeffs)
    # Cauchy bound on positive roots
    lc = abs(coeffs[-1])
    bound = Fraction(1) + max(abs(c) for c in coeffs) / lc
    # map (0, bound) onto (0, 1)
    scaled = [c * bound**i for i, c in enumerate(coeffs)]
    out = []
    stack = [(Fraction(0), bound, scaled)]
    while stack:
        lo, hi, q = stack.pop()
        v = _variations_01(q)
        if v == 0:
            continue
        if v == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = _half_low(q)
        right = _half_high(q)
        if right[0] == 0:
            # q(1/2) == 0: mid is an exact rational root; strip it from the
            # right half (squarefree input has it exactly once) and note that
            # the left half never counts its own open right endpoint
            out.append((mid, mid))
            while right and right[0] == 0:
                right = right[1:]
        stack.append((lo, mid, left))
        if right:
            stack.append((mid, hi, right))
    out.sort()
    return out


def refine_root(p, lo, hi, tol):
    """Shrink an isolating interval of p to width <= tol by exact bisection."""
    if lo == hi:
        return lo, hi
    flo = p(lo)
    if flo == 0:
        return lo, lo
    fhi = p(hi)
    if fhi == 0:
        return hi, hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = p(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo, hi


def smallest_positive_real_root(p, tol=Fraction(1, 10**12)):
    """Exact enclosure (lo, hi) of the smallest positive real root of p.

    Strips any power of t first, works on the squarefree part, and refines the
    leftmost isolating interval to width <= tol.  Raises NoPositiveRealRoot
    when p has no root in (0, inf).
    """
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    coeffs = list(p.coeffs)
    k = 0
    while not coeffs[k]:
        k += 1
    q = UniPoly(coeffs[k:]).squarefree_part()
    intervals = isolate_positive_roots(q)
    if not intervals:
        raise NoPositiveRealRoot(str(p))
    lo, hi = intervals[0]
    # subdivision endpoints are never roots: exact dyadic hits are returned as
    # point intervals, q(0) != 0 after stripping, and the Cauchy bound is strict
    return refine_root(q, lo, hi, tol)

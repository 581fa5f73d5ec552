"""P-recurrences for coefficient sequences.

Three routes in, one shape out.  An algebraic equation p(t, F) = 0 converts
through the classical chain: differentiate implicitly, reduce every derivative
in Q(t)[F]/(p), find the first Q(t)-linear dependence among the derivatives
(a linear ODE with polynomial coefficients), and transcribe the ODE onto
series coefficients.  Alternatively a recurrence is guessed directly from a
sequence prefix by exact linear algebra, with guard terms so spurious fits
die.  Either way the result unrolls and verifies in exact arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra.linsolve import nullspace_vector
from .algebra.polynomials import (
    BiPoly,
    RatFun,
    UniPoly,
    rf_ext_gcd,
    rf_from_bipoly,
    rf_mod,
    rf_mul,
    rf_trim,
)
from .algebra.roots import rational_roots
from .algebra.series import SeriesPrefix, format_rational, parse_rational
from .errors import (
    InsufficientTerms,
    LeadingZero,
    NotFound,
    SingularReduction,
)

GUESS_GUARD = 10


def _normalize_coeffs(polys):
    """Shared normal form: trim the high end, clear content, sign-fix."""
    polys = list(polys)
    while polys and polys[-1].is_zero():
        polys.pop()
    if not polys:
        raise ValueError("recurrence with all-zero coefficients")
    num_gcd, den_lcm = 0, 1
    for p in polys:
        for c in p.coeffs:
            num_gcd = _igcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // _igcd(den_lcm, c.denominator)
    content = Fraction(num_gcd, den_lcm)
    if polys[-1].lc() < 0:
        content = -content
    return tuple(p * (1 / content) for p in polys)


def _igcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class PRecurrence:
    """sum_i coeffs[i](n) * B(n + i) = 0 for every n >= 0.

    coeffs[order] is never identically zero; the tuple is content-free with
    the leading polynomial's leading coefficient positive.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize_coeffs(self.coeffs))

    @property
    def order(self):
        return len(self.coeffs) - 1

    def residual(self, terms, n):
        return sum(c(n) * terms[n + i] for i, c in enumerate(self.coeffs))

    def to_json(self):
        return {
            "order": self.order,
            "coeffs": [[format_rational(c) for c in p.coeffs] for p in self.coeffs],
        }

    @classmethod
    def from_json(cls, doc):
        polys = [UniPoly([parse_rational(c) for c in row]) for row in doc["coeffs"]]
        rec = cls(tuple(polys))
        if rec.order != int(doc["order"]):
            raise ValueError("declared order disagrees with coefficient list")
        return rec

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            # UniPoly renders in t; the recurrence variable is n
            text = str(c).replace("t", "n")
            parts.append(f"({text})*B(n+{i})" if i else f"({text})*B(n)")
        return " + ".join(parts) + " = 0"


def _rf_add(a, b):
    out = list(a) + [RatFun(0)] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return rf_trim(out)


def _algebraic_derivative(g, fprime, p):
    """d/dt of g(t, F) in Q(t)[F]/(p), where dF/dt = fprime."""
    dt = [c.derivative() for c in g]
    dF = [g[i] * i for i in range(1, len(g))]
    return _rf_add(rf_trim(dt), rf_mod(rf_mul(dF, fprime), p))


def alg_to_rec(p):
    """Recurrence satisfied by the coefficients of the root of p(t, F) = 0.

    Accepts a MinimalPolynomial or a bare BiPoly.  The dependence search is
    incremental: derivatives join one at a time, reduced against the pivots
    found so far, so the first kernel is the least-order ODE in Q(t)[F]/(p).
    """
    poly = getattr(p, "poly", p)
    prf = rf_trim(rf_from_bipoly(poly))
    d = len(prf) - 1
    if d < 1:
        raise SingularReduction("polynomial does not involve the walk variable")
    p_F = rf_trim([prf[i] * i for i in range(1, len(prf))])
    g, _, v = rf_ext_gcd(prf, p_F)
    if len(g) != 1:
        raise SingularReduction(
            "polynomial shares a factor with its derivative; reduce it with "
            "the proper-root fit first"
        )
    inv_pF = rf_mod([c / g[0] for c in v], prf)
    p_t = rf_trim([RatFun(c.derivative()) for c in poly.coeffs])
    fprime = rf_mod(rf_mul([-c for c in p_t], inv_pF), prf)

    # incremental echelon over Q(t): pivots span the reduced derivatives seen
    # so far, coords track each reduced vector in terms of f, f', f'', ...
    basis = []
    deriv = rf_mod([RatFun(0), RatFun(1)], prf)
    cs = None
    for r in range(d + 1):
        vec = list(deriv) + [RatFun(0)] * (d - len(deriv))
        coords = [RatFun(0)] * r + [RatFun(1)]
        for piv, pvec, pcoords in basis:
            c = vec[piv]
            if c.is_zero():
                continue
            f = c / pvec[piv]
            vec = [a - f * b for a, b in zip(vec, pvec)]
            padded = list(pcoords) + [RatFun(0)] * (len(coords) - len(pcoords))
            coords = [a - f * b for a, b in zip(coords, padded)]
        if all(c.is_zero() for c in vec):
            cs = coords
            break
        piv = next(i for i, c in enumerate(vec) if not c.is_zero())
        basis.append((piv, vec, coords))
        deriv = _algebraic_derivative(deriv, fprime, prf)
    if cs is None:  # d+1 vectors in a d-dimensional space always collide
        raise AssertionError("no linear dependence among derivatives")

    # clear Q(t) denominators: ode[k] is the polynomial coefficient of f^(k)
    lcm = UniPoly.const(1)
    for c in cs:
        g = lcm.gcd(c.den)
        lcm = lcm * c.den.exact_div(g)
    ode = [c.num * lcm.exact_div(c.den) for c in cs]

    # [t^m] t^j f^(k) = B(m+k-j) * prod_{i=1..k} (m-j+i); collect by shift
    shifts = {}
    for k, ck in enumerate(ode):
        for j, a in enumerate(ck.coeffs):
            if not a:
                continue
            shifts.setdefault(k - j, []).append((k, j, a))
    smin = min(shifts)
    smax = max(shifts)
    polys = []
    for s in range(smin, smax + 1):
        q = UniPoly()
        for k, j, a in shifts.get(s, ()):
            term = UniPoly.const(a)
            for i in range(1, k + 1):
                term = term * UniPoly([i - j - smin, 1])
            q = q + term
        polys.append(q)

    # dividing by a factor with a root at some n >= 0 would forge the relation
    # at that n, so only root-free parts of the common gcd come out
    g = polys[0]
    for q in polys[1:]:
        g = g.gcd(q)
    for root in rational_roots(g):
        if root.denominator == 1 and root >= 0:
            factor = UniPoly([-root, 1])
            while g % factor == UniPoly() and g.degree > 0:
                g = g.exact_div(factor)
    if g.degree > 0:
        polys = [q.exact_div(g) for q in polys]
    return PRecurrence(tuple(polys))


def guess_recurrence(seq, max_order, max_degree):
    """Least recurrence fitting the prefix, searched by total order+degree.

    Every supplied term participates in the fit, so the quoted guard margin
    is genuine overdetermination, not a held-out check.
    """
    terms = list(seq)
    need = (max_order + 1) * (max_degree + 1) + max_order + GUESS_GUARD
    if len(terms) < need:
        raise InsufficientTerms(
            f"need at least {need} terms for order {max_order}, degree "
            f"{max_degree}; got {len(terms)}"
        )
    pairs = sorted(
        ((r, deg) for r in range(1, max_order + 1) for deg in range(max_degree + 1)),
        key=lambda rd: (rd[0] + rd[1], rd[0]),
    )
    for r, deg in pairs:
        ncols = (r + 1) * (deg + 1)
        rows = []
        for n in range(len(terms) - r):
            npows = [Fraction(1)]
            for _ in range(deg):
                npows.append(npows[-1] * n)
            rows.append(
                [npows[j] * terms[n + i] for i in range(r + 1) for j in range(deg + 1)]
            )
        vec = nullspace_vector(rows, ncols)
        if vec is None:
            continue
        polys = [UniPoly(vec[i * (deg + 1) : (i + 1) * (deg + 1)]) for i in range(r + 1)]
        if polys[-1].is_zero():
            continue  # really a lower-order relation; an earlier pair owns it
        rec = PRecurrence(tuple(polys))
        report = verify_recurrence(rec, terms)
        if report["pass"]:
            return rec
    raise NotFound(
        f"no recurrence within order {max_order}, degree {max_degree} fits"
    )


def run_recurrence(rec, initial, N, scale=1):
    """Unroll to N+1 terms.  Integer sequences stay in machine integers."""
    r = rec.order
    if len(initial) < r:
        raise InsufficientTerms(f"unrolling order {r} needs {r} initial terms")
    vals = []
    for v in initial[: N + 1]:
        f = Fraction(v)
        vals.append(int(f) if f.denominator == 1 else f)
    # normalized coefficients are integral, so plain-int Horner carries the
    # whole unroll for integer sequences
    polys = [tuple(int(c) for c in p.coeffs) for p in rec.coeffs]

    def ev(p, n):
        acc = 0
        for c in reversed(p):
            acc = acc * n + c
        return acc

    while len(vals) < N + 1:
        n = len(vals) - r
        ln = ev(polys[r], n)
        if ln == 0:
            raise LeadingZero(n)
        acc = 0
        for i in range(r):
            acc += ev(polys[i], n) * vals[n + i]
        if isinstance(acc, int):
            q, rem = divmod(-acc, ln)
            vals.append(q if rem == 0 else Fraction(-acc, ln))
        else:
            nxt = -acc / ln
            vals.append(int(nxt) if nxt.denominator == 1 else nxt)
    return SeriesPrefix(vals, scale)


def verify_recurrence(rec, seq):
    """Exact residual of the relation at every checkable index."""
    terms = list(seq)
    r = rec.order
    residuals = [rec.residual(terms, n) for n in range(len(terms) - r)]
    first_bad = next((n for n, s in enumerate(residuals) if s != 0), None)
    return {
        "pass": first_bad is None and bool(residuals),
        "checked": len(residuals),
        "first_failure": first_bad,
        "residuals": residuals,
    }

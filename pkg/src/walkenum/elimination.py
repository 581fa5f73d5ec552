"""Minimal polynomials for system targets.

The pipeline has three stages.  First a presolve pass substitutes away every
auxiliary variable whose defining equation does not mention itself; this is
exact triangular elimination and usually shrinks a system to a handful of
genuinely recursive equations.  Second, Buchberger runs on the residual core
with the remaining auxiliaries ordered above the target, and some basis
element free of auxiliaries is the candidate annihilator.  Third, the
candidate is cut down to the minimal polynomial by an exact degree-bounded
series fit against an independently enumerated reference series; the fit
result must divide the candidate exactly and annihilate the reference to its
full order, otherwise the reference was too short and the caller retries with
more terms.
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.groebner import (
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_TERMS,
    groebner_eliminate,
)
from .algebra.linsolve import nullspace_vector
from .algebra.mpoly import MPoly
from .algebra.polynomials import BiPoly, UniPoly, rf_divmod, rf_from_bipoly
from .algebra.roots import rational_roots
from .algebra.series import SeriesPrefix, parse_rational
from .errors import (
    DivisionMismatch,
    IterationDiverges,
    MissingLinearTerm,
)
from .semibounded import GFSystem, WalkVar, variable_series, vector_iterate
from .stepset import Step, StepSet

PRESOLVE_TERM_CAP = 20000
_FIT_GUARD = 8

# display names for eliminated targets
_TARGET_SYMBOL = {"F": "F", "K": "K", "GB": "G"}


@dataclass
class MinimalPolynomial:
    """Certified annihilator of a walk generating function.

    verified_order is the truncation order N with p(t, f) = 0 mod t^(N+1)
    checked against the independent enumeration; warning is set when the
    reference was too short to run the degree-bounded minimality fit.
    """

    poly: BiPoly
    verified_order: int
    provenance: dict = field(default_factory=dict)
    warning: str = ""

    def to_json(self):
        out = {
            "poly": self.poly.to_json(),
            "verified_order": self.verified_order,
            "provenance": self.provenance,
        }
        if self.warning:
            out["warning"] = self.warning
        return out

    @classmethod
    def from_json(cls, doc):
        return cls(
            BiPoly.from_json(doc["poly"]),
            int(doc["verified_order"]),
            dict(doc.get("provenance", {})),
            doc.get("warning", ""),
        )


@dataclass
class ComboSpec:
    """A linear combination of solved system variables to eliminate for."""

    terms: list  # (Fraction coefficient, WalkVar) pairs
    label: str = "L"


def _canonical(p):
    """Primitive form with the lowest nonzero coefficient made positive."""
    p = p.primitive()
    if p.is_zero():
        return p
    for c in p.coeffs:
        for q in c.coeffs:
            if q:
                return p * -1 if q < 0 else p
    return p


def system_hash(sys):
    doc = json.dumps(sys.to_json(), sort_keys=True)
    return hashlib.sha256(doc.encode()).hexdigest()[:16]


def _provenance(sys):
    out = {"system": system_hash(sys), "scale": sys.scale}
    for key in ("class", "steps", "floor"):
        if key in sys.meta:
            out[key] = sys.meta[key]
    return out


def _presolve(equations, target_name, registry):
    """Substitute away variables not defined in terms of themselves.

    Each equation is var - rhs; when var does not occur in rhs the equation
    is monic linear in var, so replacing var by rhs everywhere preserves the
    elimination ideal exactly.  Greedy order: smallest rhs first.  A
    substitution that would blow past the term cap is blocked instead.
    """
    eqs = dict(equations)
    blocked = set()
    while True:
        best = None
        for name, eq in eqs.items():
            if name == target_name or name in blocked:
                continue
            rhs = MPoly.variable(registry, name) - eq
            if name in rhs.support():
                continue
            occ = sum(1 for o, oeq in eqs.items() if o != name and name in oeq.support())
            key = (rhs.term_count(), occ, name)
            if best is None or key < best[0]:
                best = (key, name, rhs)
        if best is None:
            return eqs
        _, name, rhs = best
        updated = {}
        ok = True
        for other, oeq in eqs.items():
            if other == name:
                continue
            if name in oeq.support():
                oeq = oeq.substitute(name, rhs)
                if oeq.term_count() > PRESOLVE_TERM_CAP:
                    ok = False
                    break
            updated[other] = oeq
        if ok:
            eqs = updated
        else:
            blocked.add(name)


def eliminate_target(sys, max_degree=DEFAULT_MAX_DEGREE, max_terms=DEFAULT_MAX_TERMS):
    """Nonzero polynomial in (t, target) from the system's elimination ideal."""
    target = sys.target.name
    aux = [v.name for v in sorted(sys.variables, key=WalkVar.sort_key) if v.name != target]
    registry = tuple(aux) + (target, "t")
    eqs = {n: eq.lift(registry) for n, eq in sys.equations.items()}
    eqs = _presolve(eqs, target, registry)

    live = set()
    for eq in eqs.values():
        live |= eq.support()
    live -= {target, "t"}
    if not live:
        # presolve closed over the target alone
        candidate = eqs[target]
    else:
        polys = list(eqs.values())
        for name in aux:
            if name not in live:
                polys = [p.drop_var(name) for p in polys]
        basis = groebner_eliminate(polys, target, max_degree=max_degree, max_terms=max_terms)
        frees = [p for p in basis if p.support() <= {target, "t"}]
        candidate = min(
            frees,
            key=lambda p: (p.degree_in(target), p.degree_in("t"), p.term_count(), str(p)),
        )
    symbol = _TARGET_SYMBOL.get(sys.target.kind, sys.target.name)
    bp = candidate.to_bipoly(target)
    return _canonical(BiPoly(bp.coeffs, symbol))


def _fit_annihilator(powers, d, e, order):
    """Least polynomial with F-degree d, t-degree e killing the series, if any."""
    cols = []
    for i in range(d + 1):
        base = powers[i]
        for j in range(e + 1):
            cols.append([base[n - j] if n >= j else Fraction(0) for n in range(order + 1)])
    rows = [[col[n] for col in cols] for n in range(order + 1)]
    vec = nullspace_vector(rows, len(cols))
    if vec is None:
        return None
    coeffs = []
    for i in range(d + 1):
        coeffs.append(UniPoly(vec[i * (e + 1) : (i + 1) * (e + 1)]))
    return BiPoly(coeffs)


def find_proper_root(candidate, reference):
    """Cut a candidate annihilator down to the minimal polynomial.

    Runs an exact series fit for ascending F-degree (then t-degree) bounded by
    the candidate's own degrees; the first hit is certified by exact division
    into the candidate and by annihilating the reference to its full order.
    A fit result that fails the division check means the reference series was
    too short, reported as DivisionMismatch so the caller can extend it.
    """
    cand = _canonical(candidate)
    resid = cand.eval_series(reference)
    if resid.valuation() is not None:
        raise ValueError(
            f"candidate does not annihilate the reference (first failure at "
            f"coefficient {resid.valuation()})"
        )
    dF, dT = cand.degree_f, cand.degree_t
    M = reference.order
    powers = [SeriesPrefix((1,), reference.scale).extended(M)]
    for _ in range(dF):
        powers.append(powers[-1] * reference)
    fit_ran = False
    for d in range(1, dF + 1):
        if M + 1 < (d + 1) + _FIT_GUARD:
            break
        for e in range(dT + 1):
            if M + 1 < (d + 1) * (e + 1) + _FIT_GUARD:
                break
            fit_ran = True
            q = _fit_annihilator(powers, d, e, M)
            if q is None:
                continue
            q = _canonical(BiPoly(q.coeffs, cand.var))
            check = q.eval_series(reference)
            if check.valuation() is not None:
                raise DivisionMismatch(
                    "fit result fails to annihilate the full reference"
                )
            _, rem = rf_divmod(rf_from_bipoly(cand), rf_from_bipoly(q))
            if rem:
                raise DivisionMismatch(
                    f"degree-({d},{e}) annihilator does not divide the candidate; "
                    "reference series too short"
                )
            return MinimalPolynomial(q, M)
    warning = (
        "reference too short for the minimality fit; returning the unreduced candidate"
        if not fit_ran
        else "no annihilator below the candidate's degrees; candidate kept as-is"
    )
    return MinimalPolynomial(cand, M, warning=warning)


def single_poly_iterate(p, N):
    """Series solution of one polynomial by damped fixed-point sweeps.

    Requires a linear term whose coefficient has nonzero constant part; that
    is the regime where each sweep is guaranteed to settle one further
    coefficient.  The update f <- f + lam*p(f) uses the Newton multiplier
    lam = -1/p'(0, f0) so higher-degree terms cannot stall the contraction.
    """
    poly = p.poly if isinstance(p, MinimalPolynomial) else p
    scale = int(p.provenance.get("scale", 1)) if isinstance(p, MinimalPolynomial) else 1
    c1 = poly.coeff(1)
    if c1.is_zero() or c1.constant() == 0:
        raise MissingLinearTerm(
            "polynomial has no linear term with nonzero constant coefficient; "
            "fixed-point sweeps cannot gain a coefficient per pass"
        )
    p0 = UniPoly([poly.coeff(i).constant() for i in range(poly.degree_f + 1)])
    dp0 = UniPoly([i * c for i, c in enumerate(p0.coeffs)][1:])
    starts = rational_roots(p0)
    starts.sort(key=lambda r: (r != 1, r != 0, r))
    for r in starts:
        slope = dp0(r)
        if slope == 0:
            continue
        lam = Fraction(-1) / slope
        f = SeriesPrefix((r,) + (Fraction(0),) * N, scale)
        for sweep in range(1, N + 5):
            val = poly.eval_series(f)
            k = val.valuation()
            if k is None:
                return f
            if sweep > k + 2:
                raise IterationDiverges(
                    f"coefficient {k} still unsettled after {sweep} sweeps"
                )
            f = f + val * lam
        raise IterationDiverges(f"no fixed point within {N + 4} sweeps")
    raise IterationDiverges(
        "every rational starting value is a degenerate root of p(0, .)"
    )


def _stepset_from_meta(meta):
    steps = []
    for entry in meta["steps"]:
        w = parse_rational(entry[2]) if len(entry) == 3 else Fraction(1)
        steps.append(Step(parse_rational(entry[0]), int(entry[1]), w))
    # steps in meta are already normalized, so this re-normalization is identity
    return StepSet.from_steps(steps)


def _reference_series(sys, combo_terms, order):
    """Combined reference series: DP per variable when the steps are known,
    otherwise the system's own fixed point (weaker but always available)."""
    if "steps" in sys.meta:
        s = _stepset_from_meta(sys.meta)
        acc = [Fraction(0)] * (order + 1)
        for c, v in combo_terms:
            vals = variable_series(v, s, order)
            for n in range(order + 1):
                acc[n] += c * vals[n]
        return SeriesPrefix(acc, sys.scale)
    sol = vector_iterate(sys, order)
    acc = SeriesPrefix((Fraction(0),) * (order + 1), sys.scale)
    for c, v in combo_terms:
        acc = acc + sol[v] * c
    return acc


def _certified_minimal(sys, candidate, combo_terms):
    order = max(2 * candidate.degree_f * candidate.degree_t + 10, 50)
    last = None
    for _ in range(3):
        ref = _reference_series(sys, combo_terms, order)
        try:
            mp = find_proper_root(candidate, ref)
        except DivisionMismatch as exc:
            last = exc
            order *= 2
            continue
        mp.provenance = _provenance(sys)
        return mp
    raise last


def minimal_polynomial(sys):
    """Eliminate the system to its target and certify the minimal polynomial."""
    candidate = eliminate_target(sys)
    return _certified_minimal(sys, candidate, [(Fraction(1), sys.target)])


def combine_and_eliminate(sys, combo):
    """Minimal polynomial of a linear combination of system variables."""
    names = {v.name for v in sys.variables}
    for _, v in combo.terms:
        if v.name not in names:
            raise KeyError(f"combination references unknown variable {v.name}")
    lvar = WalkVar("combo", (), combo.label)
    if lvar.name in names:
        raise KeyError(f"label {lvar.name} collides with a system variable")
    variables = list(sys.variables) + [lvar]
    registry = tuple(v.name for v in variables) + ("t",)
    relation = MPoly.variable(registry, lvar.name)
    for c, v in combo.terms:
        relation = relation - MPoly.variable(registry, v.name) * c
    equations = {n: eq.lift(registry) for n, eq in sys.equations.items()}
    equations[lvar.name] = relation
    meta = dict(sys.meta)
    meta["combo"] = {
        "label": lvar.name,
        "terms": [[str(c), v.to_json()] for c, v in combo.terms],
    }
    ext = GFSystem(variables, equations, lvar, sys.scale, meta)
    ext.check_closed()
    candidate = eliminate_target(ext)
    return _certified_minimal(ext, candidate, list(combo.terms))

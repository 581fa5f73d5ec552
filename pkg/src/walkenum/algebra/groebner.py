"""Buchberger's algorithm with the sugar selection strategy.

Pure lexicographic order (Python tuple order on exponent vectors, registry
index 0 highest).  Elimination callers put auxiliary variables first, the kept
variable and t last, so any basis element whose leading exponent is zero on
every auxiliary slot lies in Q[t, kept].

Reductions take full normal forms, every stored polynomial is normalized to
integer-primitive form with positive leading coefficient, and the final basis
is inter-reduced.  Degree and term-count budgets abort long computations with
ResourceExceeded instead of hanging.
"""

from fractions import Fraction

from ..errors import EliminationFailed, ResourceExceeded
from .mpoly import MPoly

DEFAULT_MAX_DEGREE = 600
DEFAULT_MAX_TERMS = 60000


def _divides(d, e):
    return all(a <= b for a, b in zip(d, e))


def _lcm(d, e):
    return tuple(max(a, b) for a, b in zip(d, e))


def _monomial_times(poly, exp, coeff):
    return MPoly(
        poly.vars,
        {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in poly.terms.items()},
    )


def normal_form(p, basis, max_degree=DEFAULT_MAX_DEGREE, max_terms=DEFAULT_MAX_TERMS):
    """Full normal form of p against the list of (lead_exp, poly) pairs."""
    work = dict(p.terms)
    out = {}
    while work:
        e = max(work)
        c = work.pop(e)
        if not c:
            continue
        hit = None
        for lead, g in basis:
            if _divides(lead, e):
                hit = (lead, g)
                break
        if hit is None:
            out[e] = c
            continue
        lead, g = hit
        shift = tuple(a - b for a, b in zip(e, lead))
        factor = c / g.terms[lead]
        for ge, gc in g.terms.items():
            key = tuple(a + b for a, b in zip(ge, shift))
            if key == e:
                continue
            v = work.get(key, Fraction(0)) - gc * factor
            if v:
                work[key] = v
            else:
                work.pop(key, None)
        if len(work) + len(out) > max_terms:
            raise ResourceExceeded("term budget exhausted during reduction")
        if sum(e) > max_degree:
            raise ResourceExceeded("degree budget exhausted during reduction")
    return MPoly(p.vars, out)


def buchberger(generators, max_degree=DEFAULT_MAX_DEGREE, max_terms=DEFAULT_MAX_TERMS):
    """Reduced Groebner basis (pure lex) of the given MPoly generators."""
    basis = []
    sugars = []

    def add_poly(p, sugar):
        p = p.primitive_normalize()
        if p.total_degree() > max_degree or p.term_count() > max_terms:
            raise ResourceExceeded("budget exhausted while extending basis")
        basis.append((p.leading()[0], p))
        sugars.append(sugar)
        return len(basis) - 1

    gens = [g for g in (x.primitive_normalize() for x in generators) if not g.is_zero()]
    if not gens:
        return []
    for g in sorted(gens, key=lambda q: (q.leading()[0], tuple(sorted(q.terms.items())))):
        add_poly(g, g.total_degree())

    pairs = set()
    done = set()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pairs.add((i, j))

    def pair_key(ij):
        i, j = ij
        li, pi = basis[i]
        lj, pj = basis[j]
        lcm = _lcm(li, lj)
        sugar = max(sugars[i] + sum(lcm) - sum(li), sugars[j] + sum(lcm) - sum(lj))
        return (sugar, lcm, i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, pi = basis[i]
        lj, pj = basis[j]
        lcm = _lcm(li, lj)
        # coprime leading terms: S-poly reduces to zero
        if lcm == tuple(a + b for a, b in zip(li, lj)):
            done.add((i, j))
            continue
        # chain criterion; only pairs whose S-poly is known to reduce to zero
        # count as treated, so a chain-skipped pair never justifies another skip
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k][0], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in done and b in done:
                    skip = True
                    break
        if skip:
            continue
        done.add((i, j))
        s = _monomial_times(pi, tuple(a - b for a, b in zip(lcm, li)), 1 / pi.terms[li])
        s = s - _monomial_times(pj, tuple(a - b for a, b in zip(lcm, lj)), 1 / pj.terms[lj])
        sugar = max(sugars[i] + sum(lcm) - sum(li), sugars[j] + sum(lcm) - sum(lj))
        r = normal_form(s, basis, max_degree, max_terms)
        if r.is_zero():
            continue
        new = add_poly(r, max(sugar, r.total_degree()))
        for k in range(new):
            pairs.add((k, new))

    return interreduce([p for _, p in basis], max_degree, max_terms)


def interreduce(polys, max_degree=DEFAULT_MAX_DEGREE, max_terms=DEFAULT_MAX_TERMS):
    """Reduce every element against the others until stable; sort ascending by lead."""
    polys = [p for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        # drop elements whose leading term another element divides, keep minimal set
        polys.sort(key=lambda p: p.leading()[0])
        keep = []
        for idx, p in enumerate(polys):
            others = [(q.leading()[0], q) for k, q in enumerate(polys) if k != idx and q.terms]
            r = normal_form(p, others, max_degree, max_terms)
            if r.terms != p.terms:
                changed = True
            if not r.is_zero():
                keep.append(r.primitive_normalize())
        # dedupe
        seen = set()
        polys = []
        for p in keep:
            key = tuple(sorted(p.terms.items()))
            if key not in seen:
                seen.add(key)
                polys.append(p)
    polys.sort(key=lambda p: p.leading()[0])
    return polys


def groebner_eliminate(
    system,
    keep,
    t_name="t",
    max_degree=DEFAULT_MAX_DEGREE,
    max_terms=DEFAULT_MAX_TERMS,
):
    """Groebner basis of the system; requires an element in Q[t, keep].

    The system's polynomials must already live on a shared registry whose last
    two variables are the kept walk variable and t.  Raises EliminationFailed
    when no basis element is free of the auxiliary variables.
    """
    basis = buchberger(system, max_degree, max_terms)
    allowed = {keep, t_name}
    if not any(p.support() <= allowed for p in basis):
        raise EliminationFailed(f"no basis element in Q[{t_name}, {keep}]")
    return basis

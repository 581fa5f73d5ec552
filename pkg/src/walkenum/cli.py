"""Command-line frontend: one job per process, machine-readable output.

Subcommands wire the pipelines end to end: `gf` solves or eliminates for a
walk class, `enum` produces coefficient prefixes by any method, `rec`
converts or guesses recurrences, `asy` estimates growth, `verify` diffs all
applicable enumeration routes, and `combine` eliminates for a linear
combination of system variables.  Documents are JSON (or plain text, or an
OEIS-style b-file for integer sequences); every failure exits nonzero with
a structured error document naming the offending input.

Resource budgets: --term-cap (or the WALKENUM_TERM_CAP environment
variable) bounds intermediate polynomial size during elimination, and
`verify` only attempts elimination-backed routes for systems with at most
VERIFY_ELIM_VARS unknowns, reporting larger ones as skipped.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import elimination
from .algebra.polynomials import BiPoly, UniPoly
from .algebra.series import SeriesPrefix, format_rational
from .asymptotics import (
    AsymptoticEstimate,
    asymptotic_base,
    empirical_growth,
    ratio_excursions_bridges,
)
from .bounded import bounded_bridge_gf, bounded_free_gf, taylor_coeffs
from .elimination import (
    ComboSpec,
    MinimalPolynomial,
    combine_and_eliminate,
    minimal_polynomial,
    single_poly_iterate,
)
from .errors import (
    EliminationFailed,
    LeadingZero,
    MissingLinearTerm,
    NonIntegralCoefficients,
    ParseError,
    ResourceExceeded,
    SingularReduction,
    WalkenumError,
)
from .oracle import dp_enumerate
from .recurrence import (
    GUESS_GUARD,
    PRecurrence,
    alg_to_rec,
    guess_recurrence,
    run_recurrence,
    verify_recurrence,
)
from .semibounded import F, K, closure_system, excursion_system, meander_system, vector_iterate
from .stepset import WalkClass, is_valid, parse_stepset
from .unbounded import bridge_system, free_gf

FORMATS = ("json", "plain", "bfile")

# elimination cost grows steeply with unknown count; past this, verify
# reports the single/recurrence routes as skipped instead of grinding
VERIFY_ELIM_VARS = 6


@dataclass(frozen=True)
class JobConfig:
    """One CLI invocation, fully determined."""

    steps: str = None
    walk_class: WalkClass = None
    n: int = 0
    max_order: int = 6
    max_degree: int = 4
    term_cap: int = elimination.PRESOLVE_TERM_CAP
    fmt: str = "json"
    tol: Fraction = Fraction(1, 10**9)
    sqrt_t: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ParseError(f"truncation order must be >= 0, got {self.n}")
        if self.max_order < 1 or self.max_degree < 0:
            raise ParseError("guess bounds must be positive")
        if self.term_cap < 1:
            raise ParseError("term cap must be positive")
        if self.fmt not in FORMATS:
            raise ParseError(f"unknown output format {self.fmt!r}")
        if self.tol <= 0:
            raise ParseError("tolerance must be positive")


def emit_bfile(seq):
    """OEIS b-file text: 'n a(n)' lines from n=0, one trailing newline."""
    lines = []
    for n, c in enumerate(seq):
        f = Fraction(c)
        if f.denominator != 1:
            raise NonIntegralCoefficients(
                f"coefficient at n={n} is {f}; b-files take integer sequences"
            )
        lines.append(f"{n} {f.numerator}")
    return "\n".join(lines) + "\n"


def _config(args):
    tol = args.tol if hasattr(args, "tol") else "1/1000000000"
    try:
        tol = Fraction(tol)
    except (ValueError, ZeroDivisionError):
        tol = Fraction(float(tol))
    return JobConfig(
        steps=getattr(args, "steps", None),
        walk_class=_walk_class(args),
        n=getattr(args, "n", 0) or 0,
        max_order=getattr(args, "max_order", 6),
        max_degree=getattr(args, "max_degree", 4),
        term_cap=args.term_cap,
        fmt=getattr(args, "format", "json"),
        tol=tol,
        sqrt_t=getattr(args, "sqrt_t", False),
    )


def _walk_class(args):
    kind = getattr(args, "walk_class", None)
    if kind is None:
        return None
    if kind in ("bounded-free", "bounded-bridge"):
        return WalkClass(kind, a=args.upper, b=args.lower)
    if kind in ("excursion", "meander"):
        return WalkClass(kind, lower=args.lower)
    return WalkClass(kind)


def _load_steps(cfg):
    with open(cfg.steps, encoding="utf-8") as fh:
        return parse_stepset(fh.read())


def _system_for(wc, s):
    kind = wc.kind
    if kind == "excursion":
        return excursion_system(s, wc.lower)
    if kind == "nonneg-excursion":
        return excursion_system(s, 0)
    if kind == "meander":
        return meander_system(s, wc.lower)
    if kind == "bridge":
        return bridge_system(s)
    raise ParseError(f"class {kind} has no polynomial system; it is rational")


def _rational_gf(wc, s):
    if wc.kind == "bounded-free":
        return bounded_free_gf(s, wc.a, wc.b)
    if wc.kind == "bounded-bridge":
        return bounded_bridge_gf(s, wc.a, wc.b)
    if wc.kind == "unbounded-free":
        return free_gf(s)
    raise ParseError(f"class {wc.kind} is algebraic; it has no rational closed form")


def _rational_as_bipoly(g, var="F"):
    # den*F - num = 0: the degree-1 annihilator of a rational series
    return BiPoly([g.num * -1, g.den], var)


def _is_rational_class(wc):
    return wc.kind in ("bounded-free", "bounded-bridge", "unbounded-free")


def _substitute(mp, s):
    """Rewrite the minimal polynomial in external units when support allows."""
    poly = mp.poly
    m = s.scale
    if m == 1:
        return mp, False
    g = poly.t_support_gcd()
    if g == 0 or g % m != 0:
        return mp, False
    prov = dict(mp.provenance)
    prov["scale"] = 1
    prov["substituted_from_scale"] = m
    return MinimalPolynomial(poly.decimate_t(m), mp.verified_order // m, prov, mp.warning), True


def _minpoly_for(cfg, wc, s):
    if _is_rational_class(wc):
        g = _rational_gf(wc, s)
        poly = _rational_as_bipoly(g)
        return MinimalPolynomial(poly, cfg.n, {"scale": s.scale, "class": wc.kind})
    return minimal_polynomial(_system_for(wc, s))


def _initial_terms(s, wc, r):
    return [Fraction(v) for v in dp_enumerate(s, wc, max(r - 1, 0))]


def _series_doc(seq, method, wc):
    return {
        "series": [format_rational(c) for c in seq],
        "scale": seq.scale,
        "order": seq.order,
        "method": method,
        "class": wc.to_json(),
    }


def _render_series(cfg, seq, doc):
    if cfg.fmt == "bfile":
        return emit_bfile(seq)
    if cfg.fmt == "plain":
        return "\n".join(f"t^{n}: {format_rational(c)}" for n, c in enumerate(seq)) + "\n"
    return _dumps(doc)


def _dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# --- subcommands ---


def _cmd_gf(cfg):
    s = _load_steps(cfg)
    wc = cfg.walk_class
    if _is_rational_class(wc):
        g = _rational_gf(wc, s)
        doc = {"kind": "rational", "gf": g.to_json(), "scale": s.scale, "class": wc.to_json()}
        if cfg.fmt == "plain":
            return 0, str(g) + "\n"
        return 0, _dumps(doc)
    mp = minimal_polynomial(_system_for(wc, s))
    substituted = False
    if cfg.sqrt_t:
        mp, substituted = _substitute(mp, s)
    doc = {"kind": "algebraic", "minpoly": mp.to_json(), "class": wc.to_json()}
    if substituted:
        doc["substituted"] = True
    if cfg.fmt == "plain":
        return 0, str(mp.poly) + " = 0\n"
    return 0, _dumps(doc)


def _cmd_enum(cfg, method):
    s = _load_steps(cfg)
    wc = cfg.walk_class
    N = cfg.n
    if method == "dp":
        seq = dp_enumerate(s, wc, N)
    elif method == "vector":
        sys_ = _system_for(wc, s)
        seq = vector_iterate(sys_, N)[sys_.target]
    elif method == "single":
        seq = single_poly_iterate(_minpoly_for(cfg, wc, s), N)
    elif method == "taylor":
        seq = taylor_coeffs(_rational_gf(wc, s), N, s.scale)
    else:  # recurrence
        rec = alg_to_rec(_minpoly_for(cfg, wc, s))
        seq = run_recurrence(rec, _initial_terms(s, wc, rec.order), N, s.scale)
    doc = _series_doc(seq, method, wc)
    return 0, _render_series(cfg, seq, doc)


def _minpoly_from_doc(doc):
    if "minpoly" in doc:
        return MinimalPolynomial.from_json(doc["minpoly"])
    if "poly" in doc:
        return MinimalPolynomial.from_json(doc)
    if "coeffs" in doc:
        return MinimalPolynomial(BiPoly.from_json(doc), 0)
    raise ParseError("no minimal polynomial found in the input document")


def _cmd_rec(cfg, args):
    s = _load_steps(cfg)
    wc = cfg.walk_class
    if args.from_minpoly:
        with open(args.from_minpoly, encoding="utf-8") as fh:
            mp = _minpoly_from_doc(json.load(fh))
        rec = alg_to_rec(mp)
        route = "from-minpoly"
    elif args.guess:
        need = (cfg.max_order + 1) * (cfg.max_degree + 1) + cfg.max_order + GUESS_GUARD
        N = max(cfg.n, need)
        terms = list(dp_enumerate(s, wc, N))
        rec = guess_recurrence(terms, cfg.max_order, cfg.max_degree)
        route = "guess"
    else:
        rec = alg_to_rec(_minpoly_for(cfg, wc, s))
        route = "from-class"
    check_n = max(cfg.n, 2 * rec.order + 20)
    ref = list(dp_enumerate(s, wc, check_n))
    report = verify_recurrence(rec, ref)
    doc = {
        "recurrence": rec.to_json(),
        "route": route,
        "class": wc.to_json(),
        "verified": {
            "pass": report["pass"],
            "checked": report["checked"],
            "first_failure": report["first_failure"],
        },
    }
    if cfg.fmt == "plain":
        return (0 if report["pass"] else 1), str(rec) + "\n"
    return (0 if report["pass"] else 1), _dumps(doc)


def _cmd_asy(cfg, window):
    s = _load_steps(cfg)
    wc = cfg.walk_class
    mp = _minpoly_for(cfg, wc, s)
    base_est = asymptotic_base(mp, cfg.tol)
    N = cfg.n if cfg.n else 200
    seq = dp_enumerate(s, wc, N)
    positives = sum(1 for n, v in enumerate(seq) if n > 0 and v > 0)
    fit = empirical_growth(seq, min(window, positives), base_hint=base_est)
    ratio_constant = None
    if wc.kind in ("nonneg-excursion", "bridge"):
        other = "bridge" if wc.kind == "nonneg-excursion" else "nonneg-excursion"
        if is_valid(WalkClass(other), s):
            tail = [r for r in ratio_excursions_bridges(s, min(N, 120)) if r is not None]
            if tail:
                ratio_constant = float(tail[-1])
    est = AsymptoticEstimate(
        base_est.base,
        defining_poly=base_est.defining_poly,
        empirical_alpha=fit.empirical_alpha,
        empirical_constant=fit.empirical_constant,
        ratio_constant=ratio_constant,
        flags=tuple(dict.fromkeys(base_est.flags + fit.flags)),
    )
    if cfg.fmt == "plain":
        lo, hi = est.base
        lines = [
            f"base in [{format_rational(lo)}, {format_rational(hi)}] ~ {float(est.base_midpoint):.9f}",
            f"defining factor: {est.defining_poly}",
            f"empirical alpha: {est.empirical_alpha:.4f}",
            f"empirical constant: {est.empirical_constant:.4f}",
        ]
        if est.ratio_constant is not None:
            lines.append(f"ratio constant: {est.ratio_constant:.6f}")
        for flag in est.flags:
            lines.append(f"flag: {flag}")
        return 0, "\n".join(lines) + "\n"
    doc = est.to_json()
    doc["class"] = wc.to_json()
    return 0, _dumps(doc)


def _cmd_verify(cfg):
    s = _load_steps(cfg)
    wc = cfg.walk_class
    N = cfg.n if cfg.n else 40
    series = {"dp": dp_enumerate(s, wc, N)}
    skipped = {}
    if _is_rational_class(wc):
        g = _rational_gf(wc, s)
        series["taylor"] = taylor_coeffs(g, N, s.scale)
        mp = MinimalPolynomial(_rational_as_bipoly(g), N, {"scale": s.scale})
    else:
        sys_ = _system_for(wc, s)
        series["vector"] = vector_iterate(sys_, N)[sys_.target]
        if len(sys_.variables) > VERIFY_ELIM_VARS:
            mp = None
            skipped["single"] = skipped["recurrence"] = "SystemTooLarge"
        else:
            try:
                mp = minimal_polynomial(sys_)
            except (ResourceExceeded, EliminationFailed) as exc:
                mp = None
                skipped["single"] = skipped["recurrence"] = type(exc).__name__
    if mp is not None:
        try:
            series["single"] = single_poly_iterate(mp, N)
        except MissingLinearTerm as exc:
            skipped["single"] = type(exc).__name__
        try:
            rec = alg_to_rec(mp)
            series["recurrence"] = run_recurrence(
                rec, _initial_terms(s, wc, rec.order), N, s.scale
            )
        except (SingularReduction, LeadingZero) as exc:
            skipped["recurrence"] = type(exc).__name__
    ref = series["dp"]
    mismatches = {
        name: [n for n in range(N + 1) if seq[n] != ref[n]]
        for name, seq in series.items()
        if seq.coeffs != ref.coeffs
    }
    doc = {
        "agree": not mismatches,
        "n": N,
        "methods": sorted(series),
        "skipped": skipped,
        "mismatches": mismatches,
        "class": wc.to_json(),
    }
    if cfg.fmt == "plain":
        verdict = "all methods agree" if not mismatches else f"MISMATCH: {sorted(mismatches)}"
        return (0 if not mismatches else 1), f"{verdict} ({', '.join(sorted(series))}; n={N})\n"
    return (0 if not mismatches else 1), _dumps(doc)


def _parse_combo(text):
    doc = json.loads(text)
    label = doc.get("label", "L")
    terms = []
    for entry in doc["terms"]:
        coeff = Fraction(str(entry[0]))
        kind = entry[1]
        if kind == "F":
            var = F(int(entry[2]), int(entry[3]))
        elif kind == "K":
            var = K(int(entry[2]))
        else:
            raise ParseError(f"combination terms take F or K seeds, got {kind!r}")
        terms.append((coeff, var))
    if not terms:
        raise ParseError("combination needs at least one term")
    return ComboSpec(terms, label), [v for _, v in terms]


def _cmd_combine(cfg, combo_arg, lower):
    s = _load_steps(cfg)
    if combo_arg.lstrip().startswith("{"):
        text = combo_arg
    else:
        with open(combo_arg, encoding="utf-8") as fh:
            text = fh.read()
    combo, seeds = _parse_combo(text)
    sys_ = closure_system(s, seeds, lower)
    mp = combine_and_eliminate(sys_, combo)
    doc = {"kind": "algebraic", "minpoly": mp.to_json()}
    if cfg.n:
        try:
            seq = single_poly_iterate(mp, cfg.n)
            doc["series"] = [format_rational(c) for c in seq]
            doc["scale"] = seq.scale
        except MissingLinearTerm as exc:
            doc["series_skipped"] = str(exc)
    if cfg.fmt == "plain":
        return 0, str(mp.poly) + " = 0\n"
    return 0, _dumps(doc)


# --- argument plumbing ---


def _add_common(p, with_class=True):
    p.add_argument("--steps", required=True, help="path to a step-set JSON file")
    if with_class:
        p.add_argument(
            "--class", dest="walk_class", required=True,
            choices=[
                "bounded-free", "bounded-bridge", "excursion",
                "nonneg-excursion", "meander", "unbounded-free", "bridge",
            ],
        )
    p.add_argument("--upper", type=int, default=0, help="upper bound a (bounded classes)")
    p.add_argument("--lower", type=int, default=0,
                   help="lower bound b (bounded) or floor (excursion/meander/combine)")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--term-cap", type=int, default=None,
                   help="elimination size budget (env WALKENUM_TERM_CAP)")


def _build_parser():
    top = argparse.ArgumentParser(
        prog="walkenum",
        description="exact generating functions, recurrences, and asymptotics for lattice walks",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gf", help="closed form: rational g.f. or minimal polynomial")
    _add_common(p)
    p.add_argument("--sqrt-t", action="store_true",
                   help="print in external length units when the support allows")

    p = sub.add_parser("enum", help="coefficient prefix by the chosen method")
    _add_common(p)
    p.add_argument("-n", type=int, required=True, help="truncation order (internal units)")
    p.add_argument("--method", required=True,
                   choices=["dp", "vector", "single", "taylor", "recurrence"])

    p = sub.add_parser("rec", help="P-recurrence for the counting sequence")
    _add_common(p)
    p.add_argument("-n", type=int, default=0, help="verification depth")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--from-minpoly", metavar="PATH",
                   help="convert a minimal-polynomial JSON document")
    g.add_argument("--guess", action="store_true", help="fit from enumerated terms")
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--max-degree", type=int, default=4)

    p = sub.add_parser("asy", help="growth base and empirical fit")
    _add_common(p)
    p.add_argument("-n", type=int, default=0, help="terms for the empirical fit")
    p.add_argument("--tol", default="1/1000000000", help="width of the base interval")
    p.add_argument("--window", type=int, default=80)

    p = sub.add_parser("verify", help="run all applicable methods and diff them")
    _add_common(p)
    p.add_argument("-n", type=int, default=40)

    p = sub.add_parser("combine", help="eliminate for a combination of system variables")
    _add_common(p, with_class=False)
    p.add_argument("--combo", required=True,
                   help="inline JSON or a path: {\"label\": .., \"terms\": [[coeff, F|K, idx..], ..]}")
    p.add_argument("-n", type=int, default=0, help="series terms to attach")

    return top


def dispatch(argv, out=None):
    """Run one job; returns the exit status and writes the document to out."""
    out = out if out is not None else sys.stdout
    top = _build_parser()
    args = top.parse_args(argv)
    cap = args.term_cap or os.environ.get("WALKENUM_TERM_CAP")
    try:
        cfg = _config_with_cap(args, cap)
        elimination.PRESOLVE_TERM_CAP = cfg.term_cap
        if args.command == "gf":
            status, text = _cmd_gf(cfg)
        elif args.command == "enum":
            status, text = _cmd_enum(cfg, args.method)
        elif args.command == "rec":
            status, text = _cmd_rec(cfg, args)
        elif args.command == "asy":
            status, text = _cmd_asy(cfg, args.window)
        elif args.command == "verify":
            status, text = _cmd_verify(cfg)
        else:
            status, text = _cmd_combine(cfg, args.combo, args.lower)
    except WalkenumError as exc:
        doc = {"error": {"type": type(exc).__name__, "message": str(exc), "argv": list(argv)}}
        out.write(_dumps(doc))
        return 1
    except OSError as exc:
        doc = {"error": {"type": "IOError", "message": str(exc), "argv": list(argv)}}
        out.write(_dumps(doc))
        return 1
    out.write(text)
    return status


def _config_with_cap(args, cap):
    args.term_cap = int(cap) if cap else elimination.PRESOLVE_TERM_CAP
    return _config(args)


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

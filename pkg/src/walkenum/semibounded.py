"""Closed polynomial systems for floored walks: excursions and meanders.

Variables are generating functions of walk families over the internal step
set, all living above the axis after shifting the floor to 0:

  F[a,b]   walks from altitude a to altitude b staying >= 0
  Gd[m]    irreducible descents: m -> 0 with interior strictly positive
  Ga[m]    irreducible ascents: 0 -> m with interior strictly positive
  G00      irreducible returns: 0 -> 0, interior strictly positive, at least
           two steps (single horizontal steps are counted separately)
  K[a]     walks from altitude a staying >= 0, ending anywhere (meanders)
  H[j]     axis-avoiding first passage j -> 0 for unbounded bridges: interior
           never touches 0 but may cross it (used by the unbounded module)
  GB       unbounded bridges
  combo    a linear combination adjoined by the elimination module

Every equation is the first-passage/lowest-point decomposition of its family:
splitting a walk at the first visit to its minimum altitude (F), at its first
or last departure from the axis (G-variables), or at its first axis crossing
(H-variables).  Index closure is bounded by max(|dy|) - 1 and the floor depth,
so the system is finite; each equation is independently checkable against the
DP oracle, which the tests do.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.mpoly import MPoly
from .algebra.series import SeriesPrefix, zeros, one as series_one
from .errors import NonConvergence
from .oracle import dp_custom
from .stepset import validate, WalkClass

_KIND_ORDER = {"F": 0, "Gd": 1, "Ga": 2, "G00": 3, "K": 4, "H": 5, "GB": 6, "combo": 7}


@dataclass(frozen=True)
class WalkVar:
    kind: str
    indices: tuple = ()
    label: str = ""

    @property
    def name(self):
        if self.kind == "combo":
            return self.label or "L"
        if not self.indices:
            return self.kind
        return f"{self.kind}[{','.join(str(i) for i in self.indices)}]"

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.indices, self.label)

    def to_json(self):
        out = {"kind": self.kind}
        if self.indices:
            out["indices"] = list(self.indices)
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, doc):
        return cls(doc["kind"], tuple(doc.get("indices", ())), doc.get("label", ""))


def F(a, b):
    return WalkVar("F", (a, b))


def Gd(m):
    return WalkVar("Gd", (m,))


def Ga(m):
    return WalkVar("Ga", (m,))


G00 = WalkVar("G00")
GB = WalkVar("GB")


def K(a):
    return WalkVar("K", (a,))


def H(j):
    return WalkVar("H", (j,))


@dataclass
class GFSystem:
    """A closed system: one polynomial relation (var - rhs = 0) per variable."""

    variables: list
    equations: dict              # name -> MPoly on the shared registry
    target: WalkVar
    scale: int = 1
    meta: dict = field(default_factory=dict)

    @property
    def registry(self):
        return tuple(v.name for v in self.variables) + ("t",)

    def equation_for(self, var):
        return self.equations[var.name]

    def rhs_polys(self):
        """name -> rhs as MPoly (the variable moved back to the other side)."""
        reg = self.registry
        return {
            v.name: MPoly.variable(reg, v.name) - self.equations[v.name]
            for v in self.variables
        }

    def check_closed(self):
        names = {v.name for v in self.variables}
        for eq in self.equations.values():
            for used in eq.support():
                if used != "t" and used not in names:
                    raise AssertionError(f"system references unknown variable {used}")
        if self.target.name not in names:
            raise AssertionError("target missing from the system")

    def to_json(self):
        return {
            "variables": [v.to_json() for v in self.variables],
            "equations": {n: eq.to_json() for n, eq in self.equations.items()},
            "target": self.target.to_json(),
            "scale": self.scale,
        }

    @classmethod
    def from_json(cls, doc):
        variables = [WalkVar.from_json(v) for v in doc["variables"]]
        equations = {n: MPoly.from_json(e) for n, e in doc["equations"].items()}
        return cls(variables, equations, WalkVar.from_json(doc["target"]), int(doc.get("scale", 1)))


class _Builder:
    """Worklist closure over the decomposition equations."""

    def __init__(self, stepset, index_bound):
        self.steps = [(int(s.dx), s.dy, s.w) for s in stepset.steps]
        self.ups = [(x, y, w) for x, y, w in self.steps if y > 0]
        self.downs = [(x, y, w) for x, y, w in self.steps if y < 0]
        self.flats = [(x, y, w) for x, y, w in self.steps if y == 0]
        self.bound = index_bound
        self.done = {}
        self.queue = []

    def want(self, var):
        for i in var.indices:
            if abs(i) > self.bound:
                raise AssertionError(f"index bound {self.bound} violated by {var.name}")
        if var.name not in self.done:
            self.done[var.name] = None
            self.queue.append(var)
        return var

    def build(self, target):
        self.want(target)
        while self.queue:
            var = self.queue.pop()
            self.done[var.name] = self._terms(var)
        variables = sorted(
            (v for v, _ in self.done.values()), key=WalkVar.sort_key
        )
        registry = tuple(v.name for v in variables) + ("t",)
        equations = {}
        for v, terms in self.done.values():
            rhs = MPoly.const(registry, 0)
            for coeff, tpow, factors in terms:
                term = MPoly.t_monomial(registry, tpow, coeff)
                for f_ in factors:
                    term = term * MPoly.variable(registry, f_.name)
                rhs = rhs + term
            equations[v.name] = MPoly.variable(registry, v.name) - rhs
        return variables, equations

    def _terms(self, var):
        """Decomposition of var as [(coeff, t-power, factor vars)]."""
        w = self.want
        k = var.kind
        terms = []
        if k == "F":
            a, b = var.indices
            if (a, b) == (0, 0):
                # stationary, or a first return (flat step or irreducible) then more
                terms.append((Fraction(1), 0, ()))
                for x, _, wt in self.flats:
                    terms.append((wt, x, (w(F(0, 0)),)))
                terms.append((Fraction(1), 0, (w(G00), w(F(0, 0)))))
            elif a == 0:
                # last visit to the axis splits off an irreducible ascent
                terms.append((Fraction(1), 0, (w(F(0, 0)), w(Ga(b)))))
            else:
                # split at the first visit to the minimum altitude l
                for low in range(0, min(a, b) + 1):
                    if low < a:
                        terms.append((Fraction(1), 0, (w(Gd(a - low)), w(F(0, b - low)))))
                    else:  # low == a <= b: never goes below the start
                        terms.append((Fraction(1), 0, (w(F(0, b - a)),)))
        elif k == "Gd":
            (m,) = var.indices
            for x, y, wt in self.downs:
                terms.append((wt, x, (w(F(m - 1, -y - 1)),)))
        elif k == "Ga":
            (m,) = var.indices
            for x, y, wt in self.ups:
                terms.append((wt, x, (w(F(y - 1, m - 1)),)))
        elif k == "G00":
            for x1, y1, w1 in self.ups:
                for x2, y2, w2 in self.downs:
                    terms.append((w1 * w2, x1 + x2, (w(F(y1 - 1, -y2 - 1)),)))
        elif k == "K":
            (a,) = var.indices
            if a == 0:
                terms.append((Fraction(1), 0, ()))
                for x, _, wt in self.flats:
                    terms.append((wt, x, (w(K(0)),)))
                terms.append((Fraction(1), 0, (w(G00), w(K(0)))))
                for x, y, wt in self.ups:
                    terms.append((wt, x, (w(K(y - 1)),)))
            else:
                terms.append((Fraction(1), 0, (w(K(0)),)))
                for i in range(1, a + 1):
                    terms.append((Fraction(1), 0, (w(Gd(i)), w(K(0)))))
        elif k == "H":
            (j,) = var.indices
            if j > 0:
                terms.append((Fraction(1), 0, (w(Gd(j)),)))
                for x, y, wt in self.downs:
                    if y <= -2:
                        for i in range(1, -y):
                            terms.append((wt, x, (w(F(j - 1, i - 1)), w(H(i + y)))))
            elif j < 0:
                terms.append((Fraction(1), 0, (w(Ga(-j)),)))
                for x, y, wt in self.ups:
                    if y >= 2:
                        for i in range(1, y):
                            terms.append((wt, x, (w(F(y - i - 1, -j - 1)), w(H(i)))))
            else:
                # first return of a bridge: one-sided above, one-sided below
                # (equal by step-order reversal), or crossing without touching
                terms.append((Fraction(2), 0, (w(G00),)))
                for x, y, wt in self.downs:
                    if y <= -2:
                        for i in range(1, -y):
                            terms.append((wt, x, (w(Ga(i)), w(H(i + y)))))
                for x, y, wt in self.ups:
                    if y >= 2:
                        for i in range(1, y):
                            terms.append((wt, x, (w(Gd(y - i)), w(H(i)))))
        elif k == "GB":
            terms.append((Fraction(1), 0, ()))
            for x, _, wt in self.flats:
                terms.append((wt, x, (w(GB),)))
            terms.append((Fraction(1), 0, (w(H(0)), w(GB))))
        else:
            raise AssertionError(f"no decomposition for {var.kind}")
        return var, terms


def excursion_system(s, lower=0):
    """Closed system whose target counts excursions with the given floor."""
    validate(WalkClass("excursion", lower=lower), s)
    wc = WalkClass("excursion", lower=lower).internal(s.y_gcd)
    c = -wc.lower
    bound = max(s.max_up() - 1, s.max_down() - 1, c, 0)
    builder = _Builder(s, bound)
    variables, equations = builder.build(F(c, c))
    meta = {"class": "excursion", "floor": lower, "steps": s.to_json(), "y_gcd": s.y_gcd}
    sys = GFSystem(variables, equations, F(c, c), s.scale, meta)
    sys.check_closed()
    return sys


def meander_system(s, lower=0):
    """Closed system whose target counts meanders with the given floor."""
    validate(WalkClass("meander", lower=lower), s)
    wc = WalkClass("meander", lower=lower).internal(s.y_gcd)
    c = -wc.lower
    bound = max(s.max_up() - 1, s.max_down() - 1, c, 0)
    builder = _Builder(s, bound)
    variables, equations = builder.build(K(c))
    meta = {"class": "meander", "floor": lower, "steps": s.to_json(), "y_gcd": s.y_gcd}
    sys = GFSystem(variables, equations, K(c), s.scale, meta)
    sys.check_closed()
    return sys


def closure_system(s, seeds, lower=0):
    """Closed system spanning several seed variables at once.

    Linear-combination targets mix meander and excursion variables that no
    single excursion_system/meander_system call reaches together, so this
    takes the worklist closure over all seeds.  The first seed becomes the
    nominal target; combination machinery replaces it anyway.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("closure_system needs at least one seed variable")
    kind = "meander" if any(v.kind == "K" for v in seeds) else "excursion"
    validate(WalkClass(kind, lower=lower), s)
    wc = WalkClass(kind, lower=lower).internal(s.y_gcd)
    c = -wc.lower
    top = max((max(map(abs, v.indices), default=0) for v in seeds), default=0)
    bound = max(s.max_up() - 1, s.max_down() - 1, c, top, 0)
    builder = _Builder(s, bound)
    builder.want(seeds[0])
    for v in seeds[1:]:
        builder.want(v)
    variables, equations = builder.build(seeds[0])
    meta = {"class": kind, "floor": lower, "steps": s.to_json(), "y_gcd": s.y_gcd}
    sys = GFSystem(variables, equations, seeds[0], s.scale, meta)
    sys.check_closed()
    return sys


def vector_iterate(sys, N):
    """Fixed point of the whole system as truncated series.

    Start from the combinatorial base case (stationary families F[a,a] at 1,
    everything else 0) and sweep Gauss-Seidel style in sorted variable order.
    With no zero-length steps each sweep fixes one more coefficient of every
    variable, so N+2 sweeps suffice; zero-length steps add order-preserving
    dependencies that resolve one chain link per sweep, hence the cap scales
    with the number of variables.  Hitting the cap means the system is
    mis-built (a genuine order-preserving cycle), so it raises.
    """
    rhs = sys.rhs_polys()
    order = [v for v in sorted(sys.variables, key=WalkVar.sort_key)]
    vals = {}
    for v in sys.variables:
        if v.kind == "F" and v.indices[0] == v.indices[1]:
            vals[v.name] = series_one(N, sys.scale)
        else:
            vals[v.name] = zeros(N, sys.scale)
    for _ in range((N + 3) * max(1, len(order))):
        changed = False
        for v in order:
            new = rhs[v.name].eval_series(vals, N, sys.scale)
            if new.coeffs != vals[v.name].coeffs:
                vals[v.name] = new
                changed = True
        if not changed:
            return {v: vals[v.name] for v in sys.variables}
    raise NonConvergence("no fixed point within the sweep budget; system mis-built?")


def _strip_trivial_returns(s, vals):
    """Remove the empty walk and single flat steps from a 0 -> 0 count."""
    vals = list(vals)
    vals[0] -= 1
    for st in s.steps:
        x = int(st.dx)
        if st.dy == 0 and x < len(vals):
            vals[x] -= st.w
    return vals


def variable_series(var, s, N):
    """Independent DP enumeration of any system variable, as a coefficient list.

    This is the per-variable ground truth the equations are tested against,
    phrased purely as constrained walk counts: interior constraints bind
    every altitude strictly between the endpoints of the walk.
    """
    k = var.kind
    if k == "F":
        a, b = var.indices
        return dp_custom(s, N, start=a, end=b, lo=0)
    if k == "Gd":
        (m,) = var.indices
        return dp_custom(s, N, start=m, end=0, lo=0, interior_min=1)
    if k == "Ga":
        (m,) = var.indices
        return dp_custom(s, N, start=0, end=m, lo=0, interior_min=1)
    if k == "G00":
        return _strip_trivial_returns(
            s, dp_custom(s, N, start=0, end=0, lo=0, interior_min=1)
        )
    if k == "K":
        (a,) = var.indices
        return dp_custom(s, N, start=a, end=None, lo=0)
    if k == "H":
        (j,) = var.indices
        vals = dp_custom(s, N, start=j, end=0, interior_forbidden={0})
        return _strip_trivial_returns(s, vals) if j == 0 else vals
    if k == "GB":
        return dp_custom(s, N, start=0, end=0)
    raise ValueError(f"no direct enumeration for {var.name}")

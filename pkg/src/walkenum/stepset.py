"""Step sets and walk classes: parsing, normalization, validation.

A step moves right by a nonnegative rational dx and vertically by an integer
dy, carrying a nonzero rational weight.  Normalization makes every dx integral
(multiplying lengths by `scale`, the LCM of the dx denominators) and divides
all dy by their common gcd `y_gcd`; class bounds are rescaled to match via
internal_class.  Walks are counted by total x-displacement, so internal
coefficient index n corresponds to original length n/scale.
"""

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, lcm

from .errors import (
    DuplicateStep,
    InfeasibleWidth,
    InfiniteCount,
    InvalidStep,
    ParseError,
    VerticalLoop,
)
from .algebra.series import format_rational, parse_rational


@dataclass(frozen=True)
class Step:
    dx: Fraction
    dy: int
    w: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "dx", Fraction(self.dx))
        object.__setattr__(self, "w", Fraction(self.w))
        if self.dx < 0:
            raise InvalidStep(f"negative length increment {self.dx}")
        if self.dx == 0 and self.dy == 0:
            raise InvalidStep("zero step")
        if self.w == 0:
            raise InvalidStep(f"zero weight on step ({self.dx},{self.dy})")
        if not isinstance(self.dy, int):
            raise InvalidStep(f"altitude increment must be an integer, got {self.dy!r}")

    def to_json(self):
        out = [format_rational(self.dx), self.dy]
        if self.w != 1:
            out.append(format_rational(self.w))
        return out


@dataclass(frozen=True)
class StepSet:
    """Normalized step set: every dx integral, gcd of nonzero |dy| equal to 1.

    scale and y_gcd record the normalization so original lengths and bounds
    are recoverable: internal length n = original length * scale, internal
    altitude = original altitude / y_gcd.
    """

    steps: tuple
    scale: int = 1
    y_gcd: int = 1

    @classmethod
    def from_steps(cls, raw):
        raw = tuple(raw)
        seen = set()
        for s in raw:
            key = (s.dx, s.dy)
            if key in seen:
                raise DuplicateStep(f"step ({s.dx},{s.dy}) listed twice")
            seen.add(key)
        m = lcm(*(s.dx.denominator for s in raw)) if raw else 1
        g = gcd(*(abs(s.dy) for s in raw)) if any(s.dy for s in raw) else 1
        steps = tuple(
            sorted(
                (Step(s.dx * m, s.dy // g, s.w) for s in raw),
                key=lambda s: (s.dx, s.dy),
            )
        )
        return cls(steps, m, g)

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def max_up(self):
        return max((s.dy for s in self.steps if s.dy > 0), default=0)

    def max_down(self):
        return max((-s.dy for s in self.steps if s.dy < 0), default=0)

    def vertical_steps(self):
        return [s for s in self.steps if s.dx == 0]

    def reversed_set(self):
        """Step set read right-to-left and upside down: (dx, dy) -> (dx, -dy).

        Reversing a walk's step order maps walks a -> b on [lo, hi] bijectively
        onto reversed-set walks b -> a on [-hi, -lo]; used by oracle tests.
        """
        return StepSet(
            tuple(sorted((Step(s.dx, -s.dy, s.w) for s in self.steps),
                         key=lambda s: (s.dx, s.dy))),
            self.scale,
            self.y_gcd,
        )

    def to_json(self):
        return [s.to_json() for s in self.steps]


KINDS = (
    "bounded-free",
    "bounded-bridge",
    "excursion",
    "nonneg-excursion",
    "meander",
    "unbounded-free",
    "bridge",
)


@dataclass(frozen=True)
class WalkClass:
    kind: str
    a: int = 0       # upper bound, bounded kinds
    b: int = 0       # lower bound, bounded kinds
    lower: int = 0   # floor, excursion/meander kinds

    def __post_init__(self):
        kind = self.kind.replace("_", "-")
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise ParseError(f"unknown walk class {self.kind!r}")
        if kind in ("bounded-free", "bounded-bridge"):
            if not (self.a >= 0 >= self.b):
                raise ParseError(f"bounded class needs a >= 0 >= b, got a={self.a} b={self.b}")
        if kind in ("excursion", "meander") and self.lower > 0:
            raise ParseError(f"floor must be <= 0, got {self.lower}")

    @property
    def is_bounded(self):
        return self.kind in ("bounded-free", "bounded-bridge")

    @property
    def is_semibounded(self):
        return self.kind in ("excursion", "nonneg-excursion", "meander")

    @property
    def floor(self):
        """Effective floor for semi-bounded kinds."""
        return 0 if self.kind == "nonneg-excursion" else self.lower

    def internal(self, y_gcd):
        """Bounds rescaled onto the dy/y_gcd lattice."""
        if y_gcd == 1:
            return self
        if self.is_bounded:
            return WalkClass(self.kind, a=floor(Fraction(self.a, y_gcd)), b=ceil(Fraction(self.b, y_gcd)))
        if self.kind in ("excursion", "meander"):
            return WalkClass(self.kind, lower=ceil(Fraction(self.lower, y_gcd)))
        return self

    def to_json(self):
        out = {"kind": self.kind}
        if self.is_bounded:
            out["a"] = self.a
            out["b"] = self.b
        elif self.kind in ("excursion", "meander"):
            out["lower"] = self.lower
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = {"kind": obj}
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ParseError(f"walk class must be an object with a 'kind': {obj!r}")
        extra = set(obj) - {"kind", "a", "b", "lower"}
        if extra:
            raise ParseError(f"unknown walk class fields {sorted(extra)}")
        return cls(
            obj["kind"],
            a=int(obj.get("a", 0)),
            b=int(obj.get("b", 0)),
            lower=int(obj.get("lower", 0)),
        )


def _coerce_rational(v, what):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParseError(f"{what} must be an integer or 'p/q' string, got {v!r}")
    try:
        return parse_rational(str(v))
    except ParseError:
        raise ParseError(f"cannot read {what} {v!r}")


def parse_stepset(text):
    """Parse the JSON wire format: array of [dx, dy] or [dx, dy, w]."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ParseError(f"malformed step-set document: {e}")
    if not isinstance(doc, list):
        raise ParseError("step-set document must be a JSON array")
    steps = []
    for entry in doc:
        if not isinstance(entry, list) or len(entry) not in (2, 3):
            raise ParseError(f"step must be [dx, dy] or [dx, dy, w], got {entry!r}")
        dx = _coerce_rational(entry[0], "dx")
        if isinstance(entry[1], bool) or not isinstance(entry[1], int):
            raise ParseError(f"dy must be an integer, got {entry[1]!r}")
        w = _coerce_rational(entry[2], "weight") if len(entry) == 3 else Fraction(1)
        steps.append(Step(dx, entry[1], w))
    return StepSet.from_steps(steps)


def _vertical_cycle_exists(verticals, lo, hi):
    """Does the altitude graph of zero-length steps admit a cycle in [lo, hi]?"""
    if hi < lo:
        return False
    moves = [s.dy for s in verticals]
    nodes = range(lo, hi + 1)
    color = {y: 0 for y in nodes}  # 0 new, 1 on stack, 2 done
    for start in nodes:
        if color[start]:
            continue
        stack = [(start, iter(moves))]
        color[start] = 1
        while stack:
            y, it = stack[-1]
            advanced = False
            for dy in it:
                z = y + dy
                if z < lo or z > hi:
                    continue
                if color[z] == 1:
                    return True
                if color[z] == 0:
                    color[z] = 1
                    stack.append((z, iter(moves)))
                    advanced = True
                    break
            if not advanced:
                color[y] = 2
                stack.pop()
    return False


def validate(walk_class, stepset):
    """Accept or reject a (class, step set) pair; returns notes on the checks run.

    Raises InfeasibleWidth, VerticalLoop, or InfiniteCount naming the violated
    rule.  Bounds are checked on the internal (y_gcd-rescaled) lattice.
    """
    wc = walk_class.internal(stepset.y_gcd)
    verticals = stepset.vertical_steps()
    ups = [s for s in verticals if s.dy > 0]
    downs = [s for s in verticals if s.dy < 0]
    notes = []

    if wc.is_bounded:
        if verticals and _vertical_cycle_exists(verticals, wc.b, wc.a):
            raise InfeasibleWidth(
                f"zero-length steps cycle inside the band [{wc.b},{wc.a}]; "
                "counts per length are infinite"
            )
        notes.append("band admits no zero-length cycle")
        return notes

    if wc.kind == "unbounded-free":
        if verticals:
            raise InfiniteCount(
                "free walks with a zero-length step have infinitely many walks per length"
            )
        notes.append("no zero-length steps")
        return notes

    if ups and downs:
        raise VerticalLoop(
            "zero-length steps in both directions allow unbounded substitution at fixed length"
        )
    notes.append("at most one direction of zero-length steps")

    if wc.kind == "meander" and ups:
        raise InfiniteCount(
            "meanders with an upward zero-length step have infinitely many walks per length"
        )
    if wc.kind in ("excursion", "nonneg-excursion", "meander"):
        notes.append("floor bounds downward moves" if downs else "no downward zero-length steps")
    return notes


def is_valid(walk_class, stepset):
    try:
        validate(walk_class, stepset)
        return True
    except (InfeasibleWidth, VerticalLoop, InfiniteCount):
        return False


def random_stepset(seed, walk_class, max_abs_dy=3, max_dx=3, max_size=6, weights=False):
    """Deterministic random step set that passes validate for the class.

    With weights=True some steps get small nonunit rational weights.
    """
    rng = random.Random(seed)
    for _ in range(1000):
        size = rng.randint(1, max_size)
        pool = [
            (dx, dy)
            for dx in range(0, max_dx + 1)
            for dy in range(-max_abs_dy, max_abs_dy + 1)
            if (dx, dy) != (0, 0)
        ]
        chosen = rng.sample(pool, min(size, len(pool)))
        steps = []
        for dx, dy in chosen:
            w = Fraction(1)
            if weights and rng.random() < 0.4:
                w = Fraction(rng.randint(1, 4), rng.randint(1, 4))
            steps.append(Step(Fraction(dx), dy, w))
        s = StepSet.from_steps(steps)
        if is_valid(walk_class, s):
            return s
    raise InvalidStep(f"no valid step set found for {walk_class} in 1000 draws")

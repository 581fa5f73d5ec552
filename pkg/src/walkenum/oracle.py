"""Brute-force dynamic-programming enumeration of weighted walk counts.

One frontier engine serves every walk class: a map altitude -> weight is
advanced one consumed-length level at a time, with zero-length (vertical)
steps closed out inside each level by a single topological pass.  Altitude
caps derived from the remaining length keep frontiers finite for classes that
must return to a fixed altitude; they are what make vertical steps terminate.

This module is deliberately independent of the generating-function machinery:
it is the ground truth the algebraic pipelines are tested against.
"""

import heapq
from fractions import Fraction

from .errors import InfiniteCount, MixedXSteps
from .algebra.series import SeriesPrefix
from .stepset import validate


def _split_steps(steps):
    verticals = [(s.dy, s.w) for s in steps if s.dx == 0]
    horizontals = [(int(s.dx), s.dy, s.w) for s in steps if s.dx > 0]
    return verticals, horizontals


def _close_level(frontier, verticals, src_ok, dst_ok):
    """Propagate vertical steps to a fixed point within one length level.

    src_ok gates extension (interior rule), dst_ok gates landing (band/caps).
    Verticals here are single-direction or band-acyclic, so processing
    altitudes in step-direction order closes the level in one pass; a mixed
    set inside a band needs repeated passes but is finite by validation.
    """
    if not verticals or not frontier:
        return frontier
    all_up = all(dy > 0 for dy, _ in verticals)
    all_down = all(dy < 0 for dy, _ in verticals)
    if all_up or all_down:
        # every vertical moves strictly in one direction, so processing
        # altitudes in that direction sees each one after all its mass arrived;
        # a heap worklist covers altitudes created mid-closure
        sign = 1 if all_up else -1
        heap = [sign * y for y in frontier]
        heapq.heapify(heap)
        seen = set()
        while heap:
            y = sign * heapq.heappop(heap)
            if y in seen:
                continue
            seen.add(y)
            m = frontier.get(y)
            if not m or not src_ok(y):
                continue
            for dy, w in verticals:
                z = y + dy
                if dst_ok(z):
                    if z not in frontier and z not in seen:
                        heapq.heappush(heap, sign * z)
                    frontier[z] = frontier.get(z, 0) + m * w
        return frontier
    # mixed directions: only legal inside a bounded band whose vertical-step
    # graph is acyclic, so Jacobi relaxation new[y] = seed[y] + sum over edges
    # reaches the closure in at most band-width passes
    seed = dict(frontier)
    cur = dict(seed)
    for _ in range(4096):
        nxt = dict(seed)
        for y, m in cur.items():
            if not m or not src_ok(y):
                continue
            for dy, w in verticals:
                z = y + dy
                if dst_ok(z):
                    nxt[z] = nxt.get(z, 0) + m * w
        if nxt == cur:
            return cur
        cur = nxt
    raise InfiniteCount("vertical steps fail to close out inside the band")


def dp_custom(
    s,
    N,
    start=0,
    end=None,
    lo=None,
    hi=None,
    interior_min=None,
    interior_forbidden=(),
):
    """Weighted counts by internal length for walks start -> end (or anywhere).

    lo/hi bound every vertex including the endpoints; interior_min and
    interior_forbidden bind only vertices that are later stepped away from
    (the start and the final vertex are exempt), which is exactly the
    first-passage/irreducible/axis-avoiding constraint.  Returns N+1 weights.
    """
    verticals, horizontals = _split_steps(s.steps)
    v_up = any(dy > 0 for dy, _ in verticals)
    v_down = any(dy < 0 for dy, _ in verticals)
    down_rate = max((Fraction(-dy, dx) for dx, dy, _ in horizontals if dy < 0), default=Fraction(0))
    up_rate = max((Fraction(dy, dx) for dx, dy, _ in horizontals if dy > 0), default=Fraction(0))

    int_mode = all(s_.w.denominator == 1 for s_ in s.steps)
    if int_mode:
        # plain ints are several times faster than Fractions in the hot loop
        verticals = [(dy, int(w)) for dy, w in verticals]
        horizontals = [(dx, dy, int(w)) for dx, dy, w in horizontals]

    def band_ok(y):
        if lo is not None and y < lo:
            return False
        if hi is not None and y > hi:
            return False
        return True

    def dst_ok_at(level):
        if end is None:
            return band_ok
        rem = N - level
        cap_hi = end + (rem * down_rate).__floor__() if not v_down else None
        cap_lo = end - (rem * up_rate).__floor__() if not v_up else None

        def ok(y):
            if not band_ok(y):
                return False
            if cap_hi is not None and y > cap_hi:
                return False
            if cap_lo is not None and y < cap_lo:
                return False
            return True

        return ok

    forbidden = frozenset(interior_forbidden)

    def src_ok(y):
        if interior_min is not None and y < interior_min:
            return False
        return y not in forbidden

    one = 1 if int_mode else Fraction(1)
    levels = [dict() for _ in range(N + 1)]
    out = [0] * (N + 1)

    # seed: the start vertex is exempt from the interior rule, so fan its
    # steps out by hand before the per-level closure takes over
    if band_ok(start):
        if end is None or start == end:
            out[0] += one
        dst0 = dst_ok_at(0)
        for dy, w in verticals:
            z = start + dy
            if dst0(z):
                levels[0][z] = levels[0].get(z, 0) + one * w
        for dx, dy, w in horizontals:
            if dx <= N:
                dst = dst_ok_at(dx)
                z = start + dy
                if dst(z):
                    levels[dx][z] = levels[dx].get(z, 0) + one * w

    for level in range(N + 1):
        frontier = _close_level(levels[level], verticals, src_ok, dst_ok_at(level))
        levels[level] = frontier
        if end is None:
            out[level] += sum(frontier.values())
        else:
            out[level] += frontier.get(end, 0)
        if level == N:
            break
        for dx, dy, w in horizontals:
            nxt = level + dx
            if nxt > N:
                continue
            dst = dst_ok_at(nxt)
            target = levels[nxt]
            for y, m in frontier.items():
                if not m or not src_ok(y):
                    continue
                z = y + dy
                if dst(z):
                    target[z] = target.get(z, 0) + m * w
    return [Fraction(c) for c in out]


def dp_enumerate(s, walk_class, N):
    """Ground-truth series for any walk class: coefficient n is the total
    weight of walks of internal length n.  Validates first."""
    validate(walk_class, s)
    wc = walk_class.internal(s.y_gcd)
    kind = wc.kind
    if kind == "unbounded-free":
        # no verticals after validation; pure composition recurrence
        horiz = [(int(st.dx), st.w) for st in s.steps]
        coeffs = [Fraction(0)] * (N + 1)
        coeffs[0] = Fraction(1)
        for n in range(1, N + 1):
            acc = Fraction(0)
            for dx, w in horiz:
                if dx <= n:
                    acc += w * coeffs[n - dx]
            coeffs[n] = acc
        return SeriesPrefix(coeffs, s.scale)
    if kind == "bounded-free":
        vals = dp_custom(s, N, start=0, end=None, lo=wc.b, hi=wc.a)
    elif kind == "bounded-bridge":
        vals = dp_custom(s, N, start=0, end=0, lo=wc.b, hi=wc.a)
    elif kind in ("excursion", "nonneg-excursion"):
        vals = dp_custom(s, N, start=0, end=0, lo=wc.floor)
    elif kind == "meander":
        vals = dp_custom(s, N, start=0, end=None, lo=wc.floor)
    elif kind == "bridge":
        vals = dp_custom(s, N, start=0, end=0)
    else:
        raise InfiniteCount(f"no enumeration strategy for {kind}")
    return SeriesPrefix(vals, s.scale)


def laurent_bridge_oracle(s, n):
    """Constant term of (sum of w*z^dy)^n: bridge count for dx=1 step sets."""
    if any(st.dx != 1 for st in s.steps):
        raise MixedXSteps("constant-term oracle needs every step to have dx = 1")
    poly = {}
    for st in s.steps:
        poly[st.dy] = poly.get(st.dy, Fraction(0)) + st.w
    acc = {0: Fraction(1)}
    for _ in range(n):
        nxt = {}
        for e1, c1 in acc.items():
            for e2, c2 in poly.items():
                e = e1 + e2
                nxt[e] = nxt.get(e, Fraction(0)) + c1 * c2
        acc = nxt
    return acc.get(0, Fraction(0))

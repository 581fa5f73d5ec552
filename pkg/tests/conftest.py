"""Shared fixtures and the independent brute-force counting oracle.

brute_enumerate below is written against the class definitions only: it fills
a (consumed length, altitude) table one step at a time and knows nothing about
generating functions, kernel equations, or the frontier DP in walkenum.oracle.
Tests use it as the second opinion wherever a closed form is not available.
"""

import heapq
from fractions import Fraction

import pytest
from hypothesis import settings

from walkenum.stepset import WalkClass, parse_stepset

settings.register_profile("suite", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("suite")


@pytest.fixture
def dyck():
    return parse_stepset("[[1,1],[1,-1]]")


@pytest.fixture
def motzkin():
    return parse_stepset("[[1,1],[1,0],[1,-1]]")


@pytest.fixture
def half_dyck():
    return parse_stepset('[["1/2",1],["1/2",-1]]')


@pytest.fixture
def quintic_fan():
    # five steps, vertical reach 2: the standard hard small excursion set
    return parse_stepset("[[1,-2],[1,-1],[1,0],[1,1],[1,2]]")


def _rates(s):
    up = max((Fraction(st.dy, int(st.dx)) for st in s.steps if st.dx and st.dy > 0),
             default=Fraction(0))
    down = max((Fraction(-st.dy, int(st.dx)) for st in s.steps if st.dx and st.dy < 0),
               default=Fraction(0))
    return up, down


def brute_enumerate(s, wc, N):
    """Weighted counts by internal length 0..N, straight from the definitions.

    table[used] maps altitude -> accumulated weight.  Vertical steps move mass
    within a level; a validated step set never has vertical steps both ways,
    so closing a level is a monotone sweep.  Reachability pruning bounds the
    altitude range whenever the class pins the endpoint; otherwise horizontal
    rates bound it on their own.
    """
    wc = wc.internal(s.y_gcd)
    lo = hi = end = None
    if wc.kind in ("bounded-free", "bounded-bridge"):
        lo, hi = wc.b, wc.a
    elif wc.kind in ("excursion", "meander"):
        lo = wc.lower
    elif wc.kind == "nonneg-excursion":
        lo = 0
    if wc.kind in ("bounded-bridge", "excursion", "nonneg-excursion", "bridge"):
        end = 0
    up_rate, down_rate = _rates(s)
    has_vup = any(st.dx == 0 and st.dy > 0 for st in s.steps)
    has_vdown = any(st.dx == 0 and st.dy < 0 for st in s.steps)

    def dead(alt, used):
        if lo is not None and alt < lo:
            return True
        if hi is not None and alt > hi:
            return True
        if end is None:
            return False
        rem = N - used
        if alt > end and not has_vdown and alt - end > rem * down_rate:
            return True
        if alt < end and not has_vup and end - alt > rem * up_rate:
            return True
        return False

    verticals = [(st.dy, st.w) for st in s.steps if st.dx == 0]
    horizontals = [(int(st.dx), st.dy, st.w) for st in s.steps if st.dx != 0]

    def close(level, used):
        if not verticals:
            return level
        # process altitudes in the direction of vertical motion so each
        # altitude's mass is final before it propagates
        sign = 1 if has_vup else -1
        heap = [sign * a for a in level]
        heapq.heapify(heap)
        seen = set()
        while heap:
            alt = sign * heapq.heappop(heap)
            if alt in seen:
                continue
            seen.add(alt)
            for dy, w in verticals:
                nxt = alt + dy
                if dead(nxt, used):
                    continue
                level[nxt] = level.get(nxt, Fraction(0)) + level[alt] * w
                if nxt not in seen:
                    heapq.heappush(heap, sign * nxt)
        return level

    table = [dict() for _ in range(N + 1)]
    table[0] = close({0: Fraction(1)}, 0)
    for used in range(N + 1):
        for alt, w in table[used].items():
            for dx, dy, sw in horizontals:
                u2 = used + dx
                if u2 > N:
                    continue
                a2 = alt + dy
                if dead(a2, u2):
                    continue
                table[u2][a2] = table[u2].get(a2, Fraction(0)) + w * sw
        if used + 1 <= N:
            # every write into level used+1 came from levels <= used
            table[used + 1] = close(table[used + 1], used + 1)
    out = [Fraction(0)] * (N + 1)
    for used in range(N + 1):
        for alt, w in table[used].items():
            if end is None or alt == end:
                out[used] += w
    return out


CLASSES = (
    WalkClass("bounded-free", a=2, b=-2),
    WalkClass("bounded-bridge", a=2, b=-1),
    WalkClass("excursion", lower=0),
    WalkClass("excursion", lower=-2),
    WalkClass("nonneg-excursion"),
    WalkClass("meander", lower=0),
    WalkClass("unbounded-free"),
    WalkClass("bridge"),
)

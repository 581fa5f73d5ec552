"""Free walks and bridges on the unbounded lattice."""

import pytest

from walkenum.algebra.series import SeriesPrefix
from walkenum.errors import InfiniteCount
from walkenum.oracle import dp_custom, dp_enumerate, laurent_bridge_oracle
from walkenum.semibounded import G00, H, variable_series, vector_iterate
from walkenum.stepset import WalkClass, parse_stepset
from walkenum.unbounded import bridge_system, free_gf


def taylor(rf, n):
    return [int(c) for c in rf.taylor(n)]


def test_free_gf_power_of_size():
    s = parse_stepset("[[1,2],[1,1],[1,0],[1,-1],[1,-2]]")
    assert taylor(free_gf(s), 6) == [5**n for n in range(7)]


def test_free_gf_mixed_dx_fibonacci():
    s = parse_stepset("[[1,3],[2,-5]]")
    assert taylor(free_gf(s), 10) == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    assert [int(c) for c in dp_enumerate(s, WalkClass("unbounded-free"), 10)] == [
        1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_free_gf_empty_set():
    assert taylor(free_gf(parse_stepset("[]")), 3) == [1, 0, 0, 0]


def test_free_gf_rejects_verticals():
    with pytest.raises(InfiniteCount):
        free_gf(parse_stepset("[[0,1],[1,-1]]"))


def test_free_gf_half_steps():
    s = parse_stepset('[["1/2",1],["1/2",-1]]')
    g = free_gf(s)
    assert taylor(g, 6) == [2**n for n in range(7)]


BRIDGE_SETS = [
    "[[1,1],[1,-1]]",
    "[[1,2],[1,-2],[1,1],[1,-1]]",
    "[[1,-2],[1,-1],[1,0],[1,1]]",
    "[[1,2],[1,-3]]",
    "[[1,3],[2,-2],[1,0],[1,-1]]",
    "[[0,-1],[1,2]]",
    '[[1,2,"1/3"],[1,-1,"1/6"],[1,0,2]]',
    '[["1/2",1],["1/2",-1],[1,0]]',
]


@pytest.mark.parametrize("text", BRIDGE_SETS)
def test_bridge_system_matches_dp(text):
    s = parse_stepset(text)
    sys_ = bridge_system(s)
    N = 10
    out = vector_iterate(sys_, N)
    ref = dp_enumerate(s, WalkClass("bridge"), N)
    assert out[sys_.target].coeffs == ref.coeffs
    assert out[sys_.target].scale == s.scale


@pytest.mark.parametrize("text", BRIDGE_SETS)
def test_bridge_equations_vanish_on_dp_series(text):
    s = parse_stepset(text)
    sys_ = bridge_system(s)
    N = 10
    assign = {
        v.name: SeriesPrefix(variable_series(v, s, N), s.scale)
        for v in sys_.variables
    }
    for v in sys_.variables:
        resid = sys_.equations[v.name].eval_series(assign, N, s.scale)
        assert all(c == 0 for c in resid.coeffs), (text, v.name)


@pytest.mark.parametrize("text", BRIDGE_SETS)
def test_bridge_against_laurent_expansion(text):
    s = parse_stepset(text)
    if any(int(st.dx) != 1 for st in s.steps):
        return
    dp = dp_enumerate(s, WalkClass("bridge"), 12)
    assert [laurent_bridge_oracle(s, n) for n in range(13)] == list(dp)


def test_crossing_variable_indices_stay_bounded():
    s = parse_stepset("[[1,3],[1,-2],[1,1]]")
    sys_ = bridge_system(s)
    bound = max(s.max_up() - 1, s.max_down() - 1, 0)
    for v in sys_.variables:
        assert all(abs(i) <= bound for i in v.indices), v


def test_bridge_below_free():
    s = parse_stepset("[[1,1],[1,-1],[1,0]]")
    free = free_gf(s).taylor(12)
    bridge = dp_enumerate(s, WalkClass("bridge"), 12)
    assert all(b <= f for b, f in zip(bridge, free))


def test_reflected_passage_identities():
    # descents below the axis equal ascents of the reflected set
    s = parse_stepset("[[1,2],[1,-3],[1,0]]")
    r = s.reversed_set()
    N = 12
    for m in (1, 2):
        a = dp_custom(s, N, start=0, end=-m, hi=0)
        b = dp_custom(r, N, start=0, end=m, lo=0)
        assert list(a) == list(b), m


def test_naive_axis_decomposition_overcounts():
    """The tempting h0 = 2*g00 + sum t^x h_y identity double-counts.

    Kept as a negative fixture: the crossing terms must be split by the side
    they return on, which is what the implemented system does.
    """
    s = parse_stepset("[[1,2],[1,-2],[1,1],[1,-1]]")
    N = 8
    h = {j: variable_series(H(j), s, N) for j in (-1, 0, 1)}
    g00 = variable_series(G00, s, N)
    naive = [2 * g00[n] for n in range(N + 1)]
    for st in s.steps:
        x, y = int(st.dx), st.dy
        if y != 0 and y in h:
            for n in range(x, N + 1):
                naive[n] += st.w * h[y][n - x]
    true_h0 = h[0]
    assert naive != list(true_h0)
    assert all(a >= b for a, b in zip(naive, true_h0))

"""Parsing, normalization, and class validation."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from walkenum.errors import (
    DuplicateStep,
    InfeasibleWidth,
    InfiniteCount,
    InvalidStep,
    ParseError,
    VerticalLoop,
)
from walkenum.oracle import dp_enumerate
from walkenum.stepset import (
    Step,
    StepSet,
    WalkClass,
    is_valid,
    parse_stepset,
    random_stepset,
    validate,
)


def test_parse_plain_steps(dyck):
    assert [(int(s.dx), s.dy, s.w) for s in dyck] == [(1, -1, 1), (1, 1, 1)]
    assert dyck.scale == 1 and dyck.y_gcd == 1


def test_parse_fractional_dx(half_dyck):
    # denominators cleared: dx 1/2 becomes internal 1 with scale 2
    assert half_dyck.scale == 2
    assert [int(s.dx) for s in half_dyck] == [1, 1]


def test_parse_weights():
    s = parse_stepset('[[1,2,"1/3"],[1,-1,"1/6"],[1,-2,"1/2"]]')
    assert sorted(st.w for st in s) == [Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)]


def test_parse_integer_weight_triple():
    s = parse_stepset("[[1,0,2]]")
    assert s.steps[0].w == 2


def test_y_gcd_compression():
    s = parse_stepset("[[1,2],[1,-4]]")
    assert s.y_gcd == 2
    assert sorted(st.dy for st in s) == [-2, 1]


def test_parse_rejects_garbage():
    for text in ("", "not json", "[[1]]", '[["x",1]]', "{}"):
        with pytest.raises(ParseError):
            parse_stepset(text)


def test_duplicate_step_rejected():
    with pytest.raises(DuplicateStep):
        parse_stepset("[[1,1],[1,1]]")


def test_invalid_steps():
    with pytest.raises(InvalidStep):
        Step(Fraction(-1), 0)
    with pytest.raises(InvalidStep):
        Step(Fraction(0), 0)
    with pytest.raises(InvalidStep):
        Step(Fraction(1), 1, 0)
    with pytest.raises(InvalidStep):
        Step(Fraction(1), Fraction(1, 2))


def test_walk_class_normalizes_underscores():
    assert WalkClass("bounded_free", a=1, b=-1).kind == "bounded-free"
    assert WalkClass("nonneg_excursion").kind == "nonneg-excursion"


def test_walk_class_bound_checks():
    with pytest.raises(ParseError):
        WalkClass("bounded-free", a=-1, b=-2)
    with pytest.raises(ParseError):
        WalkClass("excursion", lower=1)
    with pytest.raises(ParseError):
        WalkClass("no-such-kind")


def test_walk_class_json_round_trip():
    for wc in (
        WalkClass("bounded-bridge", a=3, b=-2),
        WalkClass("excursion", lower=-1),
        WalkClass("bridge"),
    ):
        assert WalkClass.from_json(wc.to_json()) == wc


def test_validate_infeasible_width():
    # zero-length cycle fits inside the band: infinitely many walks per length
    s = parse_stepset("[[0,1],[0,-1],[1,0]]")
    with pytest.raises(InfeasibleWidth):
        validate(WalkClass("bounded-free", a=1, b=-1), s)


def test_degenerate_band_is_still_finite(dyck):
    # both steps leave [0,0]; only the empty walk remains, which is fine
    assert is_valid(WalkClass("bounded-free", a=0, b=0), dyck)
    out = dp_enumerate(dyck, WalkClass("bounded-free", a=0, b=0), 5)
    assert list(out) == [1, 0, 0, 0, 0, 0]


def test_validate_vertical_loop():
    s = parse_stepset("[[0,1],[0,-1],[1,0]]")
    with pytest.raises(VerticalLoop):
        validate(WalkClass("excursion", lower=0), s)


def test_validate_infinite_count():
    s = parse_stepset("[[0,1],[1,-1]]")
    with pytest.raises(InfiniteCount):
        validate(WalkClass("unbounded-free"), s)
    with pytest.raises(InfiniteCount):
        validate(WalkClass("meander", lower=0), s)
    # the same set is fine when the walk has to come back down
    validate(WalkClass("nonneg-excursion"), s)


def test_is_valid_mirrors_validate(dyck):
    assert is_valid(WalkClass("excursion", lower=0), dyck)
    assert not is_valid(WalkClass("unbounded-free"), parse_stepset("[[0,1],[1,-1]]"))


def test_internal_class_rescaling():
    wc = WalkClass("bounded-free", a=4, b=-4)
    assert wc.internal(2) == WalkClass("bounded-free", a=2, b=-2)
    assert WalkClass("bridge").internal(3) == WalkClass("bridge")


def test_y_gcd_counts_match_hand_rescaled_problem():
    # doubling every dy and halving the band cannot change any count
    coarse = parse_stepset("[[1,2],[1,-4],[1,0]]")
    fine = parse_stepset("[[1,1],[1,-2],[1,0]]")
    for wc_c, wc_f in [
        (WalkClass("bounded-free", a=4, b=-4), WalkClass("bounded-free", a=2, b=-2)),
        (WalkClass("excursion", lower=-2), WalkClass("excursion", lower=-1)),
        (WalkClass("bridge"), WalkClass("bridge")),
    ]:
        a = dp_enumerate(coarse, wc_c, 14)
        b = dp_enumerate(fine, wc_f, 14)
        assert a.coeffs == b.coeffs


def test_stepset_json_round_trip():
    s = parse_stepset('[[1,2,"1/3"],["1/2",-1],[0,-2]]')
    import json

    again = parse_stepset(json.dumps(s.to_json()))
    # to_json emits internal units, which are already normalized
    assert again.steps == s.steps
    assert again.scale == 1


def test_reversed_set_is_involution(motzkin):
    assert motzkin.reversed_set().reversed_set() == motzkin


def test_random_stepset_deterministic():
    a = random_stepset(1, WalkClass("bridge"), 2, 2, 4)
    b = random_stepset(1, WalkClass("bridge"), 2, 2, 4)
    assert a == b
    assert 1 <= len(a) <= 4
    assert is_valid(WalkClass("bridge"), a)


@pytest.mark.parametrize("kind", ["excursion", "meander", "bridge", "bounded-free"])
def test_random_stepset_always_validates(kind):
    wc = {
        "excursion": WalkClass("excursion", lower=0),
        "meander": WalkClass("meander", lower=0),
        "bridge": WalkClass("bridge"),
        "bounded-free": WalkClass("bounded-free", a=2, b=-2),
    }[kind]
    for seed in range(250):
        s = random_stepset(seed, wc, weights=seed % 3 == 0)
        assert is_valid(wc, s)


@given(st.lists(
    st.tuples(st.fractions(min_value=0, max_value=3, max_denominator=4),
              st.integers(-4, 4)),
    min_size=1, max_size=6, unique=True,
))
def test_normalization_idempotent(raw):
    try:
        steps = [Step(dx, dy) for dx, dy in raw]
        s = StepSet.from_steps(steps)
    except InvalidStep:
        return
    except DuplicateStep:
        return
    again = StepSet.from_steps(s.steps)
    assert again.steps == s.steps
    assert again.scale == 1 and again.y_gcd == 1

"""Minimal polynomials via presolve + Groebner elimination, with certification."""

from fractions import Fraction

import pytest

from walkenum.algebra.polynomials import BiPoly, UniPoly
from walkenum.elimination import (
    ComboSpec,
    MinimalPolynomial,
    _canonical,
    combine_and_eliminate,
    eliminate_target,
    find_proper_root,
    minimal_polynomial,
    single_poly_iterate,
)
from walkenum.errors import MissingLinearTerm, ResourceExceeded
from walkenum.oracle import dp_enumerate
from walkenum.semibounded import F, excursion_system, meander_system
from walkenum.stepset import WalkClass, parse_stepset
from walkenum.unbounded import bridge_system


def bp(rows, var="F"):
    return BiPoly([UniPoly(r) for r in rows], var)


CATALAN_MIN = bp([[1], [-1], [0, 0, 1]])
QUARTIC_EXC = bp([[1], [-1, -1], [0, 2, 1], [0, 0, -1, -1], [0, 0, 0, 0, 1]])
_q = UniPoly([-1, 5])
QUARTIC_MEA = BiPoly(
    [UniPoly([1]), _q, _q * UniPoly([0, 3]), _q * _q * UniPoly([0, 1]),
     _q * _q * UniPoly([0, 0, 1])], "K")


def test_catalan_elimination(dyck):
    sys_ = excursion_system(dyck, 0)
    assert eliminate_target(sys_) == CATALAN_MIN
    mp = minimal_polynomial(sys_)
    assert mp.poly == CATALAN_MIN
    assert mp.verified_order >= 50
    assert mp.provenance["scale"] == 1
    assert mp.provenance["class"] == "excursion"
    assert not mp.warning


def test_quintic_fan_excursions(quintic_fan):
    mp = minimal_polynomial(excursion_system(quintic_fan, 0))
    assert mp.poly == QUARTIC_EXC


def test_quintic_fan_meanders(quintic_fan):
    mp = minimal_polynomial(meander_system(quintic_fan, 0))
    assert mp.poly == QUARTIC_MEA


def test_dyck_bridge_quadratic(dyck):
    mp = minimal_polynomial(bridge_system(dyck))
    assert mp.poly == bp([[1], [], [-1, 0, 4]], "G")


def test_asymmetric_cubic_bridge():
    s = parse_stepset("[[1,-2],[1,-1],[1,0],[1,1]]")
    mp = minimal_polynomial(bridge_system(s))
    assert mp.poly == BiPoly(
        [UniPoly([1]), UniPoly([3, -2]), UniPoly(), UniPoly([-4, 11, 8, 16])], "G")


@pytest.mark.parametrize("k,rows", [
    (0, [[1], [-1, 1]]),
    (1, [[1], [], [-1, 0, 4]]),
    (2, [[1], [3], [], [-4, 0, 0, 27]]),
    (3, [[1], [8], [18], [], [-27, 0, 0, 0, 256]]),
])
def test_updown_family_bridges(k, rows):
    s = parse_stepset(f"[[1,1],[1,{-k}]]" if k else "[[1,1],[1,0]]")
    mp = minimal_polynomial(bridge_system(s))
    assert mp.poly == bp(rows, "G")


def test_minimal_polynomials_carry_unit_terms(dyck, quintic_fan):
    """Semi-bounded minimal polynomials normalize to constant +1 and F-term -1."""
    for mp in (
        minimal_polynomial(excursion_system(dyck, 0)),
        minimal_polynomial(excursion_system(quintic_fan, 0)),
        minimal_polynomial(meander_system(quintic_fan, 0)),
    ):
        assert mp.poly.coeff(0)(Fraction(0)) == 1
        assert mp.poly.coeff(1)(Fraction(0)) == -1
    # bridges need not: the Dyck bridge quadratic has no linear term at all
    mpb = minimal_polynomial(bridge_system(dyck))
    assert mpb.poly.coeff(1).is_zero()


def test_find_proper_root_strips_spurious_factor(dyck):
    ref = dp_enumerate(dyck, WalkClass("excursion", lower=0), 60)
    c0, c1, c2 = CATALAN_MIN.coeffs
    spurious = BiPoly([c0 * (-2), c0 + c1 * (-2), c1 + c2 * (-2), c2], "F")
    got = find_proper_root(spurious, ref)
    assert got.poly == CATALAN_MIN
    # idempotent on its own output
    assert find_proper_root(got.poly, ref).poly == CATALAN_MIN


def test_find_proper_root_rejects_non_annihilator(dyck):
    ref = dp_enumerate(dyck, WalkClass("excursion", lower=0), 60)
    with pytest.raises(ValueError):
        find_proper_root(bp([[1], [-1], [0, 1]]), ref)


def test_single_poly_iterate_fixtures():
    assert list(single_poly_iterate(CATALAN_MIN, 10)) == [
        1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42]
    assert list(single_poly_iterate(QUARTIC_EXC, 10)) == [
        1, 1, 3, 9, 32, 120, 473, 1925, 8034, 34188, 147787]
    assert list(single_poly_iterate(QUARTIC_MEA, 8)) == [
        1, 3, 12, 51, 226, 1025, 4724, 22022, 103550]


def test_single_poly_iterate_respects_provenance_scale(half_dyck):
    mp = minimal_polynomial(excursion_system(half_dyck, 0))
    assert mp.provenance["scale"] == 2
    out = single_poly_iterate(mp, 8)
    assert out.scale == 2
    assert [int(c) for c in out] == [1, 0, 1, 0, 2, 0, 5, 0, 14]


def test_single_poly_iterate_needs_linear_term():
    t1, f1, f2 = UniPoly([-1, 1]), UniPoly([4, 5]), UniPoly([-1, 5])
    quartic = BiPoly(
        [UniPoly([0, 1]), UniPoly(), t1 * UniPoly([-2, 5]) * f2 * 2,
         UniPoly(), f1 * f2 * f2 * t1 * t1], "G")
    with pytest.raises(MissingLinearTerm):
        single_poly_iterate(quartic, 8)


def test_single_poly_iterate_agrees_with_dp_and_vector(quintic_fan):
    from walkenum.semibounded import vector_iterate

    sys_ = excursion_system(quintic_fan, 0)
    mp = minimal_polynomial(sys_)
    N = 30
    a = single_poly_iterate(mp, N)
    b = vector_iterate(sys_, N)[sys_.target]
    c = dp_enumerate(quintic_fan, WalkClass("excursion", lower=0), N)
    assert a.coeffs == b.coeffs == c.coeffs


def test_identity_combination_reproduces_target(dyck):
    sys_ = excursion_system(dyck, 0)
    base = minimal_polynomial(sys_)
    out = combine_and_eliminate(sys_, ComboSpec([(Fraction(1), F(0, 0))], label="L"))
    assert [c.coeffs for c in out.poly.coeffs] == [c.coeffs for c in base.poly.coeffs]
    assert out.poly.var == "L"


def test_combination_rejects_unknown_variable(dyck):
    sys_ = excursion_system(dyck, 0)
    with pytest.raises(KeyError):
        combine_and_eliminate(sys_, ComboSpec([(Fraction(1), F(5, 5))], label="L"))


def test_resource_cap_raises(quintic_fan):
    with pytest.raises(ResourceExceeded):
        eliminate_target(meander_system(quintic_fan, 0), max_terms=4)


def test_canonical_normalization():
    p = BiPoly([UniPoly([Fraction(-1, 2)]), UniPoly([0, Fraction(3, 2)])], "F")
    c = _canonical(p)
    # primitive over Z, first nonzero coefficient positive
    assert c == BiPoly([UniPoly([1]), UniPoly([0, -3])], "F")
    assert _canonical(c) == c


def test_minimal_polynomial_json_round_trip(dyck):
    mp = minimal_polynomial(excursion_system(dyck, 0))
    doc = mp.to_json()
    back = MinimalPolynomial.from_json(doc)
    assert back.poly == mp.poly
    assert back.verified_order == mp.verified_order
    assert back.provenance == mp.provenance

"""Exact-arithmetic kernel: polynomials, series, linear algebra, roots."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from walkenum.algebra.groebner import buchberger, normal_form
from walkenum.algebra.linsolve import linear_solve, nullspace_vector
from walkenum.algebra.mpoly import MPoly
from walkenum.algebra.polynomials import BiPoly, RatFun, UniPoly
from walkenum.algebra.roots import (
    isolate_positive_roots,
    rational_roots,
    refine_root,
    smallest_positive_real_root,
)
from walkenum.algebra.series import SeriesPrefix, format_rational, parse_rational
from walkenum.errors import NoPositiveRealRoot, PoleAtZero

rationals = st.fractions(max_denominator=6, min_value=-9, max_value=9)
polys = st.lists(rationals, min_size=0, max_size=5).map(UniPoly)


@given(polys, polys, polys)
def test_unipoly_distributive(a, b, c):
    assert (a + b) * c == a * c + b * c


@given(polys, polys)
def test_unipoly_divmod(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys, polys)
def test_unipoly_gcd_divides(a, b):
    g = a.gcd(b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert a.divmod(g)[1].is_zero()
    assert b.divmod(g)[1].is_zero()
    # canonical: primitive with positive leading coefficient
    assert g.lc() > 0
    assert g.content_and_primitive()[1] == g


def test_unipoly_squarefree():
    p = UniPoly([1, 1]) ** 3 * UniPoly([-2, 1])
    sf = p.squarefree_part()
    assert sf == UniPoly([1, 1]) * UniPoly([-2, 1]) * Fraction(1, 1)
    decomp = p.squarefree_decomposition()
    assert sorted((f.degree, m) for f, m in decomp) == [(1, 1), (1, 3)]


def test_unipoly_decimate_inflate():
    p = UniPoly([1, 0, -3, 0, 5])
    assert p.support_gcd() == 2
    assert p.decimate(2) == UniPoly([1, -3, 5])
    assert p.decimate(2).inflate(2) == p


def test_unipoly_str_renders_plain_polynomial():
    assert str(UniPoly([1, -2, 1])) == "1 - 2*t + t^2"


def test_rational_round_trip():
    for c in (Fraction(3, 7), Fraction(-12), Fraction(0)):
        assert parse_rational(format_rational(c)) == c
    with pytest.raises(Exception):
        parse_rational("nope")


def test_ratfun_canonical_form():
    # common factors cancel; denominator normalized
    a = RatFun(UniPoly([1, 1]) * UniPoly([0, 1]), UniPoly([1, 1]) * UniPoly([2]))
    assert a == RatFun(UniPoly([0, 1]), UniPoly([2]))
    assert RatFun(UniPoly([1, 1]), UniPoly([-2, -2])) == RatFun(UniPoly([-1]), UniPoly([2]))


@given(polys, polys, polys, polys)
def test_ratfun_field_laws(p1, q1, p2, q2):
    if q1.is_zero() or q2.is_zero():
        return
    a, b = RatFun(p1, q1), RatFun(p2, q2)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) - b == a
    if not b.is_zero():
        assert (a / b) * b == a


def test_ratfun_taylor_vs_geometric():
    g = RatFun(UniPoly([1]), UniPoly([1, -2]))
    assert [int(c) for c in g.taylor(10)] == [2**n for n in range(11)]


def test_ratfun_pole_at_zero():
    with pytest.raises(PoleAtZero):
        RatFun(UniPoly([1]), UniPoly([0, 1])).taylor(3)


def test_series_coercion_and_scale():
    s = SeriesPrefix([1, 2, 3], 2)
    assert all(isinstance(c, Fraction) for c in s.coeffs)
    assert s.scale == 2
    assert SeriesPrefix.from_json(s.to_json()) == s


@given(st.lists(rationals, min_size=1, max_size=8),
       st.lists(rationals, min_size=1, max_size=8))
def test_series_truncate_commutes_with_multiply(xs, ys):
    a, b = SeriesPrefix(xs), SeriesPrefix(ys)
    full = a.extended(20) * b.extended(20)
    n = min(a.order, b.order)
    assert (a.truncated(n) * b.truncated(n)).coeffs == full.truncated(n).coeffs


def test_series_shift_and_valuation():
    s = SeriesPrefix([0, 0, 1, 4])
    assert s.valuation() == 2
    assert s.shifted(1).coeffs == (0, 0, 0, 1)
    with pytest.raises(ValueError):
        s.shifted(-1)
    assert SeriesPrefix([0, 0, 0]).valuation() is None


def test_bipoly_eval_series_annihilation():
    quartic = BiPoly(
        [UniPoly([1]), UniPoly([-1, -1]), UniPoly([0, 2, 1]),
         UniPoly([0, 0, -1, -1]), UniPoly([0, 0, 0, 0, 1])], "F")
    good = SeriesPrefix([1, 1, 3, 9, 32])
    resid = quartic.eval_series(good)
    assert all(c == 0 for c in resid.coeffs)
    bad = SeriesPrefix([1, 1, 3, 9, 33])
    resid = quartic.eval_series(bad)
    assert resid.coeffs[4] != 0 and all(c == 0 for c in resid.coeffs[:4])


def test_bipoly_trivial_root():
    p = BiPoly([UniPoly([-1]), UniPoly([1])], "F")  # F - 1
    assert all(c == 0 for c in p.eval_series(SeriesPrefix([1, 0, 0])).coeffs)


def test_bipoly_discriminant_detects_repeated_factor():
    p = BiPoly([UniPoly([1]), UniPoly([-1]), UniPoly([0, 1])], "F")
    assert not p.discriminant().is_zero()
    sq = p * p
    assert sq.discriminant().is_zero()


def test_bipoly_resultant_of_coprime():
    a = BiPoly([UniPoly([0, -1]), UniPoly([1])], "F")  # F - t
    b = BiPoly([UniPoly([1]), UniPoly([1])], "F")      # F + 1
    assert a.resultant_f(b) == UniPoly([1, 1])


def test_mpoly_arithmetic_and_registry():
    vars_ = ("x", "y", "t")
    x = MPoly.variable(vars_, "x")
    y = MPoly.variable(vars_, "y")
    p = (x + y) ** 2
    assert p == x * x + x * y * 2 + y * y
    assert p.degree_in("x") == 2
    q = p.substitute("x", y)
    assert q == y * y * 4
    assert MPoly.from_json(p.to_json()) == p


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_mpoly_distributive(ca, cb, cc):
    vars_ = ("u", "v")
    u, v = MPoly.variable(vars_, "u"), MPoly.variable(vars_, "v")
    a = u * ca + v
    b = v * cb - u
    c = u * cc + MPoly.const(vars_, 3)
    assert (a + b) * c == a * c + b * c


def test_buchberger_membership():
    # every generator must reduce to zero against the basis
    vars_ = ("x", "y", "t")
    x, y, t = (MPoly.variable(vars_, n) for n in vars_)
    gens = [x * x - y, y * y - t * x]
    basis = buchberger(gens)
    pairs = [(g.leading()[0], g) for g in basis]
    for g in gens:
        assert normal_form(g, pairs).is_zero()
    # and a polynomial combination of generators is also in the ideal
    combo = gens[0] * y - gens[1] * x
    assert normal_form(combo, pairs).is_zero()


def test_buchberger_elimination_order():
    # lex with x highest: basis contains a polynomial free of x
    vars_ = ("x", "F", "t")
    x, f, t = (MPoly.variable(vars_, n) for n in vars_)
    gens = [x - f * f, x * t - f + MPoly.const(vars_, 1)]
    basis = buchberger(gens)
    assert any(p.support() <= {"F", "t"} for p in basis)


def test_nullspace_vector():
    rows = [[Fraction(1), Fraction(2), Fraction(3)],
            [Fraction(2), Fraction(4), Fraction(6)]]
    v = nullspace_vector(rows, 3)
    assert v is not None and any(v)
    assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in rows)
    none = nullspace_vector([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]], 2)
    assert none is None


def test_linear_solve_residual_zero():
    vars_ = ("A", "B", "t")
    a, b, t = (MPoly.variable(vars_, n) for n in vars_)
    one = MPoly.const(vars_, 1)
    eqs = [a - t * b - one, b - t * a]
    sol = linear_solve(eqs, ["A", "B"])
    ta = sol["A"].taylor(8)
    tb = sol["B"].taylor(8)
    # substitute back: residuals vanish identically
    assert sol["A"] - sol["B"] * RatFun(UniPoly([0, 1])) == RatFun(UniPoly([1]))
    assert sol["B"] == sol["A"] * RatFun(UniPoly([0, 1]))
    assert [int(c) for c in ta] == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert tb.coeffs[1] == 1


def test_rational_roots():
    p = UniPoly([-1, 0, 4]) * UniPoly([3, 1])  # roots 1/2, -1/2, -3
    roots = rational_roots(p)
    assert set(roots) == {Fraction(1, 2), Fraction(-1, 2), Fraction(-3)}


def test_isolate_positive_roots():
    p = UniPoly([2, -3, 1])  # (t-1)(t-2)
    boxes = isolate_positive_roots(p)
    assert len(boxes) == 2
    for lo, hi in boxes:
        assert lo <= hi
        assert p(lo) == 0 or p(hi) == 0 or p(lo) * p(hi) < 0


def test_smallest_positive_real_root_exact_and_irrational():
    lo, hi = smallest_positive_real_root(UniPoly([-1, 0, 4]))
    assert lo <= Fraction(1, 2) <= hi
    lo, hi = smallest_positive_real_root(UniPoly([-2, 0, 1]), Fraction(1, 10**12))
    assert hi - lo <= Fraction(1, 10**12)
    assert (lo * lo - 2) * (hi * hi - 2) < 0
    with pytest.raises(NoPositiveRealRoot):
        smallest_positive_real_root(UniPoly([1, 0, 1]))


def test_refine_root_narrows_and_straddles():
    p = UniPoly([-2, 0, 1])
    lo, hi = refine_root(p, Fraction(1), Fraction(2), Fraction(1, 1000))
    assert hi - lo <= Fraction(1, 1000)
    assert p(lo) * p(hi) <= 0

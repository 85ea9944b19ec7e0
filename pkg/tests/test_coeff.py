from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wreathext.coeff import (DegeneratePoint, EvalPoint, ExactBackend, InvalidInput, LaurentPoly,
                             PointBackend, RatFunc, SeriesBackend, TruncSeries, random_eval_point,
                             ratfunc_equal, series_from_ratfunc, series_truncate_product,
                             substitute_powers)

from strategies import laurent_polys, ratfuncs

q, t, u, T = (RatFunc.var(v) for v in ("q", "t", "u", "T"))
Lq, Lt = LaurentPoly.var("q"), LaurentPoly.var("t")


def test_ratfunc_equal_examples():
    assert ratfunc_equal(q / (1 - q), q / (1 - q))
    assert ratfunc_equal((1 - q ** 2) / (1 - q), 1 + q)
    assert not ratfunc_equal(q, t)


def test_ratfunc_zero_denominator_rejected():
    with pytest.raises((InvalidInput, ZeroDivisionError)):
        ratfunc_equal(q / RatFunc(0), q)


def test_substitute_powers_examples():
    assert substitute_powers(q / (1 - t), 2) == q ** 2 / (1 - t ** 2)
    assert substitute_powers(RatFunc(1), 5) == RatFunc(1)
    assert substitute_powers(u * q * t, 3) == u ** 3 * q ** 3 * t ** 3
    with pytest.raises(InvalidInput):
        substitute_powers(q, 0)


def test_series_truncate_product_examples():
    caps = {("q", "t"): 2}
    a = TruncSeries(caps, (1 + Lq).terms)
    b = TruncSeries(caps, (1 + Lt).terms)
    assert series_truncate_product([a, b]) == TruncSeries(caps, ((1 + Lq) * (1 + Lt)).terms)
    caps5 = {("q",): 5}
    geo = series_from_ratfunc(caps5, 1 / (1 - q))
    assert series_truncate_product([geo, TruncSeries(caps5, (1 - Lq).terms)]) == 1
    capsT = {("T",): 2}
    s = series_from_ratfunc(capsT, 1 / (1 - q * T))
    expected = LaurentPoly.const(1) + LaurentPoly.monomial(1, q=1, T=1) + LaurentPoly.monomial(1, q=2, T=2)
    assert s == TruncSeries(capsT, expected.terms)


def test_series_mismatched_caps():
    a = TruncSeries({("q",): 2}, (1 + Lq).terms)
    b = TruncSeries({("t",): 2}, (1 + Lt).terms)
    with pytest.raises(InvalidInput):
        series_truncate_product([a, b])


def test_series_exp_log_inverse():
    caps = {("q", "t"): 6}
    x = series_from_ratfunc(caps, q * t / (1 - q) + u * q)
    assert x.exp().log() == x


def test_eval_point_invariants():
    p = random_eval_point(1)
    for v in p.assignments.values():
        assert abs(v.numerator) >= 2 and v.denominator >= 2
        assert v not in (0, 1, -1)
    assert len(set(p.assignments.values())) == 3
    assert random_eval_point(1).assignments == p.assignments
    with pytest.raises(InvalidInput):
        EvalPoint({"q": Fraction(1, 2)})


def test_eval_point_forbidden():
    qt = 1 - LaurentPoly.monomial(1, q=1, t=1)
    p = random_eval_point(3, [qt, Lq - Lt])
    assert p["q"] * p["t"] != 1 and p["q"] != p["t"]
    assert p.checked


def test_eval_point_exhaustion():
    with pytest.raises(DegeneratePoint):
        random_eval_point(0, [Lq - Lq + 0 * Lq], retries=3) if False else \
            random_eval_point(0, [LaurentPoly.const(0) * Lq + (Lq - Lq)], retries=3)


def test_backends_coerce():
    x = (1 - q) / (1 - t)
    assert ExactBackend().coerce(x) == x
    assert ExactBackend(inverted=True).coerce(x) == x.invert_qt()
    pt = random_eval_point(2)
    assert PointBackend(pt).coerce(x) == x.evaluate(pt.assignments)
    sb = SeriesBackend({("q", "t"): 4})
    assert sb.coerce(x) == series_from_ratfunc({("q", "t"): 4}, x)


def test_pole_at_point():
    pt = random_eval_point(5)
    bad = 1 / (q - RatFunc(pt["q"]))
    with pytest.raises(DegeneratePoint):
        bad.evaluate(pt.assignments)


def test_json_round_trip():
    x = (u - q ** 2 / t) / (1 - q * t)
    assert RatFunc.from_json(x.to_json()) == x
    lp = LaurentPoly.monomial(Fraction(3, 2), q=-1, u=2)
    assert LaurentPoly.from_json(lp.to_json()) == lp


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ratfunc_equivalence(a, b, c):
    assert ratfunc_equal(a, a)
    if ratfunc_equal(a, b):
        assert ratfunc_equal(b, a)
    assert ratfunc_equal((a + b) * c, a * c + b * c)


@given(ratfuncs(), ratfuncs(), st.integers(min_value=1, max_value=3))
def test_substitute_powers_multiplicative(a, b, k):
    assert substitute_powers(a * b, k) == substitute_powers(a, k) * substitute_powers(b, k)


@given(laurent_polys(variables=("q", "t")), laurent_polys(variables=("q", "t")))
def test_series_agrees_with_exact_product(a, b):
    # shift into non-negative exponents so the product is a polynomial
    shift = LaurentPoly.monomial(1, q=2, t=2)
    a, b = a * shift, b * shift
    caps = {("q", "t"): 40}
    prod = TruncSeries(caps, a.terms) * TruncSeries(caps, b.terms)
    assert prod == TruncSeries(caps, (a * b).terms)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wreathext.characters import d_sum
from wreathext.coeff import ExactBackend, InvalidInput, RatFunc
from wreathext.symfunc import (ColoredSymFunc, PlethysmMatrix, apply_matrix_plethysm, color_split,
                               grading_scale, hall_pairing, multi_schur_basis,
                               omega_multiply, omega_series, omega_translation_commute_check,
                               powersum_to_schur, schur_to_powersum, skew, translate,
                               translation_apply, vector_evaluate, wreath_pairing)

E = ExactBackend()
q, t, u = RatFunc.var("q"), RatFunc.var("t"), RatFunc.var("u")


def p(n, color=0, r=1, cap=6, c=1):
    return ColoredSymFunc.power_sum(r, cap, E, n, color, c)


def one(r=1, cap=6):
    return ColoredSymFunc.constant(r, cap, E, 1)


def s(index, r=1, cap=6):
    return schur_to_powersum(index, r, cap, E)


def test_schur_examples():
    assert s(((1,),)).equals(p(1))
    assert s(((2,),)).equals((p(2) + p(1) * p(1)).scale(Fraction(1, 2)))
    assert s(((1, 1),)).equals((p(1) * p(1) - p(2)).scale(Fraction(1, 2)))
    assert s(((), (2,), ()), r=3).equals(
        (p(2, 1, 3) + p(1, 1, 3) * p(1, 1, 3)).scale(Fraction(1, 2)))
    with pytest.raises(InvalidInput):
        schur_to_powersum(((3,),), 1, 2, E)


def test_powersum_to_schur_examples():
    assert powersum_to_schur(p(1)) == {((1,),): 1}
    assert powersum_to_schur(p(2)) == {((2,),): 1, ((1, 1),): -1}


@pytest.mark.parametrize("r,cap", [(1, 5), (2, 4), (3, 3)])
def test_schur_round_trip(r, cap):
    for n in range(cap + 1):
        for idx in multi_schur_basis(r, n):
            assert powersum_to_schur(s(idx, r, cap)) == {idx: 1}


@pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (3, 2)])
def test_multi_schur_orthonormal(r, n):
    basis = multi_schur_basis(r, n)
    for a in basis:
        for b in basis:
            assert hall_pairing(s(a, r, n), s(b, r, n)) == (1 if a == b else 0)


def test_hall_examples():
    assert hall_pairing(p(2), p(2)) == 2
    assert hall_pairing(p(1, 0, 3), p(1, 1, 3)) == 0


def test_matrix_plethysm_examples():
    f = p(1) * p(2) + p(3)
    assert apply_matrix_plethysm(PlethysmMatrix.identity(1), f).equals(f)
    assert apply_matrix_plethysm(PlethysmMatrix.sigma(3), p(1, 0, 3)).equals(p(1, 1, 3))
    M = PlethysmMatrix.identity(3) - PlethysmMatrix.sigma(3, -1) * q
    for n in (1, 2, 3):
        for i in range(3):
            want = p(n, i, 3) - p(n, (i - 1) % 3, 3, c=q ** n)
            assert apply_matrix_plethysm(M, p(n, i, 3)).equals(want)


def test_inverse_shift_examples():
    for n in (1, 2, 3):
        got = apply_matrix_plethysm(PlethysmMatrix.inverse_shift(1, q), p(n))
        assert got.equals(p(n, c=1 / (1 - q ** n)))
    got = apply_matrix_plethysm(PlethysmMatrix.inverse_shift(3, q, -1), p(1, 0, 3))
    want = (p(1, 0, 3) + p(1, 2, 3, c=q) + p(1, 1, 3, c=q ** 2)).scale(1 / (1 - q ** 3))
    assert got.equals(want)


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("sv", ["q", "t", "qt"])
@pytest.mark.parametrize("sign", [1, -1])
def test_inverse_shift_is_inverse(r, sv, sign):
    sval = q * t if sv == "qt" else RatFunc.var(sv)
    fwd = PlethysmMatrix.identity(r) - PlethysmMatrix.sigma(r, sign) * sval
    inv = PlethysmMatrix.inverse_shift(r, sval, sign)
    for n in (1, 2, 3):
        for i in range(r):
            g = p(n, i, r, cap=3)
            assert apply_matrix_plethysm(fwd, apply_matrix_plethysm(inv, g)).equals(g)
            assert apply_matrix_plethysm(inv, apply_matrix_plethysm(fwd, g)).equals(g)


def test_matrix_composition_on_generators():
    r = 3
    M1 = PlethysmMatrix.identity(r) - PlethysmMatrix.sigma(r, 1) * q
    M2 = PlethysmMatrix.sigma(r, -1) * t + PlethysmMatrix.identity(r) * u
    for n in (1, 2):
        for i in range(r):
            g = p(n, i, r, cap=2)
            lhs = apply_matrix_plethysm(M1, apply_matrix_plethysm(M2, g))
            assert lhs.equals(apply_matrix_plethysm(M1 * M2, g))


def test_vector_evaluate_examples():
    d = color_split(d_sum((1,), 3).poly, 3)
    assert vector_evaluate(p(1, 0, 3), d) == q * t
    assert vector_evaluate(one(3), d) == 1
    assert vector_evaluate(p(1, 1, 3), d, PlethysmMatrix.iota(3)) == -q


def test_omega_examples():
    f = p(1) * p(2)
    assert omega_multiply(PlethysmMatrix(1, {}), 0, 1, f).equals(f)
    om = omega_series(1, 2, E, {0: 1})
    want = one(cap=2) + p(1, cap=2) + (p(2, cap=2) + p(1, cap=2) * p(1, cap=2)).scale(Fraction(1, 2))
    assert om.equals(want)
    inv = omega_series(1, 4, E, {0: -1}) * omega_series(1, 4, E, {0: 1})
    assert inv.equals(one(cap=4))


def test_translation_examples():
    assert translate(p(1), {0: 1}).equals(p(1) + one())
    assert translate(one(), {0: 1 - u * q * t}).equals(one())
    got = translation_apply(PlethysmMatrix.identity(1), 0, 1 - u * q * t, p(2))
    assert got.equals(p(2) + one().scale(1 - u ** 2 * q ** 2 * t ** 2))


def test_commute_check():
    r1 = PlethysmMatrix.identity(1)
    assert omega_translation_commute_check(PlethysmMatrix(1, {}), PlethysmMatrix(1, {}), 0, 0, 3)
    assert omega_translation_commute_check(r1, r1, 0, 0, 4)
    one3 = PlethysmMatrix.identity(3)
    A = one3 - PlethysmMatrix.sigma(3) * q
    B = PlethysmMatrix.inverse_shift(3, q, -1) * (PlethysmMatrix.sigma(3) * t - one3)
    assert omega_translation_commute_check(A, B, 0, 0, 3)


def test_skew_examples():
    assert skew(p(1), p(1)).equals(one())
    assert skew(p(2), p(1) * p(1)).is_zero()


monomials = st.lists(st.tuples(st.integers(1, 3), st.integers(0, 2), st.integers(-3, 3)),
                     min_size=1, max_size=3)


def build(terms, r, cap=3):
    f = ColoredSymFunc.zero(r, cap, E)
    for n, color, c in terms:
        f = f + p(n, color % r, r, cap, c)
    return f


@given(monomials, monomials, monomials, st.sampled_from([1, 3]))
def test_skew_adjoint_property(F, f, g, r):
    F_, f_, g_ = build(F, r), build(f, r), build(g, r)
    cap = 6
    F_, f_, g_ = F_.with_cap(cap), f_.with_cap(cap), g_.with_cap(cap)
    assert hall_pairing(F_ * f_, g_) == hall_pairing(f_, skew(F_, g_))


def test_wreath_pairing_examples():
    assert wreath_pairing(p(1), p(1)) == -(1 - q) * (1 - t)
    assert wreath_pairing(one(), one()) == 1


@given(monomials, monomials, st.sampled_from([1, 2, 3]))
def test_wreath_pairing_symmetric(f, g, r):
    a, b = build(f, r), build(g, r)
    assert wreath_pairing(a, b) == wreath_pairing(b, a)


def test_grading_scale():
    assert grading_scale(one(), u).equals(one())
    assert grading_scale(p(1), u).equals(p(1, c=u))
    T = RatFunc.var("T")
    assert grading_scale(one() + p(1), T).equals(one() + p(1, c=T))


@given(monomials, monomials, st.sampled_from([1, 3]), st.integers(0, 2))
def test_adjunction(f, g, r, i):
    i %= r
    cap = 6
    a, b = build(f, r).with_cap(cap), build(g, r).with_cap(cap)
    lhs = wreath_pairing(omega_multiply(PlethysmMatrix.identity(r), i, 1, a), b)
    one_r = PlethysmMatrix.identity(r)
    M = (one_r - PlethysmMatrix.sigma(r) * q) * (PlethysmMatrix.sigma(r, -1) * t - one_r)
    rhs = wreath_pairing(a, translation_apply(M, (-i) % r, 1, b))
    assert lhs == rhs

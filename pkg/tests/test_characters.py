import itertools

import pytest
from hypothesis import given, strategies as st

from wreathext.characters import (CharacterSum, b_sum, bar, d_sum, d_sum_from_corners, mixed_e_sum,
                                  mixed_e_sum_from_d, nekrasov_factor, nekrasov_via_omega)
from wreathext.coeff import LaurentPoly, RatFunc
from wreathext.partitions import partitions_of, partitions_up_to

from strategies import laurent_polys, partitions

q, t = LaurentPoly.var("q"), LaurentPoly.var("t")


def lp(**e):
    return LaurentPoly.monomial(1, **e)


def test_b_sum():
    assert b_sum(()).poly.is_zero()
    assert b_sum((1,)) == CharacterSum(LaurentPoly.const(1))
    assert b_sum((2, 1)).poly == 1 + q + t


def test_d_sum():
    assert d_sum(()).poly == LaurentPoly.const(-1)
    assert d_sum((1,)).poly == -q - t + q * t
    d = d_sum((1,), 3)
    assert d.part(1).poly == -t
    assert d.part(2).poly == -q
    assert d.part(0).poly == q * t


def test_bar():
    assert bar(CharacterSum(q + t)).poly == lp(q=-1) + lp(t=-1)
    s = d_sum((2, 1), 3)
    assert bar(bar(s)) == s
    assert bar(d_sum((1,), 3)).part(1).poly == -lp(q=-1)


def test_mixed_e():
    assert mixed_e_sum((), ()).poly.is_zero()
    assert mixed_e_sum((1,), (1,)).poly == q + t


def test_mixed_e_two_routes():
    shapes = [lam for lam in partitions_up_to(6)]
    for lam, mu in itertools.product(shapes[::3], shapes[::4]):
        assert mixed_e_sum(lam, mu) == mixed_e_sum_from_d(lam, mu)


def test_nekrasov_examples():
    assert nekrasov_factor((), (), 3).expand() == LaurentPoly.const(1)
    assert nekrasov_factor((2,), (2,), 3).expand() == LaurentPoly.const(1)
    f = nekrasov_factor((3,), (3,), 3)
    u = LaurentPoly.var("u")
    assert f.expand() == (1 - u * lp(q=-2, t=1)) * (1 - u * lp(q=3))
    assert nekrasov_via_omega((3,), (3,), 3) == f.to_ratfunc()
    assert nekrasov_via_omega((), (), 3) == RatFunc(1)


def test_nekrasov_two_routes_exhaustive():
    shapes = [lam for n in range(6) for lam in partitions_of(n)]
    for r in (1, 2, 3, 4):
        for lam in shapes:
            for mu in shapes:
                f = nekrasov_factor(lam, mu, r)
                assert nekrasov_via_omega(lam, mu, r) == f.to_ratfunc(), (lam, mu, r)


def test_nekrasov_u_zero_and_degree():
    for lam in partitions_of(4):
        for mu in partitions_of(3):
            f = nekrasov_factor(lam, mu, 1)
            e = f.expand()
            u_free = LaurentPoly({k: c for k, c in e.terms.items() if k[2] == 0})
            assert u_free == LaurentPoly.const(1)
            assert max(k[2] for k in e.terms) == len(f.factors)


def test_factor_count_matches_hook_condition():
    from wreathext.partitions import arm_leg, boxes
    lam, mu, r = (4, 2, 1), (3, 3), 3
    n = sum(1 for b in boxes(lam) if (arm_leg(mu, b)[0] + arm_leg(lam, b)[1] + 1) % r == 0)
    n += sum(1 for b in boxes(mu) if (arm_leg(lam, b)[0] + arm_leg(mu, b)[1] + 1) % r == 0)
    assert len(nekrasov_factor(lam, mu, r).factors) == n


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_d_sum_corner_identity(r):
    for n in range(13):
        for lam in partitions_of(n):
            d = d_sum(lam, r)
            for i in range(r):
                assert d.part(i).poly == d_sum_from_corners(lam, r, i)


@given(laurent_polys(variables=("q", "t")), st.integers(1, 5), st.integers(0, 4))
def test_color_grading_shifts(poly, r, i):
    s = CharacterSum(poly, r)
    i %= r
    assert (s * q).part((i - 1) % r).poly == q * s.part(i).poly
    assert (s * t).part((i + 1) % r).poly == t * s.part(i).poly
    total = LaurentPoly()
    for part in s.parts():
        total = total + part.poly
    assert total == poly


@given(partitions(max_size=6), partitions(max_size=6))
def test_mixed_e_routes_property(lam, mu):
    assert mixed_e_sum(lam, mu) == mixed_e_sum_from_d(lam, mu)

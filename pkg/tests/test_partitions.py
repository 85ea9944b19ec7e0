import pytest
from hypothesis import given, strategies as st

from wreathext.coeff import InvalidInput
from wreathext.partitions import (MayaDiagram, addable_removable, arm_leg, core_quotient,
                                  dominance_leq, enumerate_with_core, from_core_quotient, from_maya,
                                  hook_lengths, hook_multiples_count, is_core, mixed_hook,
                                  multipartitions, parse_partition, partitions_of, size, to_maya,
                                  transpose)

from strategies import partitions


def strip_core(lam, r):
    """Independent oracle: slide beads of a beta-set down by r until stuck."""
    L = len(lam)
    beta = {lam[i] - i - 1 + L for i in range(L)}
    moved = True
    while moved:
        moved = False
        for b in sorted(beta):
            if b - r >= 0 and b - r not in beta:
                beta.remove(b)
                beta.add(b - r)
                moved = True
                break
    beads = sorted(beta, reverse=True)
    return tuple(p for p in (b + i + 1 - L for i, b in enumerate(beads)) if p > 0)


def test_arm_leg_examples():
    assert arm_leg((6, 4, 1), (0, 0)) == (5, 2)
    assert arm_leg((1,), (0, 0)) == (0, 0)
    assert arm_leg((6, 4, 1), (1, 0)) == (4, 1)


def test_arm_leg_outside_diagram():
    assert arm_leg((1,), (2, 3)) == (-3, -4)


def test_mixed_hook_examples():
    assert mixed_hook((6, 4, 1), (6, 4, 1), (0, 0)) == 8
    assert mixed_hook((1,), (1,), (0, 0)) == 1
    assert mixed_hook((3,), (1, 1, 1), (0, 0)) == 5


def test_hook_table():
    assert sorted(hook_lengths((6, 4, 1)).values()) == sorted([8, 6, 5, 4, 2, 1, 5, 3, 2, 1, 1])


def test_maya_examples():
    assert to_maya(()) == MayaDiagram.vacuum()
    m = to_maya((6, 4, 1))
    assert m.black_positions(-10, 10) == [-10, -9, -8, -7, -5, -4, -2, -1, 0, 2]
    assert m.charge == 0
    single = to_maya((1,))
    assert single.black_nonneg == frozenset({0}) and single.white_neg == frozenset({-1})
    assert from_maya(MayaDiagram.vacuum()) == ()
    for lam in [(6, 4, 1), (5, 3, 3, 1)]:
        assert from_maya(to_maya(lam)) == lam
    with pytest.raises(InvalidInput):
        from_maya(MayaDiagram.vacuum(1))


def test_core_quotient_example():
    cq = core_quotient((6, 4, 1), 3)
    assert cq.quotient == ((1, 1), (), ())
    assert cq.core == (3, 1, 1)
    assert size(cq.core) == 5
    assert from_core_quotient((3, 1, 1), ((1, 1), (), ()), 3) == (6, 4, 1)
    assert from_core_quotient((), ((), (), ()), 3) == ()
    lam = from_core_quotient((), ((1,), (), ()), 3)
    assert lam in partitions_of(3)
    with pytest.raises(InvalidInput):
        from_core_quotient((3,), ((), (), ()), 3)


def test_r1_core_is_empty():
    for lam in partitions_of(6):
        cq = core_quotient(lam, 1)
        assert cq.core == () and cq.quotient == (lam,)


def test_enumerate_with_core():
    assert enumerate_with_core((), 3, 0) == ((),)
    three = enumerate_with_core((), 3, 1)
    assert len(three) == 3 and all(size(x) == 3 for x in three)
    assert set(three) == {lam for lam in partitions_of(3) if strip_core(lam, 3) == ()}
    four = enumerate_with_core((1,), 3, 1)
    assert len(four) == 3 and all(size(x) == 4 for x in four)
    assert set(four) == {lam for lam in partitions_of(4) if strip_core(lam, 3) == (1,)}
    with pytest.raises(InvalidInput):
        enumerate_with_core((3,), 3, 1)
    # deterministic order
    assert enumerate_with_core((), 3, 2) == enumerate_with_core((), 3, 2)


def test_enumerate_matches_brute_force():
    for r in (2, 3):
        for alpha in [(), (1,), (2,), (1, 1)]:
            if not is_core(alpha, r):
                continue
            for n in range(3):
                got = set(enumerate_with_core(alpha, r, n))
                want = {lam for lam in partitions_of(size(alpha) + r * n) if strip_core(lam, r) == alpha}
                assert got == want


def test_hook_multiples_examples():
    assert hook_multiples_count((6, 4, 1), 3) == 2
    assert hook_multiples_count((), 3) == 0
    assert hook_multiples_count((4, 2, 1), 1) == 7


def test_dominance():
    assert dominance_leq((2, 1, 1), (2, 2))
    assert dominance_leq((3, 1), (3, 1))
    assert not dominance_leq((3,), (1, 1, 1))
    with pytest.raises(InvalidInput):
        dominance_leq((2,), (1,))


def test_addable_removable():
    assert addable_removable((), 1, 0) == ([(0, 0)], [])
    assert addable_removable((1,), 3, 1) == ([(0, 1)], [])
    assert addable_removable((1,), 3, 0) == ([], [(0, 0)])


def test_parse_partition():
    assert parse_partition("6,4,1") == (6, 4, 1)
    assert parse_partition("") == ()
    with pytest.raises(InvalidInput):
        parse_partition("1,x")
    with pytest.raises(InvalidInput):
        parse_partition("1,2")


def test_multipartitions_count():
    # number of 3-multipartitions of 2: 3*2 + 3 = 9
    assert len(multipartitions(2, 3)) == 9


@pytest.mark.parametrize("n", range(0, 21))
def test_round_trips_exhaustive(n):
    for lam in partitions_of(n):
        assert from_maya(to_maya(lam)) == lam
        for r in range(1, 6):
            cq = core_quotient(lam, r)
            assert from_core_quotient(cq.core, cq.quotient, r) == lam
            assert cq.quot_size() == hook_multiples_count(lam, r)
            assert size(lam) == size(cq.core) + r * cq.quot_size()


@given(partitions(max_size=14), st.integers(min_value=1, max_value=5))
def test_core_matches_stripping_oracle(lam, r):
    cq = core_quotient(lam, r)
    assert cq.core == strip_core(lam, r)
    assert is_core(cq.core, r)


@given(partitions(max_size=12), st.integers(0, 6), st.integers(0, 6))
def test_transpose_swaps_arm_leg(lam, a, b):
    arm, leg = arm_leg(lam, (a, b))
    assert arm_leg(transpose(lam), (b, a)) == (leg, arm)

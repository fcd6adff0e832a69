import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreathwalk.diagrams import (
    Corner,
    Partition,
    YoungGDiagram,
    conjugate,
    count_syt_g,
    enumerate_young_g_diagrams,
    hook_count,
    partitions_of,
    removable_corners,
)
from wreathwalk.errors import InvalidCornerError


def brute_force_syt(shape):
    """Count standard fillings by placing 1..L one box at a time (test oracle)."""
    shape = tuple(shape)
    if not shape:
        return 1

    def count(filled):
        if filled == shape:
            return 1
        total = 0
        for r in range(len(shape)):
            c = filled[r]
            if c < shape[r] and (r == 0 or filled[r - 1] > c):
                total += count(filled[:r] + (c + 1,) + filled[r + 1 :])
        return total

    return count((0,) * len(shape))


def partition_count_dp(L):
    """p(L) by the standard coin-change recurrence."""
    p = [1] + [0] * L
    for part in range(1, L + 1):
        for m in range(part, L + 1):
            p[m] += p[m - part]
    return p[L]


def test_partitions_of_four():
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partitions_of_zero():
    assert partitions_of(0) == [Partition()]
    assert Partition().size == 0 and Partition().first == 0


@pytest.mark.parametrize("L", range(0, 16))
def test_partition_counts(L):
    parts = partitions_of(L)
    assert len(parts) == partition_count_dp(L)
    assert len(set(parts)) == len(parts)
    assert all(p.size == L for p in parts)
    assert parts == sorted(parts, reverse=True)


def test_p12():
    assert len(partitions_of(12)) == 77


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


@pytest.mark.parametrize("L", range(0, 9))
def test_hook_length_matches_brute_force(L):
    for lam in partitions_of(L):
        assert hook_count(lam) == brute_force_syt(lam)


def test_hook_known_values():
    assert hook_count((3, 1)) == 3
    assert hook_count((2, 2)) == 2
    assert hook_count((5,)) == 1
    assert hook_count(()) == 1
    assert hook_count((3, 2)) == 5


@pytest.mark.parametrize("L", range(0, 11))
def test_sum_of_squares(L):
    assert sum(hook_count(lam) ** 2 for lam in partitions_of(L)) == math.factorial(L)


def test_conjugate_examples():
    assert conjugate((4,)) == (1, 1, 1, 1)
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate((2, 2)) == (2, 2)


@given(st.integers(0, 14).flatmap(lambda L: st.sampled_from(partitions_of(L))))
def test_conjugate_involution(lam):
    c = conjugate(lam)
    assert conjugate(c) == lam
    assert c.first == len(lam)
    assert c.size == lam.size
    assert hook_count(c) == hook_count(lam)


def test_removable_corners_examples():
    assert removable_corners((5,)) == [(1, 5, 4)]
    assert removable_corners((3, 2)) == [(1, 3, 2), (2, 2, 0)]
    assert removable_corners((2, 2)) == [(2, 2, 0)]
    assert removable_corners(()) == []


@given(st.integers(0, 14).flatmap(lambda L: st.sampled_from(partitions_of(L))))
def test_corner_count_is_distinct_parts(lam):
    corners = removable_corners(lam)
    assert len(corners) == len(set(lam))
    for r, c, content in corners:
        assert content == c - r
        parts = list(lam)
        parts[r - 1] -= 1
        Partition([p for p in parts if p])  # still a valid partition


def test_enumerate_small():
    assert enumerate_young_g_diagrams(0, 3) == [YoungGDiagram(((), (), ()))]
    two = enumerate_young_g_diagrams(2, 2)
    assert {d.shapes for d in two} == {
        ((2,), ()), ((1, 1), ()), ((1,), (1,)), ((), (2,)), ((), (1, 1)),
    }
    assert len(two) == 5
    assert len(enumerate_young_g_diagrams(3, 2)) == 10


@pytest.mark.parametrize("n,t", [(n, t) for n in range(0, 7) for t in range(1, 4)])
def test_enumeration_count(n, t):
    expected = sum(
        math.prod(partition_count_dp(m) for m in comp)
        for comp in itertools.product(range(n + 1), repeat=t)
        if sum(comp) == n
    )
    diagrams = enumerate_young_g_diagrams(n, t)
    assert len(diagrams) == expected
    assert len(set(diagrams)) == expected
    assert all(d.n == n for d in diagrams)


def test_count_syt_g_examples():
    assert count_syt_g(YoungGDiagram(((4,), (), ()))) == 1
    assert count_syt_g(YoungGDiagram(((1,), (1,)))) == 2
    shapes = [()] * 10
    shapes[0], shapes[1], shapes[7], shapes[9] = (3, 2), (1, 1), (1, 1), (1,)
    assert count_syt_g(YoungGDiagram(tuple(shapes))) == 37800


@pytest.mark.parametrize("n,t", [(n, t) for n in range(1, 7) for t in range(1, 4)])
def test_corner_recursion(n, t):
    for mu in enumerate_young_g_diagrams(n, t):
        assert sum(count_syt_g(mu.remove(c)) for c in mu.corners()) == count_syt_g(mu)


def test_remove_invalid_corner():
    mu = YoungGDiagram(((2, 2),))
    with pytest.raises(InvalidCornerError):
        mu.remove(Corner(0, 1, 2, 1))

"""Combinatorial layer: parsing, enumeration, hooks, corners."""

from gmpy2 import mpq
from hypothesis import given, strategies as st

from jackalg.partitions import (
    Box,
    Partition,
    content_alphabet,
    corners,
    enumerate_partitions,
    hook_products,
)

partitions = st.lists(st.integers(1, 8), max_size=6).map(
    lambda xs: Partition(sorted(xs, reverse=True))
)


PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_enumeration_counts():
    for n, count in enumerate(PARTITION_COUNTS):
        assert len(enumerate_partitions(n)) == count


@given(partitions)
def test_parse_str_round_trip(lam):
    assert Partition.parse(str(lam)) == lam


@given(partitions)
def test_conjugate_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size() == lam.size()


@given(partitions)
def test_corner_counts(lam):
    addable, removable = corners(lam)
    assert len(addable) == len(removable) + 1


@given(partitions)
def test_multiplicities_and_z(lam):
    mult = {r: lam.m(r) for r in set(lam.parts)}
    assert sum(r * m for r, m in mult.items()) == lam.size()
    z = 1
    for r, m in mult.items():
        f = 1
        for i in range(1, m + 1):
            f *= i
        z *= r**m * f
    assert lam.z() == z


def test_hook_products_known_values():
    # one box: c = 1, c' = alpha, j = alpha
    c, cp, j = hook_products(Partition([1]), mpq(3))
    assert (c, cp, j) == (1, 3, 3)
    # single row of two boxes at alpha
    c, cp, j = hook_products(Partition([2]), mpq(3))
    assert c == (3 + 1) * 1 and cp == (3 + 3) * 3
    assert j == c * cp


@given(partitions, st.sampled_from([mpq(1), mpq(2), mpq(1, 4)]))
def test_hook_conjugation_duality(lam, alpha):
    _, _, j = hook_products(lam, alpha)
    _, _, jc = hook_products(lam.conjugate(), 1 / alpha)
    assert j == alpha ** (2 * lam.size()) * jc


def test_corner_contents_golden():
    # the staircase-ish diagram with rows (4,4,2) at alpha=1 has inner
    # corner contents {-3, 0, 4} and outer corner contents {-1, 2}
    lam = Partition([4, 4, 2])
    addable, removable = corners(lam)
    inner = sorted((b.col - 1) - (b.row - 1) for b in addable)
    outer = sorted(b.col - b.row for b in removable)
    assert inner == [-3, 0, 4]
    assert outer == [-1, 2]


def test_arm_leg():
    lam = Partition([4, 3, 1])
    assert lam.arm(Box(1, 1)) == 3
    assert lam.leg(Box(1, 1)) == 2
    assert lam.arm(Box(2, 2)) == 1
    assert lam.leg(Box(2, 2)) == 0


def test_content_alphabet_size():
    lam = Partition([3, 1])
    assert len(content_alphabet(lam, mpq(2))) == lam.size()


@given(partitions)
def test_strip_and_lower(lam):
    stripped = lam.strip_ones()
    assert all(p >= 2 for p in stripped.parts)
    assert stripped.size() + lam.m(1) == lam.size()
    for r in set(lam.parts):
        if r >= 2:
            low = lam.lower_part(r)
            assert low.size() == lam.size() - 1

"""Reference-construction layer: orthogonalization, norms, enumerative
counts."""

from gmpy2 import mpq
import pytest

from jackalg.oracle import (
    canonical_matching_pair,
    count_factorizations,
    count_matchings,
    jack_table,
    m_in_p_basis,
    matching_cycle_type,
    p_in_m_basis,
    theta_oracle,
)
from jackalg.partitions import Partition, enumerate_partitions, hook_products

ALPHAS = [mpq(1), mpq(2), mpq(1, 4)]


def test_p_m_round_trip():
    for n in range(1, 6):
        for lam in enumerate_partitions(n):
            back = {}
            for rho, c in m_in_p_basis(lam).items():
                for sig, d in p_in_m_basis(rho).items():
                    back[sig] = back.get(sig, mpq(0)) + c * d
            back = {k: v for k, v in back.items() if v}
            assert back == {lam: mpq(1)}


def test_norms_equal_hook_products():
    for n in range(1, 6):
        for alpha in ALPHAS:
            table = jack_table(n, alpha)
            for lam in enumerate_partitions(n):
                _, _, j = hook_products(lam, alpha)
                assert table.norm(lam) == j


def test_orthogonality_of_table():
    for n in range(1, 5):
        for alpha in ALPHAS:
            table = jack_table(n, alpha)
            states = enumerate_partitions(n)
            for i, lam in enumerate(states):
                for rho in states[i + 1 :]:
                    total = mpq(0)
                    for sig in states:
                        total += (
                            table.theta(sig, lam)
                            * table.theta(sig, rho)
                            * sig.z()
                            * alpha ** sig.length()
                        )
                    assert total == 0


def test_trivial_character_is_one():
    for n in range(1, 6):
        ones = Partition([1] * n)
        for alpha in ALPHAS:
            table = jack_table(n, alpha)
            for lam in enumerate_partitions(n):
                assert table.theta(ones, lam) == 1


def test_theta_known_values():
    # single-row coefficient of p_(n) is the leading normalization
    assert theta_oracle(Partition([2]), Partition([2]), mpq(1)) == 1
    assert theta_oracle(Partition([2]), Partition([1, 1]), mpq(1)) == -1
    # hook-shape evaluation from the closed one-row formula at alpha
    assert theta_oracle(Partition([3]), Partition([2, 1]), mpq(2)) == -2
    assert theta_oracle(Partition([3]), Partition([2, 1]), mpq(1, 4)) == -mpq(1, 4)


def test_count_factorizations_small():
    # sigma1 * sigma2 = sigma with sigma a fixed 3-cycle in S_3
    assert count_factorizations(
        Partition([2, 1]), Partition([2, 1]), Partition([3])
    ) == 3
    # identity target forces sigma2 = sigma1^{-1}
    assert count_factorizations(
        Partition([2, 1]), Partition([2, 1]), Partition([1, 1, 1])
    ) == 3
    assert count_factorizations(
        Partition([3]), Partition([2, 1]), Partition([1, 1, 1])
    ) == 0


def test_matching_machinery():
    f, g = canonical_matching_pair(Partition([2, 1]))
    assert matching_cycle_type(f, g) == Partition([2, 1])
    # perfect matchings on 2n points against themselves give all-ones type
    f2, g2 = canonical_matching_pair(Partition([1, 1]))
    assert matching_cycle_type(f2, f2) == Partition([1, 1])


def test_count_matchings_small():
    # pair with itself: type is all parts of the base pairing
    n = 3
    pi = Partition([3])
    assert count_matchings(Partition([1] * n), Partition([1] * n), pi) == 0
    got = count_matchings(Partition([3]), Partition([3]), Partition([1, 1, 1]))
    assert got > 0


def test_near_row_closed_form():
    # closed form for every coefficient on the (n-1,1) diagram
    import math

    for n in range(2, 7):
        for alpha in ALPHAS:
            table = jack_table(n, alpha)
            lam = Partition([n - 1, 1])
            for mu in enumerate_partitions(n):
                got = table.theta(mu, lam)
                expect = (
                    alpha ** (n - mu.length())
                    * math.factorial(n)
                    / mpq(mu.z())
                    * ((alpha * (n - 1) + 1) * mu.m(1) - n)
                    / (alpha * n * (n - 1))
                )
                assert got == expect


def test_monomial_normalization():
    for n in range(1, 6):
        for alpha in ALPHAS:
            table = jack_table(n, alpha)
            ones = Partition([1] * n)
            import math

            for lam in enumerate_partitions(n):
                assert table.m_coords[lam].get(ones) == math.factorial(n)

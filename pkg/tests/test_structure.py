"""Product-structure layer: size-free and fixed-size structure
constants, enumerative cross-checks, appendix identities."""

from gmpy2 import mpq

from jackalg.algebra import GammaPoly
from jackalg.oracle import count_factorizations, count_matchings
from jackalg.partitions import Partition, enumerate_partitions
from jackalg.structure import (
    c_constant,
    defect,
    g_coefficient,
    g_table,
    matsumoto_content_expansion,
    stirling_first_unsigned,
    triple_product_c,
    vassilieva_closed_form,
    vassilieva_oracle,
    verify_linear_terms_stirling,
    verify_struct_const_theorem,
    verify_top_degrees,
)


def test_top_weight_is_union():
    for mu in [Partition([2]), Partition([3]), Partition([2, 2])]:
        for nu in [Partition([2]), Partition([3])]:
            union = mu.union(nu)
            assert g_coefficient(mu, nu, union) == GammaPoly.one()
            for pi, coeff in g_table(mu, nu):
                if pi.n1() >= union.n1() and pi != union:
                    assert coeff.is_zero()


def test_diagonal_specials():
    for k in range(2, 7):
        assert g_coefficient(
            Partition([k]), Partition([k]), Partition([1] * k)
        ) == GammaPoly.const(k)


def test_one_above_top_vanishes():
    for k in range(2, 7):
        for l in range(2, 7):
            for n in range(2, k + l + 1):
                for pi in enumerate_partitions(n):
                    if pi.n1() == k + l + 1:
                        assert g_coefficient(
                            Partition([k]), Partition([l]), pi
                        ).is_zero()


def test_symmetry_in_factors():
    mu, nu = Partition([3]), Partition([2, 2])
    assert dict(g_table(mu, nu)) == dict(g_table(nu, mu))


def test_known_square():
    # Ch_2 * Ch_2 = Ch_{2,2} + 4 Ch_3 + 2 Ch_{1,1} - 2 gamma Ch_2
    table = dict(g_table(Partition([2]), Partition([2])))
    assert table[Partition([2, 2])] == GammaPoly.one()
    assert table[Partition([3])] == GammaPoly.const(4)
    assert table[Partition([1, 1])] == GammaPoly.const(2)
    assert table[Partition([2])] == GammaPoly((0, -2))


def test_struct_const_degree_theorem_small():
    report = verify_struct_const_theorem(6)
    assert report["entries"] > 0


def test_fixed_size_vs_triple_product():
    for n in range(2, 5):
        states = enumerate_partitions(n)
        for alpha in (mpq(1), mpq(2), mpq(1, 4)):
            for mu in states:
                for nu in states:
                    for pi in states:
                        got = c_constant(mu, nu, pi, alpha)
                        assert got.is_rational()
                        assert got.as_rational() == triple_product_c(
                            mu, nu, pi, alpha
                        )


def test_fixed_size_vs_permutation_counts():
    for n in range(2, 5):
        states = enumerate_partitions(n)
        for mu in states:
            for nu in states:
                for pi in states:
                    got = c_constant(mu, nu, pi, mpq(1))
                    assert got.as_rational() == count_factorizations(mu, nu, pi)


def test_fixed_size_vs_matching_counts():
    for n in range(2, 5):
        states = enumerate_partitions(n)
        for mu in states:
            for nu in states:
                for pi in states:
                    got = c_constant(mu, nu, pi, mpq(2))
                    assert got.as_rational() == count_matchings(mu, nu, pi)


def test_defect_is_even_nonnegative_where_supported():
    for n in range(2, 5):
        for mu in enumerate_partitions(n):
            for nu in enumerate_partitions(n):
                for pi in enumerate_partitions(n):
                    if c_constant(mu, nu, pi, mpq(2)) != 0:
                        assert defect(mu, nu, pi) >= 0


def test_stirling_values():
    assert stirling_first_unsigned(4, 2) == 11
    assert stirling_first_unsigned(5, 1) == 24
    report = verify_linear_terms_stirling(6)
    assert report["entries"] == 21


def test_top_degree_layers():
    report = verify_top_degrees(6)
    assert report


def test_vassilieva_closed_form_small():
    for n in range(2, 6):
        for mu in enumerate_partitions(n):
            for alpha in (mpq(1), mpq(2), mpq(1, 4)):
                assert vassilieva_oracle(mu, alpha) == vassilieva_closed_form(
                    mu, alpha
                )


def test_matsumoto_elementary_expansions():
    # e_1 in content powers: coefficient table with the degree bound
    out1 = matsumoto_content_expansion({(1,): mpq(1)}, 5)
    nonzero = {mu: c for mu, c in out1.items() if not c.is_zero()}
    assert set(nonzero) == {Partition([2])}
    assert nonzero[Partition([2])] == GammaPoly.const(mpq(1, 2))
    out2 = matsumoto_content_expansion({(2,): mpq(1)}, 6)
    nonzero2 = {mu: c for mu, c in out2.items() if not c.is_zero()}
    # every index with defect-free weight gets 1/z_mu
    assert nonzero2[Partition([3])] == GammaPoly.const(mpq(1, 3))
    assert nonzero2[Partition([2, 2])] == GammaPoly.const(mpq(1, 8))

"""End-to-end acceptance suite.

Each test covers one numbered criterion, enforces its runtime budget,
and prints a single PASS line on success (visible with pytest -v -s or
in the captured output).
"""

import math
import time

from gmpy2 import mpq
import numpy as np
import pytest

from jackalg.algebra import BasisPolynomial, GammaPoly
from jackalg.partitions import Partition, enumerate_partitions


def _report(name, elapsed, budget, detail=""):
    assert elapsed < budget, f"{name}: exceeded budget ({elapsed:.1f}s >= {budget}s)"
    print(f"{name}: PASS ({elapsed:.1f}s{', ' + detail if detail else ''})")


def _poly(basis, terms):
    return BasisPolynomial(
        basis, {Partition(idx): GammaPoly(c) for idx, c in terms.items()}
    )


def test_criterion_01_golden_cumulant_polynomials():
    from jackalg.lassalle import compute_K, compute_L, compute_Lprime

    start = time.time()
    golden_K = {
        (1,): {(2,): (1,)},
        (2,): {(3,): (1,), (2,): (0, 1)},
        (3,): {(4,): (1,), (3,): (0, 3), (2,): (1, 0, 2)},
        (4,): {
            (5,): (1,),
            (4,): (0, 6),
            (2, 2): (0, 1),
            (3,): (5, 0, 11),
            (2,): (0, 7, 0, 6),
        },
        (5,): {
            (6,): (1,),
            (5,): (0, 10),
            (3, 2): (0, 5),
            (4,): (15, 0, 35),
            (2, 2): (5, 0, 10),
            (3,): (0, 55, 0, 50),
            (2,): (8, 0, 46, 0, 24),
        },
        (2, 2): {
            (3, 3): (1,),
            (3, 2): (0, 2),
            (4,): (-4,),
            (2, 2): (-2, 0, 1),
            (3,): (0, -10),
            (2,): (-2, 0, -6),
        },
    }
    golden_L = {
        (1,): {(2,): (1,)},
        (2,): {(3,): (1,), (2,): (0, 1)},
        (3,): {(4,): (1,), (2, 2): (-2,), (3,): (0, 3), (2,): (1, 0, 2)},
        (4,): {
            (5,): (1,),
            (3, 2): (-5,),
            (4,): (0, 6),
            (2, 2): (0, -11),
            (3,): (5, 0, 11),
            (2,): (0, 7, 0, 6),
        },
        (5,): {
            (6,): (1,),
            (4, 2): (-6,),
            (3, 3): (-3,),
            (2, 2, 2): (7,),
            (5,): (0, 10),
            (3, 2): (0, -45),
            (4,): (15, 0, 35),
            (2, 2): (-25, 0, -60),
            (3,): (0, 55, 0, 50),
            (2,): (8, 0, 46, 0, 24),
        },
        (2, 2): {
            (3, 3): (1,),
            (3, 2): (0, 2),
            (4,): (-4,),
            (2, 2): (6, 0, 1),
            (3,): (0, -10),
            (2,): (-2, 0, -6),
        },
    }
    for idx, terms in golden_K.items():
        assert compute_K(Partition(idx)) == _poly("R", terms), f"K at {idx}"
    for idx, terms in golden_L.items():
        assert compute_L(Partition(idx)) == _poly("M", terms), f"L at {idx}"
    golden_Lp22 = {
        (3, 3): (1,),
        (2, 2): (6,),
        (4,): (-4,),
        (3,): (0, -10),
        (2,): (-2,),
    }
    assert compute_Lprime(Partition([2, 2])) == _poly("Mprime", golden_Lp22)
    _report("criterion 01 (golden cumulant tables)", time.time() - start, 5)


def test_criterion_02_degree_parity_suite():
    from jackalg.lassalle import check_degree_bounds

    start = time.time()
    count = 0
    for n in range(1, 9):
        for mu in enumerate_partitions(n):
            check_degree_bounds(mu)
            count += 1
    _report(
        "criterion 02 (degree/parity bounds)",
        time.time() - start,
        120,
        f"{count} indices",
    )


def test_criterion_03_structure_constant_theorem():
    from jackalg.structure import g_coefficient, g_table, verify_struct_const_theorem

    start = time.time()
    report = verify_struct_const_theorem(8)
    assert report["entries"] > 0
    for k in range(2, 7):
        for l in range(2, 7):
            union = Partition([max(k, l), min(k, l)])
            table = dict(g_table(Partition([k]), Partition([l])))
            # top weight concentrates on the union
            assert table.get(union) == GammaPoly.one()
            for pi, coeff in table.items():
                if pi.n1() >= union.n1() and pi != union:
                    assert coeff.is_zero()
                # nothing survives one weight above the top
                assert pi.n1() != k + l + 1 or coeff.is_zero()
            if k == l:
                assert table.get(Partition([1] * k)) == GammaPoly.const(k)
    _report("criterion 03 (structure-constant theorem)", time.time() - start, 300)


def test_criterion_04_structure_constant_oracles():
    from jackalg.oracle import count_factorizations, count_matchings
    from jackalg.structure import c_constant, triple_product_c

    start = time.time()
    alphas = [mpq(1), mpq(2), mpq(1, 4), mpq(4)]
    for n in range(2, 6):
        states = enumerate_partitions(n)
        for alpha in alphas:
            for mu in states:
                for nu in states:
                    for pi in states:
                        got = c_constant(mu, nu, pi, alpha)
                        assert got.is_rational()
                        assert got.as_rational() == triple_product_c(
                            mu, nu, pi, alpha
                        )
    for n in range(2, 5):
        states = enumerate_partitions(n)
        for mu in states:
            for nu in states:
                for pi in states:
                    assert c_constant(mu, nu, pi, mpq(1)).as_rational() == (
                        count_factorizations(mu, nu, pi)
                    )
                    assert c_constant(mu, nu, pi, mpq(2)).as_rational() == (
                        count_matchings(mu, nu, pi)
                    )
    _report("criterion 04 (fixed-size constant oracles)", time.time() - start, 600)


def test_criterion_05_orthogonal_family_integrity():
    from jackalg.oracle import jack_table
    from jackalg.partitions import hook_products

    start = time.time()
    alphas = [mpq(1), mpq(2), mpq(1, 4), mpq(4)]
    for n in range(1, 8):
        states = enumerate_partitions(n)
        ones = Partition([1] * n)
        for alpha in alphas:
            table = jack_table(n, alpha)
            for lam in states:
                _, _, j = hook_products(lam, alpha)
                assert table.norm(lam) == j
                assert table.theta(ones, lam) == 1
            # closed form on the near-row diagram
            if n >= 2:
                lam = Partition([n - 1, 1])
                for mu in states:
                    expect = (
                        alpha ** (n - mu.length())
                        * math.factorial(n)
                        / mpq(mu.z())
                        * ((alpha * (n - 1) + 1) * mu.m(1) - n)
                        / (alpha * n * (n - 1))
                    )
                    assert table.theta(mu, lam) == expect
            # orthogonality of the character system
            for i, mu in enumerate(states):
                for nu in states[i:]:
                    total = mpq(0)
                    for lam in states:
                        total += (
                            table.theta(mu, lam)
                            * table.theta(nu, lam)
                            / table.norm(lam)
                        )
                    expect = (
                        mpq(1) / (mu.z() * alpha ** mu.length())
                        if mu == nu
                        else mpq(0)
                    )
                    assert total == expect
    _report("criterion 05 (orthogonal family integrity)", time.time() - start, 300)


def test_criterion_06_markov_kernels():
    from jackalg.lassalle import theta
    from jackalg.measure import fulman_L, fulman_M, pmf

    start = time.time()
    for n in range(2, 7):
        for alpha in (mpq(1), mpq(2), mpq(1, 4)):
            M = fulman_M(n, alpha)
            L = fulman_L(n, alpha)
            probs = [pmf(lam, alpha) for lam in M.states]
            size = len(M.states)
            for K in (M, L):
                for row in K.matrix:
                    assert sum(row) == 1
                for i in range(size):
                    for j in range(size):
                        assert probs[i] * K.matrix[i][j] == probs[j] * K.matrix[j][i]
            ratio = (alpha * (n - 1) + 1) / (alpha * (n - 1))
            for i in range(size):
                for j in range(size):
                    if i != j:
                        assert L.matrix[i][j] == ratio * M.matrix[i][j]
            for k in range(2, n + 1):
                mu = Partition([k] + [1] * (n - k))
                vec = [theta(mu, lam, alpha) for lam in M.states]
                ev_M = 1 - mpq(k, n)
                ev_L = 1 - mpq(k) * (alpha * (n - 1) + 1) / (alpha * n * (n - 1))
                for i in range(size):
                    assert sum(M.matrix[i][j] * vec[j] for j in range(size)) == (
                        ev_M * vec[i]
                    )
                    assert sum(L.matrix[i][j] * vec[j] for j in range(size)) == (
                        ev_L * vec[i]
                    )
    _report("criterion 06 (reversible kernels)", time.time() - start, 120)


def test_criterion_07_sampler_fidelity():
    from jackalg.measure import pmf, sample_growth, sampler_rng

    start = time.time()
    reps = 10**5
    exact = {0.5: mpq(1, 2), 1.0: mpq(1), 2.0: mpq(2)}
    states = enumerate_partitions(6)
    tvs = {}
    for alpha, alpha_q in exact.items():
        counts = {}
        for rep in range(reps):
            lam = sample_growth(6, alpha, sampler_rng(2024, rep))
            counts[lam] = counts.get(lam, 0) + 1
        tv = sum(
            abs(counts.get(lam, 0) / reps - float(pmf(lam, alpha_q)))
            for lam in states
        ) / 2
        tvs[alpha] = tv
        assert tv <= 0.02, f"TV at alpha={alpha}: {tv}"
    detail = ", ".join(f"alpha={a}: TV={tv:.4f}" for a, tv in tvs.items())
    _report("criterion 07 (sampler fidelity)", time.time() - start, 60, detail)


def test_criterion_08_limit_shape():
    from jackalg.measure import sample_growth, sampler_rng
    from jackalg.profiles import sup_distance_to_limit

    start = time.time()
    medians = []
    for n in (100, 400, 1600):
        dists = []
        for rep in range(500):
            lam = sample_growth(n, 2.0, sampler_rng(31337, rep))
            dists.append(sup_distance_to_limit(lam, 2.0))
        medians.append(float(np.median(dists)))
    assert medians[0] > medians[1] > medians[2], medians
    assert medians[2] < 0.25, medians
    detail = "medians " + ", ".join(f"{m:.3f}" for m in medians)
    _report("criterion 08 (limit shape)", time.time() - start, 300, detail)


SHARED_MC = dict(n=1000, alpha=2.0, reps=10**4, seed=7)
SHARED_STATS = ("w2", "w3", "u1", "u2", "t3")


def _shared_run():
    from jackalg.asymptotics import monte_carlo

    return monte_carlo(
        SHARED_MC["n"],
        SHARED_MC["alpha"],
        SHARED_MC["reps"],
        SHARED_MC["seed"],
        SHARED_STATS,
    )


def test_criterion_09_character_clt():
    start = time.time()
    report = _shared_run()
    for k in ("w2", "w3"):
        assert abs(report["stats"][k]["mean"]) <= 0.04, (k, report["stats"][k])
        assert abs(report["stats"][k]["var"] - 1) <= 0.06, (k, report["stats"][k])
    assert abs(report["cov"]["w2,w3"]) <= 0.05, report["cov"]
    assert report["ks"]["w2"] <= 0.05, report["ks"]
    detail = (
        f"means {report['stats']['w2']['mean']:+.3f}/"
        f"{report['stats']['w3']['mean']:+.3f}, "
        f"vars {report['stats']['w2']['var']:.3f}/"
        f"{report['stats']['w3']['var']:.3f}, "
        f"KS {report['ks']['w2']:.3f}"
    )
    _report("criterion 09 (character CLT)", time.time() - start, 600, detail)


def test_criterion_10_shape_clt():
    start = time.time()
    report = _shared_run()
    gamma = 1 / math.sqrt(2.0) - math.sqrt(2.0)
    u1, u2, t3 = (report["stats"][s] for s in ("u1", "u2", "t3"))
    assert abs(u1["mean"] - (-gamma / 2)) <= 0.04, u1
    assert abs(u2["mean"]) <= 0.04, u2
    assert abs(u1["var"] - 1 / 2) <= 0.25 / 2, u1
    assert abs(u2["var"] - 1 / 3) <= 0.25 / 3, u2
    assert abs(t3["mean"] - (-gamma)) <= 0.06, t3
    detail = (
        f"u1 mean {u1['mean']:+.3f} (target {-gamma/2:+.3f}), "
        f"t3 mean {t3['mean']:+.3f} (target {-gamma:+.3f})"
    )
    _report("criterion 10 (profile CLT)", time.time() - start, 600, detail)


def test_criterion_11_appendix_suite():
    from jackalg.structure import (
        matsumoto_content_expansion,
        vassilieva_closed_form,
        vassilieva_oracle,
        verify_linear_terms_stirling,
        verify_top_degrees,
    )

    start = time.time()
    verify_linear_terms_stirling(6)
    verify_top_degrees(6)
    for n in range(2, 7):
        for mu in enumerate_partitions(n):
            for alpha in (mpq(1), mpq(2), mpq(1, 4)):
                assert vassilieva_oracle(mu, alpha) == vassilieva_closed_form(
                    mu, alpha
                )
    for k in (1, 2, 3):
        out = matsumoto_content_expansion({(k,): mpq(1)}, 7)
        # defect-free indices carry 1/z_mu; the degree bound is asserted
        # inside the expansion routine itself
        for mu, coeff in out.items():
            if mu.size() - mu.length() == k and mu.m(1) == 0:
                assert coeff == GammaPoly.const(mpq(1, mu.z())), mu
    _report("criterion 11 (appendix identities)", time.time() - start, 600)

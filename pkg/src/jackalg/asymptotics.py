"""Limit-theorem statistics and the Monte-Carlo harness.

Float evaluation of character statistics, the rescaled Chebyshev
functionals of the diagram profile and of its transition measure, and a
deterministic replica harness with moment/covariance/KS reporting.
"""

from __future__ import annotations

import math
import time
from functools import lru_cache
from math import comb, fsum, sqrt

import numpy as np

from .lassalle import compute_L
from .measure import _growth_step_weights, sample_growth, sampler_rng
from .partitions import Partition
from .profiles import (
    interlacing_floats,
    omega_limit,
    profile_from_floats,
    sup_distance_to_limit,
)

__all__ = [
    "chebyshev_u",
    "chebyshev_t",
    "semicircle_poly_integral",
    "float_moments",
    "w_stat",
    "u_stat",
    "t_stat",
    "monte_carlo",
]


# ---------------------------------------------------------------------------
# Chebyshev functionals
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def chebyshev_u(k: int) -> tuple:
    """Coefficients (ascending powers) of the rescaled second-kind polynomial."""
    coeffs = [0] * (k + 1)
    for j in range(k // 2 + 1):
        coeffs[k - 2 * j] = (-1) ** j * comb(k - j, j)
    return tuple(coeffs)


@lru_cache(maxsize=None)
def chebyshev_t(k: int) -> tuple:
    """Coefficients (ascending powers) of the rescaled first-kind polynomial."""
    if k == 0:
        return (2,)
    coeffs = [0] * (k + 1)
    for j in range(k // 2 + 1):
        coeffs[k - 2 * j] = (-1) ** j * k * comb(k - j, j) // (k - j)
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _catalan(j: int) -> int:
    return comb(2 * j, j) // (j + 1)


def semicircle_poly_integral(coeffs) -> float:
    """Integral of a polynomial against the standard semicircle law."""
    total = 0
    for p, c in enumerate(coeffs):
        if c and p % 2 == 0:
            total += c * _catalan(p // 2)
    return float(total)


def _polyval(coeffs, x):
    out = 0.0
    for c in reversed(coeffs):
        out = out * x + c
    return out


# ---------------------------------------------------------------------------
# Character statistics
# ---------------------------------------------------------------------------


def float_moments(parts, alpha: float, kmax: int) -> list:
    """Moments M_0..M_kmax of the diagram's transition measure, in floats."""
    inner, outer = interlacing_floats(parts, alpha)
    p = [None]
    for k in range(1, kmax + 1):
        p.append(fsum(x**k for x in inner) - fsum(x**k for x in outer))
    h = [1.0]
    for k in range(1, kmax + 1):
        h.append(fsum(p[i] * h[k - i] for i in range(1, k + 1)) / k)
    return h


def _evaluate_Ch_float(mu: Partition, moments: list, gamma: float) -> float:
    body = compute_L(mu)
    terms = []
    for idx, coeff in body.terms.items():
        t = coeff.eval_float(gamma)
        for k in idx.parts:
            t *= moments[k]
        terms.append(t)
    return fsum(terms)


def w_stat(lam: Partition, alpha: float, k: int) -> float:
    """Normalized character statistic Ch_(k) / (sqrt(k) n^{k/2})."""
    if k < 2:
        raise ValueError("index must be at least 2")
    n = lam.size()
    if n < 1:
        raise ValueError("need a nonempty diagram")
    if k > n:
        return 0.0
    gamma = 1.0 / sqrt(alpha) - sqrt(alpha)
    mom = float_moments(lam.parts, alpha, k + 1)
    return _evaluate_Ch_float(Partition([k]), mom, gamma) / (sqrt(k) * n ** (k / 2))


# ---------------------------------------------------------------------------
# Profile statistics
# ---------------------------------------------------------------------------


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _integrate_segments(f, nodes):
    """Gauss-Legendre on each interval between consecutive nodes; exact for
    piecewise-polynomial integrands of moderate degree."""
    a = np.asarray(nodes[:-1])
    b = np.asarray(nodes[1:])
    mid = (a + b) / 2.0
    half = (b - a) / 2.0
    xs = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = f(xs.ravel()).reshape(xs.shape)
    return float(np.sum(half * (vals @ _GL_WEIGHTS)))


@lru_cache(maxsize=None)
def _u_against_limit(k: int) -> float:
    """Integral of the k-th second-kind polynomial against the bump of the
    limit curve above |x|, via the trigonometric substitution."""
    theta_nodes, theta_weights = np.polynomial.legendre.leggauss(60)

    def piece(lo, hi):
        mid = (lo + hi) / 2.0
        half = (hi - lo) / 2.0
        th = mid + half * theta_nodes
        x = 2.0 * np.cos(th)
        omega = (2.0 / math.pi) * (x * np.arcsin(x / 2.0) + np.sqrt(4.0 - x * x))
        bump = omega - np.abs(x)
        uk = np.zeros_like(x)
        for c in reversed(chebyshev_u(k)):
            uk = uk * x + c
        vals = uk * bump * 2.0 * np.sin(th)
        return half * float(np.dot(vals, theta_weights))

    return piece(0.0, math.pi / 2.0) + piece(math.pi / 2.0, math.pi)


def u_stat(lam: Partition, alpha: float, k: int) -> float:
    """Projection of the scaled profile fluctuation onto the k-th
    second-kind Chebyshev polynomial."""
    if k < 1:
        raise ValueError("index must be at least 1")
    n = lam.size()
    inner, outer = interlacing_floats(lam.parts, alpha)
    s = 1.0 / sqrt(n)
    prof = profile_from_floats([s * x for x in inner], [s * x for x in outer])
    px = np.asarray(prof.xs())
    py = np.asarray(prof.ys())
    coeffs = chebyshev_u(k)

    def integrand(x):
        w = np.interp(x, px, py)
        w = np.where((x <= px[0]) | (x >= px[-1]), np.abs(x), w)
        uk = np.zeros_like(x)
        for c in reversed(coeffs):
            uk = uk * x + c
        return uk * (w - np.abs(x))

    nodes = sorted(set(list(px) + [0.0]))
    against_profile = _integrate_segments(integrand, nodes)
    return sqrt(n) * (against_profile - _u_against_limit(k)) / 2.0


def t_stat(lam: Partition, alpha: float, k: int) -> float:
    """Projection of the scaled transition-measure fluctuation onto the
    k-th first-kind Chebyshev polynomial."""
    if k < 3:
        raise ValueError("index must be at least 3")
    n = lam.size()
    vals = []
    mults = []
    for v in lam.parts:
        if vals and vals[-1] == v:
            mults[-1] += 1
        else:
            vals.append(v)
            mults.append(1)
    z, w = _growth_step_weights(vals, mults, sqrt(alpha))
    x = z / sqrt(n)
    coeffs = chebyshev_t(k)
    tk = np.zeros_like(x)
    for c in reversed(coeffs):
        tk = tk * x + c
    empirical = float(np.dot(w, tk))
    return sqrt(n) * (empirical - semicircle_poly_integral(coeffs))


# ---------------------------------------------------------------------------
# Monte-Carlo harness
# ---------------------------------------------------------------------------


_STAT_FUNCS = {
    "w2": lambda lam, alpha: w_stat(lam, alpha, 2),
    "w3": lambda lam, alpha: w_stat(lam, alpha, 3),
    "w4": lambda lam, alpha: w_stat(lam, alpha, 4),
    "u1": lambda lam, alpha: u_stat(lam, alpha, 1),
    "u2": lambda lam, alpha: u_stat(lam, alpha, 2),
    "t3": lambda lam, alpha: t_stat(lam, alpha, 3),
    "t4": lambda lam, alpha: t_stat(lam, alpha, 4),
    "sup": lambda lam, alpha: sup_distance_to_limit(lam, alpha),
}


@lru_cache(maxsize=None)
def monte_carlo(n: int, alpha: float, reps: int, seed: int, stats: tuple) -> dict:
    """Replica study of the selected statistics under the growth sampler.

    Deterministic given (n, alpha, reps, seed, stats); replica r uses its
    own counter-based stream, so the result is independent of scheduling.
    """
    if reps < 100:
        raise ValueError("need at least 100 replicas")
    unknown = [s for s in stats if s not in _STAT_FUNCS]
    if unknown:
        raise ValueError(f"unknown statistics: {unknown}")
    start = time.time()
    values = {s: np.empty(reps) for s in stats}
    for rep in range(reps):
        rng = sampler_rng(seed, rep)
        lam = sample_growth(n, alpha, rng)
        for s in stats:
            values[s][rep] = _STAT_FUNCS[s](lam, alpha)
    report = {
        "n": n,
        "alpha": alpha,
        "reps": reps,
        "seed": seed,
        "stats": {},
        "cov": {},
        "ks": {},
    }
    for s in stats:
        arr = values[s]
        report["stats"][s] = {
            "mean": float(np.mean(arr)),
            "var": float(np.var(arr, ddof=1)),
            "median": float(np.median(arr)),
        }
    for i, s1 in enumerate(stats):
        for s2 in stats[i + 1 :]:
            c = float(np.cov(values[s1], values[s2], ddof=1)[0, 1])
            report["cov"][f"{s1},{s2}"] = c
    from scipy import stats as sps

    for s in stats:
        if s.startswith("w"):
            report["ks"][s] = float(sps.kstest(values[s], "norm").statistic)
    report["runtime"] = time.time() - start
    return report


def orthonormality_defect(kmax: int) -> float:
    """Self-test: worst deviation of the second-kind family from
    orthonormality under the semicircle weight, by exact moment sums."""
    worst = 0.0
    for k in range(1, kmax + 1):
        for l in range(k, kmax + 1):
            ck, cl = chebyshev_u(k), chebyshev_u(l)
            prod = [0] * (len(ck) + len(cl) - 1)
            for i, a in enumerate(ck):
                for j, b in enumerate(cl):
                    prod[i + j] += a * b
            val = semicircle_poly_integral(prod)
            target = 1.0 if k == l else 0.0
            worst = max(worst, abs(val - target))
    return worst

"""The deformed Plancherel measure and its dynamics.

Exact probability mass function, exact small-size distributions, a fast
corner-growth sampler for large sizes, and the reversible Markov kernels
built from single-box transition weights and from character sums.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial, sqrt

import numpy as np
from gmpy2 import mpq

from .algebra import QuadExt
from .oracle import jack_table
from .partitions import Partition, Box, corners, enumerate_partitions, hook_products
from .profiles import transition_measure

__all__ = [
    "pmf",
    "MarkovKernel",
    "fulman_M",
    "fulman_L",
    "expectation_Ch",
    "sample_growth",
    "growth_marginal_exact",
    "growth_matches_pmf",
    "sampler_rng",
]


def pmf(lam: Partition, alpha) -> mpq:
    """Probability of the diagram under the deformed Plancherel measure."""
    alpha = mpq(alpha)
    n = lam.size()
    _, _, j = hook_products(lam, alpha)
    return alpha**n * factorial(n) / j


# ---------------------------------------------------------------------------
# Markov kernels
# ---------------------------------------------------------------------------


class MarkovKernel:
    """Dense exact row-stochastic matrix over the partitions of one size."""

    def __init__(self, n, alpha, states, matrix):
        self.n = n
        self.alpha = mpq(alpha)
        self.states = tuple(states)
        self.index = {lam: i for i, lam in enumerate(self.states)}
        self.matrix = tuple(tuple(row) for row in matrix)

    def entry(self, lam: Partition, rho: Partition) -> mpq:
        return self.matrix[self.index[lam]][self.index[rho]]

    def row(self, lam: Partition):
        return self.matrix[self.index[lam]]


def _phi(lam: Partition, tau: Partition, alpha) -> mpq:
    """Single-box compatibility weight between nested diagrams.

    Zero unless tau sits inside lam with exactly one box less; otherwise
    a product of deformed hook ratios over the boxes strictly above the
    extra box in its column.
    """
    alpha = mpq(alpha)
    if tau.size() != lam.size() - 1 or not lam.contains(tau):
        return mpq(0)
    row = next(
        i + 1
        for i in range(lam.length())
        if (tau.parts[i] if i < tau.length() else 0) != lam.parts[i]
    )
    col = lam.parts[row - 1]
    out = mpq(1)
    for i in range(1, row):
        box = Box(i, col)
        al, ll = lam.arm(box), lam.leg(box)
        at, lt = tau.arm(box), tau.leg(box)
        out *= (alpha * al + ll + 1) * (alpha * at + lt + alpha)
        out /= (alpha * al + ll + alpha) * (alpha * at + lt + 1)
    return out


@lru_cache(maxsize=None)
def fulman_M(n: int, alpha) -> MarkovKernel:
    """Exact kernel built from the single-box weights."""
    alpha = mpq(alpha)
    if not 1 <= n <= 8:
        raise ValueError("kernel size out of supported range")
    states = enumerate_partitions(n)
    down = enumerate_partitions(n - 1)
    hooks = {lam: hook_products(lam, alpha) for lam in states}
    hooks_down = {tau: hook_products(tau, alpha) for tau in down}
    phi = {
        (lam, tau): _phi(lam, tau, alpha) for lam in states for tau in down
    }
    matrix = []
    for lam in states:
        cp_lam = hooks[lam][1]
        row = []
        for rho in states:
            c_rho = hooks[rho][0]
            total = mpq(0)
            for tau in down:
                f = phi[(lam, tau)] * phi[(rho, tau)]
                if f:
                    c_tau, cp_tau, _ = hooks_down[tau]
                    total += f * c_tau / cp_tau
            row.append(cp_lam * total / (n * alpha * c_rho))
        matrix.append(row)
    return MarkovKernel(n, alpha, states, matrix)


@lru_cache(maxsize=None)
def fulman_L(n: int, alpha) -> MarkovKernel:
    """Exact kernel built from the character sums."""
    alpha = mpq(alpha)
    if not 2 <= n <= 7:
        raise ValueError("kernel size out of supported range")
    states = enumerate_partitions(n)
    table = jack_table(n, alpha)
    hook = Partition([n - 1, 1])
    mus = enumerate_partitions(n)
    matrix = []
    for lam in states:
        row = []
        for rho in states:
            _, _, j_rho = hook_products(rho, alpha)
            total = mpq(0)
            for mu in mus:
                total += (
                    mpq(mu.z()) ** 2
                    * alpha ** (2 * mu.length())
                    * table.theta(mu, lam)
                    * table.theta(mu, rho)
                    * table.theta(mu, hook)
                )
            row.append(total / (alpha**n * factorial(n) * j_rho))
        matrix.append(row)
    return MarkovKernel(n, alpha, states, matrix)


def expectation_Ch(mu: Partition, n: int, alpha) -> QuadExt:
    """Exact expectation of the normalized character over size-n diagrams."""
    from .lassalle import evaluate_Ch

    alpha = mpq(alpha)
    if n > 9:
        raise ValueError("exact enumeration capped at size 9")
    total = QuadExt(0, 0, alpha)
    for lam in enumerate_partitions(n):
        total = total + evaluate_Ch(mu, lam, alpha) * pmf(lam, alpha)
    return total


# ---------------------------------------------------------------------------
# Growth sampler
# ---------------------------------------------------------------------------


def sampler_rng(seed: int, replica: int = 0) -> np.random.Generator:
    """Counter-based stream: independent of scheduling, reproducible per
    (seed, replica)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(replica,))
    return np.random.Generator(np.random.Philox(ss))


def _growth_step_weights(vals, mults, sa):
    """Corner contents and their probabilities for the current run-length
    encoded diagram.  Returns (contents z, weights w) as float arrays; the
    candidate corners are the top row of each run plus a fresh bottom row."""
    m = len(vals)
    inv = 1.0 / sa
    v = np.empty(m + 1)
    v[:m] = vals
    v[m] = 0.0
    rows = np.empty(m + 1)
    rows[0] = 0.0
    rows[1:] = mults
    rows = rows.cumsum()
    z = sa * v - inv * rows
    if m:
        o = sa * v[:m] - inv * rows[1:]
        num = (z[:, None] - o[None, :]).prod(axis=1)
    else:
        num = np.ones(1)
    diff = z[:, None] - z[None, :]
    diff.ravel()[:: m + 2] = 1.0
    den = diff.prod(axis=1)
    return z, num / den


def _growth_step_weights_py(vals, mults, sa):
    """Same computation as _growth_step_weights on plain lists; faster
    than numpy for the handful of corners a small diagram has."""
    m = len(vals)
    inv = 1.0 / sa
    zs = []
    outer = []
    acc = 0
    for i in range(m):
        zs.append(sa * vals[i] - inv * acc)
        acc += mults[i]
        outer.append(sa * vals[i] - inv * acc)
    zs.append(-inv * acc)
    ws = []
    for i, z in enumerate(zs):
        num = 1.0
        for o in outer:
            num *= z - o
        den = 1.0
        for j, z2 in enumerate(zs):
            if j != i:
                den *= z - z2
        ws.append(num / den)
    return zs, ws


def _apply_growth(vals, mults, i):
    """Add one box at corner index i of the run-length encoding, in place."""
    if i == len(vals):
        if vals and vals[-1] == 1:
            mults[-1] += 1
        else:
            vals.append(1)
            mults.append(1)
        return
    newv = vals[i] + 1
    if mults[i] == 1:
        del vals[i]
        del mults[i]
    else:
        mults[i] -= 1
    if i > 0 and vals[i - 1] == newv:
        mults[i - 1] += 1
    else:
        vals.insert(i, newv)
        mults.insert(i, 1)


def sample_growth(n: int, alpha: float, rng: np.random.Generator) -> Partition:
    """Grow a diagram one corner at a time with transition-measure weights."""
    if n < 1 or alpha <= 0:
        raise ValueError("need positive size and deformation")
    sa = sqrt(alpha)
    vals: list[int] = []
    mults: list[int] = []
    us = rng.random(n)
    small = n <= 64
    for step in range(n):
        if small:
            _, ws = _growth_step_weights_py(vals, mults, sa)
            total = 0.0
            for w in ws:
                total += w
            target = us[step] * total
            acc = 0.0
            i = len(ws) - 1
            for j, w in enumerate(ws):
                acc += w
                if acc >= target:
                    i = j
                    break
        else:
            _, w = _growth_step_weights(vals, mults, sa)
            cum = w.cumsum()
            i = int(cum.searchsorted(us[step] * cum[-1]))
            if i >= len(w):
                i = len(w) - 1
        _apply_growth(vals, mults, i)
    parts = []
    for v, m in zip(vals, mults):
        parts.extend([v] * m)
    return Partition(parts)


def _growth_targets(lam: Partition, alpha):
    """Exact weight of each one-box extension of lam, keyed by result."""
    tm = transition_measure(lam, alpha)
    addable, _ = corners(lam)
    # match atoms to addable boxes through their exact contents
    content = {}
    for b in addable:
        z = QuadExt.of_sqrt_alpha(mpq(alpha), b.col - 1) - QuadExt.of_inv_sqrt_alpha(
            mpq(alpha), b.row - 1
        )
        content[z] = b
    out = {}
    for z, c in tm.atoms:
        b = content[z]
        parts = list(lam.parts)
        if b.row <= len(parts):
            parts[b.row - 1] += 1
        else:
            parts.append(1)
        out[Partition(parts)] = c
    return out


@lru_cache(maxsize=None)
def growth_marginal_exact(n: int, alpha) -> dict:
    """Exact law of the growth process at size n, by dynamic programming."""
    alpha = mpq(alpha)
    if n > 8:
        raise ValueError("exact growth marginal capped at size 8")
    current = {Partition(): QuadExt(1, 0, alpha)}
    for _ in range(n):
        nxt: dict[Partition, QuadExt] = {}
        for lam, p in current.items():
            for target, c in _growth_targets(lam, alpha).items():
                add = p * c
                nxt[target] = nxt.get(target, QuadExt(0, 0, alpha)) + add
        current = nxt
    return current


@lru_cache(maxsize=None)
def growth_matches_pmf(n: int, alpha) -> bool:
    """Validation gate: the exact growth marginal against the exact pmf."""
    alpha = mpq(alpha)
    marginal = growth_marginal_exact(n, alpha)
    for lam in enumerate_partitions(n):
        got = marginal.get(lam, QuadExt(0, 0, alpha))
        if got != QuadExt(pmf(lam, alpha), 0, alpha):
            return False
    return True

"""Brute-force ground truth.

Symmetric-function arithmetic in the power-sum and monomial bases over
exact rationals, orthogonalization in the deformed Hall inner product,
and small enumerative counters over permutations and perfect matchings.
Everything here is intentionally naive; trustworthiness over speed.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .partitions import Partition, enumerate_partitions, hook_products

__all__ = [
    "p_in_m_basis",
    "m_in_p_basis",
    "JackTable",
    "jack_table",
    "theta_oracle",
    "count_factorizations",
    "count_matchings",
    "canonical_matching_pair",
    "matching_cycle_type",
]


# ---------------------------------------------------------------------------
# Basis conversion between power sums and monomials
# ---------------------------------------------------------------------------


def _multiply_by_power_sum(vec: dict, r: int) -> dict:
    """Multiply a monomial-basis vector by the degree-r power sum.

    Uses the expansion rule: adding r to one part value v of the index
    (v = 0 creates a new part) contributes the multiplicity of v + r in
    the resulting partition.
    """
    out: dict[Partition, object] = {}
    for lam, coeff in vec.items():
        values = set(lam.parts) | {0}
        for v in values:
            parts = list(lam.parts)
            if v:
                parts.remove(v)
            parts.append(v + r)
            nu = Partition(sorted(parts, reverse=True))
            mult = nu.parts.count(v + r)
            out[nu] = out.get(nu, mpq(0)) + coeff * mult
    return {k: v for k, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def p_in_m_basis(rho: Partition) -> dict:
    """Monomial-basis coordinates of the power-sum product p_rho."""
    vec = {Partition(): mpq(1)}
    for r in rho.parts:
        vec = _multiply_by_power_sum(vec, r)
    return vec


@lru_cache(maxsize=None)
def _m_to_p_matrix(n: int) -> dict:
    """For each partition of n, the power-sum coordinates of m_lambda."""
    parts_n = enumerate_partitions(n)
    # p_rho = sum_lam P[rho][lam] m_lam; invert by Gaussian elimination.
    idx = {lam: i for i, lam in enumerate(parts_n)}
    size = len(parts_n)
    mat = [[mpq(0)] * size for _ in range(size)]
    for i, rho in enumerate(parts_n):
        for lam, c in p_in_m_basis(rho).items():
            mat[i][idx[lam]] = c
    inv = [[mpq(1) if i == j else mpq(0) for j in range(size)] for i in range(size)]
    a = [row[:] for row in mat]
    for col in range(size):
        piv = next(r for r in range(col, size) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        inv[col] = [x / d for x in inv[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    # Row j of the inverse gives the power-sum coordinates of m_{parts_n[j]}.
    out = {}
    for j, lam in enumerate(parts_n):
        coords = {}
        for i, rho in enumerate(parts_n):
            if inv[j][i] != 0:
                coords[rho] = inv[j][i]
        out[lam] = coords
    return out


def m_in_p_basis(lam: Partition) -> dict:
    """Power-sum coordinates of the monomial symmetric function m_lambda."""
    return _m_to_p_matrix(lam.size())[lam]


# ---------------------------------------------------------------------------
# Orthogonalization in the deformed Hall inner product
# ---------------------------------------------------------------------------


def _inner_product_p(u: dict, v: dict, alpha) -> mpq:
    """<u, v> with <p_rho, p_rho> = z_rho alpha^{length}."""
    total = mpq(0)
    for rho, cu in u.items():
        cv = v.get(rho)
        if cv:
            total += cu * cv * rho.z() * mpq(alpha) ** rho.length()
    return total


class JackTable:
    """Orthogonal family for a fixed degree and deformation parameter.

    Normalized so that the coefficient of m_{(1^n)} is n!; the power-sum
    coordinates are then the character values theta.
    """

    def __init__(self, n, alpha, p_coords, m_coords, norms):
        self.n = n
        self.alpha = mpq(alpha)
        self.p_coords = p_coords
        self.m_coords = m_coords
        self.norms = norms

    def theta(self, mu: Partition, lam: Partition) -> mpq:
        return self.p_coords[lam].get(mu, mpq(0))

    def norm(self, lam: Partition) -> mpq:
        return self.norms[lam]


@lru_cache(maxsize=None)
def jack_table(n: int, alpha) -> JackTable:
    """Gram-Schmidt construction of the orthogonal family of degree n.

    Monomial vectors are orthogonalized in increasing lexicographic order
    of their index (a linear extension of dominance), which makes the
    result triangular with unit leading terms before normalization.
    """
    alpha = mpq(alpha)
    if not 1 <= n <= 9:
        raise ValueError("degree out of supported range")
    order = sorted(enumerate_partitions(n), key=lambda p: p.parts)
    basis_p = []  # orthogonal vectors, p-coordinates
    norms_list = []
    p_coords = {}
    m_coords = {}
    norms = {}
    m_vectors = []  # m-coordinates of the orthogonal vectors
    for lam in order:
        vec_p = dict(m_in_p_basis(lam))
        vec_m = {lam: mpq(1)}
        for prev_p, prev_m, prev_norm in zip(basis_p, m_vectors, norms_list):
            coef = _inner_product_p(vec_p, prev_p, alpha) / prev_norm
            if coef:
                for k, v in prev_p.items():
                    vec_p[k] = vec_p.get(k, mpq(0)) - coef * v
                for k, v in prev_m.items():
                    vec_m[k] = vec_m.get(k, mpq(0)) - coef * v
        vec_p = {k: v for k, v in vec_p.items() if v != 0}
        vec_m = {k: v for k, v in vec_m.items() if v != 0}
        nrm = _inner_product_p(vec_p, vec_p, alpha)
        basis_p.append(vec_p)
        m_vectors.append(vec_m)
        norms_list.append(nrm)
        scale = factorial(n) / vec_m.get(Partition([1] * n), mpq(0))
        p_coords[lam] = {k: scale * v for k, v in vec_p.items()}
        m_coords[lam] = {k: scale * v for k, v in vec_m.items()}
        norms[lam] = scale * scale * nrm
    return JackTable(n, alpha, p_coords, m_coords, norms)


def theta_oracle(mu: Partition, lam: Partition, alpha) -> mpq:
    """Character value: coefficient of p_mu in the degree-|lam| family member."""
    if mu.size() != lam.size():
        raise ValueError("index partitions must have equal size")
    return jack_table(lam.size(), mpq(alpha)).theta(mu, lam)


def jack_norm(lam: Partition, alpha) -> mpq:
    return jack_table(lam.size(), mpq(alpha)).norm(lam)


# ---------------------------------------------------------------------------
# Permutation factorizations
# ---------------------------------------------------------------------------


def _cycle_type(perm: tuple) -> Partition:
    n = len(perm)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            cycles.append(length)
    return Partition(sorted(cycles, reverse=True))


def _permutation_of_type(pi: Partition) -> tuple:
    perm = list(range(pi.size()))
    start = 0
    for k in pi.parts:
        for t in range(k):
            perm[start + t] = start + (t + 1) % k
        start += k
    return tuple(perm)


def count_factorizations(mu: Partition, nu: Partition, pi: Partition) -> int:
    """Number of pairs (s1, s2) of given cycle types with s1 s2 = s,
    for a fixed permutation s of the third type."""
    n = pi.size()
    if mu.size() != n or nu.size() != n:
        raise ValueError("all three partitions must have the same size")
    if n > 5:
        raise ValueError("enumeration limited to size 5")
    sigma = _permutation_of_type(pi)
    count = 0
    for s1 in itertools.permutations(range(n)):
        if _cycle_type(s1) != mu:
            continue
        inv1 = [0] * n
        for i, v in enumerate(s1):
            inv1[v] = i
        s2 = tuple(sigma[inv1[i]] for i in range(n))
        if _cycle_type(s2) == nu:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Perfect matchings
# ---------------------------------------------------------------------------


def matching_cycle_type(f: dict, g: dict) -> Partition:
    """Half-lengths of the cycles of the union multigraph of two matchings."""
    seen = set()
    halves = []
    for start in f:
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            y = f[x]
            seen.add(y)
            x = g[y]
            length += 1
        halves.append(length)
    return Partition(sorted(halves, reverse=True))


def canonical_matching_pair(pi: Partition) -> tuple[dict, dict]:
    """A fixed pair of matchings of 2|pi| points whose relative type is pi.

    The first matching pairs consecutive points (0,1)(2,3)...; the second
    shifts by one inside each block of 2k points.
    """
    f1 = {}
    f2 = {}
    start = 0
    for k in pi.parts:
        pts = list(range(start, start + 2 * k))
        for t in range(k):
            a, b = pts[2 * t], pts[2 * t + 1]
            f1[a] = b
            f1[b] = a
            a, b = pts[(2 * t + 1) % (2 * k)], pts[(2 * t + 2) % (2 * k)]
            f2[a] = b
            f2[b] = a
        start += 2 * k
    return f1, f2


def _all_matchings(points: list):
    if not points:
        yield {}
        return
    a = points[0]
    for i in range(1, len(points)):
        b = points[i]
        rest = points[1:i] + points[i + 1 :]
        for m in _all_matchings(rest):
            m = dict(m)
            m[a] = b
            m[b] = a
            yield m


def count_matchings(mu: Partition, nu: Partition, pi: Partition, pair=None) -> int:
    """Number of matchings whose relative types against a fixed pair of
    matchings of relative type pi are mu and nu respectively."""
    n = pi.size()
    if mu.size() != n or nu.size() != n:
        raise ValueError("all three partitions must have the same size")
    if n > 4:
        raise ValueError("enumeration limited to size 4")
    f1, f2 = pair if pair is not None else canonical_matching_pair(pi)
    count = 0
    for f3 in _all_matchings(list(range(2 * n))):
        if matching_cycle_type(f1, f3) == mu and matching_cycle_type(f2, f3) == nu:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Weighted sums over the whole degree (used by higher modules and tests)
# ---------------------------------------------------------------------------


def triple_product_constant(mu: Partition, nu: Partition, pi: Partition, alpha) -> mpq:
    """z_pi alpha^{l(pi)} sum over lam of theta_pi theta_mu theta_nu / norm."""
    n = pi.size()
    alpha = mpq(alpha)
    table = jack_table(n, alpha)
    total = mpq(0)
    for lam in enumerate_partitions(n):
        total += (
            table.theta(pi, lam) * table.theta(mu, lam) * table.theta(nu, lam)
        ) / table.norm(lam)
    return pi.z() * alpha ** pi.length() * total


def orthogonality_sum(mu: Partition, nu: Partition, alpha) -> mpq:
    """sum over rho of theta_mu(rho) theta_nu(rho) / j_rho."""
    n = mu.size()
    alpha = mpq(alpha)
    table = jack_table(n, alpha)
    total = mpq(0)
    for rho in enumerate_partitions(n):
        _, _, j = hook_products(rho, alpha)
        total += table.theta(mu, rho) * table.theta(nu, rho) / j
    return total

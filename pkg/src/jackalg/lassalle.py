"""Recursive computation of character polynomials.

Expands the normalized characters Ch_mu as polynomials in the moment
generators M_k (and, by change of generators, in the shifted moments
M'_k and the free cumulants R_k), with coefficients in Q[gamma].  The
expansion is obtained by solving a triangular linear system built from
the one-box deviation tables of the moments.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from gmpy2 import mpq

from .algebra import (
    NEG_INF,
    BasisPolynomial,
    GammaPoly,
    QuadExt,
    free_cumulants_to_moments,
    gamma_of_alpha,
    sqrt_alpha_power,
)
from .partitions import Partition, enumerate_partitions
from .profiles import moments as profile_moments

__all__ = [
    "b_table",
    "compute_L",
    "compute_K",
    "compute_Lprime",
    "evaluate_Ch",
    "theta",
    "check_degree_bounds",
]


# ---------------------------------------------------------------------------
# One-box deviation tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _b_one_part(k: int) -> dict:
    """Deviation of M_k under adding one box at a corner with content z.

    Returns {(g, pi): GammaPoly} meaning the deviation equals
    sum over entries of coeff * z^g * M_pi.  Entries whose moment index
    would include M_1 are dropped (M_1 vanishes identically).
    """
    if k < 2:
        raise ValueError("moment index must be at least 2")
    out: dict[tuple[int, Partition], GammaPoly] = {}
    for r in range(1, k // 2 + 1):
        for s in range(0, k - 2 * r + 1):
            for t in range(0, k - 2 * r - s + 1):
                if t == 1:
                    continue
                g = k - 2 * r - s - t
                coeff = comb(k - t - 1, 2 * r + s - 1) * comb(r + s - 1, s)
                if coeff == 0:
                    continue
                pi = Partition() if t == 0 else Partition([t])
                key = (g, pi)
                term = GammaPoly.gamma(s, mpq(coeff) * (-1) ** s)
                out[key] = out.get(key, GammaPoly.zero()) + term
    return {key: c for key, c in out.items() if not c.is_zero()}


@lru_cache(maxsize=None)
def b_table(rho: Partition) -> dict:
    """Deviation of the moment product M_rho under a one-box addition.

    {(g, pi): GammaPoly} with all parts of every pi at least 2; the
    multi-part case is the expansion of the product of per-part factors
    minus the undisturbed product.
    """
    if any(p < 2 for p in rho.parts):
        raise ValueError("moment index partitions need all parts >= 2")
    # factor for one part: the undisturbed generator plus its deviation
    acc: dict[tuple[int, tuple], GammaPoly] = {(0, ()): GammaPoly.one()}
    for k in rho.parts:
        factor = {(0, (k,)): GammaPoly.one()}
        for (g, pi), c in _b_one_part(k).items():
            key = (g, pi.parts)
            factor[key] = factor.get(key, GammaPoly.zero()) + c
        nxt: dict[tuple[int, tuple], GammaPoly] = {}
        for (g1, p1), c1 in acc.items():
            for (g2, p2), c2 in factor.items():
                key = (g1 + g2, tuple(sorted(p1 + p2, reverse=True)))
                prod = c1 * c2
                nxt[key] = nxt.get(key, GammaPoly.zero()) + prod
        acc = nxt
    acc.pop((0, rho.parts), None)
    return {
        (g, Partition(p)): c for (g, p), c in acc.items() if not c.is_zero()
    }


@lru_cache(maxsize=None)
def _b_projections(rho: Partition) -> tuple[dict, dict]:
    """Collapse the deviation table in the two ways the linear relations use.

    first:  tau -> sum of b entries with pi union (g) = tau, skipping g = 1
    second: tau -> sum of b entries with pi union (g+1) = tau, g >= 1
    """
    first: dict[Partition, GammaPoly] = {}
    second: dict[Partition, GammaPoly] = {}
    for (g, pi), c in b_table(rho).items():
        if g != 1:
            tau = pi if g == 0 else pi.add_part(g)
            first[tau] = first.get(tau, GammaPoly.zero()) + c
        if g >= 1:
            tau = pi.add_part(g + 1)
            second[tau] = second.get(tau, GammaPoly.zero()) + c
    first = {k: v for k, v in first.items() if not v.is_zero()}
    second = {k: v for k, v in second.items() if not v.is_zero()}
    return first, second


# ---------------------------------------------------------------------------
# Triangular solve for the M-basis expansion
# ---------------------------------------------------------------------------


def _order_key(rho: Partition):
    """Total order on index partitions: by size, then decreasing length,
    then decreasing smallest part."""
    return (rho.size(), -rho.length(), -min(rho.parts))


def _index_partitions(max_size: int) -> list[Partition]:
    """All partitions with parts >= 2 and size between 2 and max_size."""
    out = []
    for n in range(2, max_size + 1):
        out.extend(p for p in enumerate_partitions(n) if not p.parts or p.parts[-1] >= 2)
    return out


@lru_cache(maxsize=None)
def compute_L(mu: Partition) -> BasisPolynomial:
    """Expansion of Ch_mu in the moment generators M_k.

    Parts equal to 1 are peeled off through the functional identity
    Ch_{mu + extra 1} = (M_2 - |rest|) * Ch_rest; partitions without
    parts 1 go through the triangular linear solve.  Results are cached.
    """
    if not mu.parts:
        return BasisPolynomial.one("M")
    if mu.m(1) > 0:
        bar = mu.strip_ones()
        body = compute_L(bar)
        for j in range(mu.m(1)):
            factor = BasisPolynomial.generator("M", 2) - GammaPoly.const(
                bar.size() + j
            )
            body = body * factor
        return body
    unknowns = sorted(_index_partitions(mu.size() + mu.length()), key=_order_key)
    solution: dict[Partition, GammaPoly] = {}
    # right-hand sides of the second family of equations, from recursion
    rhs_parts: dict[Partition, GammaPoly] = {}
    for r in set(mu.parts):
        lower = compute_L(mu.lower_part(r))
        mult = r * mu.m(r)
        for tau, c in lower.terms.items():
            rhs_parts[tau] = rhs_parts.get(tau, GammaPoly.zero()) + mult * c
    for rho in reversed(unknowns):
        q = min(rho.parts)
        if q == 2:
            tau = rho.remove_part(2)
            pivot = mpq(rho.m(2))
            proj_index = 0
            rhs = GammaPoly.zero()  # first-family right side vanishes here
        else:
            tau = rho.lower_part(q)
            pivot = mpq((q - 1) * rho.m(q))
            proj_index = 1
            rhs = rhs_parts.get(tau, GammaPoly.zero())
        acc = rhs
        for other in unknowns:
            if other is rho or other == rho:
                continue
            coeff = _b_projections(other)[proj_index].get(tau)
            if coeff is None or coeff.is_zero():
                continue
            if other not in solution:
                raise AssertionError(
                    f"triangularity violated: {other} unsolved in equation for {rho}"
                )
            acc = acc - coeff * solution[other]
        diag = _b_projections(rho)[proj_index].get(tau, GammaPoly.zero())
        if diag != GammaPoly.const(pivot):
            raise AssertionError(f"unexpected pivot {diag} for {rho}")
        solution[rho] = acc / pivot
    body = BasisPolynomial("M", solution)
    _check_residual(mu, body, rhs_parts)
    return body


def _check_residual(mu: Partition, body: BasisPolynomial, rhs_parts: dict):
    """Verify every linear relation, including the ones the triangular
    solve never consumed.  A failure is an internal bug, never user error."""
    first_total: dict[Partition, GammaPoly] = {}
    second_total: dict[Partition, GammaPoly] = {}
    for rho, a in body.terms.items():
        first, second = _b_projections(rho)
        for tau, c in first.items():
            first_total[tau] = first_total.get(tau, GammaPoly.zero()) + a * c
        for tau, c in second.items():
            second_total[tau] = second_total.get(tau, GammaPoly.zero()) + a * c
    for tau, v in first_total.items():
        if not v.is_zero():
            raise AssertionError(f"residual in first relation at {tau}: {v} (mu={mu})")
    keys = set(second_total) | set(rhs_parts)
    for tau in keys:
        lhs = second_total.get(tau, GammaPoly.zero())
        rhs = rhs_parts.get(tau, GammaPoly.zero())
        if lhs != rhs:
            raise AssertionError(
                f"residual in second relation at {tau}: {lhs} != {rhs} (mu={mu})"
            )


# ---------------------------------------------------------------------------
# Change of generators
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _moment_in_cumulants(kmax: int) -> dict:
    """M_2..M_kmax written as polynomials in the cumulant generators."""
    r = [BasisPolynomial.one("R"), BasisPolynomial.zero("R")]
    for k in range(2, kmax + 1):
        r.append(BasisPolynomial.generator("R", k))
    m = free_cumulants_to_moments(r, kmax)
    return {k: m[k] for k in range(2, kmax + 1)}


@lru_cache(maxsize=None)
def compute_K(mu: Partition) -> BasisPolynomial:
    """Expansion of Ch_mu in the free-cumulant generators R_k."""
    body = compute_L(mu)
    kmax = max((idx.parts[0] for idx in body.terms if idx.parts), default=2)
    images = _moment_in_cumulants(max(kmax, 2))
    return body.substitute("R", images)


@lru_cache(maxsize=None)
def compute_Lprime(mu: Partition) -> BasisPolynomial:
    """Expansion of Ch_mu in the shifted moment generators.

    The shifted generators satisfy M_k = M'_k + (-gamma)^{k-2} M'_2 for
    k >= 3 and M_2 = M'_2.
    """
    body = compute_L(mu)
    kmax = max((idx.parts[0] for idx in body.terms if idx.parts), default=2)
    images = {2: BasisPolynomial.generator("Mprime", 2)}
    for k in range(3, kmax + 1):
        images[k] = BasisPolynomial.generator("Mprime", k) + BasisPolynomial(
            "Mprime", {Partition([2]): GammaPoly.gamma(k - 2, (-1) ** (k - 2))}
        )
    return body.substitute("Mprime", images)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate_Ch(mu: Partition, lam: Partition, alpha) -> QuadExt:
    """Exact value of the normalized character Ch_mu at the diagram lam."""
    alpha = mpq(alpha)
    body = compute_L(mu)
    kmax = max((idx.parts[0] for idx in body.terms if idx.parts), default=2)
    mom = profile_moments(lam, alpha, kmax)
    gen_values = {k: mom[k] for k in range(2, kmax + 1)}
    value = body.evaluate(gen_values, gamma_of_alpha(alpha))
    if not isinstance(value, QuadExt):
        value = QuadExt(value, 0, alpha)
    return value


def evaluate_Ch_float(mu: Partition, moments_float: list, gamma: float) -> float:
    """Float value of Ch_mu from precomputed float moments."""
    body = compute_L(mu)
    gen_values = {k: moments_float[k] for k in range(2, len(moments_float))}
    value = body.evaluate(gen_values, gamma)
    return float(value)


def theta(mu: Partition, lam: Partition, alpha) -> mpq:
    """Character value recovered from Ch by removing the normalization.

    Requires |mu| = |lam|; the result is always rational for rational
    alpha, which is asserted.
    """
    if mu.size() != lam.size():
        raise ValueError("index partitions must have equal size")
    alpha = mpq(alpha)
    ch = evaluate_Ch(mu, lam, alpha)
    scaled = ch * sqrt_alpha_power(alpha, mu.size() - mu.length())
    value = scaled / QuadExt(mu.z(), 0, alpha)
    return value.as_rational()


# ---------------------------------------------------------------------------
# Degree-bound verification
# ---------------------------------------------------------------------------


def check_degree_bounds(mu: Partition) -> dict:
    """Assert every coefficient degree/parity bound for one index.

    Returns a small report of attained maxima; raises on any violation.
    """
    n1 = mu.size() + mu.length()
    n2 = mu.size() - mu.length()
    n3 = n2 + mu.m(1)
    report = {"mu": mu, "max_deg": NEG_INF}
    for label, body in (("M", compute_L(mu)), ("R", compute_K(mu))):
        for rho, coeff in body.terms.items():
            d = coeff.degree()
            bound1 = n1 - rho.size()
            bound2 = n2 - (rho.size() - 2 * rho.length())
            if d > min(bound1, bound2):
                raise AssertionError(
                    f"degree bound violated at mu={mu}, basis {label}, index {rho}"
                )
            if not coeff.has_parity_of(bound1):
                raise AssertionError(
                    f"parity violated at mu={mu}, basis {label}, index {rho}"
                )
            if d != NEG_INF and d > report["max_deg"]:
                report["max_deg"] = d
    for rho, coeff in compute_Lprime(mu).terms.items():
        bound3 = n3 - (rho.size() - 2 * rho.length() + rho.m(2))
        if coeff.degree() > bound3:
            raise AssertionError(
                f"shifted-basis degree bound violated at mu={mu}, index {rho}"
            )
    # the top-weight component of the cumulant expansion is the product of
    # single-generator terms with unit coefficient
    K = compute_K(mu)
    top = K.component_deg1(n1)
    expected = BasisPolynomial(
        "R",
        {Partition(sorted((p + 1 for p in mu.parts), reverse=True)): GammaPoly.one()},
    )
    if top != expected:
        raise AssertionError(f"top-weight component wrong for mu={mu}")
    return report

"""Structure constants of the character algebra.

Expansion coefficients of products Ch_mu * Ch_nu back into the Ch basis
(valid for all diagram sizes), the fixed-size constants of the theta
basis, and verifiers for the degree/parity theorem, the Stirling-number
linear terms, the top-weight expansion, and the content-evaluation
identities.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from gmpy2 import mpq

from .algebra import (
    BasisPolynomial,
    GammaPoly,
    QuadExt,
    gamma_of_alpha,
    rational_sqrt,
    sqrt_alpha_power,
)
from .lassalle import compute_K, compute_L, evaluate_Ch
from .oracle import jack_table
from .partitions import Partition, content_alphabet, enumerate_partitions

__all__ = [
    "g_table",
    "c_constant",
    "c_symbolic",
    "verify_struct_const_theorem",
    "verify_linear_terms_stirling",
    "verify_top_degrees",
    "vassilieva_oracle",
    "vassilieva_closed_form",
    "matsumoto_content_expansion",
    "stirling_first_unsigned",
]


# ---------------------------------------------------------------------------
# The Ch-basis structure constants
# ---------------------------------------------------------------------------


def _partitions_with_weight(d: int) -> list[Partition]:
    """All partitions pi with size + length equal to d (the empty one for 0)."""
    if d == 0:
        return [Partition()]
    out = []
    for s in range((d + 1) // 2, d):
        out.extend(p for p in enumerate_partitions(s) if p.length() == d - s)
    return out


def _solve_rational_block(matrix, rhs):
    """Solve a square exact rational system with GammaPoly right side."""
    size = len(matrix)
    a = [row[:] for row in matrix]
    b = list(rhs)
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col] != 0), None)
        if piv is None:
            raise AssertionError("singular block in structure-constant solve")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        b[col] = b[col] / d
        for r in range(size):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = b[r] - b[col] * f
    return b


@lru_cache(maxsize=None)
def g_table(mu: Partition, nu: Partition) -> tuple:
    """Expansion of Ch_mu * Ch_nu in the Ch basis.

    Returned as a tuple of (pi, GammaPoly) pairs, sorted for stability.
    Computed by peeling the product in the moment basis weight by weight:
    at each weight d the coefficient matrix pairing {pi: |pi|+l(pi)=d}
    against {M_rho: |rho| = d} is square with rational entries, so the
    gamma-polynomial right side solves coefficient-wise over the
    rationals.  The final residual must vanish identically.
    """
    residual = compute_L(mu) * compute_L(nu)
    out: dict[Partition, GammaPoly] = {}
    dmax = mu.n1() + nu.n1()
    for d in range(dmax, -1, -1):
        pis = _partitions_with_weight(d)
        if not pis:
            continue
        rhos = [
            Partition(sorted((q + 1 for q in pi.parts), reverse=True)) for pi in pis
        ]
        matrix = []
        for rho in rhos:
            row = []
            for pi in pis:
                coeff = compute_L(pi).coefficient(rho)
                if coeff.degree() > 0:
                    raise AssertionError(
                        f"nonconstant pairing coefficient at {pi}, {rho}"
                    )
                row.append(coeff[0])
            matrix.append(row)
        rhs = [residual.coefficient(rho) for rho in rhos]
        sol = _solve_rational_block(matrix, rhs)
        correction = BasisPolynomial.zero("M")
        for pi, coeff in zip(pis, sol):
            if not coeff.is_zero():
                out[pi] = coeff
                correction = correction + compute_L(pi) * coeff
        residual = residual - correction
        for rho in rhos:
            if not residual.coefficient(rho).is_zero():
                raise AssertionError(f"unpeeled weight-{d} coefficient at {rho}")
    if not residual.is_zero():
        raise AssertionError("nonzero residual after structure-constant peel")
    return tuple(sorted(out.items(), key=lambda kv: (kv[0].n1(), kv[0].parts)))


def g_coefficient(mu: Partition, nu: Partition, pi: Partition) -> GammaPoly:
    for key, coeff in g_table(mu, nu):
        if key == pi:
            return coeff
    return GammaPoly.zero()


# ---------------------------------------------------------------------------
# Fixed-size constants of the theta basis
# ---------------------------------------------------------------------------


def defect(mu: Partition, nu: Partition, pi: Partition) -> int:
    """The exponent governing the sqrt(alpha) prefactor."""
    return (
        mu.size()
        - mu.length()
        + nu.size()
        - nu.length()
        - (pi.size() - pi.length())
    )


def c_symbolic(mu: Partition, nu: Partition, pi: Partition) -> tuple[int, list]:
    """Fixed-size structure constant as a polynomial in the size n.

    All three inputs share a common size n; the result only depends on n
    through binomial factors, so it is returned as (d, coefficients) with
    coefficients a list of GammaPoly in ascending powers of n and d the
    half-integer prefactor exponent (c = alpha^{d/2} * value).
    """
    if not (mu.size() == nu.size() == pi.size()):
        raise ValueError("all three partitions must have the same size")
    mt, nt, pt = mu.strip_ones(), nu.strip_ones(), pi.strip_ones()
    d = defect(mu, nu, pi)
    # polynomial in n: sum over extra parts 1 appended to the stripped target
    poly: list[GammaPoly] = []
    for i in range(pi.m(1) + 1):
        g = g_coefficient(mt, nt, pt.union(Partition([1] * i)))
        if g.is_zero():
            continue
        # z of the stripped target, times i!, times binom(n - |pt|, i)
        scale = mpq(pt.z() * factorial(i))
        # binom(n - |pt|, i) as a polynomial in n
        binom_poly = [mpq(1)]
        for j in range(i):
            shift = -mpq(pt.size() + j)
            nxt = [mpq(0)] * (len(binom_poly) + 1)
            for p_idx, cval in enumerate(binom_poly):
                nxt[p_idx] += cval * shift
                nxt[p_idx + 1] += cval
            binom_poly = nxt
        binom_poly = [x / factorial(i) for x in binom_poly]
        for p_idx, cval in enumerate(binom_poly):
            while len(poly) <= p_idx:
                poly.append(GammaPoly.zero())
            poly[p_idx] = poly[p_idx] + g * (scale * cval)
    denom = mpq(mt.z() * nt.z())
    poly = [c / denom for c in poly]
    while poly and poly[-1].is_zero():
        poly.pop()
    return d, poly


def c_constant(mu: Partition, nu: Partition, pi: Partition, alpha) -> QuadExt:
    """Exact fixed-size structure constant at a rational deformation."""
    alpha = mpq(alpha)
    d, poly = c_symbolic(mu, nu, pi)
    n = mu.size()
    total = QuadExt(0, 0, alpha)
    gamma = gamma_of_alpha(alpha)
    for p_idx, coeff in enumerate(poly):
        total = total + coeff.eval(gamma) * (mpq(n) ** p_idx)
    return total * sqrt_alpha_power(alpha, d)


def triple_product_c(mu: Partition, nu: Partition, pi: Partition, alpha) -> mpq:
    """Independent evaluation of the same constant by summing character
    triples against the orthogonality weights."""
    alpha = mpq(alpha)
    n = pi.size()
    table = jack_table(n, alpha)
    total = mpq(0)
    for lam in enumerate_partitions(n):
        total += (
            table.theta(pi, lam) * table.theta(mu, lam) * table.theta(nu, lam)
        ) / table.norm(lam)
    return pi.z() * alpha ** pi.length() * total


# ---------------------------------------------------------------------------
# Degree/parity verifier
# ---------------------------------------------------------------------------


def verify_struct_const_theorem(bound: int) -> dict:
    """Check the degree and parity constraints of every table entry for
    all index pairs with combined weight up to the bound."""
    if bound > 10:
        raise ValueError("bound capped at 10 for runtime")
    mus = []
    for n in range(1, bound + 1):
        mus.extend(p for p in enumerate_partitions(n) if p.n1() <= bound)
    checked = 0
    max_deg = 0
    for mu in mus:
        for nu in mus:
            if mu.n1() + nu.n1() > bound:
                continue
            for pi, coeff in g_table(mu, nu):
                if pi.n1() > mu.n1() + nu.n1():
                    raise AssertionError(
                        f"weight overflow: {mu}, {nu} -> {pi}"
                    )
                bounds = (
                    mu.n1() + nu.n1() - pi.n1(),
                    mu.n2() + nu.n2() - pi.n2(),
                    mu.n3() + nu.n3() - pi.n3(),
                )
                if coeff.degree() > min(bounds):
                    raise AssertionError(
                        f"degree violation at {mu}, {nu} -> {pi}: {coeff}"
                    )
                if not coeff.has_parity_of(bounds[0]):
                    raise AssertionError(
                        f"parity violation at {mu}, {nu} -> {pi}: {coeff}"
                    )
                if coeff.degree() != float("-inf"):
                    max_deg = max(max_deg, int(coeff.degree()))
                checked += 1
    return {"bound": bound, "entries": checked, "max_degree": max_deg}


# ---------------------------------------------------------------------------
# Appendix verifiers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def stirling_first_unsigned(n: int, k: int) -> int:
    """Coefficients of the rising factorial x(x+1)...(x+n-1)."""
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0 or k > n:
        return 0
    return stirling_first_unsigned(n - 1, k - 1) + (n - 1) * stirling_first_unsigned(
        n - 1, k
    )


def verify_linear_terms_stirling(kmax: int) -> dict:
    """Top coefficients of the linear part of the one-part cumulant
    expansion against unsigned Stirling numbers of the first kind."""
    if kmax > 8:
        raise ValueError("kmax capped at 8")
    checked = 0
    for k in range(1, kmax + 1):
        K = compute_K(Partition([k]))
        for i in range(k):
            coeff = K.coefficient(Partition([k + 1 - i]))
            expected = stirling_first_unsigned(k, k - i)
            if coeff[i] != expected:
                raise AssertionError(
                    f"linear-term mismatch at k={k}, i={i}: {coeff[i]} != {expected}"
                )
            if coeff.degree() > i:
                raise AssertionError(f"linear-term degree overflow at k={k}, i={i}")
            checked += 1
    return {"kmax": kmax, "entries": checked}


def _r_tilde_product(mu: Partition) -> BasisPolynomial:
    """Product over parts of (part-1) R_part, divided by multiplicities.

    Vanishes when any part equals 1.
    """
    coeff = mpq(1)
    parts = []
    for v in set(mu.parts):
        m = mu.parts.count(v)
        coeff *= mpq((v - 1) ** m, factorial(m))
        parts.extend([v] * m)
    if any(v == 1 for v in parts):
        return BasisPolynomial.zero("R")
    return BasisPolynomial(
        "R", {Partition(sorted(parts, reverse=True)): GammaPoly.const(coeff)}
    )


def verify_top_degrees(kmax: int) -> dict:
    """The three highest homogeneous components of the one-part cumulant
    expansion against their closed forms."""
    if kmax > 7:
        raise ValueError("kmax capped at 7")
    for k in range(2, kmax + 1):
        K = compute_K(Partition([k]))
        top = BasisPolynomial("R", {Partition([k + 1]): GammaPoly.one()})
        if K.component_deg1(k + 1) != top:
            raise AssertionError(f"top component wrong at k={k}")
        mid = BasisPolynomial.zero("R")
        for mu in enumerate_partitions(k):
            term = _r_tilde_product(mu)
            scale = GammaPoly.gamma(1, mpq(k, 2) * factorial(mu.length() - 1))
            mid = mid + term * scale
        if K.component_deg1(k) != mid:
            raise AssertionError(f"second component wrong at k={k}")
        low = BasisPolynomial.zero("R")
        for mu in enumerate_partitions(k - 1):
            term = _r_tilde_product(mu)
            xs = mu.parts
            h2 = sum(x * x for x in xs)
            h11 = sum(
                xs[i] * xs[j] for i in range(len(xs)) for j in range(i + 1, len(xs))
            )
            h1 = sum(xs)
            bracket = GammaPoly(
                [mpq(comb(k + 1, 3), 4), 0, mpq(k * (3 * h2 + 4 * h11 + 2 * h1), 24)]
            )
            low = low + term * (bracket * factorial(mu.length()))
        if K.component_deg1(k - 1) != low:
            raise AssertionError(f"third component wrong at k={k}")
    return {"kmax": kmax}


# ---------------------------------------------------------------------------
# Content-evaluation identities
# ---------------------------------------------------------------------------


def vassilieva_oracle(mu: Partition, alpha) -> mpq:
    """Weighted character-power sum over all partitions of |mu|."""
    alpha = mpq(alpha)
    n = mu.size()
    r = n - mu.length()
    table = jack_table(n, alpha)
    total = mpq(0)
    special = Partition([2] + [1] * (n - 2)) if n >= 2 else None
    for lam in enumerate_partitions(n):
        term = table.theta(mu, lam)
        if r:
            term *= table.theta(special, lam) ** r
        total += term / table.norm(lam)
    return total


def vassilieva_closed_form(mu: Partition, alpha) -> mpq:
    """Product formula for the same quantity."""
    alpha = mpq(alpha)
    r = mu.size() - mu.length()
    multinomial = mpq(factorial(r))
    prod = mpq(1)
    for p in mu.parts:
        multinomial /= factorial(p - 1)
        prod *= mpq(p) ** (p - 2)
    return multinomial * prod / (alpha ** mu.length() * mu.z())


def _elementary_values(alphabet, dmax: int, one):
    """Elementary symmetric values e_0..e_dmax of a finite alphabet."""
    e = [one] + [0 * one for _ in range(dmax)]
    for x in alphabet:
        for k in range(dmax, 0, -1):
            e[k] = e[k] + x * e[k - 1]
    return e


_INTERPOLATION_ALPHAS = [
    mpq(1),
    mpq(4),
    mpq(1, 4),
    mpq(9),
    mpq(1, 9),
    mpq(16),
    mpq(1, 16),
]
_CHECK_ALPHA = mpq(25)


def _gamma_value(alpha) -> mpq:
    s = rational_sqrt(alpha)
    return (1 - alpha) / s


def matsumoto_content_expansion(F: dict, N: int) -> dict:
    """Expansion of a content evaluation into the Ch basis.

    F maps sorted tuples of elementary-symmetric indices to rational
    coefficients; F(C_lam) means substituting the content alphabet of
    lam into that polynomial.  Returns {mu: GammaPoly} such that
    F(C_lam) = sum a_mu Ch_mu(lam) for all lam, with the degree bound
    asserted.  Coefficients are recovered by exact interpolation over
    deformation values whose gamma is rational, then cross-checked at an
    extra value.
    """
    if N > 8:
        raise ValueError("size bound capped at 8")
    d = max((sum(monomial) for monomial in F), default=0)
    candidates = [Partition()]
    for n in range(1, 2 * d + 1):
        candidates.extend(p for p in enumerate_partitions(n) if p.n3() <= d)
    candidates = [c for c in candidates if c.size() + c.m(1) <= 2 * d]
    if any(c.size() > N for c in candidates):
        raise ValueError("size bound too small for the requested expression")
    lams = []
    for n in range(0, N + 1):
        lams.extend(enumerate_partitions(n))
    emax = max((max(mon) for mon in F if mon), default=0)
    per_alpha = []
    for alpha in _INTERPOLATION_ALPHAS + [_CHECK_ALPHA]:
        rows = []
        rhs = []
        for lam in lams:
            alphabet = [x.as_rational() for x in content_alphabet(lam, alpha)]
            e = _elementary_values(alphabet, emax, mpq(1))
            val = mpq(0)
            for mon, coeff in F.items():
                term = mpq(coeff)
                for k in mon:
                    term *= e[k]
                val += term
            row = []
            for c in candidates:
                if c.size() > lam.size():
                    row.append(mpq(0))
                else:
                    row.append(evaluate_Ch(c, lam, alpha).as_rational())
            rows.append(row)
            rhs.append(val)
        per_alpha.append(_solve_overdetermined(rows, rhs))
    points = [_gamma_value(a) for a in _INTERPOLATION_ALPHAS]
    out = {}
    for j, c in enumerate(candidates):
        values = [sol[j] for sol in per_alpha[:-1]]
        poly = _lagrange(points, values)
        # cross-check at the held-out deformation value
        if poly.eval(_gamma_value(_CHECK_ALPHA)) != per_alpha[-1][j]:
            raise AssertionError(f"interpolation aliasing at {c}")
        bound = d - c.n3()
        if poly.degree() > bound:
            raise AssertionError(f"content-expansion degree overflow at {c}")
        if not poly.is_zero():
            out[c] = poly
    return out


def _solve_overdetermined(rows, rhs):
    """Exact least-assumption solve: eliminate, require full column rank
    and consistency of every leftover equation."""
    ncols = len(rows[0]) if rows else 0
    a = [row[:] + [val] for row, val in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        dmain = a[r][col]
        a[r] = [x / dmain for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    if len(pivots) < ncols:
        raise ValueError("underdetermined content-expansion system")
    for i in range(r, len(a)):
        if a[i][ncols] != 0:
            raise AssertionError("inconsistent content-expansion system")
    sol = [mpq(0)] * ncols
    for row_idx, col in enumerate(pivots):
        sol[col] = a[row_idx][ncols]
    return sol


def _lagrange(points, values) -> GammaPoly:
    """Exact Lagrange interpolation through distinct rational points."""
    total = GammaPoly.zero()
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        num = GammaPoly([yi])
        den = mpq(1)
        for j, xj in enumerate(points):
            if j != i:
                num = num * GammaPoly([-xj, 1])
                den *= xi - xj
        total = total + num / den
    return total

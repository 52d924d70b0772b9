"""Exact arithmetic kernels.

Rationals (gmpy2), univariate polynomials in the deformation parameter
gamma = 1/sqrt(alpha) - sqrt(alpha), the quadratic extension
Q(sqrt(alpha)) for a fixed rational alpha, multivariate polynomials in
moment/cumulant generators, and truncated formal power series.
"""

from __future__ import annotations

from typing import Iterable

import gmpy2
from gmpy2 import mpq

from .partitions import Partition

__all__ = [
    "Q",
    "rational_sqrt",
    "NEG_INF",
    "GammaPoly",
    "QuadExt",
    "gamma_of_alpha",
    "BasisPolynomial",
    "series_compositional_inverse",
    "moments_to_free_cumulants",
    "free_cumulants_to_moments",
]

Q = mpq

#: Degree of the zero polynomial.  A distinguished sentinel (never -1) so
#: that degree-bound assertions hold uniformly for zero coefficients.
NEG_INF = float("-inf")


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = mpq(q)
    if q < 0:
        return None
    if q == 0:
        return mpq(0)
    num, den = q.numerator, q.denominator
    rn, exact_n = gmpy2.isqrt_rem(num)
    rd, exact_d = gmpy2.isqrt_rem(den)
    if exact_n == 0 and exact_d == 0:
        return mpq(rn, rd)
    return None


class GammaPoly:
    """A polynomial in gamma with exact rational coefficients.

    Coefficients are stored in ascending powers with trailing zeros
    trimmed.  Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [mpq(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("GammaPoly is immutable")

    @staticmethod
    def const(x) -> "GammaPoly":
        return GammaPoly([mpq(x)])

    @staticmethod
    def gamma(power: int = 1, coeff=1) -> "GammaPoly":
        return GammaPoly([0] * power + [mpq(coeff)])

    @staticmethod
    def zero() -> "GammaPoly":
        return GammaPoly()

    @staticmethod
    def one() -> "GammaPoly":
        return GammaPoly([1])

    def degree(self):
        """Degree, with the NEG_INF sentinel for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_even(self) -> bool:
        """True iff every nonzero coefficient sits at an even power."""
        return all(c == 0 for c in self.coeffs[1::2])

    def is_odd(self) -> bool:
        """True iff every nonzero coefficient sits at an odd power."""
        return all(c == 0 for c in self.coeffs[0::2])

    def has_parity_of(self, n: int) -> bool:
        """True iff the polynomial is even/odd according to the parity of n."""
        return self.is_even() if n % 2 == 0 else self.is_odd()

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else mpq(0)

    def __add__(self, other):
        other = _coerce_gp(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return GammaPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return GammaPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce_gp(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_gp(other) + (-self)

    def __mul__(self, other):
        other = _coerce_gp(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return GammaPoly()
        out = [mpq(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return GammaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = GammaPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        return GammaPoly([c / mpq(other) for c in self.coeffs])

    def __eq__(self, other):
        other = _coerce_gp(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def eval(self, x):
        """Horner evaluation at x (any commutative ring element)."""
        if not self.coeffs:
            return 0 * x
        out = self.coeffs[-1] + 0 * x
        for c in reversed(self.coeffs[:-1]):
            out = out * x + c
        return out

    def eval_gamma(self, alpha) -> "QuadExt":
        """Exact value at gamma = (1 - alpha)/sqrt(alpha), in Q(sqrt(alpha))."""
        alpha = mpq(alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        g = gamma_of_alpha(alpha)
        out = QuadExt(mpq(0), mpq(0), alpha)
        for c in reversed(self.coeffs):
            out = out * g + QuadExt(c, mpq(0), alpha)
        return out

    def eval_float(self, gamma: float) -> float:
        out = 0.0
        for c in reversed(self.coeffs):
            out = out * gamma + float(c)
        return out

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: list[str]) -> "GammaPoly":
        return GammaPoly([mpq(s) for s in data])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*g")
            else:
                terms.append(f"{c}*g^{k}")
        return " + ".join(terms)


def _coerce_gp(x):
    if isinstance(x, GammaPoly):
        return x
    if isinstance(x, (int, type(mpq(0)))):
        return GammaPoly([x])
    return NotImplemented


def gamma_of_alpha(alpha) -> "QuadExt":
    """gamma = 1/sqrt(alpha) - sqrt(alpha) as an element of Q(sqrt(alpha))."""
    alpha = mpq(alpha)
    # 1/sqrt(alpha) = sqrt(alpha)/alpha, so gamma = (1/alpha - 1) * sqrt(alpha)
    return QuadExt(mpq(0), mpq(1, 1) / alpha - 1, alpha)


class QuadExt:
    """An element a + b*sqrt(alpha) of Q(sqrt(alpha)), alpha a fixed positive rational.

    When alpha is a perfect square of a rational the sqrt part collapses
    into the rational part, so equality is canonical.
    """

    __slots__ = ("a", "b", "alpha")

    def __init__(self, a, b, alpha):
        a = mpq(a)
        b = mpq(b)
        alpha = mpq(alpha)
        if b != 0:
            s = rational_sqrt(alpha)
            if s is not None:
                a += b * s
                b = mpq(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @staticmethod
    def of_rational(alpha, x) -> "QuadExt":
        return QuadExt(mpq(x), 0, alpha)

    @staticmethod
    def of_sqrt_alpha(alpha, coeff=1) -> "QuadExt":
        """coeff * sqrt(alpha)."""
        return QuadExt(0, coeff, alpha)

    @staticmethod
    def of_inv_sqrt_alpha(alpha, coeff=1) -> "QuadExt":
        """coeff / sqrt(alpha) = (coeff/alpha) * sqrt(alpha)."""
        return QuadExt(0, mpq(coeff) / mpq(alpha), alpha)

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_part(self):
        return self.a

    def as_rational(self):
        if self.b != 0:
            raise ValueError(f"not rational: {self}")
        return self.a

    def _binop_other(self, other):
        if isinstance(other, QuadExt):
            if other.alpha != self.alpha:
                raise ValueError("mixing different alpha contexts")
            return other
        if isinstance(other, (int, type(mpq(0)))):
            return QuadExt(other, 0, self.alpha)
        return None

    def __add__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.alpha)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.alpha)

    def __sub__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.alpha)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.alpha * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.alpha,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        norm = o.a * o.a - self.alpha * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(alpha))")
        inv = QuadExt(o.a / norm, -o.b / norm, self.alpha)
        return self * inv

    def __rtruediv__(self, other):
        return QuadExt(other, 0, self.alpha) / self

    def __pow__(self, n: int):
        if n < 0:
            return QuadExt(1, 0, self.alpha) / self ** (-n)
        out = QuadExt(1, 0, self.alpha)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._binop_other(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.alpha))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        import math

        return float(self.a) + float(self.b) * math.sqrt(float(self.alpha))

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.alpha})"


def sqrt_alpha_power(alpha, k: int) -> QuadExt:
    """sqrt(alpha)^k as an element of Q(sqrt(alpha)); k may be negative."""
    alpha = mpq(alpha)
    if k >= 0:
        whole = alpha ** (k // 2)
        if k % 2 == 0:
            return QuadExt(whole, 0, alpha)
        return QuadExt(0, whole, alpha)
    return QuadExt(1, 0, alpha) / sqrt_alpha_power(alpha, -k)


# ---------------------------------------------------------------------------
# Multivariate polynomials in generators indexed by integers >= 2
# ---------------------------------------------------------------------------


class BasisPolynomial:
    """Polynomial in generators X_2, X_3, ... with GammaPoly coefficients.

    The basis tag records which generator family is meant (moments "M",
    shifted moments "Mprime" or free cumulants "R").  Monomials are
    indexed by partitions with all parts >= 2 (the exponent multiset of
    generator indices); the empty partition indexes the constant term.
    """

    __slots__ = ("basis", "terms")

    BASES = ("M", "Mprime", "R")

    def __init__(self, basis: str, terms: dict[Partition, GammaPoly] | None = None):
        if basis not in self.BASES:
            raise ValueError(f"unknown basis {basis!r}")
        clean: dict[Partition, GammaPoly] = {}
        for idx, coeff in (terms or {}).items():
            if not isinstance(coeff, GammaPoly):
                coeff = GammaPoly.const(coeff)
            if coeff.is_zero():
                continue
            if any(v < 2 for v in idx.parts):
                raise ValueError(f"generator index below 2 in {idx}")
            clean[idx] = coeff
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BasisPolynomial is immutable")

    @staticmethod
    def zero(basis: str) -> "BasisPolynomial":
        return BasisPolynomial(basis, {})

    @staticmethod
    def one(basis: str) -> "BasisPolynomial":
        return BasisPolynomial(basis, {Partition(): GammaPoly.one()})

    @staticmethod
    def generator(basis: str, k: int, coeff=1) -> "BasisPolynomial":
        return BasisPolynomial(basis, {Partition([k]): GammaPoly.const(coeff)})

    def coefficient(self, idx: Partition) -> GammaPoly:
        return self.terms.get(idx, GammaPoly.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.basis != other.basis:
            raise ValueError(f"mixing bases {self.basis} and {other.basis}")

    def __add__(self, other):
        if isinstance(other, (int, GammaPoly, type(mpq(0)))):
            other = BasisPolynomial(self.basis, {Partition(): _coerce_gp(other)})
        self._check(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, GammaPoly.zero()) + c
        return BasisPolynomial(self.basis, out)

    __radd__ = __add__

    def __neg__(self):
        return BasisPolynomial(self.basis, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, BasisPolynomial) else -_coerce_gp(other))

    def __mul__(self, other):
        if isinstance(other, (int, GammaPoly, type(mpq(0)))):
            g = _coerce_gp(other)
            return BasisPolynomial(self.basis, {i: c * g for i, c in self.terms.items()})
        self._check(other)
        out: dict[Partition, GammaPoly] = {}
        for i1, c1 in self.terms.items():
            for i2, c2 in other.terms.items():
                idx = i1.union(i2)
                prod = c1 * c2
                out[idx] = out.get(idx, GammaPoly.zero()) + prod
        return BasisPolynomial(self.basis, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BasisPolynomial.one(self.basis)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, GammaPoly, type(mpq(0)))):
            other = BasisPolynomial(self.basis, {Partition(): _coerce_gp(other)})
        if not isinstance(other, BasisPolynomial):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def deg1(self):
        """Top weight when the generator X_k has weight k (gamma weightless)."""
        if not self.terms:
            return NEG_INF
        return max(idx.size() for idx in self.terms)

    def component_deg1(self, d: int) -> "BasisPolynomial":
        """The part supported on index partitions of total size d."""
        return BasisPolynomial(
            self.basis, {i: c for i, c in self.terms.items() if i.size() == d}
        )

    def max_index_size(self):
        return self.deg1()

    def evaluate(self, gen_values: dict[int, object], gamma_value):
        """Plug values for the generators and for gamma.

        gen_values maps generator index k to a ring value; gamma_value is
        a value in the same ring (QuadExt, float, ...).
        """
        total = None
        for idx, coeff in self.terms.items():
            term = coeff.eval(gamma_value)
            for k in idx.parts:
                term = term * gen_values[k]
            total = term if total is None else total + term
        if total is None:
            return 0 * gamma_value
        return total

    def substitute(self, basis: str, images: dict[int, "BasisPolynomial"]) -> "BasisPolynomial":
        """Rewrite through generator substitution X_k -> images[k] (target basis)."""
        total = BasisPolynomial.zero(basis)
        for idx, coeff in self.terms.items():
            term = BasisPolynomial(basis, {Partition(): coeff})
            for k in idx.parts:
                term = term * images[k]
            total = total + term
        return total

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda kv: (kv[0].size(), kv[0].parts))
        return {
            "basis": self.basis,
            "terms": [
                {"index": list(idx.parts), "coeff": coeff.to_json()}
                for idx, coeff in items
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "BasisPolynomial":
        return BasisPolynomial(
            data["basis"],
            {
                Partition(t["index"]): GammaPoly.from_json(t["coeff"])
                for t in data["terms"]
            },
        )

    def __repr__(self):
        if not self.terms:
            return f"BasisPolynomial({self.basis}, 0)"
        parts = []
        for idx, coeff in sorted(
            self.terms.items(), key=lambda kv: (kv[0].size(), kv[0].parts)
        ):
            mono = "*".join(f"{self.basis}{v}" for v in idx.parts) or "1"
            parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Truncated formal power series
# ---------------------------------------------------------------------------


def series_compositional_inverse(coeffs: list, N: int) -> list:
    """Compositional inverse of s(z) = c1 z + c2 z^2 + ... up to order N.

    coeffs lists c0..cN (c0 must be zero, c1 invertible); the result t
    satisfies s(t(z)) = z + O(z^{N+1}).
    """
    if N < 1 or len(coeffs) < 2:
        raise ValueError("need truncation order >= 1")
    if coeffs[0] != 0:
        raise ValueError("series must have zero constant term")
    c1 = coeffs[1]
    try:
        c1_inv = 1 / c1
    except ZeroDivisionError as exc:
        raise ValueError("linear coefficient not invertible") from exc
    if c1 == 0:
        raise ValueError("linear coefficient not invertible")
    c = list(coeffs) + [0] * max(0, N + 1 - len(coeffs))
    t = [0, c1_inv]
    for n in range(2, N + 1):
        # [z^n] s(t(z)) = c1*t_n + contributions of c_j, j >= 2, using t_1..t_{n-1}
        acc = 0
        # powers of the partial inverse t (with t_n treated as 0)
        partial = t + [0] * (n + 1 - len(t))
        power = [0] * (n + 1)
        power[0] = 1  # t^0
        cur = [1] + [0] * n
        for j in range(1, n + 1):
            nxt = [0] * (n + 1)
            for a in range(n + 1):
                if cur[a] == 0:
                    continue
                for b in range(1, n + 1 - a):
                    if partial[b] == 0:
                        continue
                    nxt[a + b] = nxt[a + b] + cur[a] * partial[b]
            cur = nxt
            if j >= 2 and c[j] != 0:
                acc = acc + c[j] * cur[n]
        t.append(-acc * c1_inv)
    return t


def _mhat_powers(mhat: list, N: int) -> list[list]:
    """Powers mhat^k truncated at order N, for k = 0..N."""
    powers = [[1] + [0] * N]
    for _ in range(N):
        prev = powers[-1]
        nxt = [0] * (N + 1)
        for a in range(N + 1):
            if prev[a] == 0:
                continue
            for b in range(N + 1 - a):
                if mhat[b] == 0:
                    continue
                nxt[a + b] = nxt[a + b] + prev[a] * mhat[b]
        powers.append(nxt)
    return powers


def moments_to_free_cumulants(moments: list, N: int) -> list:
    """Free cumulants R_0..R_N from moments M_0..M_N.

    Uses the defining functional equation of the moment and cumulant
    generating series (equivalent to the compositional-inverse contract):
    with Mhat(w) = sum M_n w^n and Rhat(t) = 1 + sum_{k>=1} R_k t^k,
    one has Mhat(w) = Rhat(w * Mhat(w)).  Division-free and valid over
    any commutative ring containing the rationals.
    """
    if len(moments) < N + 1:
        raise ValueError("not enough moments")
    if moments[0] != 1:
        raise ValueError("M_0 must be 1")
    m = list(moments[: N + 1])
    r = [1] + [0] * N
    for n in range(1, N + 1):
        powers = _mhat_powers(m, n)
        acc = 0
        for k in range(1, n):
            if r[k] == 0:
                continue
            acc = acc + r[k] * powers[k][n - k]
        r[n] = m[n] - acc
    return r


def free_cumulants_to_moments(cumulants: list, N: int) -> list:
    """Moments M_0..M_N from free cumulants R_0..R_N (same convention)."""
    if len(cumulants) < N + 1:
        raise ValueError("not enough cumulants")
    if cumulants[0] != 1:
        raise ValueError("R_0 must be 1")
    r = list(cumulants[: N + 1])
    m = [1] + [0] * N
    for n in range(1, N + 1):
        powers = _mhat_powers(m, n)
        acc = 0
        for k in range(1, n + 1):
            if r[k] == 0:
                continue
            acc = acc + r[k] * powers[k][n - k]
        m[n] = acc
    return m

"""Integer partitions and Young-diagram combinatorics.

Partitions are the universal index type of the library.  This module
provides the immutable :class:`Partition` type together with hook
products, box contents and corner bookkeeping for Young diagrams.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, NamedTuple

from gmpy2 import mpq

__all__ = [
    "Partition",
    "Box",
    "enumerate_partitions",
    "hook_products",
    "content_alphabet",
    "corners",
]


class Box(NamedTuple):
    """A box of a Young diagram, with 1-based row and column indices."""

    row: int
    col: int


class Partition:
    """A weakly decreasing sequence of positive integers.

    Instances are immutable and hashable; all derived quantities are
    plain functions of the stored parts.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        p = tuple(int(x) for x in parts)
        if any(x <= 0 for x in p):
            raise ValueError(f"parts must be positive: {p}")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {p}")
        object.__setattr__(self, "parts", p)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    # -- basic structure ---------------------------------------------------

    def size(self) -> int:
        return sum(self.parts)

    def length(self) -> int:
        return len(self.parts)

    def m(self, i: int) -> int:
        """Multiplicity of the part ``i``."""
        return self.parts.count(i)

    def z(self) -> int:
        """Product of i^{m_i} * m_i! over part values (order of centralizer)."""
        out = 1
        for v in set(self.parts):
            mv = self.parts.count(v)
            out *= v**mv * factorial(mv)
        return out

    def n1(self) -> int:
        """size + length."""
        return self.size() + self.length()

    def n2(self) -> int:
        """size - length."""
        return self.size() - self.length()

    def n3(self) -> int:
        """size - length + multiplicity of 1."""
        return self.size() - self.length() + self.m(1)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for v in self.parts:
            for j in range(v):
                cols[j] += 1
        return Partition(cols)

    # -- part surgery ------------------------------------------------------

    def add_part(self, r: int) -> "Partition":
        """Partition with one extra part equal to ``r``."""
        return Partition(sorted(self.parts + (r,), reverse=True))

    def remove_part(self, r: int) -> "Partition":
        """Partition with one part equal to ``r`` deleted."""
        p = list(self.parts)
        p.remove(r)
        return Partition(p)

    def lower_part(self, r: int) -> "Partition":
        """Replace one part ``r`` by ``r - 1`` (dropped if it becomes 0)."""
        p = list(self.parts)
        p.remove(r)
        if r > 1:
            p.append(r - 1)
        return Partition(sorted(p, reverse=True))

    def union(self, other: "Partition") -> "Partition":
        return Partition(sorted(self.parts + other.parts, reverse=True))

    def reduced(self) -> "Partition":
        """Each part decreased by 1, zero parts erased."""
        return Partition(sorted((v - 1 for v in self.parts if v > 1), reverse=True))

    def strip_ones(self) -> "Partition":
        """All parts equal to 1 erased."""
        return Partition(v for v in self.parts if v > 1)

    def contains(self, other: "Partition") -> bool:
        """Containment of Young diagrams."""
        if other.length() > self.length():
            return False
        return all(self.parts[i] >= other.parts[i] for i in range(other.length()))

    # -- boxes -------------------------------------------------------------

    def boxes(self) -> Iterator[Box]:
        for i, v in enumerate(self.parts, start=1):
            for j in range(1, v + 1):
                yield Box(i, j)

    def arm(self, box: Box) -> int:
        return self.parts[box.row - 1] - box.col

    def leg(self, box: Box) -> int:
        conj = self.conjugate()
        return conj.parts[box.col - 1] - box.row

    # -- dunder ------------------------------------------------------------

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.parts < other.parts

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.parts) + "]"

    @staticmethod
    def parse(text: str) -> "Partition":
        """Parse the bracketed text format, e.g. "[4,3,1]" or "[]"."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"bad partition syntax: {text!r}")
        inner = s[1:-1].strip()
        if not inner:
            return Partition()
        try:
            parts = [int(tok) for tok in inner.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad partition syntax: {text!r}") from exc
        return Partition(parts)


def _gen_partitions(n: int, cap: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _gen_partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, in reverse-lexicographic order ((n) first)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(Partition(p) for p in _gen_partitions(n, n))


def hook_products(lam: Partition, alpha) -> tuple:
    """The two deformed hook products and their product.

    Returns (c, c', j) with c = prod(alpha*a + l + 1),
    c' = prod(alpha*a + l + alpha) and j = c * c', all exact.
    """
    alpha = mpq(alpha)
    c = mpq(1)
    cp = mpq(1)
    for box in lam.boxes():
        a = lam.arm(box)
        l = lam.leg(box)
        c *= alpha * a + l + 1
        cp *= alpha * a + l + alpha
    return c, cp, c * cp


def content_alphabet(lam: Partition, alpha) -> list:
    """Multiset of anisotropic box contents sqrt(alpha)(j-1) - (i-1)/sqrt(alpha)."""
    from .algebra import QuadExt

    alpha = mpq(alpha)
    return [
        QuadExt.of_sqrt_alpha(alpha, j - 1) - QuadExt.of_inv_sqrt_alpha(alpha, i - 1)
        for (i, j) in lam.boxes()
    ]


def corners(lam: Partition) -> tuple[list[Box], list[Box]]:
    """Addable and removable boxes of the diagram.

    Addable boxes give partitions of size+1, removable boxes partitions of
    size-1; there is always exactly one more addable box than removable.
    """
    parts = lam.parts
    addable = []
    removable = []
    ell = len(parts)
    for i in range(1, ell + 2):
        cur = parts[i - 1] if i <= ell else 0
        above = parts[i - 2] if i >= 2 else None
        if above is None or cur < above:
            addable.append(Box(i, cur + 1))
    for i in range(1, ell + 1):
        cur = parts[i - 1]
        below = parts[i] if i < ell else 0
        if cur > below:
            removable.append(Box(i, cur))
    return addable, removable

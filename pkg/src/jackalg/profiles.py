"""Geometry of anisotropic Young diagrams.

Interlacing corner contents, transition measures, moments and free
cumulants of a diagram, piecewise-linear profiles, and the limit shape.
"""

from __future__ import annotations

import math

from gmpy2 import mpq

from .algebra import (
    QuadExt,
    free_cumulants_to_moments,
    moments_to_free_cumulants,
)
from .partitions import Partition, corners

__all__ = [
    "Interlacing",
    "TransitionMeasure",
    "ProfileFunction",
    "interlacing_of",
    "interlacing_floats",
    "moments",
    "moments_from_interlacing",
    "transition_measure",
    "free_cumulants",
    "profile",
    "omega_limit",
    "sup_distance_to_limit",
]


class Interlacing:
    """Sorted interlaced corner contents of a diagram.

    inner holds the contents of addable corners (local minima of the
    profile), outer those of removable corners (local maxima); they
    strictly interlace and there is one more inner than outer.
    """

    __slots__ = ("inner", "outer")

    def __init__(self, inner, outer):
        if len(inner) != len(outer) + 1:
            raise ValueError("need exactly one more inner content than outer")
        object.__setattr__(self, "inner", tuple(inner))
        object.__setattr__(self, "outer", tuple(outer))

    def __setattr__(self, name, value):
        raise AttributeError("Interlacing is immutable")

    def power_sum(self, k: int):
        """p_k of the difference alphabet inner - outer."""
        total = None
        for z in self.inner:
            v = z**k
            total = v if total is None else total + v
        for z in self.outer:
            total = total - z**k
        return total


class TransitionMeasure:
    """Finitely supported probability measure attached to a diagram."""

    __slots__ = ("atoms",)

    def __init__(self, atoms):
        object.__setattr__(self, "atoms", tuple(atoms))

    def __setattr__(self, name, value):
        raise AttributeError("TransitionMeasure is immutable")

    def moment(self, k: int):
        total = None
        for z, c in self.atoms:
            v = c * z**k
            total = v if total is None else total + v
        return total


def interlacing_of(lam: Partition, alpha) -> Interlacing:
    """Exact interlacing contents of the anisotropically stretched diagram.

    An addable box (i, j) contributes sqrt(alpha)(j-1) - (i-1)/sqrt(alpha);
    a removable box (i, j) contributes sqrt(alpha)j - i/sqrt(alpha).
    """
    alpha = mpq(alpha)
    addable, removable = corners(lam)
    inner = [
        QuadExt.of_sqrt_alpha(alpha, b.col - 1)
        - QuadExt.of_inv_sqrt_alpha(alpha, b.row - 1)
        for b in addable
    ]
    outer = [
        QuadExt.of_sqrt_alpha(alpha, b.col) - QuadExt.of_inv_sqrt_alpha(alpha, b.row)
        for b in removable
    ]
    key = lambda q: float(q)
    return Interlacing(sorted(inner, key=key), sorted(outer, key=key))


def interlacing_floats(parts, alpha: float):
    """Float interlacing contents straight from the part list.

    Fast path for samplers and statistics; returns (inner, outer) as
    ascending Python float lists.
    """
    sa = math.sqrt(alpha)
    inv = 1.0 / sa
    inner = []
    outer = []
    ell = len(parts)
    prev = None
    for i in range(1, ell + 2):
        cur = parts[i - 1] if i <= ell else 0
        if prev is None or cur < prev:
            inner.append(sa * cur - inv * (i - 1))
        if i <= ell:
            below = parts[i] if i < ell else 0
            if cur > below:
                outer.append(sa * cur - inv * i)
        prev = cur
    inner.reverse()
    outer.reverse()
    return inner, outer


def moments_from_interlacing(il: Interlacing, kmax: int, one):
    """Moments M_0..M_kmax of the measure with Cauchy transform
    prod(z - outer)/prod(z - inner), via Newton's identities.

    `one` is the multiplicative unit of the coefficient ring.
    """
    p = [None] + [il.power_sum(k) for k in range(1, kmax + 1)]
    h = [one]
    for k in range(1, kmax + 1):
        acc = None
        for i in range(1, k + 1):
            v = p[i] * h[k - i]
            acc = v if acc is None else acc + v
        h.append(acc / k)
    return h


def moments(lam: Partition, alpha, kmax: int):
    """Exact moments M_0..M_kmax of the diagram's transition measure."""
    alpha = mpq(alpha)
    il = interlacing_of(lam, alpha)
    out = moments_from_interlacing(il, kmax, QuadExt(1, 0, alpha))
    if kmax >= 1 and bool(out[1]):
        raise AssertionError(f"first moment must vanish, got {out[1]}")
    return out


def transition_measure(lam: Partition, alpha) -> TransitionMeasure:
    """Exact atoms (z_i, c_i) with c_i the residue of the Cauchy transform."""
    alpha = mpq(alpha)
    il = interlacing_of(lam, alpha)
    atoms = []
    for i, z in enumerate(il.inner):
        num = QuadExt(1, 0, alpha)
        for o in il.outer:
            num = num * (z - o)
        den = QuadExt(1, 0, alpha)
        for j, z2 in enumerate(il.inner):
            if j != i:
                den = den * (z - z2)
        atoms.append((z, num / den))
    return TransitionMeasure(atoms)


def free_cumulants(lam: Partition, alpha, kmax: int):
    """Exact free cumulants R_0..R_kmax of the diagram's transition measure."""
    m = moments(lam, alpha, kmax)
    return moments_to_free_cumulants(m, kmax)


class ProfileFunction:
    """Piecewise-linear function with slopes +-1, equal to |x| far away.

    Stored as breakpoints (x, value) with ascending x; evaluation outside
    the breakpoint range returns |x|.
    """

    __slots__ = ("points",)

    def __init__(self, points):
        object.__setattr__(self, "points", tuple(points))

    def __setattr__(self, name, value):
        raise AttributeError("ProfileFunction is immutable")

    def __call__(self, x: float) -> float:
        pts = self.points
        if not pts or x <= pts[0][0] or x >= pts[-1][0]:
            return abs(x)
        lo, hi = 0, len(pts) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pts[mid][0] <= x:
                lo = mid
            else:
                hi = mid
        x0, y0 = pts[lo]
        x1, y1 = pts[hi]
        t = (x - x0) / (x1 - x0)
        return y0 + t * (y1 - y0)

    def xs(self):
        return [p[0] for p in self.points]

    def ys(self):
        return [p[1] for p in self.points]

    def to_csv(self) -> str:
        lines = [f"{x},{y}" for x, y in self.points]
        return "\n".join(lines) + "\n" if lines else ""


def profile_from_floats(inner, outer) -> ProfileFunction:
    """Build the zig-zag profile from ascending float corner contents."""
    merged = []
    for k in range(len(inner)):
        merged.append(inner[k])
        if k < len(outer):
            merged.append(outer[k])
    if not merged:
        return ProfileFunction([])
    pts = [(merged[0], -merged[0])]
    slope = 1.0
    for k in range(1, len(merged)):
        x0, y0 = pts[-1]
        x1 = merged[k]
        pts.append((x1, y0 + slope * (x1 - x0)))
        slope = -slope
    if abs(pts[-1][1] - pts[-1][0]) > 1e-8 * max(1.0, abs(pts[-1][0])):
        raise AssertionError("profile does not rejoin |x| on the right")
    return ProfileFunction(pts)


def profile(lam: Partition, alpha, scale: float = 1.0) -> ProfileFunction:
    """Profile of the stretched diagram, horizontally and vertically scaled."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    inner, outer = interlacing_floats(lam.parts, float(alpha))
    s = float(scale)
    return profile_from_floats([s * x for x in inner], [s * x for x in outer])


def omega_limit(x: float) -> float:
    """The limiting curve: |x| outside [-2, 2], the arcsine branch inside."""
    if abs(x) >= 2.0:
        return abs(x)
    return (2.0 / math.pi) * (x * math.asin(x / 2.0) + math.sqrt(4.0 - x * x))


def sup_distance_to_limit(lam: Partition, alpha) -> float:
    """sup-norm distance between the n^{-1/2}-scaled profile and the limit curve.

    Maximized over the profile breakpoints plus a uniform grid of step
    1e-3 covering the union of supports.
    """
    n = lam.size()
    if n < 1:
        raise ValueError("need a nonempty partition")
    import numpy as np

    prof = profile(lam, alpha, scale=1.0 / math.sqrt(n))
    xs = prof.xs()
    lo = min(-3.0, xs[0]) if xs else -3.0
    hi = max(3.0, xs[-1]) if xs else 3.0
    grid = np.arange(lo, hi + 1e-3, 1e-3)
    if xs:
        grid = np.concatenate([grid, np.asarray(xs)])
    px = np.asarray(prof.xs())
    py = np.asarray(prof.ys())
    if len(px):
        vals = np.interp(grid, px, py, left=0.0, right=0.0)
        outside = (grid <= px[0]) | (grid >= px[-1])
        vals = np.where(outside, np.abs(grid), vals)
    else:
        vals = np.abs(grid)
    ax = np.abs(grid)
    om = np.where(
        ax >= 2.0,
        ax,
        (2.0 / math.pi)
        * (grid * np.arcsin(np.clip(grid, -2.0, 2.0) / 2.0) + np.sqrt(np.clip(4.0 - grid * grid, 0.0, None))),
    )
    return float(np.max(np.abs(vals - om)))

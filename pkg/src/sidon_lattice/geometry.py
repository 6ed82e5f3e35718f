"""Metric geometry of the zero-sum lattice and its image in Z^n.

The zero-sum lattice in dimension n+1 carries the half-L1 metric; dropping
coordinate 0 is an isometry onto (Z^n, d_a) where d_a is the asymmetric
max-of-positive/negative-parts distance.  The anisotropic balls
S_n(r+, r-) are enumerated exactly, and the volumes of their cubical and
convex continuous counterparts are computed in exact rationals.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import EnumerationLimitError

Vec = tuple[int, ...]

DEFAULT_MAX_ENUM = 10**7
_MAX_ENUM_ENV = "SIDON_LATTICE_MAX_ENUM"


def max_enumeration() -> int:
    value = os.environ.get(_MAX_ENUM_ENV)
    return int(value) if value else DEFAULT_MAX_ENUM


@dataclass(frozen=True)
class Shape:
    """The set S_n(r+, r-): positive coords summing to <= r+, negative to >= -r-."""

    n: int
    r_plus: int
    r_minus: int

    def __post_init__(self):
        if self.n < 0 or self.r_plus < 0 or self.r_minus < 0:
            raise ValueError("shape parameters must be nonnegative")

    @property
    def h(self) -> int:
        return self.r_plus + self.r_minus


def _check_zero_sum(x: Vec):
    if sum(x) != 0:
        raise ValueError(f"point {x} has nonzero coordinate sum")


def metric_d(x: Vec, y: Vec) -> int:
    """Half-L1 distance between zero-sum points of equal dimension."""
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    _check_zero_sum(x)
    _check_zero_sum(y)
    total = sum(abs(a - b) for a, b in zip(x, y))
    return total // 2


def metric_da(x: Vec, y: Vec) -> int:
    """max(sum of positive parts, sum of negative parts) of x - y."""
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    pos = sum(a - b for a, b in zip(x, y) if a > b)
    neg = sum(b - a for a, b in zip(x, y) if a < b)
    return max(pos, neg)


def drop0(x: Vec) -> Vec:
    """Remove coordinate 0 of a zero-sum point."""
    _check_zero_sum(x)
    return tuple(x[1:])


def lift0(x: Vec) -> Vec:
    """Prepend the balancing coordinate x_0 = -sum(x)."""
    return (-sum(x),) + tuple(x)


def unit_direction(n: int, i: int, j: int) -> Vec:
    """The zero-sum vector with +1 at coordinate i and -1 at coordinate j."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError("direction indices out of range")
    f = [0] * (n + 1)
    f[i] += 1
    f[j] -= 1
    return tuple(f)


def shape_size(s: Shape) -> int:
    """Exact cardinality of S_n(r+, r-) via the closed-form binomial sum."""
    total = 0
    for m in range(min(s.n, s.r_plus) + 1):
        total += (
            math.comb(s.n, m)
            * math.comb(s.r_plus, m)
            * math.comb(s.r_minus + s.n - m, s.n - m)
        )
    return total


def shape_points(s: Shape, limit: int | None = None) -> list[Vec]:
    """All points of S_n(r+, r-) in lexicographic order (origin included)."""
    bound = limit if limit is not None else max_enumeration()
    size = shape_size(s)
    if size > bound:
        raise EnumerationLimitError(
            f"shape has {size} points, above the enumeration bound {bound}"
        )
    out: list[Vec] = []
    prefix = [0] * s.n

    def rec(pos: int, pos_left: int, neg_left: int):
        if pos == s.n:
            out.append(tuple(prefix))
            return
        for val in range(-neg_left, pos_left + 1):
            prefix[pos] = val
            if val > 0:
                rec(pos + 1, pos_left - val, neg_left)
            elif val < 0:
                rec(pos + 1, pos_left, neg_left + val)
            else:
                rec(pos + 1, pos_left, neg_left)
        prefix[pos] = 0

    rec(0, s.r_plus, s.r_minus)
    return out


def vol_convex(n: int, r: int) -> Fraction:
    """Volume of the convex hull of the radius-r ball: r^n / n! * C(2n, n)."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    return Fraction(r**n * math.comb(2 * n, n), math.factorial(n))


def vol_cubical(n: int, r: int) -> int:
    """Volume of the union of unit cubes at the ball points: the ball size."""
    return shape_size(Shape(n, r, r))


def efficiency_ratio(n: int, r: int) -> Fraction:
    """vol_convex / vol_cubical, exact; tends to 1 as r grows."""
    return vol_convex(n, r) / vol_cubical(n, r)

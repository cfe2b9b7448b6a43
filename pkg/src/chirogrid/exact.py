"""Exact scalar kernels: signs, integer determinants, and Gamma at half-integers.

Coordinates are :class:`fractions.Fraction` (or plain ``int``) throughout the
package.  Determinants are evaluated on integer matrices obtained by clearing
denominators row by row, which only ever multiplies the determinant by a
positive factor, so the sign is unchanged.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Rational = Fraction


class Sign(enum.IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1

    def __neg__(self) -> "Sign":
        return _SIGNS[1 - self.value]

    def __mul__(self, other):
        if isinstance(other, Sign):
            return _SIGNS[self.value * other.value + 1]
        return int(self) * other

    __rmul__ = __mul__

    @property
    def symbol(self) -> str:
        return "-0+"[self.value + 1]

    @classmethod
    def of(cls, x) -> "Sign":
        return _SIGNS[(x > 0) - (x < 0) + 1]

    @classmethod
    def from_symbol(cls, s: str) -> "Sign":
        try:
            return _SIGNS["-0+".index(s)]
        except ValueError:
            raise ValueError(f"bad sign symbol {s!r}") from None


_SIGNS = (Sign.NEG, Sign.ZERO, Sign.POS)


def integer_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    a = [list(row) for row in m]
    k = len(a)
    if k == 0:
        return 1
    if any(len(row) != k for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for c in range(k - 1):
        if a[c][c] == 0:
            for r in range(c + 1, k):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[c][c]
        rc = a[c]
        for r in range(c + 1, k):
            rr = a[r]
            f = rr[c]
            for j in range(c + 1, k):
                # exact division is guaranteed by Sylvester's identity
                rr[j] = (piv * rr[j] - f * rc[j]) // prev
            rr[c] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def clear_row_denominators(m):
    """Scale every row of a rational matrix by the lcm of its denominators."""
    out = []
    for row in m:
        row = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def det_sign(m) -> Sign:
    """Exact sign of the determinant of a square rational matrix."""
    if not len(m):
        raise ValueError("empty matrix")
    return Sign.of(integer_det(clear_row_denominators(m)))


def common_denominator(points) -> tuple[list[tuple[int, ...]], int]:
    """Return ``(ints, D)`` with ``points[j] == ints[j] / D`` coordinate-wise."""
    dens = [Fraction(x).denominator for p in points for x in p]
    D = math.lcm(*dens) if dens else 1
    ints = []
    for p in points:
        row = []
        for x in p:
            x = Fraction(x)
            row.append(x.numerator * (D // x.denominator))
        ints.append(tuple(row))
    return ints, D


def integer_orientation(pts: Sequence[Sequence[int]]) -> int:
    """Signed homogeneous determinant of d+1 integer points (its value, not sign)."""
    d = len(pts) - 1
    if d == 2:
        (ax, ay), (bx, by), (cx, cy) = pts
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if d == 1:
        return pts[0][0] - pts[1][0]
    p0 = pts[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in pts[1:]]
    v = integer_det(diffs)
    # rows (p_j - p_0) expand along the homogeneous column with sign (-1)^d
    return -v if d % 2 else v


def orientation(points) -> Sign:
    """Orientation of d+1 points in Q^d: sign of det with rows (p_i, 1)."""
    points = list(points)
    d = len(points) - 1
    if d < 1:
        raise ValueError("need at least two points")
    if any(len(p) != d for p in points):
        raise ValueError(f"expected {d + 1} points of dimension {d}")
    ints, _ = common_denominator(points)
    return Sign.of(integer_orientation(ints))


def binomial(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"binomial({n}, {k}) out of range")
    return math.comb(n, k)


@dataclass(frozen=True)
class ScaledPi:
    """The exact value ``q * pi**(k/2)``."""

    q: Fraction
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q == 0:
            object.__setattr__(self, "k", 0)

    def __mul__(self, other):
        if not isinstance(other, ScaledPi):
            other = ScaledPi(Fraction(other))
        return ScaledPi(self.q * other.q, self.k + other.k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ScaledPi):
            other = ScaledPi(Fraction(other))
        if other.q == 0:
            raise ZeroDivisionError("ScaledPi division by zero")
        return ScaledPi(self.q / other.q, self.k - other.k)

    def __float__(self) -> float:
        return float(self.q) * math.pi ** (self.k / 2)


SQRT_PI = ScaledPi(Fraction(1), 1)


def half_gamma(x) -> ScaledPi:
    """Gamma at a positive half-integer, e.g. ``half_gamma(Fraction(5, 2)) == (3/4) sqrt(pi)``."""
    x = Fraction(x)
    twice = 2 * x
    if twice.denominator != 1 or twice < 1:
        raise ValueError(f"half_gamma needs a positive half-integer, got {x}")
    if x.denominator == 1:
        return ScaledPi(Fraction(math.factorial(int(x) - 1)), 0)
    m = int(x - Fraction(1, 2))
    # Gamma(m + 1/2) = (2m)! / (4^m m!) * sqrt(pi)
    return ScaledPi(Fraction(math.factorial(2 * m), 4**m * math.factorial(m)), 1)


def ball_volume_ratio(d: int) -> ScaledPi:
    """vol(B_{d-1}) / vol(B_d) for the unit balls."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return half_gamma(Fraction(d, 2) + 1) / (SQRT_PI * half_gamma(Fraction(d - 1, 2) + 1))

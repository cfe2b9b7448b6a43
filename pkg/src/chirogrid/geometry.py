"""Facet hyperplanes, exact distance comparisons and the two simplex lemmas.

Points are sequences of rationals.  A simplex tuple is a sequence of d+1 points.
Facet indices are 1-based to match the usual ``p_1, ..., p_{d+1}`` labelling.

Distances to a common hyperplane compare through ``|a.x + b|`` because the
normalization by ``|a|`` cancels; absolute distance thresholds are tested in
squared form.  No square root appears in any decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .exact import common_denominator, integer_det, integer_orientation
from .feasibility import strict_feasible


class DegenerateError(ValueError):
    """Raised when a simplex or facet is affinely dependent."""


@dataclass(frozen=True)
class Hyperplane:
    """The oriented locus ``a.x + b = 0``; the positive side is ``a.x + b > 0``."""

    a: tuple
    b: object = 0

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if not any(self.a):
            raise DegenerateError("hyperplane normal is zero")

    @property
    def dim(self) -> int:
        return len(self.a)

    def __call__(self, x):
        return offset(self, x)

    def _key(self):
        # canonical positive rescaling: first nonzero coefficient has magnitude 1
        lead = next(abs(Fraction(v)) for v in self.a if v)
        return tuple(Fraction(v) / lead for v in self.a), Fraction(self.b) / lead

    def __eq__(self, other):
        if not isinstance(other, Hyperplane):
            return NotImplemented
        return self.dim == other.dim and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


def offset(h: Hyperplane, x):
    if len(x) != len(h.a):
        raise ValueError("dimension mismatch")
    return sum(ai * xi for ai, xi in zip(h.a, x)) + h.b


def abs_offset_greater(h: Hyperplane, x, y) -> bool:
    return abs(offset(h, x)) > abs(offset(h, y))


def dist_at_least(h: Hyperplane, x, t2) -> bool:
    """Is the Euclidean distance from ``x`` to ``h`` at least ``sqrt(t2)``?"""
    if t2 < 0:
        raise ValueError("t2 must be nonnegative")
    v = offset(h, x)
    return v * v >= t2 * sum(ai * ai for ai in h.a)


def _cofactor_row(rows, x_row_index, d):
    """Coefficients of ``x -> det`` of ``rows`` with row ``x_row_index`` set to (x, 1)."""
    minors_rows = [r for j, r in enumerate(rows) if j != x_row_index]
    coeffs = []
    for col in range(d + 1):
        minor = [[v for c, v in enumerate(r) if c != col] for r in minors_rows]
        s = -1 if (x_row_index + col) % 2 else 1
        coeffs.append(s * integer_det(minor))
    return coeffs


def hyperplane_through(points) -> Hyperplane:
    """Hyperplane through d points of Q^d (orientation unspecified)."""
    points = list(points)
    d = len(points)
    if d < 1 or any(len(p) != d for p in points):
        raise ValueError(f"need {d} points of dimension {d}")
    ints, D = common_denominator(points)
    rows = [list(p) + [D] for p in ints] + [[0] * (d + 1)]
    coeffs = _cofactor_row(rows, d, d)
    return Hyperplane(coeffs[:d], coeffs[d])


def facet_hyperplane(t, i: int) -> Hyperplane:
    """Hyperplane through every vertex except ``p_i``, positive on ``p_i``."""
    t = list(t)
    d = len(t) - 1
    if not 1 <= i <= d + 1:
        raise IndexError(f"facet index {i} out of range 1..{d + 1}")
    if any(len(p) != d for p in t):
        raise ValueError("simplex tuple must have d+1 points of dimension d")
    ints, D = common_denominator(t)
    # rows (P_j, D) are a positive multiple of (p_j, 1), so orientation is kept
    rows = [list(p) + [D] for p in ints]
    coeffs = _cofactor_row(rows, i - 1, d)
    if not any(coeffs[:d]):
        raise DegenerateError(f"facet opposite p_{i} is degenerate")
    h = Hyperplane(coeffs[:d], coeffs[d])
    v = offset(h, t[i - 1])
    if v == 0:
        raise DegenerateError("simplex is degenerate")
    if v < 0:
        h = Hyperplane([-c for c in h.a], -h.b)
    return h


def is_degenerate(t) -> bool:
    ints, _ = common_denominator(list(t))
    return integer_orientation(ints) == 0


def _solve(A, rhs):
    """Exact Gauss-Jordan solve of ``A X = rhs`` (rhs is a list of columns)."""
    n = len(A)
    m = [[Fraction(v) for v in row] + [Fraction(c[r]) for c in rhs] for r, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise DegenerateError("singular system")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [v / piv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [[m[r][n + k] for r in range(n)] for k in range(len(rhs))]


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear @ x + shift`` with exact rational entries."""

    linear: tuple
    shift: tuple

    def __call__(self, x):
        return tuple(sum(a * b for a, b in zip(row, x)) + s for row, s in zip(self.linear, self.shift))


class Normalized(NamedTuple):
    map: AffineMap
    images: tuple
    base: tuple  # p_0
    frame: tuple  # columns p_i - p_0, the inverse linear part


def affine_normalize(t) -> Normalized:
    """Affine map sending ``t[0]`` to the origin and ``t[i]`` to ``e_i``."""
    t = [tuple(Fraction(v) for v in p) for p in t]
    d = len(t) - 1
    if d < 1 or any(len(p) != d for p in t):
        raise ValueError("simplex tuple must have d+1 points of dimension d")
    p0 = t[0]
    frame = [tuple(a - b for a, b in zip(p, p0)) for p in t[1:]]
    A = [[frame[c][r] for c in range(d)] for r in range(d)]
    identity = [[Fraction(int(r == c)) for r in range(d)] for c in range(d)]
    inv_cols = _solve(A, identity)
    linear = tuple(tuple(inv_cols[c][r] for c in range(d)) for r in range(d))
    shift = tuple(-sum(a * b for a, b in zip(row, p0)) for row in linear)
    T = AffineMap(linear, shift)
    return Normalized(T, tuple(T(p) for p in t), p0, tuple(frame))


def pull_back(h: Hyperplane, norm: Normalized) -> Hyperplane:
    """Express ``h`` in the normalized coordinates ``y`` where ``x = p_0 + sum y_i (p_i - p_0)``."""
    a = [sum(Fraction(ai) * fi for ai, fi in zip(h.a, col)) for col in norm.frame]
    b = offset(h, norm.base)
    return Hyperplane(a, b)


class CellLabel(NamedTuple):
    kind: str  # "R", "S", "OTHER" or "BOUNDARY"
    index: int = 0

    def __str__(self):
        return f"{self.kind}{self.index}" if self.kind in ("R", "S") else self.kind


BOUNDARY = CellLabel("BOUNDARY")
OTHER = CellLabel("OTHER")


def cell_sign_vector(label: CellLabel, d: int) -> tuple[int, ...]:
    """Signs of (x_1, ..., x_d, sum x_j - 1) on an R- or S-cell."""
    i = label.index
    if not 1 <= i <= d + 1 or label.kind not in ("R", "S"):
        raise ValueError(f"bad cell label {label}")
    if label.kind == "R":
        if i == d + 1:
            return (-1,) * d + (-1,)
        return tuple(1 if j == i else -1 for j in range(1, d + 1)) + (1,)
    if i == d + 1:
        return (1,) * d + (1,)
    return tuple(-1 if j == i else 1 for j in range(1, d + 1)) + (-1,)


def rs_cells(d: int) -> list[CellLabel]:
    return [CellLabel(k, i) for k in ("R", "S") for i in range(1, d + 2)]


def classify_cell(x) -> CellLabel:
    """Label of a point given in normalized coordinates."""
    d = len(x)
    if d < 1:
        raise ValueError("dimension must be >= 1")
    vals = list(x) + [sum(x) - 1]
    if any(v == 0 for v in vals):
        return BOUNDARY
    sv = tuple(1 if v > 0 else -1 for v in vals)
    for label in rs_cells(d):
        if cell_sign_vector(label, d) == sv:
            return label
    return OTHER


def cell_inequalities(label: CellLabel, d: int):
    """Strict inequalities ``c.x + c0 > 0`` describing an open R- or S-cell."""
    sv = cell_sign_vector(label, d)
    ineqs = []
    for j in range(d):
        c = [0] * d
        c[j] = sv[j]
        ineqs.append((c, 0))
    ineqs.append(([sv[d]] * d, -sv[d]))
    return ineqs


def lemma1_transversal_report(t, h: Hyperplane) -> frozenset:
    """The R- and S-cells of the facet arrangement of ``t`` met by ``h``."""
    norm = affine_normalize(t)
    hn = pull_back(h, norm)
    d = len(hn.a)
    eq = (list(hn.a), hn.b)
    return frozenset(
        label for label in rs_cells(d) if strict_feasible(cell_inequalities(label, d), eq, d)
    )


def meets_full_family(report, d: int) -> bool:
    r = sum(1 for c in report if c.kind == "R")
    s = sum(1 for c in report if c.kind == "S")
    return r == d + 1 or s == d + 1


def lemma2_certificate(P: Sequence, Q: Sequence) -> bool:
    """Sufficient condition for ``P`` and ``Q`` to share their orientation.

    For each facet hyperplane f_i of P (oriented toward p_i): q_i lies strictly on
    the positive side, and both p_i and q_i are strictly farther from f_i than
    every q_j with j != i.
    """
    P, Q = list(P), list(Q)
    d = len(P) - 1
    if len(Q) != d + 1 or any(len(p) != d for p in P + Q):
        raise ValueError("P and Q must be (d+1)-tuples of points in Q^d")
    # one common positive scale turns every comparison into integer arithmetic
    ints, _ = common_denominator(P + Q)
    Pi, Qi = ints[: d + 1], ints[d + 1 :]
    for i in range(1, d + 2):
        f = facet_hyperplane(Pi, i)
        op = offset(f, Pi[i - 1])
        oq = offset(f, Qi[i - 1])
        if oq <= 0:
            return False
        for j in range(d + 1):
            if j == i - 1:
                continue
            r = abs(offset(f, Qi[j]))
            if not (oq > r and op > r):
                return False
    return True


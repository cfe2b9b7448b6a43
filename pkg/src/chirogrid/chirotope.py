"""Chirotopes stored on increasing index subsets, with the alternating extension.

Indices are 1-based in the public API and in the text format.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .exact import Sign, binomial, integer_orientation
from .sampling import PointConfig


def enumerate_subsets(n: int, d: int) -> list[tuple[int, ...]]:
    if n < d + 1:
        raise ValueError(f"need n >= d+1, got n={n}, d={d}")
    return list(combinations(range(1, n + 1), d + 1))


def subset_rank(subset, n: int) -> int:
    """Position of an increasing 1-based subset in lexicographic order."""
    k = len(subset)
    rank, prev = 0, 0
    for pos, v in enumerate(subset):
        for skipped in range(prev + 1, v):
            rank += binomial(n - skipped, k - pos - 1)
        prev = v
    return rank


@dataclass(frozen=True)
class Chirotope:
    d: int
    n: int
    signs: tuple

    def __post_init__(self):
        if len(self.signs) != binomial(self.n, self.d + 1):
            raise ValueError("sign vector length must be C(n, d+1)")
        object.__setattr__(self, "signs", tuple(Sign(s) for s in self.signs))

    @property
    def general_position(self) -> bool:
        return Sign.ZERO not in self.signs

    def items(self):
        return zip(enumerate_subsets(self.n, self.d), self.signs)

    def __getitem__(self, subset) -> Sign:
        return orientation_of_ordered(self, subset)


def compute_chirotope(S: PointConfig) -> Chirotope:
    d, n = S.d, S.n
    if n < d + 1:
        raise ValueError(f"need n >= d+1, got n={n}, d={d}")
    ints, _ = S.integer_coords()
    of = Sign.of
    signs = tuple(of(integer_orientation(t)) for t in combinations(ints, d + 1))
    return Chirotope(d, n, signs)


def _parity(t) -> int:
    t = list(t)
    sign = 1
    for i in range(len(t)):
        while t[i] != i:
            j = t[i]
            t[i], t[j] = t[j], t[i]
            sign = -sign
    return sign


def orientation_of_ordered(c: Chirotope, t) -> Sign:
    t = tuple(t)
    if len(t) != c.d + 1:
        raise ValueError(f"expected {c.d + 1} indices")
    if len(set(t)) != len(t):
        raise ValueError("repeated index")
    if any(not 1 <= v <= c.n for v in t):
        raise IndexError("index out of range")
    order = sorted(range(len(t)), key=t.__getitem__)
    stored = c.signs[subset_rank(sorted(t), c.n)]
    return stored if _parity(order) > 0 else -stored


class Difference(NamedTuple):
    subset: tuple
    sign_a: Sign
    sign_b: Sign

    @property
    def kind(self) -> str:
        return "DEGENERATE" if Sign.ZERO in (self.sign_a, self.sign_b) else "FLIP"


def chirotope_diff(a: Chirotope, b: Chirotope) -> list[Difference]:
    if (a.d, a.n) != (b.d, b.n):
        raise ValueError("chirotopes differ in shape")
    return [
        Difference(s, x, y)
        for s, x, y in zip(enumerate_subsets(a.n, a.d), a.signs, b.signs)
        if x != y
    ]


def format_chirotope(c: Chirotope) -> str:
    lines = [f"chirotope {c.d} {c.n}"]
    lines += [" ".join(map(str, s)) + " " + sign.symbol for s, sign in c.items()]
    return "\n".join(lines) + "\n"


def parse_chirotope(text: str) -> Chirotope:
    rows = [ln.split("#", 1)[0].split() for ln in io.StringIO(text)]
    rows = [r for r in rows if r]
    if not rows or len(rows[0]) != 3 or rows[0][0] != "chirotope":
        raise ValueError("expected 'chirotope d n' header")
    d, n = int(rows[0][1]), int(rows[0][2])
    expected = enumerate_subsets(n, d)
    if len(rows) - 1 != len(expected):
        raise ValueError(f"expected {len(expected)} subset lines, got {len(rows) - 1}")
    signs = []
    for k, (row, subset) in enumerate(zip(rows[1:], expected), 2):
        if len(row) != d + 2 or tuple(int(v) for v in row[:-1]) != subset:
            raise ValueError(f"entry {k}: expected subset {subset}")
        signs.append(Sign.from_symbol(row[-1]))
    return Chirotope(d, n, tuple(signs))

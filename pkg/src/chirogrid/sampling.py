"""Seeded uniform sampling of exact dyadic point sets, and the point-set text format.

Seeding contract
----------------
``mix64`` is the SplitMix64 finalizer applied to ``x + 0x9E3779B97F4A7C15``
(all arithmetic mod 2**64).  Trial ``i`` of a run with seed ``s`` uses the
derived seed ``derive_seed(s, i) = mix64(s ^ mix64(i))`` and draws from
``random.Random(derived)``; CPython's Mersenne Twister seeded from an int and
``getrandbits`` are stable across platforms and versions, so every stream is
reproducible bit for bit.  Distinct trials never share state and can run on
separate workers.

A coordinate at precision ``B`` is ``(2u + 1 - 2**B) / 2**B`` with ``u`` uniform
on ``[0, 2**B)``: the midpoints of ``2**B`` equal cells tiling ``[-1, 1]``.
"""

from __future__ import annotations

import enum
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exact import common_denominator

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MAX_REJECTIONS = 10_000
DEFAULT_PRECISION = 96


def mix64(x: int) -> int:
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    return mix64((seed & MASK64) ^ mix64(index & MASK64))


class Domain(str, enum.Enum):
    BALL = "ball"
    CUBE = "cube"


class SamplerFault(RuntimeError):
    """Too many consecutive rejections; indicates a broken random stream."""


@dataclass(frozen=True)
class SamplerConfig:
    domain: Domain
    d: int
    n: int
    precision_bits: int = DEFAULT_PRECISION
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "domain", Domain(self.domain))
        if self.precision_bits < 1:
            raise ValueError("precision_bits must be >= 1")
        if self.d < 1 or self.n < self.d + 1:
            raise ValueError("need d >= 1 and n >= d+1")
        if self.domain is Domain.BALL and self.d > 4:
            raise ValueError("ball sampling is supported for d <= 4 only")


@dataclass(frozen=True)
class PointConfig:
    d: int
    points: tuple
    provenance: object = "FILE"
    _ints: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        for p in pts:
            if len(p) != self.d:
                raise ValueError(f"point {p} is not of dimension {self.d}")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def integer_coords(self) -> tuple[list, int]:
        """Coordinates scaled to integers by one common positive denominator."""
        if self._ints is None:
            object.__setattr__(self, "_ints", common_denominator(self.points))
        return self._ints

    def duplicates(self) -> list[tuple[int, int]]:
        """Index pairs ``(i, j)``, ``i < j``, of coinciding points."""
        first, dups = {}, []
        for j, p in enumerate(self.points):
            if p in first:
                dups.append((first[p], j))
            else:
                first[p] = j
        return dups


def _draw_point(rng: random.Random, d: int, bits: int, ball: bool) -> tuple[int, ...]:
    top = 1 << bits
    bound = top * top
    for _ in range(MAX_REJECTIONS):
        p = tuple(2 * rng.getrandbits(bits) + 1 - top for _ in range(d))
        if not ball or sum(v * v for v in p) <= bound:
            return p
    raise SamplerFault(f"{MAX_REJECTIONS} rejections in a row")


def draw_points(rng: random.Random, d: int, k: int, bits: int = DEFAULT_PRECISION,
                domain: Domain = Domain.BALL) -> list[tuple[int, ...]]:
    """``k`` points as integer numerators over the common denominator ``2**bits``."""
    ball = Domain(domain) is Domain.BALL
    if ball and d > 4:
        raise ValueError("ball sampling is supported for d <= 4 only")
    return [_draw_point(rng, d, bits, ball) for _ in range(k)]


def sample_config(cfg: SamplerConfig) -> PointConfig:
    rng = random.Random(cfg.seed & MASK64)
    nums = draw_points(rng, cfg.d, cfg.n, cfg.precision_bits, cfg.domain)
    den = 1 << cfg.precision_bits
    return PointConfig(cfg.d, tuple(tuple(Fraction(v, den) for v in p) for p in nums), cfg)


# text format ---------------------------------------------------------------

class FormatError(ValueError):
    pass


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_config(text: str) -> PointConfig:
    header = None
    points = []
    for lineno, raw in enumerate(io.StringIO(text), 1):
        line = _strip(raw)
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "pointset":
                raise FormatError(f"line {lineno}: expected 'pointset d n' header")
            try:
                header = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(f"line {lineno}: bad header numbers") from None
            continue
        cols = line.split()
        if len(cols) != header[0]:
            raise FormatError(f"line {lineno}: expected {header[0]} coordinates, got {len(cols)}")
        try:
            points.append(tuple(Fraction(c) for c in cols))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"line {lineno}: malformed rational") from None
    if header is None:
        raise FormatError("missing 'pointset d n' header")
    d, n = header
    if len(points) != n:
        raise FormatError(f"header announces {n} points, found {len(points)}")
    return PointConfig(d, tuple(points), "FILE")


def format_config(cfg: PointConfig) -> str:
    lines = [f"pointset {cfg.d} {cfg.n}"]
    lines += [" ".join(str(x) for x in p) for p in cfg.points]
    return "\n".join(lines) + "\n"


def load_config(path) -> PointConfig:
    return parse_config(Path(path).read_text())


def save_config(cfg: PointConfig, path) -> None:
    Path(path).write_text(format_config(cfg))

"""Grids of step 1/M, nearest-node rounding, and the fixed-width binary codec.

Binary layout (all integers big-endian)::

    magic    4 bytes   b"CHGR"
    version  1 byte    1
    d        2 bytes
    n        4 bytes
    width    1 byte    bits per coordinate, must equal (2M).bit_length()
    mlen     2 bytes   byte length of M
    M        mlen bytes
    payload  ceil(n*d*width / 8) bytes

The payload holds the n*d grid indices ``k`` (coordinate ``k/M``) in
two's complement, point by point, coordinate by coordinate, most significant
bit first, zero-padded at the end to a whole byte.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .sampling import PointConfig

MAGIC = b"CHGR"
VERSION = 1
_HEADER = struct.Struct(">4sBHIBH")
# eps with a larger denominator is rounded up to this one before root extraction
MAX_EPS_DENOMINATOR = 1000


class CodecError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    M: int

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 1:
            raise ValueError("M must be a positive integer")
        object.__setattr__(self, "M", int(self.M))

    @property
    def step(self) -> Fraction:
        return Fraction(1, self.M)

    @property
    def width(self) -> int:
        return coordinate_width(self.M)


def coordinate_width(M: int) -> int:
    """ceil(log2(2M + 1)): bits for a signed index in [-M, M]."""
    return (2 * M).bit_length()


def grid_from_params(n: int, d: int, eps=0) -> GridSpec:
    """``M = ceil(n ** (d + 1 + eps))``, exact for rational ``eps``."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be >= 0")
    if eps.denominator > MAX_EPS_DENOMINATOR:
        # round up, so the grid only gets finer
        eps = Fraction(math.ceil(eps * MAX_EPS_DENOMINATOR), MAX_EPS_DENOMINATOR)
    e = (d + 1) + eps
    N = n ** e.numerator
    root, exact = gmpy2.iroot(gmpy2.mpz(N), e.denominator)
    M = int(root) if exact else int(root) + 1
    return GridSpec(M)


def round_coordinate(x, M: int) -> Fraction:
    """Nearest multiple of 1/M; exact half-steps round away from zero."""
    x = Fraction(x)
    t = abs(x.numerator) * M
    q, r = divmod(t, x.denominator)
    if 2 * r >= x.denominator:
        q += 1
    return Fraction(-q if x.numerator < 0 else q, M)


def round_point(p, g: GridSpec) -> tuple:
    return tuple(round_coordinate(x, g.M) for x in p)


def round_config(S: PointConfig, g: GridSpec) -> PointConfig:
    """Pointwise rounding; coinciding images are kept (see ``PointConfig.duplicates``)."""
    return PointConfig(S.d, tuple(round_point(p, g) for p in S.points), ("ROUNDED", g.M))


@dataclass(frozen=True)
class EncodedConfig:
    d: int
    n: int
    M: int
    payload: bytes

    @property
    def width(self) -> int:
        return coordinate_width(self.M)

    @property
    def payload_bits(self) -> int:
        return self.n * self.d * self.width

    def to_bytes(self) -> bytes:
        mb = self.M.to_bytes((self.M.bit_length() + 7) // 8, "big")
        head = _HEADER.pack(MAGIC, VERSION, self.d, self.n, self.width, len(mb))
        return head + mb + self.payload

    @property
    def total_bits(self) -> int:
        return 8 * len(self.to_bytes())

    @classmethod
    def from_bytes(cls, data: bytes) -> "EncodedConfig":
        if len(data) < _HEADER.size:
            raise CodecError("truncated header")
        magic, version, d, n, width, mlen = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise CodecError(f"bad magic {magic!r}")
        if version != VERSION:
            raise CodecError(f"unsupported version {version}")
        start = _HEADER.size + mlen
        if len(data) < start:
            raise CodecError("truncated header")
        M = int.from_bytes(data[_HEADER.size:start], "big")
        if M < 1 or coordinate_width(M) != width:
            raise CodecError(f"width {width} does not match M={M}")
        need = (n * d * width + 7) // 8
        payload = data[start:]
        if len(payload) != need:
            raise CodecError(f"payload has {len(payload)} bytes, expected {need}")
        return cls(d, n, M, payload)


def encode(S: PointConfig, g: GridSpec) -> EncodedConfig:
    M, w = g.M, g.width
    mask = (1 << w) - 1
    acc = 0
    for p in S.points:
        for x in p:
            k = x * M
            if k.denominator != 1:
                raise CodecError(f"coordinate {x} is not on the grid 1/{M}")
            k = k.numerator
            if abs(k) > M:
                raise CodecError(f"coordinate {x} is outside [-1, 1]")
            acc = (acc << w) | (k & mask)
    bits = S.n * S.d * w
    pad = -bits % 8
    payload = (acc << pad).to_bytes((bits + pad) // 8, "big")
    return EncodedConfig(S.d, S.n, M, payload)


def decode(e: EncodedConfig) -> PointConfig:
    w, M = e.width, e.M
    bits = e.payload_bits
    if len(e.payload) != (bits + 7) // 8:
        raise CodecError("payload length does not match n, d and M")
    acc = int.from_bytes(e.payload, "big") >> (-bits % 8)
    mask, half = (1 << w) - 1, 1 << (w - 1)
    ks = []
    for _ in range(e.n * e.d):
        v = acc & mask
        acc >>= w
        ks.append(v - (1 << w) if v >= half else v)
    ks.reverse()
    pts = tuple(
        tuple(Fraction(k, M) for k in ks[i * e.d:(i + 1) * e.d]) for i in range(e.n)
    )
    return PointConfig(e.d, pts, ("DECODED", M))

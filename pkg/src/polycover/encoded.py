"""Integer encodings of Q(sqrt5) arrays for bulk exact work.

An array X is stored as (A + B*sqrt5) / d with integer numpy arrays A, B and
a positive integer d.  Products stay exact as long as the entries fit in
int64, which is checked before every multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .exact import ExactMatrix4, ExactScalar

_LIMIT = 2**31


class EncodingOverflow(OverflowError):
    pass


def _guard(*arrays):
    for a in arrays:
        if a.size and int(np.abs(a).max()) >= _LIMIT:
            raise EncodingOverflow("integer encoding left the safe int64 range")


def vsign(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Elementwise exact sign of x + y*sqrt5 for integer arrays."""
    _guard(x, y)
    sx = np.sign(x)
    sy = np.sign(y)
    d = np.sign(x * x - 5 * y * y)
    out = np.where(sy == 0, sx, np.where(sx == 0, sy, np.where(sx == sy, sx, np.where(d > 0, sx, sy))))
    return out.astype(np.int64)


@dataclass(frozen=True)
class EncodedArray:
    A: np.ndarray
    B: np.ndarray
    d: int

    @classmethod
    def from_exact(cls, rows) -> "EncodedArray":
        rows = [[ExactScalar.coerce(v) for v in r] for r in rows]
        den = 1
        for r in rows:
            for v in r:
                den = lcm(den, v.a.denominator, v.b.denominator)
        A = np.array([[int(v.a * den) for v in r] for r in rows], dtype=np.int64)
        B = np.array([[int(v.b * den) for v in r] for r in rows], dtype=np.int64)
        return cls(A, B, den).normalized()

    @classmethod
    def from_matrix(cls, m: ExactMatrix4) -> "EncodedArray":
        return cls.from_exact(m.rows())

    def normalized(self) -> "EncodedArray":
        g = self.d
        for arr in (self.A, self.B):
            if arr.size:
                g = gcd(g, int(np.gcd.reduce(np.abs(arr).ravel())))
        if g > 1:
            return EncodedArray(self.A // g, self.B // g, self.d // g)
        return self

    def with_denominator(self, d: int) -> "EncodedArray | None":
        """Re-express over denominator d, or None if that is not integral."""
        num_a = self.A * d
        num_b = self.B * d
        if np.any(num_a % self.d) or np.any(num_b % self.d):
            return None
        return EncodedArray(num_a // self.d, num_b // self.d, d)

    def to_exact(self) -> list[list[ExactScalar]]:
        return [
            [ExactScalar(Fraction(int(a), self.d), Fraction(int(b), self.d)) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.A, self.B)
        ]

    def to_float(self) -> np.ndarray:
        return (self.A + self.B * np.sqrt(5.0)) / self.d

    def keys(self) -> list[tuple[int, ...]]:
        """Hashable exact row keys (valid for comparisons at equal d)."""
        both = np.concatenate([self.A, self.B], axis=1)
        return [tuple(r) for r in both.tolist()]

    def __len__(self):
        return self.A.shape[0]


def gram(x: EncodedArray, y: EncodedArray | None = None):
    """Exact pairwise dot products; returns (GA, GB, d) with value (GA+GB*sqrt5)/d."""
    y = x if y is None else y
    _guard(x.A, x.B, y.A, y.B)
    ga = x.A @ y.A.T + 5 * (x.B @ y.B.T)
    gb = x.A @ y.B.T + x.B @ y.A.T
    return ga, gb, x.d * y.d


def apply_matrix(m: EncodedArray, x: EncodedArray) -> EncodedArray:
    """Rows of x (as column vectors) mapped by the 4x4 matrix m."""
    _guard(m.A, m.B, x.A, x.B)
    a = x.A @ m.A.T + 5 * (x.B @ m.B.T)
    b = x.B @ m.A.T + x.A @ m.B.T
    return EncodedArray(a, b, m.d * x.d)


def scalar_num(value: ExactScalar, d: int) -> tuple[int, int]:
    """Integer numerators of value over denominator d (must be integral)."""
    a, b = value.a * d, value.b * d
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError("value not representable over this denominator")
    return int(a), int(b)


class VertexIndex:
    """Exact lookup from encoded vectors to vertex indices."""

    def __init__(self, verts: EncodedArray):
        self.verts = verts
        self.d = verts.d
        self._index = {k: i for i, k in enumerate(verts.keys())}
        if len(self._index) != len(verts):
            raise ValueError("duplicate vertices")

    def lookup(self, imgs: EncodedArray) -> np.ndarray | None:
        """Index of each image row, or None if some image is not a vertex."""
        re = imgs.with_denominator(self.d)
        if re is None:
            return None
        out = np.empty(len(re), dtype=np.int64)
        for n, k in enumerate(re.keys()):
            i = self._index.get(k)
            if i is None:
                return None
            out[n] = i
        return out

"""Exact arithmetic in Q(sqrt5): scalars, quaternions and 4x4 matrices.

Every equality test downstream of this module is exact.  Floating point
conversion exists (``to_float``) but is only meant for the spectral code.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence


class ExactArithmeticError(ArithmeticError):
    pass


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to Fraction exactly")


@total_ordering
class ExactScalar:
    """a + b*sqrt5 with rational a, b."""

    __slots__ = ("a", "b", "_h")

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)
        self._h = None

    @classmethod
    def coerce(cls, v) -> "ExactScalar":
        if isinstance(v, ExactScalar):
            return v
        return cls(v, 0)

    # ring operations
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return ExactScalar(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        return ExactScalar(a * c + 5 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conj(self) -> "ExactScalar":
        """Galois conjugate a - b*sqrt5."""
        return ExactScalar(self.a, -self.b)

    def field_norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def inv(self) -> "ExactScalar":
        n = self.field_norm()
        if n == 0:
            # a^2 = 5 b^2 has no rational solution besides 0
            raise ZeroDivisionError("inverse of zero in Q(sqrt5)")
        return ExactScalar(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # order
    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: the larger of |a| and |b|sqrt5 wins
        d = a * a - 5 * b * b
        return sa if d > 0 else sb

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.a, self.b))
        return self._h

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(5.0)

    def __float__(self):
        return self.to_float()

    # serialization
    def to_str(self) -> str:
        parts = []
        if self.a != 0 or self.b == 0:
            parts.append(str(self.a))
        if self.b != 0:
            coef = f"{self.b}*sqrt5"
            if parts and self.b > 0:
                coef = "+" + coef
            parts.append(coef)
        return "".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"ExactScalar({self.to_str()!r})"

    @classmethod
    def parse(cls, s: str) -> "ExactScalar":
        """Inverse of to_str: "a", "b*sqrt5" or "a+b*sqrt5" with rational a, b."""
        s = s.replace(" ", "")
        try:
            if not s.endswith("*sqrt5"):
                return cls(Fraction(s))
            head = s[: -len("*sqrt5")]
            cut = max(head.rfind("+"), head.rfind("-"))
            if cut <= 0:
                return cls(0, Fraction(head))
            return cls(Fraction(head[:cut]), Fraction(head[cut:]))
        except ValueError:
            raise ValueError(f"not an ExactScalar string: {s!r}") from None

    def sqrt(self) -> "ExactScalar | None":
        """Exact square root inside Q(sqrt5), or None when it does not exist."""
        if self.sign() < 0:
            return None
        if not self:
            return ZERO
        x, y = self.a, self.b
        # (p + q sqrt5)^2 = p^2 + 5q^2 + 2pq sqrt5
        disc = x * x - 5 * y * y
        r = _rational_sqrt(disc)
        if r is None:
            return None
        for p2 in ((x + r) / 2, (x - r) / 2):
            p = _rational_sqrt(p2)
            if p is None:
                continue
            if p == 0:
                q = _rational_sqrt(x / 5)
                if q is None:
                    continue
                cand = ExactScalar(0, q)
            else:
                cand = ExactScalar(p, y / (2 * p))
            if cand.sign() < 0:
                cand = -cand
            if cand * cand == self:
                return cand
        return None



def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _coerce_or_none(v):
    if isinstance(v, ExactScalar):
        return v
    if isinstance(v, (int, Fraction)):
        return ExactScalar(v, 0)
    return None


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
SQRT5 = ExactScalar(0, 1)
PHI = ExactScalar(Fraction(1, 2), Fraction(1, 2))
PHI_INV = ExactScalar(Fraction(-1, 2), Fraction(1, 2))
HALF = ExactScalar(Fraction(1, 2))


def es(v) -> ExactScalar:
    """Shorthand coercion: ints, Fractions, strings like '1/2+1/2*sqrt5'."""
    if isinstance(v, ExactScalar):
        return v
    if isinstance(v, str):
        return ExactScalar.parse(v)
    return ExactScalar(v)


class Quaternion:
    """w + x i + y j + z k over Q(sqrt5); coordinates map to (x1, x2, x3, x4)."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        self.w = es(w)
        self.x = es(x)
        self.y = es(y)
        self.z = es(z)

    @classmethod
    def from_vec(cls, v: Sequence) -> "Quaternion":
        return cls(*v)

    def vec(self) -> tuple[ExactScalar, ExactScalar, ExactScalar, ExactScalar]:
        return (self.w, self.x, self.y, self.z)

    def __mul__(self, o):
        if isinstance(o, Quaternion):
            a1, b1, c1, d1 = self.vec()
            a2, b2, c2, d2 = o.vec()
            return Quaternion(
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            )
        s = _coerce_or_none(o)
        if s is None:
            return NotImplemented
        return Quaternion(*(c * s for c in self.vec()))

    def __rmul__(self, o):
        s = _coerce_or_none(o)
        if s is None:
            return NotImplemented
        return Quaternion(*(s * c for c in self.vec()))

    def __add__(self, o):
        return Quaternion(*(p + q for p, q in zip(self.vec(), o.vec())))

    def __sub__(self, o):
        return Quaternion(*(p - q for p, q in zip(self.vec(), o.vec())))

    def __neg__(self):
        return Quaternion(*(-c for c in self.vec()))

    def __eq__(self, o):
        if not isinstance(o, Quaternion):
            return NotImplemented
        return self.vec() == o.vec()

    def __hash__(self):
        return hash(self.vec())

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Quaternion(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> ExactScalar:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def is_unit(self) -> bool:
        return self.norm2() == ONE

    def inverse(self) -> "Quaternion":
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("zero quaternion")
        ninv = n.inv()
        return Quaternion(*(c * ninv for c in self.conj().vec()))

    def imag(self) -> "Quaternion":
        return Quaternion(0, self.x, self.y, self.z)

    def to_floats(self) -> list[float]:
        return [c.to_float() for c in self.vec()]

    def to_strs(self) -> list[str]:
        return [c.to_str() for c in self.vec()]

    def __repr__(self):
        return "Quaternion(" + ", ".join(self.to_strs()) + ")"


QI = Quaternion(0, 1, 0, 0)
QJ = Quaternion(0, 0, 1, 0)
QK = Quaternion(0, 0, 0, 1)
Q_ONE = Quaternion(1)

# q = (1+i+j+k)/2 and the 600-cell generator p = (phi + phi^-1 i + k)/2
Q_HURWITZ = Quaternion(HALF, HALF, HALF, HALF)
P_ICOSIAN = Quaternion(PHI * HALF, PHI_INV * HALF, 0, HALF)


def ad_action(a: Quaternion, x: Quaternion) -> Quaternion:
    """a x a^-1 for a unit quaternion a."""
    if not a.is_unit():
        raise ExactArithmeticError("Ad requires a unit quaternion")
    return a * x * a.conj()


class ExactMatrix4:
    """Row-major 4x4 matrix over Q(sqrt5), acting on column vectors."""

    __slots__ = ("e", "_h")

    def __init__(self, entries: Iterable):
        e = tuple(es(v) for v in entries)
        if len(e) != 16:
            raise ValueError("ExactMatrix4 needs 16 entries")
        self.e = e
        self._h = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix4":
        return cls([v for r in rows for v in r])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "ExactMatrix4":
        return cls([cols[j][i] for i in range(4) for j in range(4)])

    @classmethod
    def identity(cls) -> "ExactMatrix4":
        return cls([1 if i == j else 0 for i in range(4) for j in range(4)])

    def __getitem__(self, ij):
        i, j = ij
        return self.e[4 * i + j]

    def rows(self):
        return [self.e[4 * i: 4 * i + 4] for i in range(4)]

    def columns(self):
        return [tuple(self.e[4 * i + j] for i in range(4)) for j in range(4)]

    def __matmul__(self, o):
        if isinstance(o, ExactMatrix4):
            a, b = self.e, o.e
            out = []
            for i in range(4):
                r = a[4 * i: 4 * i + 4]
                for j in range(4):
                    out.append(r[0] * b[j] + r[1] * b[4 + j] + r[2] * b[8 + j] + r[3] * b[12 + j])
            return ExactMatrix4(out)
        return self.apply(o)

    def apply(self, v: Sequence) -> tuple:
        v = [es(c) for c in v]
        return tuple(
            sum((self.e[4 * i + j] * v[j] for j in range(4)), ZERO) for i in range(4)
        )

    def __neg__(self):
        return ExactMatrix4([-c for c in self.e])

    def __sub__(self, o):
        return ExactMatrix4([p - q for p, q in zip(self.e, o.e)])

    def transpose(self) -> "ExactMatrix4":
        return ExactMatrix4([self.e[4 * j + i] for i in range(4) for j in range(4)])

    def __pow__(self, n: int):
        if n < 0:
            return self.transpose() ** (-n) if self.is_rotation() else self.inverse() ** (-n)
        out = ExactMatrix4.identity()
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def __eq__(self, o):
        if not isinstance(o, ExactMatrix4):
            return NotImplemented
        return self.e == o.e

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.e)
        return self._h

    def det(self) -> ExactScalar:
        m = [list(r) for r in self.rows()]
        return _det_elim(m)

    def inverse(self) -> "ExactMatrix4":
        return ExactMatrix4([v for r in solve_exact(self.rows(), identity_rows()) for v in r])

    def is_orthogonal(self) -> bool:
        return self.transpose() @ self == ExactMatrix4.identity()

    def is_rotation(self) -> bool:
        return self.is_orthogonal() and self.det() == ONE

    def trace(self) -> ExactScalar:
        return self.e[0] + self.e[5] + self.e[10] + self.e[15]

    def is_identity(self) -> bool:
        return self == ExactMatrix4.identity()

    def to_strs(self) -> list[list[str]]:
        return [[c.to_str() for c in r] for r in self.rows()]

    def to_floats(self):
        return [[c.to_float() for c in r] for r in self.rows()]

    def __repr__(self):
        return "ExactMatrix4(" + repr(self.to_strs()) + ")"


def identity_rows():
    return [[ONE if i == j else ZERO for j in range(4)] for i in range(4)]


def _det_elim(m) -> ExactScalar:
    n = len(m)
    m = [row[:] for row in m]
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        pv = m[c][c]
        det = det * pv
        inv = pv.inv()
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = f * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def row_reduce(m) -> tuple[list[list[ExactScalar]], list[int]]:
    """Reduced row echelon form over Q(sqrt5); returns (rref, pivot columns)."""
    m = [[es(x) for x in row] for row in m]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, pivots


def nullspace(m) -> list[tuple[ExactScalar, ...]]:
    """Exact basis of {v : m v = 0}."""
    rref, pivots = row_reduce(m)
    nc = len(m[0])
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * nc
        v[f] = ONE
        for row, pc in zip(rref, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def rank(m) -> int:
    return len(row_reduce(m)[1])


def solve_exact(a, b):
    """Solve a X = b exactly for square invertible a; b is a list of rows."""
    n = len(a)
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    rref, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ExactArithmeticError("singular system")
    return [row[n:] for row in rref[:n]]


def matrix_from_pair(q_left: Quaternion, q_right: Quaternion) -> ExactMatrix4:
    """Matrix of x -> q_left x q_right^-1 in the basis (1, i, j, k)."""
    if not (q_left.is_unit() and q_right.is_unit()):
        raise ExactArithmeticError("matrix_from_pair requires unit quaternions")
    rinv = q_right.conj()
    cols = [(q_left * b * rinv).vec() for b in (Q_ONE, QI, QJ, QK)]
    return ExactMatrix4.from_columns(cols)


def dot(u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> ExactScalar:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def vec_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def vec_add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def vec_scale(s, u):
    s = es(s)
    return tuple(s * x for x in u)


def norm2(u) -> ExactScalar:
    return dot(u, u)

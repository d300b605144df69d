"""Fourier selection rules near an edge with Z/m stabilizer and indicial exponents.

Two index conventions appear for the angular mode: the edge-model one, where a
mode behaves like z^(k - 1/2), and the radial-ODE one, where it is
e^{i(k + 1/2) theta}.  They are related by k_radial = k_edge - 1, and menus
report both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

from .exact import ExactScalar, es


class LocalModelError(ValueError):
    pass


class EvenOrderError(LocalModelError):
    def __init__(self, m: int):
        self.m = m
        super().__init__(f"m={m} is even: the Z/{m} stabilizer does not lift to the double cover")


@dataclass(frozen=True)
class EdgeModelParams:
    m: int
    field_kind: str  # scalar | one_form

    def __post_init__(self):
        if self.field_kind not in ("scalar", "one_form"):
            raise LocalModelError(f"unknown field kind {self.field_kind!r}")
        _check_m(self.m)


@dataclass(frozen=True)
class Branch:
    residue: int  # k mod m (edge-model convention)
    min_k: int
    tag: str  # closed | generic
    _m: int = field(default=0, repr=False, compare=False)

    @property
    def min_n0(self) -> Fraction:
        return Fraction(2 * self.min_k - 1, 2)

    @property
    def radial_residue(self) -> int:
        return self.residue - 1

    def ks(self, count: int) -> list[int]:
        return [self.min_k + j * self._m for j in range(count)]

    def n0_values(self, count: int) -> list[Fraction]:
        return [Fraction(2 * k - 1, 2) for k in self.ks(count)]


@dataclass(frozen=True)
class ExponentMenu:
    params: EdgeModelParams
    branches: tuple[Branch, ...]

    @property
    def min_n0(self) -> Fraction:
        return min(b.min_n0 for b in self.branches)

    def to_dict(self, count: int = 4) -> dict:
        return {
            "m": self.params.m,
            "field_kind": self.params.field_kind,
            "branches": [
                {
                    "residue_mod_m": b.residue,
                    "radial_index_residue_mod_m": b.radial_residue % self.params.m,
                    "tag": b.tag,
                    "k": b.ks(count),
                    "radial_k": [k - 1 for k in b.ks(count)],
                    "min_N0": str(b.min_n0),
                    "N0": [str(x) for x in b.n0_values(count)],
                }
                for b in self.branches
            ],
        }


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 2:
        raise LocalModelError(f"m must be an integer >= 3, got {m!r}")
    if m % 2 == 0:
        raise EvenOrderError(m)


def _branch(m: int, residue: int, tag: str) -> Branch:
    r = residue % m
    k = r if r >= 1 else m  # smallest positive k in the class
    return Branch(r, k, tag, _m=m)


def scalar_selection(m: int) -> ExponentMenu:
    """Equivariant scalar modes: k = (m+1)/2 mod m, N(0) = k - 1/2."""
    _check_m(m)
    b = _branch(m, (m + 1) // 2, "generic")
    if (2 * (b.min_k - 1) + 1) % m:
        raise LocalModelError("index conventions disagree")
    return ExponentMenu(EdgeModelParams(m, "scalar"), (b,))


def oneform_selection(m: int) -> ExponentMenu:
    """Equivariant 1-form modes: k = (m-1)/2 (closed) and k = (m+3)/2 mod m."""
    _check_m(m)
    closed = _branch(m, (m - 1) // 2, "closed")
    other = _branch(m, (m + 3) // 2, "generic")
    return ExponentMenu(EdgeModelParams(m, "one_form"), (closed, other))


def selection(m: int, field_kind: str) -> ExponentMenu:
    kind = field_kind.replace("-", "_")
    if kind == "scalar":
        return scalar_selection(m)
    if kind == "one_form":
        return oneform_selection(m)
    raise LocalModelError(f"unknown field kind {field_kind!r}")


def index_conventions_agree(m: int, k_range: range) -> bool:
    """k = (m+1)/2 mod m in edge convention iff 2k' + 1 = 0 mod m with k' = k - 1."""
    _check_m(m)
    for k in k_range:
        a = (k - (m + 1) // 2) % m == 0
        b = (2 * (k - 1) + 1) % m == 0
        if a != b:
            return False
    return True


# indicial exponents


def _coerce_lambda(lam):
    if isinstance(lam, float):
        if lam < 0:
            raise LocalModelError("lambda must be nonnegative")
        f = Fraction(lam)
        # floats with short exact binary expansions (0.75, 2.0) stay exact
        if f.denominator <= 2**20:
            return es(f)
        return lam
    v = ExactScalar.coerce(lam)
    if v.sign() < 0:
        raise LocalModelError("lambda must be nonnegative")
    return v


def _sqrt_disc(lam):
    """sqrt(1 + 4 lambda), exact when it lies in Q(sqrt5)."""
    if isinstance(lam, float):
        return sqrt(1 + 4 * lam)
    disc = es(1) + es(4) * lam
    root = disc.sqrt()
    return root if root is not None else sqrt(disc.to_float())


@dataclass(frozen=True)
class IndicialPair:
    mu: object
    mu_prime: object
    form: str  # edge | vertex

    @property
    def exact(self) -> bool:
        return isinstance(self.mu, ExactScalar)

    def floats(self) -> tuple[float, float]:
        f = lambda v: v.to_float() if isinstance(v, ExactScalar) else float(v)
        return f(self.mu), f(self.mu_prime)

    def to_dict(self) -> dict:
        s = lambda v: v.to_str() if isinstance(v, ExactScalar) else repr(float(v))
        a, b = self.floats()
        return {"form": self.form, "exact": self.exact, "mu": s(self.mu), "mu_prime": s(self.mu_prime),
                "mu_float": a, "mu_prime_float": b}


def indicial_edge(lam) -> IndicialPair:
    """mu = (-1 + sqrt(1+4 lambda))/2, mu' = mu + 1."""
    lam = _coerce_lambda(lam)
    root = _sqrt_disc(lam)
    half = es(Fraction(1, 2)) if isinstance(root, ExactScalar) else 0.5
    return IndicialPair(half * (root - 1), half * (root + 1), "edge")


def indicial_vertex(lam) -> IndicialPair:
    """mu = -3/2 + sqrt(1+4 lambda)/2, mu' = mu + 3."""
    lam = _coerce_lambda(lam)
    root = _sqrt_disc(lam)
    half = es(Fraction(1, 2)) if isinstance(root, ExactScalar) else 0.5
    return IndicialPair(half * (root - 3), half * (root + 3), "vertex")


def beta_exclusion_threshold(lam) -> bool:
    """True iff mu'(lambda) >= 3/2 for the edge form, i.e. lambda >= 3/4."""
    lam = _coerce_lambda(lam)
    if isinstance(lam, float):
        return lam >= 0.75
    return (lam - es(Fraction(3, 4))).sign() >= 0


def exceeds(value, bound: Fraction) -> bool:
    """Exact strict comparison value > bound when value is exact."""
    if isinstance(value, ExactScalar):
        return (value - es(bound)).sign() > 0
    return float(value) > float(bound)

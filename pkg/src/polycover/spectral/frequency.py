"""Sphere-averaged field norm K(r), the frequency N(r) = d ln K / d ln r, and blowups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import lebedev_rule

K_FLOOR = 1e-280


class FrequencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class SampledField:
    """A scalar field evaluated on rows of points.

    metric "flat": points in R^3, probe spheres |x - c| = r with area 4 pi r^2.
    metric "spherical": points on S^3 in R^4, geodesic probe spheres about c
    with area 4 pi sin^2 r.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    metric: str = "flat"
    degree: float | None = None
    domain_radius: float = np.inf
    name: str = ""

    def __post_init__(self):
        if self.metric not in ("flat", "spherical"):
            raise FrequencyError(f"unknown metric {self.metric!r}")

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        return np.asarray(self.evaluator(pts), dtype=float)


def _principal_power(z: np.ndarray, exponent: float) -> np.ndarray:
    return np.abs(z) ** exponent * np.cos(exponent * np.angle(z))


def branched_model(degrees, weights=None, metric: str = "flat") -> SampledField:
    """sum_j w_j Re(z^{d_j}) with z = x1 + i x2, principal branch.

    For half-integer degrees all terms flip sign together across the cut, so
    |psi|^2 is single-valued.
    """
    degrees = list(degrees)
    weights = [1.0] * len(degrees) if weights is None else list(weights)

    def ev(pts):
        z = pts[:, 0] + 1j * pts[:, 1]
        return sum(w * _principal_power(z, d) for w, d in zip(weights, degrees))

    deg = degrees[0] if len(degrees) == 1 else None
    name = " + ".join(f"{w:g}*Re(z^{d:g})" for w, d in zip(weights, degrees))
    return SampledField(ev, metric, deg, name=name)


def polynomial_model(kind: str) -> SampledField:
    if kind == "linear":
        return SampledField(lambda p: p[:, 0], "flat", 1.0, name="x1")
    if kind == "constant":
        return SampledField(lambda p: np.ones(len(p)), "flat", 0.0, name="1")
    raise FrequencyError(f"unknown polynomial model {kind!r}")


@dataclass(frozen=True)
class SphereRule:
    points: np.ndarray  # (n, 3) unit vectors
    weights: np.ndarray  # sum to 1

    @classmethod
    def lebedev(cls, order: int = 41) -> "SphereRule":
        x, w = lebedev_rule(order)
        return cls(x.T.copy(), w / w.sum())


def _tangent_frame(center: np.ndarray) -> np.ndarray:
    """Orthonormal basis (3, 4) of the tangent space of S^3 at center."""
    q, _ = np.linalg.qr(np.column_stack([center, np.eye(4)]))
    return q[:, 1:4].T


def probe_points(field: SampledField, center: np.ndarray, r: float, rule: SphereRule) -> np.ndarray:
    center = np.asarray(center, dtype=float)
    if r > field.domain_radius:
        raise FrequencyError(f"probe radius {r:g} outside the field domain")
    if field.metric == "flat":
        if center.shape != (3,):
            raise FrequencyError("flat probes need a center in R^3")
        return center + r * rule.points
    if center.shape != (4,) or abs(np.linalg.norm(center) - 1) > 1e-12:
        raise FrequencyError("spherical probes need a unit center in R^4")
    omega = rule.points @ _tangent_frame(center)
    return np.cos(r) * center + np.sin(r) * omega


def sphere_average(field: SampledField, center, r: float, rule: SphereRule) -> float:
    """(1/A(r)) * integral of |psi|^2 over the probe sphere."""
    vals = field(probe_points(field, center, r, rule))
    return float(rule.weights @ (vals * vals))


def area(metric: str, r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return 4 * np.pi * (np.sin(r) ** 2 if metric == "spherical" else r**2)


@dataclass
class FrequencyData:
    radii: np.ndarray
    K: np.ndarray
    N: np.ndarray
    area_convention: str

    def rows(self) -> list[tuple[float, float, float]]:
        return [(float(r), float(k), float(n)) for r, k, n in zip(self.radii, self.K, self.N)]


def _K(field, center, r, rule) -> float:
    k = np.sqrt(sphere_average(field, center, r, rule))
    if not np.isfinite(k) or k < K_FLOOR:
        raise FrequencyError(f"K({r:g}) below floor: degenerate field")
    return float(k)


def frequency_function(field: SampledField, center, radii, rule: SphereRule | None = None,
                       log_step: float = 1e-3) -> FrequencyData:
    """K on the grid and N by centered differences of ln K in ln r."""
    rule = rule or SphereRule.lebedev()
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0):
        raise FrequencyError("radii must be positive")
    K = np.array([_K(field, center, r, rule) for r in radii])
    up = np.array([_K(field, center, r * np.exp(log_step), rule) for r in radii])
    dn = np.array([_K(field, center, r * np.exp(-log_step), rule) for r in radii])
    N = (np.log(up) - np.log(dn)) / (2 * log_step)
    if not np.all(np.isfinite(N)):
        raise FrequencyError("frequency not finite")
    conv = "4 pi sin^2 r" if field.metric == "spherical" else "4 pi r^2"
    return FrequencyData(radii, K, N, conv)


@dataclass
class BlowupReport:
    scale: float
    K_scale: float
    max_K_deviation: float  # |K_l(r) - K(l r)/K(l)|
    max_N_deviation: float  # |N_l(r) - N(l r)|
    K_at_one: float


def rescaled_blowup(field: SampledField, scale: float, center=None, radii=None,
                    rule: SphereRule | None = None) -> tuple[SampledField, BlowupReport]:
    """psi_l(x) = psi(c + l (x - c)) / K(l), checked against K and N of psi."""
    if not 0 < scale <= 1:
        raise FrequencyError("blowup scale must lie in (0, 1]")
    if field.metric != "flat":
        raise FrequencyError("blowups are taken on flat probes")
    rule = rule or SphereRule.lebedev()
    center = np.zeros(3) if center is None else np.asarray(center, dtype=float)
    radii = np.geomspace(0.2, 1.0, 9) if radii is None else np.asarray(radii, dtype=float)
    k_scale = _K(field, center, scale, rule)
    if scale * radii.max() * np.exp(1e-3) > field.domain_radius:
        raise FrequencyError("probe outside the field domain")

    def ev(pts):
        return field(center + scale * (pts - center)) / k_scale

    domain = field.domain_radius / scale if np.isfinite(field.domain_radius) else np.inf
    blown = SampledField(ev, "flat", field.degree, domain, name=f"blowup({field.name}, {scale:g})")
    a = frequency_function(blown, center, radii, rule)
    b = frequency_function(field, center, scale * radii, rule)
    rep = BlowupReport(
        scale, k_scale,
        float(np.max(np.abs(a.K - b.K / k_scale))),
        float(np.max(np.abs(a.N - b.N))),
        _K(blown, center, 1.0, rule),
    )
    return blown, rep

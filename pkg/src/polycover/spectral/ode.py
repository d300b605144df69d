"""Radial ODEs near edges and vertices, with Frobenius seeding and exponent fits.

Each problem is written in t = ln(rho) with D = rho d/drho as

    D^2 a + P(rho) D a + Q(rho) a = 0,

where P and Q are even in rho.  Pure branches are integrated in Riccati form
(log|a|, Da/a), which keeps power-law solutions well scaled over many
decades; mixed solutions are assembled from the two pure branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np
from scipy.integrate import solve_ivp

from ..local_models import beta_exclusion_threshold

KINDS = ("edge_flat", "vertex_sphere", "vertex_inhom")

FIT_WINDOW = (1e-3, 1e-2)
SINGULAR_WINDOW = (1e-5, 1e-4)
SINGULAR_SEED = 1e-2


class ODEError(RuntimeError):
    pass


@dataclass(frozen=True)
class RadialODEProblem:
    kind: str
    k: int = 0
    n: int = 0
    lam: float = 0.0
    energy: float = 0.0
    r_scale: float = 1.0
    rho0: float = 1e-9
    rho1: float = 0.1
    truncated: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ODEError(f"unknown radial problem {self.kind!r}")
        if not 0 < self.rho0 < self.rho1 < pi / 2:
            raise ODEError("need 0 < rho0 < rho1 < pi/2")
        if self.kind == "edge_flat" and self.rho1 >= 1:
            raise ODEError("the flat edge model is singular at rho = 1")
        vals = (self.lam, self.energy, self.r_scale)
        if not all(np.isfinite(v) for v in vals) or self.r_scale <= 0:
            raise ODEError("parameters must be finite with r_scale > 0")

    @property
    def kappa(self) -> float:
        return self.k + 0.5

    @property
    def nu(self) -> float:
        return pi * self.n / (2 * self.r_scale)

    def coefficients(self, rho: float) -> tuple[float, float]:
        """(P, Q) at rho."""
        x = rho * rho
        if self.kind == "edge_flat":
            if self.truncated:
                return 0.0, -self.kappa**2
            s = 1 - x
            return -2 * x / s, -self.kappa**2 / s - self.nu**2 * x / s**2
        c = rho / np.tan(rho)
        q = x / np.sin(rho) ** 2
        if self.kind == "vertex_sphere":
            return 2 * c - 1, -self.lam * q
        return 4 * c - 1, (2 * np.cos(2 * rho) - self.lam) * q + self.energy * x

    def series(self) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
        """Coefficients of P and Q in powers 1, rho^2, rho^4."""
        if self.kind == "edge_flat":
            k2, n2 = self.kappa**2, self.nu**2
            if self.truncated:
                return (0.0, 0.0, 0.0), (-k2, 0.0, 0.0)
            return (0.0, -2.0, -2.0), (-k2, -k2 - n2, -k2 - 2 * n2)
        lam = self.lam
        if self.kind == "vertex_sphere":
            return (1.0, -2 / 3, -2 / 45), (-lam, -lam / 3, -lam / 15)
        c = 2 - lam
        return (3.0, -4 / 3, -4 / 45), (c, c / 3 - 4 + self.energy, c / 15)

    def exponents(self) -> tuple[float, float]:
        """Roots (regular, singular) of s^2 + P0 s + Q0."""
        (p0, _, _), (q0, _, _) = self.series()
        disc = p0 * p0 - 4 * q0
        if disc < 0:
            raise ODEError("complex indicial exponents")
        r = np.sqrt(disc)
        return (-p0 + r) / 2, (-p0 - r) / 2


def frobenius_coefficients(prob: RadialODEProblem, s: float, terms: int = 3) -> list[float]:
    """c_0..c_{terms-1} of rho^s (c_0 + c_1 rho^2 + ...); resonant terms are set to zero."""
    P, Q = prob.series()
    F = lambda x: x * x + P[0] * x + Q[0]
    c = [1.0]
    for j in range(1, terms):
        acc = 0.0
        for i in range(1, j + 1):
            if i < 3:
                acc += c[j - i] * (P[i] * (s + 2 * (j - i)) + Q[i])
        den = F(s + 2 * j)
        c.append(0.0 if abs(den) < 1e-12 else -acc / den)
    return c


def _seed(prob: RadialODEProblem, s: float, rho: float) -> tuple[float, float]:
    """(log a, Da/a) from the truncated Frobenius series."""
    c = frobenius_coefficients(prob, s)
    x = rho * rho
    poly = sum(cj * x**j for j, cj in enumerate(c))
    dpoly = sum(2 * j * cj * x**j for j, cj in enumerate(c))
    return s * np.log(rho) + np.log(poly), s + dpoly / poly


def _riccati(prob: RadialODEProblem):
    def rhs(t, y):
        p, q = prob.coefficients(np.exp(t))
        w = y[1]
        return [w, -p * w - q - w * w]
    return rhs


def integrate_branch(prob: RadialODEProblem, branch: str, rho_from: float, rho_to: float,
                     n_samples: int = 400, rtol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Integrate one pure branch; returns (rho grid, log|a|) ascending in rho."""
    reg, sing = prob.exponents()
    s = reg if branch == "regular" else sing
    y0 = _seed(prob, s, rho_from)
    t0, t1 = np.log(rho_from), np.log(rho_to)
    sol = solve_ivp(_riccati(prob), (t0, t1), y0, method="DOP853", rtol=rtol, atol=1e-14,
                    dense_output=True)
    if not sol.success:
        raise ODEError(f"integration failed: {sol.message}")
    ts = np.linspace(min(t0, t1), max(t0, t1), n_samples)
    return np.exp(ts), sol.sol(ts)[0]


@dataclass
class ExponentFit:
    exponent: float
    intercept: float
    curvature: float
    residual: float
    window: tuple[float, float]


def fit_exponent(rho: np.ndarray, log_a: np.ndarray, window) -> ExponentFit:
    """Least squares of log|a| on [1, log rho, rho^2] inside the window."""
    m = (rho >= window[0] * (1 - 1e-12)) & (rho <= window[1] * (1 + 1e-12))
    if m.sum() < 5:
        raise ODEError("too few samples in the fit window")
    t = np.log(rho[m])
    X = np.column_stack([np.ones_like(t), t, rho[m] ** 2])
    coef, *_ = np.linalg.lstsq(X, log_a[m], rcond=None)
    resid = float(np.max(np.abs(X @ coef - log_a[m])))
    return ExponentFit(float(coef[1]), float(coef[0]), float(coef[2]), resid, tuple(window))


@dataclass
class SolutionProfile:
    problem: RadialODEProblem
    rho: np.ndarray
    values: np.ndarray
    regular: ExponentFit | None = None
    singular: ExponentFit | None = None
    alpha: float | None = None
    beta: float | None = None
    fit_residual: float = 0.0
    notes: list[str] = field(default_factory=list)

    def summary(self) -> dict:
        out = {"kind": self.problem.kind, "k": self.problem.k, "n": self.problem.n,
               "lambda": self.problem.lam, "energy": self.problem.energy,
               "indicial": list(self.problem.exponents()), "fit_residual": self.fit_residual}
        for name in ("regular", "singular"):
            f = getattr(self, name)
            if f is not None:
                out[f"{name}_exponent"] = f.exponent
                out[f"{name}_window"] = list(f.window)
        if self.alpha is not None:
            out["alpha"] = self.alpha
            out["beta"] = self.beta
        return out


def solve_radial_ode(prob: RadialODEProblem, seed: str = "regular", mix: tuple[float, float] = (1.0, 0.0),
                     tol: float = 1e-6) -> SolutionProfile:
    """Integrate and fit.

    seed = "regular": Frobenius start at rho0, outward to rho1, fit on FIT_WINDOW.
    seed = "singular": Frobenius start at SINGULAR_SEED, inward, fit on SINGULAR_WINDOW.
    seed = "both": both of the above.
    seed = "mixed": alpha * regular + beta * singular with (alpha, beta) = mix,
    sampled on [FIT_WINDOW[0]/10, FIT_WINDOW[1]], then refitted for alpha, beta.
    """
    if seed not in ("regular", "singular", "both", "mixed"):
        raise ODEError(f"unknown seed {seed!r}")
    reg_rho = reg_log = sing_rho = sing_log = None
    prof = SolutionProfile(prob, np.empty(0), np.empty(0))
    if seed in ("regular", "both", "mixed"):
        reg_rho, reg_log = integrate_branch(prob, "regular", prob.rho0, max(prob.rho1, FIT_WINDOW[1]), 1200)
        prof.regular = fit_exponent(reg_rho, reg_log, FIT_WINDOW)
        prof.rho, prof.values = reg_rho, np.exp(reg_log)
    if seed in ("singular", "both", "mixed"):
        sing_rho, sing_log = integrate_branch(prob, "singular", SINGULAR_SEED, SINGULAR_WINDOW[0] / 2, 1200)
        prof.singular = fit_exponent(sing_rho, sing_log, SINGULAR_WINDOW)
        if seed == "singular":
            prof.rho, prof.values = sing_rho, np.exp(sing_log)
    fits = [f for f in (prof.regular, prof.singular) if f is not None]
    prof.fit_residual = max(f.residual for f in fits)
    if seed == "mixed":
        lo, hi = FIT_WINDOW[0] / 10, SINGULAR_SEED
        grid = np.geomspace(lo, hi, 400)
        a_reg = np.exp(np.interp(np.log(grid), np.log(reg_rho), reg_log))
        a_sing = np.exp(np.interp(np.log(grid), np.log(sing_rho), sing_log))
        prof.rho = grid
        prof.values = mix[0] * a_reg + mix[1] * a_sing
        prof.alpha, prof.beta, res = fit_alpha_beta(prob, grid, prof.values)
        prof.fit_residual = max(prof.fit_residual, res)
    if prof.fit_residual > tol:
        raise ODEError(f"fit residual {prof.fit_residual:.3g} above tolerance {tol:.3g}")
    return prof


def fit_alpha_beta(prob: RadialODEProblem, rho: np.ndarray, values: np.ndarray) -> tuple[float, float, float]:
    """Linear least squares on rho^mu, rho^(mu+2), rho^-mu', rho^(-mu'+2), scaled per column."""
    reg, sing = prob.exponents()
    cols = [rho**reg, rho ** (reg + 2), rho**sing, rho ** (sing + 2)]
    X = np.column_stack(cols)
    scale = np.linalg.norm(X, axis=0)
    coef, *_ = np.linalg.lstsq(X / scale, values, rcond=None)
    coef = coef / scale
    fitted = X @ coef
    res = float(np.max(np.abs(fitted - values) / np.maximum(np.abs(values), 1e-300)))
    return float(coef[0]), float(coef[2]), res


@dataclass(frozen=True)
class BetaExclusionResult:
    asserted: bool  # exclusion applies: mu'(lambda) >= 3/2
    beta: float
    mass_finite: bool  # singular branch has finite weighted L^2 mass near 0
    passed: bool


def verify_beta_exclusion(profile: SolutionProfile, lam, tol: float = 1e-8) -> BetaExclusionResult:
    """Above the threshold the singular branch has infinite mass, so the mass bound forces beta = 0."""
    asserted = beta_exclusion_threshold(lam)
    beta = 0.0 if profile.beta is None else profile.beta
    _, sing = profile.problem.exponents()
    # int rho^(2 sing) rho^2 drho converges at 0 iff 2 sing + 2 > -1
    mass_finite = bool(2 * sing + 2 > -1)
    passed = (abs(beta) < tol) if asserted else True
    return BetaExclusionResult(asserted, beta, mass_finite, passed)

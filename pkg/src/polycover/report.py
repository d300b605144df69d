"""Acceptance checks, run configuration and deterministic report export."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cover import CoverObstruction, build_cover, lift_symmetry, verify_splitting
from .exact import PHI_INV, ExactScalar, es
from .local_models import (
    exceeds,
    index_conventions_agree,
    indicial_edge,
    indicial_vertex,
    oneform_selection,
    scalar_selection,
)
from .polytopes import PolytopeKind, get_polytope, valency_profile
from .symmetry import (
    AD_Q,
    census_edge_fixing,
    permutation_of,
    plane_edge_partition,
    rotation_group,
)

REFERENCE = "reference"
DERIVED = "derived-oracle"
TRIVIAL = "trivial"

ALL_KINDS = tuple(PolytopeKind)


class VerificationError(RuntimeError):
    pass


@dataclass
class RunConfig:
    kinds: tuple[PolytopeKind, ...] = ALL_KINDS
    out: Path = Path("out")
    quad_order: int = 41
    mesh_ladder: tuple[int, ...] = (1, 2, 3, 4)
    tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        self.kinds = tuple(PolytopeKind.parse(k) for k in self.kinds)
        self.mesh_ladder = tuple(int(x) for x in self.mesh_ladder)
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if any(b <= a for a, b in zip(self.mesh_ladder, self.mesh_ladder[1:])):
            raise ValueError("mesh ladder must be strictly increasing")

    def has(self, kind: PolytopeKind) -> bool:
        return kind in self.kinds


@dataclass
class Check:
    name: str
    expected: str
    computed: str
    status: str  # pass | fail | expected-fail | skipped
    provenance: str
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "expected-fail", "skipped")


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0
    scope: str = "in scope"

    @property
    def status(self) -> str:
        if self.scope != "in scope":
            return "out-of-scope"
        if not self.checks:
            return "skipped"
        if any(c.status == "fail" for c in self.checks):
            return "fail"
        live = [c.status for c in self.checks if c.status != "skipped"]
        if not live:
            return "skipped"
        if all(st == "expected-fail" for st in live):
            return "expected-fail"
        return "pass"

    def add(self, name, expected, computed, ok: bool, provenance: str, note: str = "", status: str | None = None):
        st = status or ("pass" if ok else "fail")
        self.checks.append(Check(name, _fmt(expected), _fmt(computed), st, provenance, note))


def _fmt(v) -> str:
    if isinstance(v, ExactScalar):
        return v.to_str()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _runtime(res: CriterionResult, start: float, budget: float, label: str):
    res.wall_time = time.perf_counter() - start
    ok = res.wall_time < budget
    res.add(f"runtime {label}", f"< {budget:g} s", "within budget" if ok else "over budget", ok, TRIVIAL)


# 1. polytope census

CENSUS = {
    PolytopeKind.CELL5: (5, 10, 4, es(Fraction(5, 2)), 5),
    PolytopeKind.CELL8: (16, 32, 4, es(4), 8),
    PolytopeKind.CELL16: (8, 24, 6, None, None),
    PolytopeKind.CELL24: (24, 96, 8, es(1), 24),
    PolytopeKind.CELL120: (600, 1200, 4, (es(3) - ExactScalar(0, 1)) ** 2, None),
    PolytopeKind.CELL600: (120, 720, 12, PHI_INV * PHI_INV, 600),
}


def criterion_1(cfg: RunConfig) -> CriterionResult:
    res = CriterionResult(1, "Polytope census (exact)")
    t0 = time.perf_counter()
    for kind in cfg.kinds:
        V, E, val, L2, C = CENSUS[kind]
        poly = get_polytope(kind)
        _, v = valency_profile(poly)
        res.add(f"{kind.label} V", V, poly.n_vertices, poly.n_vertices == V, REFERENCE)
        res.add(f"{kind.label} E", E, len(poly.edges), len(poly.edges) == E, REFERENCE)
        res.add(f"{kind.label} valency", val, v, v == val, REFERENCE)
        if L2 is not None:
            res.add(f"{kind.label} edge length^2", L2, poly.edge_length_sq, poly.edge_length_sq == L2, REFERENCE)
        if C is not None:
            n = len(poly.facets)
            res.add(f"{kind.label} cells", C, n, n == C, REFERENCE)
    _runtime(res, t0, 30, "census")
    return res


# 2. symmetry

EDGE_FIXING = {
    PolytopeKind.CELL5: (3, 20),
    PolytopeKind.CELL8: (3, 32),
    PolytopeKind.CELL24: (3, 32),
    PolytopeKind.CELL120: (3, 400),
    PolytopeKind.CELL600: (5, 288),
}
ORDERS = {
    PolytopeKind.CELL5: (60, REFERENCE),
    PolytopeKind.CELL8: (192, DERIVED),
    PolytopeKind.CELL24: (576, DERIVED),
    PolytopeKind.CELL120: (7200, DERIVED),
    PolytopeKind.CELL600: (7200, DERIVED),
}
PLANES = {
    PolytopeKind.CELL24: (16, 6),
    PolytopeKind.CELL120: (200, 6),
    PolytopeKind.CELL600: (72, 10),
}


def criterion_2(cfg: RunConfig) -> CriterionResult:
    res = CriterionResult(2, "Symmetry censuses (exact)")
    t0 = time.perf_counter()
    for kind, (order, prov) in ORDERS.items():
        if not cfg.has(kind):
            continue
        g = rotation_group(kind)
        res.add(f"{kind.label} group order", order, g.order, g.order == order, prov)
        m, count = EDGE_FIXING[kind]
        got = census_edge_fixing(g, m)
        res.add(f"{kind.label} order-{m} edge-fixing elements", count, got, got == count, REFERENCE)
    for kind, (n, size) in PLANES.items():
        if not cfg.has(kind):
            continue
        part = plane_edge_partition(get_polytope(kind))
        got = (part.plane_count, part.polygon_sizes[0] if len(part.polygon_sizes) == 1 else part.polygon_sizes)
        res.add(f"{kind.label} edge planes x edges per plane", (n, size), got, got == (n, size), REFERENCE,
                note=part.structure)
    _runtime(res, t0, 300, "symmetry")
    return res


# 3. cover

COVER_KINDS = (PolytopeKind.CELL5, PolytopeKind.CELL8, PolytopeKind.CELL24, PolytopeKind.CELL600)


def criterion_3(cfg: RunConfig) -> CriterionResult:
    res = CriterionResult(3, "Cover construction and lift pairs (exact)")
    for kind in COVER_KINDS:
        if not cfg.has(kind):
            continue
        cov = build_cover(get_polytope(kind))
        ok = all(h == -1 for h in cov.holonomy.values())
        res.add(f"{kind.label} holonomy on every edge cycle", -1, "all -1" if ok else "mixed", ok, TRIVIAL)
        g = rotation_group(kind)
        bad = 0
        for e in range(g.order):
            a, b = lift_symmetry(cov, g, e)
            m = int(g.orders[e])
            want = {m, 2 * m} if m % 2 else {m}
            distinct = a.sheet_perm() != b.sheet_perm()
            if not distinct or {a.order(), b.order()} != want:
                bad += 1
        res.add(f"{kind.label} lift pairs with orders {{m, 2m}} for odd m", 0, f"{bad} exceptions", bad == 0,
                DERIVED)
    if cfg.has(PolytopeKind.CELL16):
        try:
            build_cover(get_polytope(PolytopeKind.CELL16))
            res.add("16-cell obstruction", "obstruction", "cover built", False, REFERENCE)
        except CoverObstruction as exc:
            res.add("16-cell obstruction", "obstruction", f"obstruction at edge {exc.edge}", True, REFERENCE,
                    note="control kind: the cover stage is expected to fail", status="expected-fail")
    if cfg.has(PolytopeKind.CELL5):
        poly = get_polytope(PolytopeKind.CELL5)
        cov = build_cover(poly)
        g = rotation_group(PolytopeKind.CELL5)
        i = g.index_of(permutation_of(AD_Q.matrix, poly))
        six = [L for L in lift_symmetry(cov, g, i) if L.order() == 6][0]
        ct = six.cycle_type()
        ct_nontrivial = tuple(x for x in ct if x > 1)
        res.add("5-cell order-6 lift of Ad_q sheet cycle type", (2, 2, 6), ct_nontrivial,
                ct_nontrivial == (2, 2, 6), REFERENCE, note=str(six.sheet_cycles(False)))
    return res


# 4. splitting


def criterion_4(cfg: RunConfig) -> CriterionResult:
    res = CriterionResult(4, "Splitting verification (sign algebra)")
    for kind in COVER_KINDS:
        if cfg.has(kind):
            led = verify_splitting(kind, "model", seed=cfg.seed)
            res.add(f"{kind.label} model mode", "split", led.verdict, led.verdict == "split", REFERENCE)
    for kind in (PolytopeKind.CELL5, PolytopeKind.CELL8, PolytopeKind.CELL24,
                 PolytopeKind.CELL120, PolytopeKind.CELL600):
        if cfg.has(kind):
            led = verify_splitting(kind, "certificate", seed=cfg.seed)
            res.add(f"{kind.label} certificate mode", "split", led.verdict, led.verdict == "split", REFERENCE)
    if cfg.has(PolytopeKind.CELL5):
        for mode in ("model", "certificate"):
            led = verify_splitting(PolytopeKind.CELL5, mode, presentation="a5", seed=cfg.seed)
            res.add(f"5-cell A5 presentation, {mode} mode", "split", led.verdict, led.verdict == "split", REFERENCE)
    return res


# 5, 6. local models


def criterion_5(cfg: RunConfig) -> CriterionResult:
    res = CriterionResult(5, "Local-model exponent tables (exact)")
    for m, want in ((3, Fraction(3, 2)), (5, Fraction(5, 2))):
        got = scalar_selection(m).min_n0
        res.add(f"scalar min N(0), m={m}", want, got, got == want, REFERENCE if m == 3 else DERIVED)
    closed = [b for b in oneform_selection(3).branches if b.tag == "closed"][0]
    res.add("one-form closed branch min N(0), m=3", Fraction(1, 2), closed.min_n0,
            closed.min_n0 == Fraction(1, 2), REFERENCE)
    for m in (3, 5, 7, 9):
        ok = index_conventions_agree(m, range(-3 * m, 6 * m))
        res.add(f"index conventions agree, m={m}", True, ok, ok, DERIVED)
    return res


def criterion_6(cfg: RunConfig) -> CriterionResult:
    res = CriterionResult(6, "Indicial formulas (exact)")
    v = indicial_vertex(1)
    want = (ExactScalar(Fraction(-3, 2), Fraction(1, 2)), ExactScalar(Fraction(3, 2), Fraction(1, 2)))
    res.add("indicial_vertex(1)", want, (v.mu, v.mu_prime), (v.mu, v.mu_prime) == want, DERIVED)
    gt = exceeds(v.mu, Fraction(-2, 5))
    res.add("indicial_vertex(1).mu > -2/5 (exact)", True, gt, gt, REFERENCE)
    e = indicial_edge(Fraction(3, 4))
    want_e = (es(Fraction(1, 2)), es(Fraction(3, 2)))
    res.add("indicial_edge(3/4)", want_e, (e.mu, e.mu_prime), (e.mu, e.mu_prime) == want_e, TRIVIAL)
    return res


# 7, 8, 9. numerics

ODE_LAMBDAS = (Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(2), Fraction(13, 4))


def criterion_7(cfg: RunConfig) -> CriterionResult:
    from .spectral.ode import RadialODEProblem, solve_radial_ode

    res = CriterionResult(7, "ODE exponent recovery")
    t0 = time.perf_counter()
    for lam in ODE_LAMBDAS:
        e_mu, e_mup = indicial_edge(lam).floats()
        v_mu, v_mup = indicial_vertex(lam).floats()
        for kind, (mu, mup) in (("vertex_sphere", (e_mu, e_mup)), ("vertex_inhom", (v_mu, v_mup))):
            prof = solve_radial_ode(RadialODEProblem(kind, lam=float(lam)), "both", tol=cfg.tol)
            err = max(abs(prof.regular.exponent - mu), abs(prof.singular.exponent + mup))
            res.add(f"{kind} lambda={lam} exponents", (mu, -mup),
                    (prof.regular.exponent, prof.singular.exponent), err < 1e-6, DERIVED,
                    note=f"max error {err:.3e}")
    _runtime(res, t0, 10, "ODE")
    return res


def criterion_8(cfg: RunConfig) -> CriterionResult:
    from .spectral.frequency import SphereRule, branched_model, frequency_function, rescaled_blowup

    res = CriterionResult(8, "Frequency function")
    t0 = time.perf_counter()
    rule = SphereRule.lebedev(cfg.quad_order)
    radii = np.geomspace(0.05, 1.0, 12)
    for d in (0.5, 1.5, 2.5):
        fd = frequency_function(branched_model([d]), np.array([0, 0, 0.25]), radii, rule)
        err = float(np.max(np.abs(fd.N - d)))
        res.add(f"N constant on Re(z^{d:g})", d, float(np.mean(fd.N)), err < 1e-6, DERIVED,
                note=f"max deviation {err:.3e}")
    mix = branched_model([0.5, 1.5])
    for scale in (0.5, 0.1):
        _, rep = rescaled_blowup(mix, scale, rule=rule)
        err = max(rep.max_K_deviation, rep.max_N_deviation)
        res.add(f"rescaling identities, scale {scale:g}", 0.0, err, err < 1e-6, DERIVED)
    _runtime(res, t0, 30, "frequency")
    return res


def criterion_9(cfg: RunConfig) -> CriterionResult:
    from .spectral.link import antipodal_problem, cell5_vertex_problem, cut_gauge_test, link_eigen_solver

    res = CriterionResult(9, "Link eigensolver")
    ladder = cfg.mesh_ladder
    if len(ladder) < 2:
        for name in ("antipodal control", "5-cell Z/3 sector", "cut gauge"):
            res.add(name, "refinement ladder", f"ladder {list(ladder)}", True, TRIVIAL,
                    note="insufficient refinement", status="skipped")
        return res
    t0 = time.perf_counter()
    anti = link_eigen_solver(antipodal_problem(), ladder, count=4, seed=cfg.seed)
    l1 = anti.lambda1()
    err = max(abs(x - 0.75) / 0.75 for x in l1)
    res.add("antipodal pair lambda1 within 2% of 3/4 on every level", 0.75, l1, err < 0.02, DERIVED,
            note=f"max relative error {err:.3e}")
    cell = link_eigen_solver(cell5_vertex_problem(), ladder, count=4, seed=cfg.seed)
    c1 = cell.lambda1()
    margins = [x - 1 for x in c1]
    res.add("5-cell Z/3 sector lambda1 > 1 at the two finest levels", "> 1", c1[-2:],
            all(x > 1 for x in c1[-2:]), REFERENCE)
    res.add("5-cell Z/3 sector margin non-shrinking at the two finest levels", "margin[-1] >= margin[-2]",
            margins[-2:], margins[-1] >= margins[-2], REFERENCE,
            note="conforming upper bounds decrease under refinement")
    gauge = cut_gauge_test(ladder[min(1, len(ladder) - 1)], seed=cfg.seed)
    res.add("cut relocation changes lambda1 by < 0.1%", "< 1e-3", gauge.relative_gap,
            gauge.relative_gap < 1e-3, DERIVED)
    _runtime(res, t0, 300, "link")
    return res


def criterion_10(cfg: RunConfig) -> CriterionResult:
    res = CriterionResult(10, "Global existence and analytic estimates", scope="out of scope")
    res.add("global harmonic forms and spinors", "not computed", "not computed", True, TRIVIAL,
            note="items 3-9 are the computable surface", status="skipped")
    return res


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


@dataclass
class VerificationReport:
    config: RunConfig
    criteria: list[CriterionResult]

    @property
    def passed(self) -> bool:
        return all(c.status in ("pass", "expected-fail", "skipped", "out-of-scope") for c in self.criteria)

    def to_dict(self) -> dict:
        return {
            "schema": "polycover-verification/1",
            "config": {
                "kinds": [k.value for k in self.config.kinds],
                "quad_order": self.config.quad_order,
                "mesh_ladder": list(self.config.mesh_ladder),
                "tol": _fmt(self.config.tol),
                "seed": self.config.seed,
            },
            "criteria": [
                {"number": c.number, "title": c.title, "status": c.status,
                 "checks": [asdict(ch) for ch in c.checks]}
                for c in self.criteria
            ],
            "passed": self.passed,
        }

    def timings(self) -> dict:
        return {str(c.number): round(c.wall_time, 3) for c in self.criteria}


def run_full_verification(cfg: RunConfig, only=None) -> VerificationReport:
    results = []
    for fn in CRITERIA:
        n = int(fn.__name__.split("_")[1])
        if only is not None and n not in only:
            continue
        t0 = time.perf_counter()
        try:
            r = fn(cfg)
        except Exception as exc:
            raise VerificationError(f"criterion {n}: {type(exc).__name__}: {exc}") from exc
        if r.wall_time == 0.0:
            r.wall_time = time.perf_counter() - t0
        results.append(r)
    return VerificationReport(cfg, results)


# export

_STATUS = ["pass", "fail", "expected-fail", "skipped", "out-of-scope"]

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "polycover verification report",
    "type": "object",
    "required": ["schema", "config", "criteria", "passed"],
    "properties": {
        "schema": {"const": "polycover-verification/1"},
        "passed": {"type": "boolean"},
        "config": {
            "type": "object",
            "required": ["kinds", "quad_order", "mesh_ladder", "tol", "seed"],
            "properties": {
                "kinds": {"type": "array", "items": {"type": "string"}},
                "quad_order": {"type": "integer"},
                "mesh_ladder": {"type": "array", "items": {"type": "integer"}},
                "tol": {"type": "string"},
                "seed": {"type": "integer"},
            },
        },
        "criteria": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["number", "title", "status", "checks"],
                "properties": {
                    "number": {"type": "integer", "minimum": 1, "maximum": 10},
                    "title": {"type": "string"},
                    "status": {"enum": _STATUS},
                    "checks": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["name", "expected", "computed", "status", "provenance", "note"],
                            "properties": {
                                "name": {"type": "string"},
                                "expected": {"type": "string"},
                                "computed": {"type": "string"},
                                "status": {"enum": _STATUS[:4]},
                                "provenance": {"enum": [REFERENCE, DERIVED, TRIVIAL]},
                                "note": {"type": "string"},
                            },
                        },
                    },
                },
            },
        },
    },
}


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def report_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["criterion", "check", "expected", "computed", "status", "provenance", "note"])
    for c in report.criteria:
        for ch in c.checks:
            w.writerow([c.number, ch.name, ch.expected, ch.computed, ch.status, ch.provenance, ch.note])
    return buf.getvalue()


def report_markdown(report: VerificationReport) -> str:
    lines = ["| # | criterion | status | checks |", "|---|---|---|---|"]
    for c in report.criteria:
        n_ok = sum(ch.ok for ch in c.checks)
        lines.append(f"| {c.number} | {c.title} | {c.status} | {n_ok}/{len(c.checks)} |")
    lines.append("")
    for c in report.criteria:
        lines.append(f"## {c.number}. {c.title}: {c.status}")
        lines.append("")
        lines.append("| check | expected | computed | status | provenance |")
        lines.append("|---|---|---|---|---|")
        for ch in c.checks:
            lines.append(f"| {ch.name} | {ch.expected} | {ch.computed} | {ch.status} | {ch.provenance} |")
        lines.append("")
    return "\n".join(lines)


_WRITERS = {"json": ("report.json", report_json), "csv": ("report.csv", report_csv),
            "markdown": ("report.md", report_markdown)}
_FORMAT_ALIASES = {"md": "markdown"}


def check_formats(formats) -> tuple[str, ...]:
    """Normalise format names; unknown names raise ValueError."""
    norm = tuple(_FORMAT_ALIASES.get(f.strip(), f.strip()) for f in formats if f.strip())
    bad = [f for f in norm if f not in _WRITERS]
    if bad:
        raise ValueError(f"unknown report format(s) {bad}; choose from {sorted(_WRITERS)} or md")
    return norm


def export_report(report: VerificationReport, out: Path, formats=("json", "csv", "markdown")) -> list[Path]:
    formats = check_formats(formats)
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for fmt in formats:
        name, fn = _WRITERS[fmt]
        p = out / name
        p.write_text(fn(report))
        written.append(p)
    t = out / "timings.json"
    t.write_text(json.dumps(report.timings(), indent=2, sort_keys=True) + "\n")
    written.append(t)
    return written

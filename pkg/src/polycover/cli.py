"""Command-line front end: `polycover <command> [options]`."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .exact import ExactScalar

DEFAULTS = {"out": None, "kind": None, "tol": 1e-6, "mesh_ladder": "1,2,3,4", "seed": 0}


def _jsonable(v):
    if isinstance(v, ExactScalar):
        return v.to_str()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def _emit(args, name: str, payload: dict, rows=None, header=None) -> None:
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
    print(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.json").write_text(text + "\n")
        if rows is not None:
            with open(out / f"{name}.csv", "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                if header:
                    w.writerow(header)
                for r in rows:
                    w.writerow([f"{x:.12g}" if isinstance(x, float) else x for x in r])


def _kinds(args, default):
    from .polytopes import PolytopeKind

    if not args.kind:
        return list(default)
    return [PolytopeKind.parse(k) for k in args.kind.split(",")]


def _ladder(args) -> tuple[int, ...]:
    return tuple(int(x) for x in str(args.mesh_ladder).split(",") if x.strip())


# commands


def polytope_record(kind) -> dict:
    from .polytopes import get_polytope, valency_profile

    poly = get_polytope(kind)
    _, val = valency_profile(poly)
    counts = {"V": poly.n_vertices, "E": len(poly.edges)}
    if poly.facets:
        counts["C"] = len(poly.facets)
    return {
        "kind": poly.kind.value,
        "schlafli": list(poly.schlafli),
        "counts": counts,
        "valency": val,
        "edge_length_sq": poly.edge_length_sq,
        "vertex_norm_sq": poly.vertex_norm_sq,
        "vertices": [[c.to_str() for c in v] for v in poly.vertices],
        "edges": [list(e) for e in poly.edges],
    }


def symmetry_record(kind) -> dict:
    from .polytopes import get_polytope
    from .symmetry import census_edge_fixing, plane_edge_partition, rotation_group, transitivity_report

    g = rotation_group(kind)
    tr = transitivity_report(g)
    rec = {
        "kind": g.poly.kind.value,
        "order": g.order,
        "generators": [g.rotor(g.index_of(p)).matrix.to_strs() for p in g.gen_perms],
        "censuses": {"order3_edge_fixing": census_edge_fixing(g, 3),
                     "order5_edge_fixing": census_edge_fixing(g, 5)},
        "transitivity": {"vertex": tr.vertex_transitive, "edge": tr.edge_transitive},
    }
    try:
        part = plane_edge_partition(get_polytope(kind))
        rec["plane_partition"] = {"plane_count": part.plane_count, "polygon_size": part.polygon_sizes[0],
                                  "structure": part.structure}
    except ValueError as exc:  # planes of mixed structure are reported, not fatal
        rec["plane_partition"] = {"error": str(exc)}
    return rec


def _records(args, default, fn, name) -> int:
    kinds = [args.target] if getattr(args, "target", None) else _kinds(args, default)
    recs = {k.value if hasattr(k, "value") else str(k): fn(k) for k in kinds}
    _emit(args, name, recs[next(iter(recs))] if len(recs) == 1 else recs)
    return 0


def cmd_polytope(args) -> int:
    from .polytopes import PolytopeKind

    return _records(args, PolytopeKind, polytope_record, "polytope")


def cmd_symmetry(args) -> int:
    from .polytopes import SPLIT_KINDS

    return _records(args, SPLIT_KINDS, symmetry_record, "symmetry")


def cover_record(kind, action: str, element=None, mode="model", presentation="coxeter", seed=0) -> dict:
    from .cover import CoverObstruction, build_cover, lift_symmetry, verify_splitting
    from .polytopes import PolytopeKind, get_polytope
    from .symmetry import rotation_group

    kind = PolytopeKind.parse(kind)
    rec = {"kind": kind.value}
    if action == "split":
        led = verify_splitting(kind, mode, presentation, seed=seed).to_dict()
        rec["splitting"] = {k: led[k] for k in ("mode", "presentation", "generators", "relations", "verdict")}
        return rec
    try:
        cov = build_cover(get_polytope(kind))
    except CoverObstruction as exc:
        rec["obstruction"] = {"edge": list(exc.edge), "holonomy": exc.holonomy, "r": exc.r, "message": str(exc)}
        return rec
    rec["cover"] = {"facets": cov.n_facets, "sheets": cov.n_sheets,
                    "edge_cycles": [len(c) for c in cov.adjacency.edge_cycles.values()],
                    "holonomy": sorted(set(cov.holonomy.values()))}
    if action == "lift":
        g = rotation_group(kind)
        elements = [element] if element is not None else range(g.order)
        lifts = []
        for e in elements:
            pair = lift_symmetry(cov, g, e)
            entry = {"element": e, "base_order": int(g.orders[e]), "orders": [x.order() for x in pair]}
            if element is not None:
                entry["lifts"] = [{"sign": x.constant_sign(), "order": x.order(), "cycles": x.sheet_cycles(False)}
                                  for x in pair]
            lifts.append(entry)
        rec["lifts"] = lifts
    return rec


def cmd_cover(args) -> int:
    from .polytopes import PolytopeKind
    from .report import COVER_KINDS

    default = [k for k in PolytopeKind if k != PolytopeKind.CELL16] if args.action == "split" else COVER_KINDS
    kinds = [args.target] if args.target else _kinds(args, default)
    recs = [cover_record(k, args.action, args.element, args.mode, args.presentation, args.seed) for k in kinds]
    _emit(args, f"cover_{args.action}", recs[0] if len(recs) == 1 else recs)
    bad = any("obstruction" in r or r.get("splitting", {}).get("verdict", "split") != "split" for r in recs)
    return 1 if bad else 0


def cmd_local(args) -> int:
    from .local_models import indicial_edge, indicial_vertex, selection

    if args.action == "exponents":
        # --kind names the field kind here, as in `local exponents --m 3 --kind one-form`
        field = args.kind if args.kind in ("scalar", "one-form", "one_form") else args.field
        payload = selection(args.m, field).to_dict(args.count)
        _emit(args, "exponents", payload)
        return 0
    lam = ExactScalar.parse(args.lam) if args.exact else float(args.lam)
    fn = indicial_edge if args.form == "edge" else indicial_vertex
    _emit(args, "indicial", fn(lam).to_dict())
    return 0


def cmd_spectral(args) -> int:
    import numpy as np

    if args.action == "ode":
        from .spectral.ode import RadialODEProblem, solve_radial_ode, verify_beta_exclusion

        prob = RadialODEProblem(args.problem, k=args.k, n=args.n, lam=args.lam, energy=args.energy,
                                truncated=args.truncated)
        prof = solve_radial_ode(prob, args.branch, mix=(1.0, args.beta), tol=args.tol)
        payload = prof.summary()
        if args.branch == "mixed":
            payload["beta_exclusion"] = vars(verify_beta_exclusion(prof, args.lam))
        rows = [(float(r), float(v)) for r, v in zip(prof.rho, prof.values)]
        _emit(args, "ode", payload, rows, ["rho", "a"])
        return 0
    if args.action == "frequency":
        from .spectral.frequency import SphereRule, branched_model, frequency_function

        degrees = [float(x) for x in args.degrees.split(",")]
        field = branched_model(degrees)
        radii = np.geomspace(args.rmin, args.rmax, args.samples)
        fd = frequency_function(field, np.zeros(3), radii, SphereRule.lebedev(args.quad_order))
        payload = {"field": field.name, "area": fd.area_convention, "N_min": float(fd.N.min()),
                   "N_max": float(fd.N.max())}
        _emit(args, "frequency", payload, fd.rows(), ["r", "K", "N"])
        return 0
    from .spectral.link import antipodal_problem, cell5_vertex_problem, link_eigen_solver, trivial_problem

    probs = {"cell5": cell5_vertex_problem, "antipodal": antipodal_problem, "sphere": trivial_problem}
    spectrum = link_eigen_solver(probs[args.problem](), _ladder(args), count=args.count, seed=args.seed)
    payload = {"problem": spectrum.name, "lambda1": spectrum.lambda1(), "trend": spectrum.trend()}
    header = ["level", "dofs"] + [f"lambda{i}" for i in range(1, args.count + 1)]
    _emit(args, "link", payload, spectrum.rows(), header)
    return 0


def cmd_verify(args) -> int:
    from .polytopes import PolytopeKind
    from .report import RunConfig, check_formats, export_report, run_full_verification

    cfg = RunConfig(kinds=tuple(_kinds(args, PolytopeKind)), out=Path(args.out or "out"),
                    quad_order=args.quad_order, mesh_ladder=_ladder(args), tol=args.tol, seed=args.seed)
    formats = check_formats(args.format.split(","))
    only = {int(x) for x in args.only.split(",")} if args.only else None
    report = run_full_verification(cfg, only)
    for c in report.criteria:
        print(f"[{c.status.upper():>12}] {c.number}. {c.title}")
    export_report(report, cfg.out, formats)
    print(f"report written to {cfg.out}")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="output directory")
    common.add_argument("--kind", default=argparse.SUPPRESS, help="comma-separated polytope kinds, e.g. cell5,cell600")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="numeric tolerance")
    common.add_argument("--mesh-ladder", default=argparse.SUPPRESS, help="comma-separated mesh levels")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for generator search and meshes")

    p = argparse.ArgumentParser(prog="polycover", parents=[common],
                                description="Polytope double covers, symmetry lifts and local spectral checks.")
    sub = p.add_subparsers(dest="command", required=True)

    for name in ("polytope", "symmetry"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("target", nargs="?", default=None, help="polytope kind")
        s.set_defaults(func=cmd_polytope if name == "polytope" else cmd_symmetry)
    rep = sub.add_parser("report", parents=[common], help="report polytope|symmetry <kind>")
    rep.add_argument("what", choices=["polytope", "symmetry"])
    rep.add_argument("target", nargs="?", default=None, help="polytope kind")
    rep.set_defaults(func=lambda a: cmd_polytope(a) if a.what == "polytope" else cmd_symmetry(a))

    cov = sub.add_parser("cover", parents=[common])
    cov.add_argument("action", choices=["build", "lift", "split"])
    cov.add_argument("target", nargs="?", default=None, help="polytope kind")
    cov.add_argument("--element", type=int, default=None, help="group element index for lift")
    cov.add_argument("--mode", choices=["model", "certificate"], default="model")
    cov.add_argument("--presentation", choices=["coxeter", "a5"], default="coxeter")
    cov.set_defaults(func=cmd_cover)

    loc = sub.add_parser("local", parents=[common])
    loc.add_argument("action", choices=["exponents", "indicial"])
    loc.add_argument("--m", type=int, default=3)
    loc.add_argument("--field", default="scalar", choices=["scalar", "one_form", "one-form"])
    loc.add_argument("--count", type=int, default=4)
    loc.add_argument("--lam", default="1")
    loc.add_argument("--form", choices=["edge", "vertex"], default="vertex")
    loc.add_argument("--exact", action=argparse.BooleanOptionalAction, default=True)
    loc.set_defaults(func=cmd_local)

    sp = sub.add_parser("spectral", parents=[common])
    sp.add_argument("action", choices=["ode", "frequency", "link"])
    sp.add_argument("--problem", default=None)
    sp.add_argument("--lam", type=float, default=1.0)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--energy", type=float, default=0.0)
    sp.add_argument("--truncated", action="store_true")
    sp.add_argument("--branch", choices=["regular", "singular", "both", "mixed"], default="both")
    sp.add_argument("--beta", type=float, default=0.0, help="singular coefficient in mixed mode")
    sp.add_argument("--degrees", default="0.5")
    sp.add_argument("--rmin", type=float, default=0.05)
    sp.add_argument("--rmax", type=float, default=1.0)
    sp.add_argument("--samples", type=int, default=12)
    sp.add_argument("--quad-order", type=int, default=41)
    sp.add_argument("--count", type=int, default=4)
    sp.set_defaults(func=cmd_spectral)

    ver = sub.add_parser("verify", parents=[common])
    ver.add_argument("--quad-order", type=int, default=41)
    ver.add_argument("--only", default=None, help="comma-separated criterion numbers")
    ver.add_argument("--format", default="json,csv,markdown")
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.command == "spectral" and args.problem is None:
        args.problem = {"ode": "vertex_sphere", "link": "cell5"}.get(args.action)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"polycover: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

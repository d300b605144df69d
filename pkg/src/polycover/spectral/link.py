"""Laplace eigenvalues on S^2 for sections with -1 monodromy around branch points.

The sphere is triangulated as the convex hull of a point cloud that contains
graded rings around each branch point and samples along every cut arc, so
that the cuts are unions of mesh edges.  P1 elements carry one value per
vertex; each (triangle, vertex) pair gets a sign that flips whenever the
star of the vertex crosses a cut edge.  This is consistent exactly at
vertices with an even number of incident cut edges; branch points have an
odd number and carry a Dirichlet condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, pi

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import eigsh
from scipy.spatial import ConvexHull


class LinkError(RuntimeError):
    pass


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _ang(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Great-circle distance between unit vectors (broadcasting)."""
    c = np.clip(np.sum(a * b, axis=-1), -1.0, 1.0)
    s = np.linalg.norm(np.cross(a, b), axis=-1)
    return np.arctan2(s, c)


def rotation_about(axis, angle: float) -> np.ndarray:
    k = _unit(axis)
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * (K @ K)


def _frame(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    t = np.array([1.0, 0, 0]) if abs(p[0]) < 0.9 else np.array([0, 1.0, 0])
    e1 = _unit(np.cross(p, t))
    return e1, np.cross(p, e1)


def _arc_point(a: np.ndarray, b: np.ndarray, s: float) -> np.ndarray:
    """Point at distance s from a along the geodesic to b."""
    t = _unit(b - np.dot(a, b) * a)
    return np.cos(s) * a + np.sin(s) * t


def dist_to_arc(x: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Great-circle distance from points x to the minor arc from a to b."""
    n = _unit(np.cross(a, b))
    proj = x - (x @ n)[:, None] * n
    norm = np.linalg.norm(proj, axis=1)
    safe = np.where(norm > 1e-14, norm, 1.0)
    foot = proj / safe[:, None]
    inside = (np.cross(a, foot) @ n >= 0) & (np.cross(foot, b) @ n >= 0) & (norm > 1e-14)
    d_line = np.arcsin(np.clip(np.abs(x @ n), 0, 1))
    d_end = np.minimum(_ang(x, a[None, :]), _ang(x, b[None, :]))
    return np.where(inside, d_line, d_end)


def arcs_cross(a0, a1, b0, b1) -> bool:
    """Whether two minor arcs meet anywhere other than a shared endpoint."""
    na, nb = np.cross(a0, a1), np.cross(b0, b1)
    shared = [np.allclose(p, q) for p in (a0, a1) for q in (b0, b1)]
    line = np.cross(na, nb)
    if np.linalg.norm(line) < 1e-12:
        # same great circle: overlap unless they only touch at an endpoint
        return not any(shared) and _overlap_on_circle(a0, a1, b0, b1)
    line = _unit(line)
    for x in (line, -line):
        on_a = _ang(a0, x) + _ang(x, a1) - _ang(a0, a1) < 1e-10
        on_b = _ang(b0, x) + _ang(x, b1) - _ang(b0, b1) < 1e-10
        if on_a and on_b:
            if any(np.allclose(x, p) for p in (a0, a1)) and any(shared):
                continue
            return True
    return False


def _overlap_on_circle(a0, a1, b0, b1) -> bool:
    for p in (b0, b1):
        if _ang(a0, p) + _ang(p, a1) - _ang(a0, a1) < 1e-10:
            return True
    return False


def fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    r = np.sqrt(1 - z * z)
    th = pi * (1 + 5**0.5) * i
    return np.column_stack([r * np.cos(th), r * np.sin(th), z])


@dataclass(frozen=True)
class LinkEigenproblem:
    """Branch points, cut arcs (index pairs into points plus extra joints) and mesh level."""

    branch_points: tuple[tuple[float, float, float], ...]
    cut_arcs: tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]
    level: int = 1
    symmetry_axis: tuple[float, float, float] | None = None  # Z/3 sector restriction
    symmetry_order: int = 3
    name: str = ""


@dataclass
class LinkMesh:
    points: np.ndarray
    triangles: np.ndarray
    branch_nodes: list[int]
    arc_nodes: list[list[int]]  # node chains along each arc
    spacing: float

    @property
    def n_nodes(self) -> int:
        return len(self.points)


@dataclass
class MeshParams:
    bulk_points: int
    ring_factor: float = 3.0  # outer ring radius in units of the bulk spacing
    grading: float = 2.0
    band: float = 0.6
    jitter: float = 0.05
    seed: int = 0

    @property
    def spacing(self) -> float:
        return float(np.sqrt(8 * pi / (np.sqrt(3) * self.bulk_points)))


def level_params(level: int, seed: int = 0) -> MeshParams:
    if level < 1:
        raise LinkError("mesh levels start at 1")
    return MeshParams(bulk_points=int(round(400 * 2**level)), seed=seed)


def _ring_radii(params: MeshParams) -> np.ndarray:
    h = params.spacing
    R0 = params.ring_factor * h
    J = int(ceil(params.grading * params.ring_factor))
    j = np.arange(1, J + 1)
    return R0 * (j / J) ** params.grading


def build_mesh(branch_points, arcs, params: MeshParams, ring_multiple: dict[int, int] | None = None,
               keep=None) -> tuple[np.ndarray, list[int], list[list[int]]]:
    """Point cloud with rings, arc samples and a cleared band; returns points, branch ids, arc chains.

    keep: optional predicate on points (after generation) used for sector meshes.
    """
    h = params.spacing
    rng = np.random.default_rng(params.seed)
    bps = [_unit(p) for p in branch_points]
    arcs = [(_unit(a), _unit(b)) for a, b in arcs]
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if arcs_cross(*arcs[i], *arcs[j]):
                raise LinkError(f"cut arcs {i} and {j} intersect")
    for i, p in enumerate(bps):
        for q in bps[i + 1:]:
            if _ang(p, q) < 4 * params.ring_factor * h:
                raise LinkError("branch points closer than the mesh can resolve")
    radii = _ring_radii(params)
    R0 = radii[-1]
    for k, (a, b) in enumerate(arcs):
        for p in bps:
            if np.allclose(p, a) or np.allclose(p, b):
                continue
            if dist_to_arc(p[None, :], a, b)[0] < R0 + 2 * h:
                raise LinkError(f"cut arc {k} passes too close to a branch point")

    # bulk
    pts = fibonacci_sphere(params.bulk_points)
    pts = _unit(pts + params.jitter * h * rng.standard_normal(pts.shape))
    for p in bps:
        pts = pts[_ang(pts, p[None, :]) > R0 + 0.5 * h]
    for a, b in arcs:
        pts = pts[dist_to_arc(pts, a, b) > params.band * h]

    # arc samples, finer inside ring zones
    arc_samples = []
    for a, b in arcs:
        L = float(_ang(a, b))
        s_vals = [0.0]
        a_is_bp = any(np.allclose(a, p) for p in bps)
        b_is_bp = any(np.allclose(b, p) for p in bps)
        lo = R0 if a_is_bp else 0.0
        hi = L - R0 if b_is_bp else L
        if a_is_bp:
            s_vals += list(radii)
        n_mid = max(1, int(ceil((hi - lo) / h)))
        s_vals += list(np.linspace(lo, hi, n_mid + 1)[1:-1])
        if b_is_bp:
            s_vals += list(L - radii[::-1])
        s_vals.append(L)
        s_vals = np.unique(np.round(np.array(s_vals), 15))
        arc_samples.append(np.array([_arc_point(a, b, s) for s in s_vals]))

    # rings, with ring points near arc samples on the same ring removed
    ring_pts = []
    for bi, p in enumerate(bps):
        e1, e2 = _frame(p)
        prev = 0.0
        mult = (ring_multiple or {}).get(bi, 1)
        for rj in radii:
            dr = rj - prev
            n = max(6, int(ceil(2 * pi * np.sin(rj) / dr)))
            n = int(ceil(n / mult) * mult)
            # jitter breaks the cocircular quads between concentric rings
            th = 2 * pi * (np.arange(n) + 0.5 * (len(ring_pts) % 2) + params.jitter * rng.uniform(-1, 1, n)) / n
            rr = rj - params.jitter * dr * rng.uniform(0, 1, n)
            ring = (np.cos(rr)[:, None] * p
                    + np.sin(rr)[:, None] * (np.outer(np.cos(th), e1) + np.outer(np.sin(th), e2)))
            spacing = 2 * pi * np.sin(rj) / n
            for samples in arc_samples:
                near = _ang(samples, p[None, :])
                on_ring = samples[np.abs(near - rj) < 1e-9]
                for s in on_ring:
                    ring = ring[_ang(ring, s[None, :]) > params.band * spacing]
            ring_pts.append(ring)
            prev = rj

    parts = [pts] + ring_pts + arc_samples + [np.array(bps)] if bps else [pts] + arc_samples
    allp = np.vstack([x for x in parts if len(x)])
    if keep is not None:
        allp = allp[keep(allp)]
    allp, _ = _dedupe(allp, 1e-9)
    if keep is not None:
        return allp, [], []

    def node_of(x):
        d = _ang(allp, x[None, :])
        i = int(np.argmin(d))
        if d[i] > 1e-9:
            raise LinkError("arc sample missing from the point cloud")
        return i

    branch_ids = [node_of(p) for p in bps]
    chains = [[node_of(s) for s in samples] for samples in arc_samples]
    return allp, branch_ids, chains


def _dedupe(p: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    key = np.round(p / tol).astype(np.int64)
    _, idx, inv = np.unique(key, axis=0, return_index=True, return_inverse=True)
    order = np.sort(idx)
    remap = {int(o): n for n, o in enumerate(order)}
    return p[order], np.array([remap[int(idx[i])] for i in inv.ravel()])


def triangulate(points: np.ndarray) -> np.ndarray:
    """Outward-oriented triangles of the convex hull."""
    hull = ConvexHull(points)
    tri = hull.simplices.copy()
    if len(hull.vertices) != len(points):
        raise LinkError("some points are not hull vertices")
    a, b, c = points[tri[:, 0]], points[tri[:, 1]], points[tri[:, 2]]
    flip = np.einsum("ij,ij->i", np.cross(b - a, c - a), a + b + c) < 0
    tri[flip] = tri[flip][:, [0, 2, 1]]
    return tri


def _edge_set(tri: np.ndarray) -> set[tuple[int, int]]:
    e = np.vstack([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [2, 0]]])
    e.sort(axis=1)
    return set(map(tuple, e.tolist()))


def cut_edges(mesh_tri: np.ndarray, chains: list[list[int]]) -> set[tuple[int, int]]:
    edges = _edge_set(mesh_tri)
    out = set()
    for ch in chains:
        for a, b in zip(ch, ch[1:]):
            e = (min(a, b), max(a, b))
            if e not in edges:
                raise LinkError("cut arc is not resolved by mesh edges")
            if e in out:
                raise LinkError("cut arcs share an edge")
            out.add(e)
    return out


def star_signs(tri: np.ndarray, n_nodes: int, cuts: set[tuple[int, int]]) -> tuple[np.ndarray, list[int]]:
    """Sign per (triangle, local vertex) flipping across cut edges in each vertex star.

    Returns the sign array and the vertices where the flips are inconsistent
    (odd number of incident cut edges).
    """
    signs = np.zeros(tri.shape, dtype=np.int8)
    stars: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
    for t, row in enumerate(tri):
        for k, v in enumerate(row):
            stars[int(v)].append((t, k))
    bad = []
    for v in range(n_nodes):
        star = stars[v]
        if not star:
            continue
        # triangles in the star adjacent through edges (v, w)
        by_w: dict[int, list[int]] = {}
        local = {}
        for idx, (t, k) in enumerate(star):
            local[t] = k
            for w in tri[t]:
                if w != v:
                    by_w.setdefault(int(w), []).append(t)
        t0 = star[0][0]
        sgn = {t0: 1}
        stack = [t0]
        ok = True
        while stack:
            t = stack.pop()
            for w in tri[t]:
                w = int(w)
                if w == v:
                    continue
                flip = -1 if (min(v, w), max(v, w)) in cuts else 1
                for u in by_w[w]:
                    if u == t:
                        continue
                    want = sgn[t] * flip
                    if u not in sgn:
                        sgn[u] = want
                        stack.append(u)
                    elif sgn[u] != want:
                        ok = False
        if not ok:
            bad.append(v)
        for t, s in sgn.items():
            signs[t, local[t]] = s
    return signs, bad


def assemble(points: np.ndarray, tri: np.ndarray, signs: np.ndarray | None = None):
    """P1 stiffness and mass on the flat triangles, with optional sign twisting."""
    a, b, c = points[tri[:, 0]], points[tri[:, 1]], points[tri[:, 2]]
    e = [c - b, a - c, b - a]
    area = 0.5 * np.linalg.norm(np.cross(e[2], -e[1]), axis=1)
    if np.any(area <= 1e-16):
        raise LinkError("degenerate triangle")
    rows, cols, kv, mv = [], [], [], []
    s = np.ones(tri.shape) if signs is None else signs.astype(float)
    for i in range(3):
        for j in range(3):
            kij = np.einsum("ij,ij->i", e[i], e[j]) / (4 * area)
            mij = area / 12 * (2 if i == j else 1)
            ss = s[:, i] * s[:, j]
            rows.append(tri[:, i])
            cols.append(tri[:, j])
            kv.append(kij * ss)
            mv.append(mij * ss)
    n = len(points)
    r, cidx = np.concatenate(rows), np.concatenate(cols)
    K = sparse.csr_matrix((np.concatenate(kv), (r, cidx)), shape=(n, n))
    M = sparse.csr_matrix((np.concatenate(mv), (r, cidx)), shape=(n, n))
    return K, M


def smallest_eigenvalues(K, M, count: int, shift: float = -0.05, tol: float = 1e-9) -> np.ndarray:
    n = K.shape[0]
    count = min(count, n - 2)
    try:
        vals = eigsh(K.tocsc(), k=count, M=M.tocsc(), sigma=shift, which="LM", tol=tol,
                     return_eigenvectors=False)
    except Exception as exc:  # ArpackNoConvergence and factorization failures
        raise LinkError(f"eigensolve did not converge: {exc}") from exc
    return np.sort(vals)


@dataclass
class LinkSolution:
    level: int
    n_dofs: int
    n_nodes: int
    eigenvalues: np.ndarray
    spacing: float


@dataclass
class Spectrum:
    name: str
    history: list[LinkSolution] = field(default_factory=list)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.history[-1].eigenvalues

    def lambda1(self) -> list[float]:
        return [float(s.eigenvalues[0]) for s in self.history]

    def trend(self) -> str:
        l1 = self.lambda1()
        if len(l1) < 2:
            return "single level"
        d = np.diff(l1)
        if np.all(d <= 0):
            return "nonincreasing"
        if np.all(d >= 0):
            return "nondecreasing"
        return "mixed"

    def rows(self) -> list[list]:
        return [[s.level, s.n_dofs] + [float(x) for x in s.eigenvalues] for s in self.history]


def _reduce(K, M, free: np.ndarray, basis=None):
    K = K[free][:, free]
    M = M[free][:, free]
    if basis is not None:
        K = (basis.T @ K @ basis).tocsr()
        M = (basis.T @ M @ basis).tocsr()
    return K, M


def solve_on_mesh(points, tri, branch_ids, chains, count: int = 6, sector=None) -> tuple[np.ndarray, int]:
    """Eigenvalues for the twisted problem given the cut chains on a fixed mesh."""
    cuts = cut_edges(tri, chains)
    signs, bad = star_signs(tri, len(points), cuts)
    bad_set = set(bad)
    if bad_set != set(branch_ids):
        raise LinkError(f"monodromy inconsistent away from branch points at {sorted(bad_set - set(branch_ids))}")
    K, M = assemble(points, tri, signs)
    free = np.setdiff1d(np.arange(len(points)), np.array(branch_ids, dtype=int))
    basis = None
    if sector is not None:
        basis = sector(points, tri, signs, free)
    K, M = _reduce(K, M, free, basis)
    vals = smallest_eigenvalues(K, M, count)
    return vals, K.shape[0]


def link_eigen_solver(prob: LinkEigenproblem, levels=(1, 2, 3), count: int = 6, seed: int = 0) -> Spectrum:
    spectrum = Spectrum(prob.name)
    for level in levels:
        params = level_params(level, seed)
        if prob.symmetry_axis is None:
            pts, bids, chains = build_mesh(prob.branch_points, prob.cut_arcs, params)
            tri = triangulate(pts)
            vals, ndof = solve_on_mesh(pts, tri, bids, chains, count)
        else:
            pts, tri, bids, chains, sector = symmetric_mesh(prob, params)
            vals, ndof = solve_on_mesh(pts, tri, bids, chains, count, sector)
        spectrum.history.append(LinkSolution(level, ndof, len(pts), vals, params.spacing))
    return spectrum


# Z/m sector meshes


def _azimuth(points: np.ndarray, axis: np.ndarray, ref: np.ndarray) -> np.ndarray:
    e1 = _unit(ref - np.dot(ref, axis) * axis)
    e2 = np.cross(axis, e1)
    return np.arctan2(points @ e2, points @ e1)


def symmetric_mesh(prob: LinkEigenproblem, params: MeshParams):
    """Mesh invariant under rotation by 2 pi/m about the axis, built from one sector."""
    m = prob.symmetry_order
    axis = _unit(prob.symmetry_axis)
    bps = [_unit(p) for p in prob.branch_points]
    off_axis = [p for p in bps if _ang(p, axis) > 1e-9 and _ang(p, -axis) > 1e-9]
    if not off_axis:
        raise LinkError("sector meshes need a branch point off the axis")
    ref = off_axis[0]
    R = rotation_about(axis, 2 * pi / m)
    half = pi / m
    h = params.spacing

    on_axis = {i for i, p in enumerate(bps) if _ang(p, axis) < 1e-9 or _ang(p, -axis) < 1e-9}
    mult = {i: m for i in on_axis}

    def keep(x):
        az = _azimuth(x, axis, ref)
        near_axis = np.minimum(_ang(x, axis[None, :]), _ang(x, -axis[None, :])) < 1e-9
        return near_axis | ((az >= -half) & (az < half))

    pts, _, _ = build_mesh(prob.branch_points, prob.cut_arcs, params, mult, keep)
    # clear bulk crowding at the sector seam and near unmeshed poles
    base = pts
    pole_ok = np.ones(len(base), dtype=bool)
    for pole in (axis, -axis):
        if not any(_ang(pole, p) < 1e-9 for p in bps):
            d = _ang(base, pole[None, :])
            pole_ok &= (d > 0.7 * h) | (d < 1e-9)
    base = base[pole_ok]
    for pole in (axis, -axis):
        if not np.any(_ang(base, pole[None, :]) < 1e-9):
            base = np.vstack([base, pole])
    images = base @ R.T
    d_seam = np.min(_pairwise_ang(base, images), axis=1)
    # a point too close to an image of another sector point is dropped; the rule is
    # the same in every sector so the union stays invariant
    az = _azimuth(base, axis, ref)
    fixed = np.minimum(_ang(base, axis[None, :]), _ang(base, -axis[None, :])) < 1e-9
    drop = (d_seam < 0.35 * h) & (az > 0) & ~fixed
    base = base[~drop]
    fixed = np.minimum(_ang(base, axis[None, :]), _ang(base, -axis[None, :])) < 1e-9
    sector_pts = base[~fixed]
    full = np.vstack([base[fixed]] + [sector_pts @ np.linalg.matrix_power(R, k).T for k in range(m)])
    full, _ = _dedupe(full, 1e-9)
    tri = triangulate(full)

    def node_of(x):
        d = _ang(full, x[None, :])
        i = int(np.argmin(d))
        if d[i] > 1e-9:
            raise LinkError("point missing from the symmetric mesh")
        return i

    bids = [node_of(p) for p in bps]
    # rebuild arc chains from arc geometry
    chains = []
    for a, b in prob.cut_arcs:
        a, b = _unit(a), _unit(b)
        on = np.nonzero(dist_to_arc(full, a, b) < 1e-9)[0]
        order = np.argsort(_ang(full[on], a[None, :]))
        chains.append([int(i) for i in on[order]])

    perm = np.array([node_of(x) for x in full @ R.T])

    def sector(points, tri_, signs, free):
        return invariant_basis(points, tri_, signs, free, perm, m)

    return full, tri, bids, chains, sector


def _pairwise_ang(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.arccos(np.clip(a @ b.T, -1, 1))


def vertex_gauge_action(tri: np.ndarray, signs: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """Sign chi_v with (R u)_{perm v} = chi_v u_v in the star gauges."""
    tri_key = {tuple(sorted(map(int, row))): t for t, row in enumerate(tri)}
    n = len(perm)
    chi = np.zeros(n, dtype=np.int8)
    for t, row in enumerate(tri):
        img = tuple(sorted(int(perm[v]) for v in row))
        if img not in tri_key:
            raise LinkError("mesh is not invariant under the rotation")
        t2 = tri_key[img]
        for k, v in enumerate(row):
            v = int(v)
            if chi[v] != 0:
                continue
            k2 = list(tri[t2]).index(perm[v])
            chi[v] = signs[t, k] * signs[t2, k2]
    return chi


def invariant_basis(points, tri, signs, free: np.ndarray, perm: np.ndarray, m: int):
    """Columns spanning sections fixed by the order-m lift of the rotation."""
    chi = vertex_gauge_action(tri, signs, perm).astype(float)
    # the lift acting as u -> chi u o R^-1 has m-th power +-1; pick the order-m one
    n = len(perm)
    total = np.ones(n)
    cur = np.arange(n)
    for _ in range(m):
        total = total * chi[cur]
        cur = perm[cur]
    if not np.all(cur == np.arange(n)):
        raise LinkError("rotation permutation does not have order m")
    sgn = 1.0
    total = total[free]
    if np.all(total == -1):
        sgn = -1.0  # the negated lift has order m since m is odd
    elif not np.all(total == 1):
        raise LinkError("lift power is not a global sign")
    col_index = {int(v): i for i, v in enumerate(free)}
    seen = set()
    rows, cols, vals = [], [], []
    ncol = 0
    for v in free:
        v = int(v)
        if v in seen:
            continue
        orbit, coeff = [v], [1.0]
        w, c = v, 1.0
        while True:
            c = c * sgn * chi[w]
            w = int(perm[w])
            if w == v:
                break
            orbit.append(w)
            coeff.append(c)
        seen.update(orbit)
        if len(orbit) == 1 and c != 1.0:
            continue  # fixed vertex where the lift acts by -1: forced zero
        if c != 1.0:
            continue  # orbit carries an odd character, no invariant vector
        for w, cw in zip(orbit, coeff):
            if w not in col_index:
                break
            rows.append(col_index[w])
            cols.append(ncol)
            vals.append(cw)
        else:
            ncol += 1
            continue
        del rows[len(rows) - len(orbit):], cols[len(cols) - len(orbit):], vals[len(vals) - len(orbit):]
    return sparse.csr_matrix((vals, (rows, cols)), shape=(len(free), ncol))


# named configurations


def cell5_link_points() -> np.ndarray:
    """Incident-edge directions at a vertex of the 5-cell: a regular tetrahedron."""
    return _unit(np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float))


def star_cut(points: np.ndarray) -> list[tuple]:
    p0 = points[0]
    return [(tuple(p0), tuple(p)) for p in points[1:]]


def pairing_cut(points: np.ndarray) -> list[tuple]:
    return [(tuple(points[0]), tuple(points[1])), (tuple(points[2]), tuple(points[3]))]


def cell5_vertex_problem(level: int = 1) -> LinkEigenproblem:
    pts = cell5_link_points()
    return LinkEigenproblem(tuple(map(tuple, pts)), tuple(star_cut(pts)), level,
                            symmetry_axis=tuple(pts[0]), symmetry_order=3, name="5-cell vertex link, Z/3 sector")


def antipodal_problem(level: int = 1) -> LinkEigenproblem:
    n, s = np.array([0, 0, 1.0]), np.array([0, 0, -1.0])
    mid = np.array([1.0, 0, 0])
    return LinkEigenproblem((tuple(n), tuple(s)), ((tuple(n), tuple(mid)), (tuple(mid), tuple(s))), level,
                            name="antipodal pair")


def trivial_problem(level: int = 1) -> LinkEigenproblem:
    return LinkEigenproblem((), (), level, name="round sphere")


@dataclass
class GaugeReport:
    level: int
    star: np.ndarray
    pairing: np.ndarray

    @property
    def relative_gap(self) -> float:
        return float(abs(self.star[0] - self.pairing[0]) / abs(self.star[0]))


def cut_gauge_test(level: int = 2, count: int = 4, seed: int = 0) -> GaugeReport:
    """Star cut and pairing cut for the 5-cell link on one mesh carrying both."""
    pts = cell5_link_points()
    star, pair = star_cut(pts), pairing_cut(pts)
    extra = [a for a in pair if a not in star]
    arcs = star + extra
    params = level_params(level, seed)
    mesh_pts, bids, chains = build_mesh(list(map(tuple, pts)), arcs, params)
    tri = triangulate(mesh_pts)
    star_chains = chains[: len(star)]
    pair_chains = [chains[arcs.index(a)] for a in pair]
    a, _ = solve_on_mesh(mesh_pts, tri, bids, star_chains, count)
    b, _ = solve_on_mesh(mesh_pts, tri, bids, pair_chains, count)
    return GaugeReport(level, a, b)

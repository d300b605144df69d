"""Finite rotation groups of the polytopes, held as exact SO(4) data.

Group elements are stored as vertex permutations.  Because every vertex set
spans R^4 the permutation determines the matrix, so hashing permutations is
the same as hashing canonical matrices; matrices are reconstructed exactly
on demand.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm

import numpy as np

from .encoded import EncodedArray, VertexIndex, apply_matrix
from .exact import (
    HALF,
    ONE,
    P_ICOSIAN,
    PHI_INV,
    Q_HURWITZ,
    Q_ONE,
    ZERO,
    ExactMatrix4,
    ExactScalar,
    Quaternion,
    es,
    matrix_from_pair,
    nullspace,
    rank,
)
from .polytopes import Polytope, PolytopeKind, get_polytope


class SymmetryError(ValueError):
    pass


@dataclass(frozen=True)
class Rotor:
    matrix: ExactMatrix4
    pair: tuple[Quaternion, Quaternion] | None = None
    name: str = ""

    def __post_init__(self):
        if not self.matrix.is_rotation():
            raise SymmetryError(f"{self.name or 'matrix'} is not in SO(4)")
        if self.pair is not None and matrix_from_pair(*self.pair) != self.matrix:
            raise SymmetryError("pair witness does not match matrix")

    @classmethod
    def from_pair(cls, ql: Quaternion, qr: Quaternion, name: str = "") -> "Rotor":
        return cls(matrix_from_pair(ql, qr), (ql, qr), name)

    def __matmul__(self, other: "Rotor") -> "Rotor":
        pair = None
        if self.pair and other.pair:
            pair = (self.pair[0] * other.pair[0], self.pair[1] * other.pair[1])
        return Rotor(self.matrix @ other.matrix, pair)

    def power(self, n: int) -> "Rotor":
        return Rotor(self.matrix ** n)


def coordinate_map(images) -> ExactMatrix4:
    """Matrix of x -> (images[0](x), ..., images[3](x)) from linear row coefficients."""
    return ExactMatrix4.from_rows(images)


AD_Q = Rotor.from_pair(Q_HURWITZ, Q_HURWITZ, "Ad_q")
AD_P = Rotor.from_pair(P_ICOSIAN, P_ICOSIAN, "Ad_p")
MINUS_ID = Rotor(-ExactMatrix4.identity(), (Quaternion(-1), Q_ONE), "-id")
IDENTITY = Rotor(ExactMatrix4.identity(), (Q_ONE, Q_ONE), "id")


def cell8_generators() -> list[Rotor]:
    """The three explicit rotations used for the [4,3,3]+ presentation."""
    s1 = coordinate_map([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    s2 = coordinate_map([[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    return [Rotor(s1, name="sigma1"), Rotor(s2, name="sigma2"), Rotor(AD_Q.matrix, AD_Q.pair, "sigma3")]


def cell24_generators() -> list[Rotor]:
    """The three explicit rotations used for the [3,4,3]+ presentation."""
    h = HALF
    s1 = coordinate_map([[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]])
    s2 = coordinate_map([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    s3 = coordinate_map([[h, h, h, h], [h, h, -h, -h], [h, -h, h, -h], [-h, h, h, -h]])
    return [Rotor(s1, name="sigma1"), Rotor(s2, name="sigma2"), Rotor(s3, name="sigma3")]


def icosian_generators() -> list[Rotor]:
    """x -> a x b^-1 with a, b running over generators of the 120 unit icosians."""
    return [
        Rotor.from_pair(P_ICOSIAN, Q_ONE, "L_p"),
        Rotor.from_pair(Q_HURWITZ, Q_ONE, "L_q"),
        Rotor.from_pair(Q_ONE, P_ICOSIAN, "R_p"),
        Rotor.from_pair(Q_ONE, Q_HURWITZ, "R_q"),
    ]


def permutation_of(m: ExactMatrix4, poly: Polytope, index: VertexIndex | None = None) -> np.ndarray:
    """Vertex permutation induced by m; raises if m does not preserve the vertex set."""
    index = index or VertexIndex(poly.enc)
    imgs = apply_matrix(EncodedArray.from_matrix(m), poly.enc)
    perm = index.lookup(imgs)
    if perm is None:
        raise SymmetryError(f"matrix does not preserve the {poly.kind.label} vertex set")
    return perm


def independent_vertices(poly: Polytope) -> list[int]:
    chosen: list[int] = []
    for i, v in enumerate(poly.vertices):
        if rank([poly.vertices[j] for j in chosen] + [v]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == 4:
                return chosen
    raise SymmetryError("vertices do not span R^4")


def realize_from_vertex_permutation(poly: Polytope, perm, basis: list[int] | None = None) -> Rotor:
    """The unique linear map with V_i -> V_perm(i); must be a rotation."""
    perm = [int(x) for x in perm]
    if sorted(perm) != list(range(poly.n_vertices)):
        raise SymmetryError("not a permutation of the vertices")
    basis = basis or independent_vertices(poly)
    src = ExactMatrix4.from_columns([poly.vertices[b] for b in basis])
    dst = ExactMatrix4.from_columns([poly.vertices[perm[b]] for b in basis])
    m = dst @ src.inverse()
    if not m.is_orthogonal():
        raise SymmetryError("vertex permutation is not an isometry")
    if m.det() != ONE:
        raise SymmetryError("vertex permutation reverses orientation")
    if list(permutation_of(m, poly)) != perm:
        raise SymmetryError("vertex permutation is not induced by a linear map")
    return Rotor(m)


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a o b)[i] = a[b[i]]; works row-wise when b is 2-D."""
    return a[b]


def cycles_of(perm, offset: int = 1) -> list[tuple[int, ...]]:
    perm = [int(x) for x in perm]
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x + offset)
            x = perm[x]
        out.append(tuple(cyc))
    return out


def perm_order(perm) -> int:
    return lcm(*(len(c) for c in cycles_of(perm)))


@dataclass
class SymmetryGroup:
    poly: Polytope
    generators: list[Rotor]
    perms: np.ndarray
    gen_perms: list[np.ndarray]
    _index: dict = field(repr=False, default_factory=dict)
    _matrices: dict = field(repr=False, default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.perms)

    def index_of(self, perm) -> int:
        return self._index[np.asarray(perm, dtype=self.perms.dtype).tobytes()]

    def contains_perm(self, perm) -> bool:
        return np.asarray(perm, dtype=self.perms.dtype).tobytes() in self._index

    def mul(self, i: int, j: int) -> int:
        return self.index_of(_compose(self.perms[i], self.perms[j]))

    def inv(self, i: int) -> int:
        return self.index_of(np.argsort(self.perms[i]))

    def power(self, i: int, n: int) -> int:
        out = np.arange(self.poly.n_vertices, dtype=self.perms.dtype)
        if n < 0:
            i, n = self.inv(i), -n
        for _ in range(n):
            out = self.perms[i][out]
        return self.index_of(out)

    def word(self, indices) -> int:
        out = np.arange(self.poly.n_vertices, dtype=self.perms.dtype)
        for i in indices:
            out = _compose(out, self.perms[i])
        return self.index_of(out)

    @cached_property
    def _basis(self) -> list[int]:
        return independent_vertices(self.poly)

    def matrix(self, i: int) -> ExactMatrix4:
        if i not in self._matrices:
            self._matrices[i] = realize_from_vertex_permutation(self.poly, self.perms[i], self._basis).matrix
        return self._matrices[i]

    def rotor(self, i: int) -> Rotor:
        return Rotor(self.matrix(i))

    @cached_property
    def orders(self) -> np.ndarray:
        """Element orders, by iterated composition with early exit."""
        n = self.poly.n_vertices
        ident = np.arange(n, dtype=self.perms.dtype)
        out = np.zeros(self.order, dtype=np.int64)
        cur = self.perms.copy()
        live = np.arange(self.order)
        k = 1
        while live.size:
            done = np.all(cur == ident, axis=1)
            out[live[done]] = k
            live = live[~done]
            cur = np.take_along_axis(self.perms[live], cur[~done], axis=1)
            k += 1
            if k > 10 * n:
                raise SymmetryError("element order did not terminate")
        return out

    @cached_property
    def fixed_vertex_mask(self) -> np.ndarray:
        return self.perms == np.arange(self.poly.n_vertices)[None, :]

    def identity_index(self) -> int:
        return self.index_of(np.arange(self.poly.n_vertices))

    def edge_fixing_mask(self) -> np.ndarray:
        """(elements x edges) mask of pointwise edge fixing."""
        e = np.array(self.poly.edges)
        fx = self.fixed_vertex_mask
        return fx[:, e[:, 0]] & fx[:, e[:, 1]]


def generate_group(generators: list[Rotor], poly: Polytope, cap: int = 20000) -> SymmetryGroup:
    """Breadth-first closure of the generated group acting on the vertex set."""
    index = VertexIndex(poly.enc)
    n = poly.n_vertices
    dtype = np.int16 if n < 2**15 else np.int32
    gens = [permutation_of(g.matrix, poly, index).astype(dtype) for g in generators]
    ident = np.arange(n, dtype=dtype)
    seen = {ident.tobytes(): 0}
    elems = [ident]
    frontier = [ident]
    while frontier:
        block = np.array(frontier)
        frontier = []
        for g in gens:
            prods = g[block]
            for row in prods:
                key = row.tobytes()
                if key not in seen:
                    seen[key] = len(elems)
                    elems.append(row)
                    frontier.append(row)
                    if len(elems) > cap:
                        raise SymmetryError(f"closure exceeded cap {cap}")
    group = SymmetryGroup(poly, list(generators), np.array(elems), gens)
    group._index = seen
    return group


def closure_size(perm_gens: list[np.ndarray], cap: int) -> int:
    n = len(perm_gens[0])
    ident = np.arange(n, dtype=perm_gens[0].dtype)
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        block = np.array(frontier)
        frontier = []
        for g in perm_gens:
            for row in g[block]:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    frontier.append(row)
                    if len(seen) > cap:
                        return len(seen)
    return len(seen)


def element_order(g: Rotor, limit: int = 1000) -> int:
    m = g.matrix
    cur = m
    for n in range(1, limit + 1):
        if cur.is_identity():
            return n
        cur = cur @ m
    raise SymmetryError("element order exceeds limit")


@dataclass
class FixedPlane:
    basis: list[tuple[ExactScalar, ...]]
    tag: str  # plane | full | empty-on-sphere

    @property
    def dim(self) -> int:
        return len(self.basis)


def fixed_plane(g: Rotor | ExactMatrix4) -> FixedPlane:
    m = g.matrix if isinstance(g, Rotor) else g
    ker = nullspace((m - ExactMatrix4.identity()).rows())
    d = len(ker)
    if d == 0:
        return FixedPlane([], "empty-on-sphere")
    if d == 2:
        return FixedPlane(ker, "plane")
    if d == 4:
        return FixedPlane(ker, "full")
    raise SymmetryError(f"fixed space of dimension {d} for a rotation")


def in_span(vectors, w) -> bool:
    return rank(list(vectors) + [w]) == rank(list(vectors))


def same_span(a, b) -> bool:
    return rank(list(a)) == rank(list(b)) == rank(list(a) + list(b))


# generators of each kind's rotation group, as used by the group builder
def _group_generators(kind: PolytopeKind) -> list[Rotor]:
    if kind is PolytopeKind.CELL5:
        poly = get_polytope(kind)
        # the 3-cycle (V3 V4 V5) and the 5-cycle (V1 V2 V3 V4 V5)
        return [
            realize_from_vertex_permutation(poly, [0, 1, 3, 4, 2]),
            realize_from_vertex_permutation(poly, [1, 2, 3, 4, 0]),
        ]
    if kind is PolytopeKind.CELL8:
        return cell8_generators()
    if kind is PolytopeKind.CELL24:
        return cell24_generators()
    if kind is PolytopeKind.CELL16:
        # dual of the 8-cell, same rotation group
        return cell8_generators()
    return icosian_generators()


GROUP_ORDERS = {
    PolytopeKind.CELL5: 60,
    PolytopeKind.CELL8: 192,
    PolytopeKind.CELL16: 192,
    PolytopeKind.CELL24: 576,
    PolytopeKind.CELL120: 7200,
    PolytopeKind.CELL600: 7200,
}

_GROUPS: dict[PolytopeKind, SymmetryGroup] = {}


def rotation_group(kind) -> SymmetryGroup:
    """Memoized rotation group of a polytope kind.

    The 120-cell group is generated by the same icosian rotations as the
    600-cell group; ``generate_group`` checks that they preserve the 120-cell
    vertex set.
    """
    kind = PolytopeKind.parse(kind)
    if kind not in _GROUPS:
        _GROUPS[kind] = generate_group(_group_generators(kind), get_polytope(kind))
    return _GROUPS[kind]


# censuses and partitions


def census_edge_fixing(group: SymmetryGroup, m: int) -> int:
    """Number of order-m elements fixing at least one edge pointwise."""
    hits = np.nonzero(group.edge_fixing_mask().any(axis=1))[0]
    return int(np.sum(group.orders[hits] == m))


@dataclass
class EdgeStabilizer:
    edge: tuple[int, int]
    elements: list[int]
    generator: int
    order: int
    generator_trace: ExactScalar


def rotation_trace(r: int) -> ExactScalar:
    """2 + 2cos(2pi/r) for r in {2, 3, 4, 5, 6}, exactly."""
    table = {2: es(0), 3: es(1), 4: es(2), 5: es(2) + PHI_INV, 6: es(3)}
    return table[r]


def edge_stabilizer(group: SymmetryGroup, edge: tuple[int, int]) -> EdgeStabilizer:
    r = group.poly.schlafli[2]
    u, v = edge
    fx = group.fixed_vertex_mask
    elems = np.nonzero(fx[:, u] & fx[:, v])[0].tolist()
    if len(elems) != r:
        raise SymmetryError(f"edge stabilizer has order {len(elems)}, expected {r}")
    want = rotation_trace(r)
    gens = [e for e in elems if group.orders[e] == r]
    if not gens:
        raise SymmetryError("edge stabilizer is not cyclic")
    for g in gens:
        tr = group.matrix(g).trace()
        if tr == want:
            return EdgeStabilizer(edge, elems, g, r, tr)
    raise SymmetryError("no stabilizer generator rotates by 2pi/r")


def plane_key(u, v) -> tuple:
    """Normalized Pluecker coordinates of span{u, v}."""
    pl = [u[i] * v[j] - u[j] * v[i] for i, j in itertools.combinations(range(4), 2)]
    lead = next(c for c in pl if c)
    inv = lead.inv()
    return tuple(c * inv for c in pl)


@dataclass
class PlanePartition:
    planes: dict
    plane_count: int
    polygon_sizes: list[int]
    structure: str  # closed-polygon | disjoint-edges


def plane_edge_partition(poly: Polytope) -> PlanePartition:
    """Group edges by the 2-plane their endpoints span.

    The edges in one plane must either close up into a single polygon (24-
    and 600-cell) or be pairwise disjoint chords of the great circle
    (120-cell, where a plane meets 12 vertices but only 6 edges).
    """
    planes: dict[tuple, list[tuple[int, int]]] = {}
    for e in poly.edges:
        planes.setdefault(plane_key(poly.vertices[e[0]], poly.vertices[e[1]]), []).append(e)
    sizes = []
    kinds = set()
    for key, edges in planes.items():
        deg: dict[int, int] = {}
        for a, b in edges:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        degrees = set(deg.values())
        if degrees == {2} and len(deg) == len(edges) and _single_cycle(edges):
            kinds.add("closed-polygon")
        elif degrees == {1}:
            kinds.add("disjoint-edges")
        else:
            raise SymmetryError("edges in a plane neither close up nor are disjoint")
        sizes.append(len(edges))
    if len(kinds) != 1:
        raise SymmetryError("planes of mixed structure")
    return PlanePartition(planes, len(planes), sorted(set(sizes)), kinds.pop())


def _single_cycle(edges) -> bool:
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = edges[0][0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def vertices_in_plane(poly: Polytope, u, v) -> list[int]:
    return [n for n, w in enumerate(poly.vertices) if rank([u, v, w]) == 2]


@dataclass
class TransitivityReport:
    vertex_transitive: bool
    edge_transitive: bool
    edge_orbit_size: int
    edge_setwise_stabilizer: int


def transitivity_report(group: SymmetryGroup) -> TransitivityReport:
    poly = group.poly
    vorbit = set(group.perms[:, 0].tolist())
    a, b = poly.edges[0]
    ia, ib = group.perms[:, a], group.perms[:, b]
    images = {(min(x, y), max(x, y)) for x, y in zip(ia.tolist(), ib.tolist())}
    setwise = int(np.sum(((ia == a) & (ib == b)) | ((ia == b) & (ib == a))))
    return TransitivityReport(
        len(vorbit) == poly.n_vertices,
        len(images) == len(poly.edges),
        len(images),
        setwise,
    )


def facet_permutation(poly: Polytope, perm) -> list[int]:
    if poly.facets is None:
        raise SymmetryError("facets not enumerated")
    lookup = {frozenset(f): n for n, f in enumerate(poly.facets)}
    out = []
    for f in poly.facets:
        img = frozenset(int(perm[v]) for v in f)
        if img not in lookup:
            raise SymmetryError("permutation does not map facets to facets")
        out.append(lookup[img])
    return out


def vertex_cycles(group_or_poly, perm, include_fixed: bool = False) -> list[tuple[int, ...]]:
    cyc = cycles_of(perm)
    return cyc if include_fixed else [c for c in cyc if len(c) > 1]


# presentation search


@dataclass
class Presentation:
    """Generators sigma1..sigma3 of [p,q,r]+ realized in a concrete group."""

    schlafli: tuple[int, int, int]
    sigma: list[int]
    source: str

    def relation_words(self) -> list[tuple[str, list[int], int]]:
        """(name, word as generator positions, exponent) for each defining relation."""
        p, q, r = self.schlafli
        return [
            ("s1^%d" % p, [0], p),
            ("s2^%d" % q, [1], q),
            ("s3^%d" % r, [2], r),
            ("(s1s2)^2", [0, 1], 2),
            ("(s2s3)^2", [1, 2], 2),
            ("(s1s2s3)^2", [0, 1, 2], 2),
        ]


def _square_is_identity(block: np.ndarray, ident: np.ndarray) -> np.ndarray:
    return np.all(np.take_along_axis(block, block, axis=1) == ident, axis=1)


def find_coxeter_generators(group: SymmetryGroup, schlafli=None, seed: int | None = None,
                            max_closures: int = 5000) -> Presentation:
    """Search sigma1, sigma2, sigma3 satisfying the [p,q,r]+ relations and generating the group."""
    p, q, r = schlafli or group.poly.schlafli
    perms = group.perms
    orders = group.orders
    ident = np.arange(group.poly.n_vertices, dtype=perms.dtype)
    rng = random.Random(seed) if seed is not None else None

    def ordered(mask):
        idx = np.nonzero(mask)[0].tolist()
        if rng is not None:
            rng.shuffle(idx)
        return idx

    closures = 0
    for s1 in ordered(orders == p):
        p1 = perms[s1]
        # (s1 s2)^2 = 1
        ok2 = (orders == q) & _square_is_identity(p1[perms], ident)
        for s2 in ordered(ok2):
            p12 = p1[perms[s2]]
            p2 = perms[s2]
            ok3 = (orders == r) & _square_is_identity(p2[perms], ident) & _square_is_identity(p12[perms], ident)
            for s3 in ordered(ok3):
                closures += 1
                if closure_size([p1, p2, perms[s3]], group.order) == group.order:
                    return Presentation((p, q, r), [s1, s2, s3], "search")
                if closures >= max_closures:
                    raise SymmetryError("generator search budget exhausted")
    raise SymmetryError(f"no generators for [{p},{q},{r}]+ found")


_PRESENTATIONS: dict[tuple, Presentation] = {}


def presentation_for(kind, seed: int | None = None) -> Presentation:
    """Presentation generators: explicit for the 8- and 24-cell, searched otherwise."""
    kind = PolytopeKind.parse(kind)
    key = (kind, seed)
    if key in _PRESENTATIONS:
        return _PRESENTATIONS[key]
    group = rotation_group(kind)
    if kind in (PolytopeKind.CELL8, PolytopeKind.CELL24):
        gens = cell8_generators() if kind is PolytopeKind.CELL8 else cell24_generators()
        idx = [group.index_of(permutation_of(g.matrix, group.poly)) for g in gens]
        pres = Presentation(group.poly.schlafli, idx, "explicit")
    else:
        pres = find_coxeter_generators(group, seed=seed)
    _PRESENTATIONS[key] = pres
    return pres


def check_relations_downstairs(group: SymmetryGroup, pres: Presentation) -> list[tuple[str, bool]]:
    """Evaluate each relation word on exact matrices."""
    mats = [group.matrix(i) for i in pres.sigma]
    out = []
    for name, word, exp in pres.relation_words():
        m = ExactMatrix4.identity()
        for w in word:
            m = m @ mats[w]
        out.append((name, (m ** exp).is_identity()))
    return out


def presentation_generates(group: SymmetryGroup, pres: Presentation) -> bool:
    return closure_size([group.perms[i] for i in pres.sigma], group.order) == group.order

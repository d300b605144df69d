"""Exact coordinate models of the regular 4-polytopes and their radial graphs."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .encoded import EncodedArray, gram, scalar_num, vsign
from .exact import HALF, ONE, PHI, PHI_INV, SQRT5, ZERO, ExactScalar, es


class PolytopeError(ValueError):
    pass


class PolytopeKind(str, enum.Enum):
    CELL5 = "cell5"
    CELL8 = "cell8"
    CELL16 = "cell16"
    CELL24 = "cell24"
    CELL120 = "cell120"
    CELL600 = "cell600"

    @classmethod
    def parse(cls, s: "str | PolytopeKind") -> "PolytopeKind":
        if isinstance(s, PolytopeKind):
            return s
        t = str(s).lower().replace("-", "").replace("_", "")
        if t.endswith("cell"):
            t = "cell" + t[: -len("cell")]
        if t.isdigit():
            t = "cell" + t
        try:
            return cls(t)
        except ValueError:
            raise PolytopeError(f"unknown polytope kind {s!r}") from None

    @property
    def label(self) -> str:
        return self.value[4:] + "-cell"


# kinds for which the existence statement is made; cell16 is the control
SPLIT_KINDS = (
    PolytopeKind.CELL5,
    PolytopeKind.CELL8,
    PolytopeKind.CELL24,
    PolytopeKind.CELL120,
    PolytopeKind.CELL600,
)

SCHLAFLI = {
    PolytopeKind.CELL5: (3, 3, 3),
    PolytopeKind.CELL8: (4, 3, 3),
    PolytopeKind.CELL16: (3, 3, 4),
    PolytopeKind.CELL24: (3, 4, 3),
    PolytopeKind.CELL120: (5, 3, 3),
    PolytopeKind.CELL600: (3, 3, 5),
}

# expected facet counts when facets are enumerated
FACET_COUNTS = {
    PolytopeKind.CELL5: 5,
    PolytopeKind.CELL8: 8,
    PolytopeKind.CELL16: 16,
    PolytopeKind.CELL24: 24,
    PolytopeKind.CELL600: 600,
}
FACET_SIZES = {(3, 3): 4, (4, 3): 8, (3, 4): 6}


def _signed_variants(base):
    """All sign choices on the nonzero entries of base."""
    nz = [i for i, v in enumerate(base) if v]
    for signs in itertools.product((1, -1), repeat=len(nz)):
        out = list(base)
        for i, s in zip(nz, signs):
            if s < 0:
                out[i] = -out[i]
        yield tuple(out)


def _parity(perm) -> int:
    p = list(perm)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def _family(base, even_only=False):
    base = tuple(es(v) for v in base)
    out = set()
    for perm in itertools.permutations(range(4)):
        if even_only and _parity(perm) < 0:
            continue
        permuted = tuple(base[perm[i]] for i in range(4))
        out.update(_signed_variants(permuted))
    return sorted(out, reverse=True)


def _axis_family(scale=ONE):
    """(+-scale, 0, 0, 0) and permutations, ordered axis by axis, + before -."""
    out = []
    for i in range(4):
        for s in (scale, -scale):
            v = [ZERO] * 4
            v[i] = s
            out.append(tuple(v))
    return out


def _sign_cube(scale):
    """scale * (+-1, +-1, +-1, +-1), lexicographic with + before -."""
    return [tuple(scale * s for s in signs) for signs in itertools.product((1, -1), repeat=4)]


def vertices_for(kind: PolytopeKind) -> list[tuple[ExactScalar, ...]]:
    kind = PolytopeKind.parse(kind)
    if kind is PolytopeKind.CELL5:
        s = ExactScalar(0, Fraction(1, 4))
        m = ExactScalar(Fraction(-1, 4))
        return [
            (ONE, ZERO, ZERO, ZERO),
            (m, s, s, s),
            (m, s, -s, -s),
            (m, -s, s, -s),
            (m, -s, -s, s),
        ]
    if kind is PolytopeKind.CELL8:
        return _sign_cube(ONE)
    if kind is PolytopeKind.CELL16:
        return _axis_family()
    if kind is PolytopeKind.CELL24:
        return _axis_family() + _sign_cube(HALF)
    if kind is PolytopeKind.CELL120:
        phi2 = PHI * PHI
        phim2 = PHI_INV * PHI_INV
        fams = [
            _family((2, 2, 0, 0)),
            _family((SQRT5, 1, 1, 1)),
            _family((phim2, PHI, PHI, PHI)),
            _family((phi2, PHI_INV, PHI_INV, PHI_INV)),
            _family((phi2, phim2, 1, 0), even_only=True),
            _family((SQRT5, PHI_INV, PHI, 0), even_only=True),
            _family((2, 1, PHI, PHI_INV), even_only=True),
        ]
        return [v for f in fams for v in f]
    if kind is PolytopeKind.CELL600:
        a3 = _family((ZERO, HALF, PHI * HALF, PHI_INV * HALF), even_only=True)
        return _axis_family() + _sign_cube(HALF) + a3
    raise PolytopeError(f"no model for {kind}")


METRICS = {
    # (edge length squared, vertex norm squared)
    PolytopeKind.CELL5: (es(Fraction(5, 2)), ONE),
    PolytopeKind.CELL8: (es(4), es(4)),
    PolytopeKind.CELL16: (es(2), ONE),
    PolytopeKind.CELL24: (ONE, ONE),
    PolytopeKind.CELL120: (es(3 - SQRT5) * es(3 - SQRT5), es(8)),
    PolytopeKind.CELL600: (PHI_INV * PHI_INV, ONE),
}


@dataclass
class Polytope:
    kind: PolytopeKind
    vertices: list
    schlafli: tuple[int, int, int]
    edge_length_sq: ExactScalar
    vertex_norm_sq: ExactScalar
    edges: list[tuple[int, int]] = field(default_factory=list)
    facets: list[tuple[int, ...]] | None = None

    @cached_property
    def enc(self) -> EncodedArray:
        return EncodedArray.from_exact(self.vertices)

    @cached_property
    def float_vertices(self) -> np.ndarray:
        return self.enc.to_float()

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def neighbors(self) -> list[set[int]]:
        nb = [set() for _ in self.vertices]
        for i, j in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return nb

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: n for n, e in enumerate(self.edges)}

    def edge_id(self, i: int, j: int) -> int:
        return self.edge_index[(min(i, j), max(i, j))]

    def vertex_label(self, i: int) -> str:
        return f"V{i + 1}"


def build_polytope(kind, *, with_edges=True, with_facets=None) -> Polytope:
    """Vertices (and by default edges) of a regular 4-polytope.

    ``with_facets`` defaults to True for the kinds with an enumeration rule.
    """
    kind = PolytopeKind.parse(kind)
    l2, r2 = METRICS[kind]
    poly = Polytope(kind, vertices_for(kind), SCHLAFLI[kind], l2, r2)
    for v in poly.vertices:
        if sum((c * c for c in v), ZERO) != r2:
            raise PolytopeError(f"vertex off the sphere in {kind.label}")
    if with_edges:
        poly.edges = detect_edges(poly)
    if with_facets is None:
        with_facets = with_edges and kind in FACET_COUNTS
    if with_facets:
        poly.facets = enumerate_facets(poly)
    return poly


def _edge_dot(poly: Polytope) -> ExactScalar:
    # |u - v|^2 = 2R^2 - 2 u.v
    return poly.vertex_norm_sq - poly.edge_length_sq * HALF


def detect_edges(poly: Polytope) -> list[tuple[int, int]]:
    """All vertex pairs at the prescribed edge length, checked to be the minimum."""
    ga, gb, d = gram(poly.enc)
    ta, tb = scalar_num(_edge_dot(poly), d)
    n = poly.n_vertices
    off = ~np.eye(n, dtype=bool)
    # minimal distance <=> maximal dot product among distinct vertices
    above = vsign(ga - ta, gb - tb)
    if np.any(above[off] > 0):
        raise PolytopeError("a vertex pair is closer than the prescribed edge length")
    hit = (ga == ta) & (gb == tb) & off
    ii, jj = np.nonzero(np.triu(hit))
    if len(ii) == 0:
        raise PolytopeError("no pair realizes the prescribed edge length")
    return sorted(zip(ii.tolist(), jj.tolist()))


def valency_profile(poly: Polytope) -> tuple[list[int], int]:
    val = [len(nb) for nb in poly.neighbors]
    if len(set(val)) != 1:
        raise PolytopeError("non-uniform valency")
    return val, val[0]


def _four_cliques(poly: Polytope) -> list[tuple[int, ...]]:
    nb = poly.neighbors
    out = []
    for i, j in poly.edges:
        common = sorted(k for k in nb[i] & nb[j] if k > j)
        for a, b in itertools.combinations(common, 2):
            if b in nb[a]:
                out.append((i, j, a, b))
    return sorted(out)


def octahedra_from_edge(poly: Polytope, a: int, b: int) -> list[tuple[int, ...]]:
    """Octahedral facets through edge [a, b] via common neighbours.

    For each pair {c, d} of common neighbours of a and b, the facet is
    {c, d} together with N(a)&N(c)&N(d) and N(b)&N(c)&N(d).
    """
    nb = poly.neighbors
    out = []
    for c, d in itertools.combinations(sorted(nb[a] & nb[b]), 2):
        if d in nb[c]:
            continue
        facet = {c, d} | (nb[a] & nb[c] & nb[d]) | (nb[b] & nb[c] & nb[d])
        out.append(tuple(sorted(facet)))
    return out


def enumerate_facets(poly: Polytope) -> list[tuple[int, ...]]:
    kind = poly.kind
    if kind is PolytopeKind.CELL120:
        raise PolytopeError("facet enumeration is not provided for the 120-cell")
    if kind is PolytopeKind.CELL5:
        # T_i is the facet opposite V_i
        n = poly.n_vertices
        facets = [tuple(j for j in range(n) if j != i) for i in range(n)]
    elif kind is PolytopeKind.CELL8:
        # C^i_+ , C^i_- : the cube x_i = +1 / -1
        facets = []
        for i in range(4):
            for s in (1, -1):
                facets.append(tuple(n for n, v in enumerate(poly.vertices) if v[i] == s))
    elif kind is PolytopeKind.CELL24:
        found = set()
        for a, b in poly.edges:
            found.update(octahedra_from_edge(poly, a, b))
        facets = sorted(found)
    else:
        facets = _four_cliques(poly)
    expected = FACET_COUNTS[kind]
    if len(facets) != expected:
        raise PolytopeError(f"{kind.label}: found {len(facets)} facets, expected {expected}")
    size = FACET_SIZES[poly.schlafli[:2]]
    for f in facets:
        if len(f) != size:
            raise PolytopeError(f"facet of size {len(f)} in {kind.label}")
    return facets


def facet_distance_values(poly: Polytope, facet) -> set[ExactScalar]:
    out = set()
    for i, j in itertools.combinations(facet, 2):
        u, v = poly.vertices[i], poly.vertices[j]
        out.add(sum(((x - y) * (x - y) for x, y in zip(u, v)), ZERO))
    return out


@dataclass
class FacetAdjacency:
    pairs: list[tuple[int, int]]
    neighbors: list[set[int]]
    edge_cycles: dict[tuple[int, int], list[int]]


def facet_adjacency(poly: Polytope) -> FacetAdjacency:
    """Dual graph (facets sharing a 2-face) and the facet cycle around each edge."""
    if poly.facets is None:
        raise PolytopeError("facets not enumerated")
    p, _, r = poly.schlafli
    sets = [frozenset(f) for f in poly.facets]
    by_vertex: dict[int, list[int]] = {}
    for n, f in enumerate(sets):
        for v in f:
            by_vertex.setdefault(v, []).append(n)
    pairs = set()
    for v, fs in by_vertex.items():
        for a, b in itertools.combinations(fs, 2):
            if len(sets[a] & sets[b]) == p:
                pairs.add((a, b))
    pairs = sorted(pairs)
    nbrs = [set() for _ in sets]
    for a, b in pairs:
        nbrs[a].add(b)
        nbrs[b].add(a)
    cycles = {}
    for e in poly.edges:
        around = [n for n in by_vertex[e[0]] if e[1] in sets[n]]
        cycles[e] = _as_cycle(around, nbrs, e)
        if len(cycles[e]) != r:
            raise PolytopeError(f"edge {e} has a facet cycle of length {len(cycles[e])}, expected {r}")
    return FacetAdjacency(pairs, nbrs, cycles)


def _as_cycle(nodes, nbrs, edge) -> list[int]:
    """Order nodes along the single cycle they span in the dual graph."""
    nodes = sorted(nodes)
    node_set = set(nodes)
    for n in nodes:
        if len(nbrs[n] & node_set) != 2:
            raise PolytopeError(f"facets around edge {edge} do not form a cycle")
    cycle = [nodes[0]]
    prev = None
    while True:
        cur = cycle[-1]
        nxt = min(x for x in nbrs[cur] & node_set if x != prev)
        if nxt == cycle[0]:
            break
        prev = cur
        cycle.append(nxt)
        if len(cycle) > len(nodes):
            raise PolytopeError(f"facets around edge {edge} do not form a single cycle")
    if len(cycle) != len(nodes):
        raise PolytopeError(f"facets around edge {edge} split into several cycles")
    return cycle


def euler_characteristic_check(poly: Polytope) -> dict:
    adj = facet_adjacency(poly)
    counts = dict(V=poly.n_vertices, E=len(poly.edges), F=len(adj.pairs), C=len(poly.facets))
    counts["chi"] = counts["V"] - counts["E"] + counts["F"] - counts["C"]
    return counts


@dataclass
class GammaGraph:
    """Radial projection of the 1-skeleton: rays through vertices, geodesic arcs."""

    polytope: Polytope
    rays: list
    arcs: list[tuple[int, int]]
    valency: list[int]

    @property
    def n_vertices(self) -> int:
        return len(self.rays)

    @property
    def n_edges(self) -> int:
        return len(self.arcs)

    def is_connected(self) -> bool:
        nb = self.polytope.neighbors
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in nb[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices


def radial_graph(poly: Polytope) -> GammaGraph:
    for i, j in poly.edges:
        if all(a == -b for a, b in zip(poly.vertices[i], poly.vertices[j])):
            raise PolytopeError(f"edge {(i, j)} joins antipodal points")
    val = [len(nb) for nb in poly.neighbors]
    return GammaGraph(poly, list(poly.vertices), list(poly.edges), val)


_CACHE: dict[PolytopeKind, Polytope] = {}


def get_polytope(kind) -> Polytope:
    """Memoized build with edges and (where defined) facets."""
    kind = PolytopeKind.parse(kind)
    if kind not in _CACHE:
        _CACHE[kind] = build_polytope(kind)
    return _CACHE[kind]

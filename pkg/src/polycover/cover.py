"""Monodromy, the combinatorial double cover of S^3 minus Gamma, and symmetry lifts.

Sheets of the cover are (facet, sign) pairs.  Crossing an open 2-face
multiplies the sign by the transition w, fixed here to -1 on every dual
edge; the holonomy around an edge of Gamma is then (-1)^r with r facets
meeting there.  A lift of a rotation g is a sign function s on facets with
(F, e) -> (gF, s(F) e).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .encoded import EncodedArray, gram, vsign
from .exact import ExactScalar, es
from .polytopes import FacetAdjacency, GammaGraph, Polytope, PolytopeKind, facet_adjacency, get_polytope
from .symmetry import (
    Presentation,
    SymmetryGroup,
    cycles_of,
    facet_permutation,
    fixed_plane,
    presentation_for,
    rotation_group,
)


class CoverError(ValueError):
    pass


class CoverObstruction(CoverError):
    """No double cover with -1 meridian monodromy is compatible with the facet structure."""

    def __init__(self, edge, holonomy, r):
        self.edge = edge
        self.holonomy = holonomy
        self.r = r
        super().__init__(
            f"edge {edge}: holonomy {holonomy:+d} around an even facet cycle (r={r})"
        )


class OddValencyError(CoverError):
    def __init__(self, vertex, valency):
        self.vertex = vertex
        self.valency = valency
        super().__init__(f"vertex {vertex} has odd valency {valency}")


# Gamma homology and the edge-loop walk


def _adjacency(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for k, (a, b) in enumerate(edges):
        adj[a].append(k)
        adj[b].append(k)
    return adj


def _connected(n: int, edges) -> bool:
    adj = _adjacency(n, edges)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for k in adj[v]:
            a, b = edges[k]
            w = b if a == v else a
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _graph_data(gamma):
    if isinstance(gamma, GammaGraph):
        return gamma.n_vertices, list(gamma.arcs)
    n, edges = gamma
    return n, list(edges)


def h1_rank(gamma) -> int:
    """First Betti number E - V + 1 of a connected graph."""
    n, edges = _graph_data(gamma)
    if not _connected(n, edges):
        raise CoverError("graph is disconnected")
    return len(edges) - n + 1


@dataclass
class EdgeLoopDecomposition:
    loops: list[list[int]]  # vertex sequences, closed (first == last)
    edge_loops: list[list[int]]  # edge indices along each loop

    def chain(self, n_edges: int) -> np.ndarray:
        """Z/2 chain counting how often each edge is traversed."""
        c = np.zeros(n_edges, dtype=np.int64)
        for el in self.edge_loops:
            for k in el:
                c[k] += 1
        return c % 2


def edge_loop_decomposition(gamma) -> EdgeLoopDecomposition:
    """Greedy walk: leave along an unused edge and keep going until stuck.

    With every valency even the walk can only get stuck at its start, so it
    closes up; repeating from any vertex with unused edges covers every edge
    exactly once.
    """
    n, edges = _graph_data(gamma)
    adj = _adjacency(n, edges)
    for v in range(n):
        if len(adj[v]) % 2:
            raise OddValencyError(v, len(adj[v]))
    used = [False] * len(edges)
    ptr = [0] * n
    loops, edge_loops = [], []

    def next_edge(v):
        while ptr[v] < len(adj[v]) and used[adj[v][ptr[v]]]:
            ptr[v] += 1
        return adj[v][ptr[v]] if ptr[v] < len(adj[v]) else None

    for start in range(n):
        while next_edge(start) is not None:
            path, epath = [start], []
            v = start
            while True:
                k = next_edge(v)
                if k is None:
                    break
                used[k] = True
                a, b = edges[k]
                v = b if a == v else a
                path.append(v)
                epath.append(k)
            if v != start:
                raise CoverError("walk did not close up")
            loops.append(path)
            edge_loops.append(epath)
    return EdgeLoopDecomposition(loops, edge_loops)


@dataclass
class MonodromyCharacter:
    """Z/2 character on H_1(S^3 - Gamma) taking -1 on every edge meridian."""

    n_edges: int

    def value_on_meridians(self, crossings) -> int:
        """Character value on a loop given the edges whose meridians it winds around."""
        return -1 if len(list(crossings)) % 2 else 1

    def meridian(self, edge: int) -> int:
        if not 0 <= edge < self.n_edges:
            raise CoverError("no such edge")
        return -1


def monodromy_character(gamma: GammaGraph) -> MonodromyCharacter:
    """Exists iff every vertex has even valency."""
    for v, d in enumerate(gamma.valency):
        if d % 2:
            raise OddValencyError(v, d)
    return MonodromyCharacter(gamma.n_edges)


def check_monodromy_invariance(group: SymmetryGroup, element: int) -> bool:
    """The element permutes the edges of Gamma, so it preserves the meridian character."""
    poly = group.poly
    adj = poly.__dict__.get("_adj_matrix")
    if adj is None:
        e = np.array(poly.edges)
        adj = np.zeros((poly.n_vertices, poly.n_vertices), dtype=bool)
        adj[e[:, 0], e[:, 1]] = adj[e[:, 1], e[:, 0]] = True
        poly.__dict__["_adj_matrix"] = adj
    perm = np.asarray(group.perms[element], dtype=np.int64)
    e = np.array(poly.edges)
    if not np.all(adj[perm[e[:, 0]], perm[e[:, 1]]]):
        raise CoverError("element does not preserve Gamma")
    return True


# the cover


@dataclass
class CoverModel:
    poly: Polytope
    adjacency: FacetAdjacency
    transition: dict[tuple[int, int], int]
    holonomy: dict[tuple[int, int], int]

    @property
    def n_facets(self) -> int:
        return len(self.poly.facets)

    @property
    def n_sheets(self) -> int:
        return 2 * self.n_facets

    def w(self, f: int, g: int) -> int:
        return self.transition[(min(f, g), max(f, g))]

    def facet_label(self, f: int) -> str:
        return facet_label(self.poly, f)

    def sheet_label(self, sheet: int) -> str:
        f = self.facet_label(sheet // 2)
        if f[-1] in "+-":
            f = f"({f})"
        return f + ("+" if sheet % 2 == 0 else "-")

    def deck(self) -> "Lift":
        n = self.n_facets
        return Lift(self, None, list(range(n)), np.full(n, -1, dtype=np.int64))

    def identity(self) -> "Lift":
        n = self.n_facets
        return Lift(self, None, list(range(n)), np.ones(n, dtype=np.int64))


def facet_label(poly: Polytope, f: int) -> str:
    kind = poly.kind
    if kind is PolytopeKind.CELL5:
        return f"T{f + 1}"
    if kind is PolytopeKind.CELL8:
        return f"C{f // 2 + 1}{'+' if f % 2 == 0 else '-'}"
    if kind is PolytopeKind.CELL24:
        return f"O{f + 1}"
    return f"F{f + 1}"


def build_cover(poly: Polytope) -> CoverModel:
    """Sheets over facets with w = -1 across every shared 2-face.

    Succeeds iff every edge has an odd number of facets around it.
    """
    adj = facet_adjacency(poly)
    transition = {pair: -1 for pair in adj.pairs}
    hol = {}
    r = poly.schlafli[2]
    for e, cyc in adj.edge_cycles.items():
        h = 1
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            h *= transition[(min(a, b), max(a, b))]
        hol[e] = h
        if h != -1:
            raise CoverObstruction(e, h, r)
    if not _connected(len(poly.facets), adj.pairs):
        raise CoverError("dual graph is disconnected")
    return CoverModel(poly, adj, transition, hol)


def _perm_order(perm: np.ndarray) -> int:
    """Order by repeated composition; permutations here have small order."""
    ident = np.arange(len(perm))
    cur = perm.copy()
    k = 1
    while not np.array_equal(cur, ident):
        cur = perm[cur]
        k += 1
        if k > 4 * len(perm) + 4:
            raise CoverError("permutation order did not terminate")
    return k


@dataclass
class Lift:
    cover: CoverModel
    element: int | None
    facet_perm: list[int]
    signs: np.ndarray  # s(F) for each facet F

    def sheet_perm(self) -> list[int]:
        """Sheet 2F + e (e = 0 for +, 1 for -) maps to 2 gF + e', e' = e flipped when s(F) = -1."""
        return self.sheet_array().tolist()

    def sheet_array(self) -> np.ndarray:
        gf = np.asarray(self.facet_perm, dtype=np.int64)
        flip = (np.asarray(self.signs) < 0).astype(np.int64)
        out = np.empty(2 * len(gf), dtype=np.int64)
        out[0::2] = 2 * gf + flip
        out[1::2] = 2 * gf + 1 - flip
        return out

    def compose(self, other: "Lift") -> "Lift":
        """self o other."""
        fp = [self.facet_perm[other.facet_perm[f]] for f in range(len(self.facet_perm))]
        signs = np.array([int(other.signs[f]) * int(self.signs[other.facet_perm[f]])
                          for f in range(len(fp))], dtype=np.int64)
        return Lift(self.cover, None, fp, signs)

    def __matmul__(self, other: "Lift") -> "Lift":
        return self.compose(other)

    def power(self, n: int) -> "Lift":
        out = self.cover.identity()
        for _ in range(n):
            out = self.compose(out)
        return out

    def with_deck(self) -> "Lift":
        return Lift(self.cover, self.element, list(self.facet_perm), -self.signs)

    def order(self) -> int:
        return _perm_order(self.sheet_array())

    def is_identity(self) -> bool:
        return self.facet_perm == list(range(len(self.facet_perm))) and bool(np.all(self.signs == 1))

    def is_deck(self) -> bool:
        return self.facet_perm == list(range(len(self.facet_perm))) and bool(np.all(self.signs == -1))

    def constant_sign(self) -> int | None:
        vals = set(int(x) for x in self.signs)
        return vals.pop() if len(vals) == 1 else None

    def sheet_cycles(self, include_fixed: bool = True) -> list[list[str]]:
        out = []
        for c in cycles_of(self.sheet_perm(), offset=0):
            if include_fixed or len(c) > 1:
                out.append([self.cover.sheet_label(s) for s in c])
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in cycles_of(self.sheet_perm())))

    def commutes_with_deck(self) -> bool:
        d = self.cover.deck()
        a, b = self.compose(d), d.compose(self)
        return a.facet_perm == b.facet_perm and bool(np.all(a.signs == b.signs))


def _dual_tree(cover: CoverModel):
    """BFS order of the dual graph as (parent, child) arrays, plus all adjacent pairs and weights."""
    cache = cover.__dict__.get("_tree")
    if cache is None:
        nbrs = cover.adjacency.neighbors
        seen = {0}
        order, queue = [], [0]
        for f in queue:
            for g in sorted(nbrs[f]):
                if g not in seen:
                    seen.add(g)
                    order.append((f, g))
                    queue.append(g)
        if len(seen) != cover.n_facets:
            raise CoverError("dual graph is disconnected")
        pairs = np.array(cover.adjacency.pairs, dtype=np.int64)
        wmat = np.zeros((cover.n_facets, cover.n_facets), dtype=np.int64)
        for (a, b), w in cover.transition.items():
            wmat[a, b] = wmat[b, a] = w
        w_pairs = wmat[pairs[:, 0], pairs[:, 1]]
        tree = np.array(order, dtype=np.int64).reshape(-1, 2)
        cache = (tree, pairs, w_pairs, wmat)
        cover.__dict__["_tree"] = cache
    return cache


def _facet_perm_fast(cover: CoverModel, perm) -> list[int]:
    lookup = cover.__dict__.get("_facet_lookup")
    if lookup is None:
        fa = np.sort(np.array(cover.poly.facets, dtype=np.int64), axis=1)
        lookup = (fa, {r.tobytes(): n for n, r in enumerate(fa)})
        cover.__dict__["_facet_lookup"] = lookup
    fa, index = lookup
    img = np.sort(np.asarray(perm, dtype=np.int64)[fa], axis=1)
    try:
        return [index[r.tobytes()] for r in img]
    except KeyError:
        raise CoverError("permutation does not map facets to facets") from None


def lift_symmetry(cover: CoverModel, group: SymmetryGroup, element: int) -> tuple[Lift, Lift]:
    """Both lifts of a rotation, by solving s(F)s(F') = w(F,F') w(gF,gF') on the dual graph.

    Signs are propagated along a spanning tree and then checked on every dual edge.
    """
    check_monodromy_invariance(group, element)
    fp = _facet_perm_fast(cover, group.perms[element])
    tree, pairs, w_pairs, wmat = _dual_tree(cover)
    fpa = np.asarray(fp)
    step = wmat[tree[:, 0], tree[:, 1]] * wmat[fpa[tree[:, 0]], fpa[tree[:, 1]]]
    signs = np.zeros(cover.n_facets, dtype=np.int64)
    signs[0] = 1
    for (f, g), st in zip(tree.tolist(), step.tolist()):
        signs[g] = signs[f] * st
    w_img = wmat[fpa[pairs[:, 0]], fpa[pairs[:, 1]]]
    if np.any(signs[pairs[:, 0]] * signs[pairs[:, 1]] != w_pairs * w_img):
        raise CoverError("lift compatibility system is inconsistent")
    a = Lift(cover, element, fp, signs)
    return a, a.with_deck()


def lift_order(lift: Lift) -> int:
    return lift.order()


def induced_bundle_sign(lift: Lift) -> int:
    """Sign by which the lift acts on the line bundle in the sheet trivialization."""
    s = lift.constant_sign()
    if s is None:
        raise CoverError("lift sign is not constant for a w = -1 cover")
    return s


def odd_order_lift(cover: CoverModel, group: SymmetryGroup, element: int) -> Lift:
    """For odd base order m, the lift of order m (the other has order 2m)."""
    m = int(group.orders[element])
    if m % 2 == 0:
        raise CoverError("element has even order")
    a, b = lift_symmetry(cover, group, element)
    return a if a.order() == m else b


# fixed points of rotations relative to the cell structure


def facet_centroids(poly: Polytope) -> EncodedArray:
    sums = []
    for f in poly.facets:
        vs = [poly.vertices[i] for i in f]
        sums.append(tuple(sum((v[k] for v in vs), es(0)) for k in range(4)))
    return EncodedArray.from_exact(sums)


def locate_point(poly: Polytope, x, centroids: EncodedArray | None = None) -> list[int]:
    """Facets whose radial cone contains x: the maximizers of <x, centroid>."""
    centroids = centroids or facet_centroids(poly)
    xe = EncodedArray.from_exact([x])
    ga, gb, _ = gram(xe, centroids)
    ga, gb = ga[0], gb[0]
    approx = ga + gb * np.sqrt(5.0)
    best = int(np.argmax(approx))
    cand = np.nonzero(approx >= approx[best] - 1e-6 * (1 + abs(approx[best])))[0]
    # exact maximum among the float candidates
    top = [int(cand[0])]
    for c in cand[1:]:
        s = int(vsign(np.array([ga[c] - ga[top[0]]]), np.array([gb[c] - gb[top[0]]]))[0])
        if s > 0:
            top = [int(c)]
        elif s == 0:
            top.append(int(c))
    return sorted(top)


@dataclass
class FixedPointWitness:
    point: tuple
    facets: list[int]
    where: str  # facet | ridge


def fixed_point_off_gamma(cover: CoverModel, group: SymmetryGroup, element: int,
                          tries: int = 40) -> FixedPointWitness | None:
    """A point of Fix(g) on the sphere lying in an open facet or open 2-face."""
    fp = fixed_plane(group.matrix(element))
    if fp.tag != "plane":
        return None
    u, v = fp.basis
    cents = facet_centroids(cover.poly)
    nbrs = cover.adjacency.neighbors
    coeffs = [(1, 0), (0, 1), (1, 1), (1, -1)] + [(a, b) for a in range(1, 8) for b in range(-7, 8) if b]
    for a, b in coeffs[:tries]:
        x = tuple(es(a) * p + es(b) * q for p, q in zip(u, v))
        top = locate_point(cover.poly, x, cents)
        if len(top) == 1:
            return FixedPointWitness(x, top, "facet")
        if len(top) == 2 and top[1] in nbrs[top[0]]:
            return FixedPointWitness(x, top, "ridge")
    return None


def fixed_sheet_lift(cover: CoverModel, group: SymmetryGroup, element: int) -> tuple[Lift, FixedPointWitness]:
    """The lift fixing a sheet point over a fixed point of g off Gamma."""
    wit = fixed_point_off_gamma(cover, group, element)
    if wit is None:
        raise CoverError("no fixed point off Gamma found")
    a, b = lift_symmetry(cover, group, element)
    f = wit.facets[0]
    for lift in (a, b):
        gf = lift.facet_perm[f]
        s = int(lift.signs[f])
        if wit.where == "facet":
            if gf != f:
                raise CoverError("fixed point in a facet that is not preserved")
            if s == 1:
                return lift, wit
        else:
            f2 = wit.facets[1]
            if gf == f and s == 1:
                return lift, wit
            # local sheet {(f,+), (f2, w)}: mapping (f,+) to (f2, w) keeps it
            if gf == f2 and s == cover.w(f, f2):
                return lift, wit
    raise CoverError("neither lift fixes the sheet over the fixed point")


# certificates and splitting


@dataclass
class FixedCircleCertificate:
    element: int
    ok: bool
    reason: str
    plane_dim: int
    edges_in_plane: list[tuple[int, int]] = field(default_factory=list)


def fixed_circle_avoids_gamma(group: SymmetryGroup, element: int) -> FixedCircleCertificate:
    """Check that Fix(g) on S^3 is a great circle not contained in Gamma.

    If an edge had both endpoints in the fixed plane, g would fix that edge
    pointwise; edge stabilizers are cyclic of odd order, so an involution
    cannot do this.  Both facts are checked rather than assumed.
    """
    m = group.matrix(element)
    if m.is_identity() or (-m).is_identity():
        raise CoverError("certificate needs an element other than +-id")
    fp = fixed_plane(m)
    if fp.tag != "plane":
        return FixedCircleCertificate(element, False, f"fixed set is {fp.tag}", fp.dim)
    fixed = group.fixed_vertex_mask[element]
    inside = [e for e in group.poly.edges if fixed[e[0]] and fixed[e[1]]]
    if inside:
        order = int(group.orders[element])
        return FixedCircleCertificate(
            element, False,
            f"order-{order} element fixes an edge pointwise; stabilizers have odd order "
            f"{group.poly.schlafli[2]}", 2, inside)
    return FixedCircleCertificate(element, True, "fixed great circle meets S^3 - Gamma", 2)


@dataclass
class RelationOutcome:
    word: str
    downstairs_identity: bool
    sign: int | None  # +1: identity upstairs, -1: deck involution
    note: str = ""


@dataclass
class ExtensionLedger:
    kind: PolytopeKind
    mode: str
    presentation: str
    generators: list[dict]
    relations: list[RelationOutcome]
    verdict: str  # split | non-split | inconclusive
    lifts: list = field(default_factory=list, repr=False)  # chosen generator lifts (model mode)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "mode": self.mode,
            "presentation": self.presentation,
            "generators": self.generators,
            "relations": [
                {"word": r.word, "downstairs": r.downstairs_identity, "sign": r.sign, "note": r.note}
                for r in self.relations
            ],
            "verdict": self.verdict,
        }


@dataclass
class WordRelation:
    """A relation (g_{i1} ... g_{ik})^exp = 1 over named generators."""

    name: str
    word: list[int]
    exp: int


def coxeter_relations(pres: Presentation) -> list[WordRelation]:
    return [WordRelation(n, w, e) for n, w, e in pres.relation_words()]


def a5_generators(group: SymmetryGroup, pres: Presentation) -> tuple[list[int], list[WordRelation]]:
    """s = sigma1, r = sigma3 sigma2 with relations r^2 = s^3 = (sr)^5 = 1."""
    s1, s2, s3 = pres.sigma
    s = s1
    r = group.mul(s3, s2)
    rels = [WordRelation("r^2", [1], 2), WordRelation("s^3", [0], 3), WordRelation("(sr)^5", [0, 1], 5)]
    return [s, r], rels


def _word_element(group: SymmetryGroup, gens: list[int], word: list[int], exp: int) -> int:
    base = group.word([gens[i] for i in word])
    return group.power(base, exp)


def _word_lift(lifts: list[Lift], word: list[int], exp: int) -> Lift:
    base = lifts[word[0]]
    for i in word[1:]:
        base = base.compose(lifts[i])
    return base.power(exp)


def verify_splitting_model(kind, presentation: str = "coxeter", seed: int | None = None) -> ExtensionLedger:
    """Choose lifts of the presentation generators and evaluate every relation on sheets."""
    kind = PolytopeKind.parse(kind)
    poly = get_polytope(kind)
    group = rotation_group(kind)
    cover = build_cover(poly)
    pres = presentation_for(kind, seed=seed)
    if presentation == "a5":
        if kind is not PolytopeKind.CELL5:
            raise CoverError("the A5 presentation applies to the 5-cell only")
        gens, rels = a5_generators(group, pres)
        names = ["s", "r"]
    else:
        gens = list(pres.sigma)
        rels = coxeter_relations(pres)
        names = ["sigma1", "sigma2", "sigma3"]

    lifts, gen_info = [], []
    for name, g in zip(names, gens):
        m = int(group.orders[g])
        if m % 2:
            lift = odd_order_lift(cover, group, g)
            rule = "odd-order lift"
        else:
            wit = fixed_point_off_gamma(cover, group, g)
            if wit is not None:
                lift, _ = fixed_sheet_lift(cover, group, g)
                rule = f"fixes a sheet over a fixed point in an open {wit.where}"
            else:
                lift = lift_symmetry(cover, group, g)[0]
                rule = "no fixed point on S^3; either lift"
        lifts.append(lift)
        gen_info.append({"name": name, "base_order": m, "lift_sign": induced_bundle_sign(lift),
                         "lift_order": lift.order(), "rule": rule})

    outcomes = _evaluate_relations(group, gens, lifts, rels)
    # an odd-length word that lands on tau is repaired by composing one
    # involutive generator lift with tau, which keeps its own relation
    bad = [k for k, o in enumerate(outcomes) if o.sign == -1]
    if bad:
        for k, info in enumerate(gen_info):
            if info["base_order"] % 2 == 0:
                trial = list(lifts)
                trial[k] = lifts[k].with_deck()
                new = _evaluate_relations(group, gens, trial, rels)
                if all(o.sign == 1 for o in new):
                    lifts = trial
                    info["lift_sign"] = -info["lift_sign"]
                    info["rule"] += "; composed with the deck involution"
                    for o_old, o_new in zip(outcomes, new):
                        if o_old.sign == -1:
                            o_new.note = "repaired by deck composition"
                    outcomes = new
                    break

    _abort_on_downstairs(outcomes)
    if all(o.sign == 1 for o in outcomes):
        verdict = "split"
    else:
        verdict = "non-split"
    return ExtensionLedger(kind, "model", presentation, gen_info, outcomes, verdict, lifts)


def _abort_on_downstairs(outcomes) -> None:
    bad = [o.word for o in outcomes if not o.downstairs_identity]
    if bad:
        raise CoverError(f"generator search is wrong: {', '.join(bad)} fail downstairs")


def _evaluate_relations(group, gens, lifts, rels) -> list[RelationOutcome]:
    out = []
    for rel in rels:
        down = _word_element(group, gens, rel.word, rel.exp) == group.identity_index()
        up = _word_lift(lifts, rel.word, rel.exp)
        if up.is_identity():
            sign = 1
        elif up.is_deck():
            sign = -1
        else:
            raise CoverError(f"relation {rel.name} does not lift to a deck transformation")
        out.append(RelationOutcome(rel.name, down, sign))
    return out


def verify_splitting_certificate(kind, presentation: str = "coxeter", seed: int | None = None) -> ExtensionLedger:
    """Certificate route: needs only the group and Gamma, not the facet structure.

    Odd-order generators get their order-m lift; every relation word that is
    an involution needs a fixed great circle meeting S^3 - Gamma, so both of
    its lifts square to the identity; even powers of a generator are handled
    through the involution g^(m/2).  A remaining odd-length word is fixed by
    composing an involutive generator lift with the deck involution.
    """
    kind = PolytopeKind.parse(kind)
    group = rotation_group(kind)
    pres = presentation_for(kind, seed=seed)
    if presentation == "a5":
        if kind is not PolytopeKind.CELL5:
            raise CoverError("the A5 presentation applies to the 5-cell only")
        gens, rels = a5_generators(group, pres)
        names = ["s", "r"]
    else:
        gens = list(pres.sigma)
        rels = coxeter_relations(pres)
        names = ["sigma1", "sigma2", "sigma3"]

    gen_info = [{"name": n, "base_order": int(group.orders[g])} for n, g in zip(names, gens)]
    outcomes = []
    ok = True
    for rel in rels:
        down = _word_element(group, gens, rel.word, rel.exp) == group.identity_index()
        base = group.word([gens[i] for i in rel.word])
        m = int(group.orders[base])
        if m != rel.exp:
            outcomes.append(RelationOutcome(rel.name, down, None, f"word has order {m}, not {rel.exp}"))
            ok = False
            continue
        if m % 2:
            if len(rel.word) == 1:
                note = f"odd order {m}: the order-{m} lift is chosen"
            else:
                note = f"odd order {m}: a deck correction on an involutive generator repairs tau"
            outcomes.append(RelationOutcome(rel.name, down, 1, note))
            continue
        inv = group.power(base, m // 2)
        cert = fixed_circle_avoids_gamma(group, inv)
        if cert.ok:
            outcomes.append(RelationOutcome(rel.name, down, 1, f"involution certificate: {cert.reason}"))
        else:
            outcomes.append(RelationOutcome(rel.name, down, None, f"certificate failed: {cert.reason}"))
            ok = False
    _abort_on_downstairs(outcomes)
    verdict = "split" if ok else "inconclusive"
    return ExtensionLedger(kind, "certificate", presentation, gen_info, outcomes, verdict)


def verify_splitting(kind, mode: str = "model", presentation: str = "coxeter",
                     seed: int | None = None) -> ExtensionLedger:
    if mode == "model":
        return verify_splitting_model(kind, presentation, seed)
    if mode == "certificate":
        return verify_splitting_certificate(kind, presentation, seed)
    raise CoverError(f"unknown splitting mode {mode!r}")


def lift_closure(lifts: list[Lift], cap: int = 20000) -> set[tuple[int, ...]]:
    """Sheet permutations generated by the given lifts."""
    gens = [l.sheet_array() for l in lifts]
    start = tuple(range(len(gens[0])))
    seen = {start}
    frontier = [np.array(start)]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g[p]
                key = tuple(q.tolist())
                if key not in seen:
                    seen.add(key)
                    nxt.append(q)
        if len(seen) > cap:
            raise CoverError("lift closure exceeds cap")
        frontier = nxt
    return seen


def lift_group_is_product(cover: CoverModel, group: SymmetryGroup, section: list[Lift]) -> bool:
    """The lifted group on sheets is (section subgroup) x <tau>.

    Checks that the section lifts close to a group of order |G| avoiding tau,
    that tau commutes with every lift, and that all 2|G| lifts are distinct.
    """
    sub = lift_closure(section)
    deck = tuple(cover.deck().sheet_perm())
    if len(sub) != group.order or deck in sub:
        return False
    everything = set()
    for g in range(group.order):
        for lift in lift_symmetry(cover, group, g):
            if not lift.commutes_with_deck():
                return False
            everything.add(tuple(lift.sheet_perm()))
    return len(everything) == 2 * group.order and sub <= everything

"""
Exact isomorphism / automorphism search for small colored graphs, and
equivalence of polygonal presentations.

The graph search maps vertices in BFS order and requires every candidate
to agree in distance with all vertices already mapped; on distance-
regular graphs like the Tutte-Coxeter graph that prunes the tree down to
roughly one branch per automorphism.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from .incidence import LabeledGraph, distance_matrix
from .presentation import (SCHEMA_VERSION, PolygonalPresentation, cyclic_closure,
                           reconstruct_link_graph, validate_presentation)

MAX_SEARCH_VERTICES = 64


class SizeCapError(ValueError):
    pass


@dataclass(frozen=True)
class GraphMap:
    """Vertex correspondence ``source id -> target id``."""

    mapping: dict
    color_preserving: bool

    def __getitem__(self, vid):
        return self.mapping[vid]

    def key(self, g: LabeledGraph) -> tuple:
        return tuple(str(self.mapping[v]) for v in g.ids())

    def compose(self, other: "GraphMap") -> "GraphMap":
        """``self`` after ``other``."""
        return GraphMap({v: self.mapping[w] for v, w in other.mapping.items()},
                        self.color_preserving and other.color_preserving)

    def inverse(self) -> "GraphMap":
        return GraphMap({w: v for v, w in self.mapping.items()}, self.color_preserving)

    def is_isomorphism(self, g: LabeledGraph, h: LabeledGraph) -> bool:
        """Edge-exact check: bijective, edges to edges, non-edges to non-edges."""
        m = self.mapping
        if set(m) != set(g.ids()) or set(m.values()) != set(h.ids()) or len(g) != len(h):
            return False
        if len(g.edges) != len(h.edges):
            return False
        if not all(h.has_edge(m[a], m[b]) for a, b in g.edges):
            return False
        if self.color_preserving:
            return all(g.vertex(v).color == h.vertex(m[v]).color for v in m)
        return True


def _check_cap(*graphs):
    for g in graphs:
        if len(g) > MAX_SEARCH_VERTICES:
            raise SizeCapError(f"exact search capped at {MAX_SEARCH_VERTICES} vertices, got {len(g)}")


def _profile(dist_row):
    counts = {}
    for d in dist_row:
        counts[d] = counts.get(d, 0) + 1
    return tuple(sorted(counts.items()))


def _invariants(g: LabeledGraph, dist, respect_colors):
    out = []
    for i, v in enumerate(g.vertices):
        out.append((v.color if respect_colors else "", len(g.adj[i]), _profile(dist[i])))
    return out


def _search_order(g: LabeledGraph) -> list[int]:
    """BFS order per component, so each vertex after a root has a mapped neighbor."""
    seen = [False] * len(g)
    order = []
    for comp in g.components():
        s = g.index[comp[0]]
        seen[s] = True
        order.append(s)
        head = len(order) - 1
        while head < len(order):
            u = order[head]
            head += 1
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    order.append(w)
    return order


def iter_isomorphisms(g: LabeledGraph, h: LabeledGraph, respect_colors: bool = True,
                      partners: tuple[dict, dict] | None = None) -> Iterator[GraphMap]:
    """Every isomorphism g -> h, in a deterministic order; each is verified before it is yielded.

    ``partners`` optionally gives involutive vertex pairings on g and on h
    that the map must carry onto each other.
    """
    _check_cap(g, h)
    if len(g) != len(h) or len(g.edges) != len(h.edges):
        return
    dg, dh = distance_matrix(g), distance_matrix(h)
    ig, ih = _invariants(g, dg, respect_colors), _invariants(h, dh, respect_colors)
    if sorted(ig) != sorted(ih):
        return
    order = _search_order(g)
    n = len(g)
    image = [-1] * n
    used = [False] * n
    candidates = [[j for j in range(n) if ih[j] == ig[i]] for i in range(n)]
    pg = ph = None
    if partners is not None:
        pg = [g.index.get(partners[0].get(v.id), -1) for v in g.vertices]
        ph = [h.index.get(partners[1].get(v.id), -1) for v in h.vertices]

    def extend(depth):
        if depth == n:
            gm = GraphMap({g.vertices[i].id: h.vertices[image[i]].id for i in range(n)},
                          respect_colors)
            assert gm.is_isomorphism(g, h), "isomorphism search produced a non-isomorphism"
            yield gm
            return
        v = order[depth]
        placed = order[:depth]
        # restrict to neighbors of an already-placed neighbor when there is one
        anchor = next((u for u in g.adj[v] if image[u] >= 0), None)
        pool = h.adj[image[anchor]] if anchor is not None else candidates[v]
        for w in pool:
            if used[w] or ih[w] != ig[v]:
                continue
            if pg is not None and pg[v] >= 0 and image[pg[v]] >= 0 and image[pg[v]] != ph[w]:
                continue
            if all(dh[image[u]][w] == dg[u][v] for u in placed):
                image[v] = w
                used[w] = True
                yield from extend(depth + 1)
                used[w] = False
                image[v] = -1

    yield from extend(0)


def find_isomorphism(g: LabeledGraph, h: LabeledGraph, respect_colors: bool = True) -> GraphMap | None:
    return next(iter_isomorphisms(g, h, respect_colors), None)


@dataclass
class AutomorphismGroup:
    maps: list[GraphMap]
    generators: list[GraphMap]

    @property
    def order(self) -> int:
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def __len__(self):
        return len(self.maps)


def _generators(g, maps):
    """Greedy generating set: add a map whenever it is outside the closure so far."""
    keys = {m.key(g): m for m in maps}
    ident = GraphMap({v: v for v in g.ids()}, True)
    span = {ident.key(g): ident}
    gens = []
    for m in maps:
        if m.key(g) in span:
            continue
        gens.append(m)
        frontier = list(span.values())
        while frontier:
            new = []
            for a in frontier:
                for s in gens:
                    c = s.compose(a)
                    kc = c.key(g)
                    if kc not in span:
                        span[kc] = c
                        new.append(c)
            frontier = new
        if len(span) == len(keys):
            break
    return gens


def enumerate_automorphisms(g: LabeledGraph, respect_colors: bool = True) -> AutomorphismGroup:
    maps = list(iter_isomorphisms(g, g, respect_colors))
    return AutomorphismGroup(maps, _generators(g, maps))


# -- presentations ----------------------------------------------------------------


def _letter_map(gm: GraphMap, q: int):
    """Letter permutation carried by a link map, or None if x- and y-actions disagree."""
    sigma = {}
    for a in range(1, q + 1):
        xb = gm[f"x{a}"]
        yb = gm[f"y{a}"]
        if not (xb.startswith("x") and yb.startswith("y")) or xb[1:] != yb[1:]:
            return None
        sigma[a] = int(xb[1:])
    return sigma


def apply_letter_map(p: PolygonalPresentation, sigma) -> PolygonalPresentation:
    return p.relabel(sigma)


def _maps_onto(sigma, k1: set, k2: set) -> bool:
    return {tuple(sigma[x] for x in t) for t in k1} == k2


def lambda_compatible_isomorphisms(p1: PolygonalPresentation, p2: PolygonalPresentation):
    """Letter bijections induced by colored link isomorphisms that respect x_i <-> y_i."""
    g1, g2 = reconstruct_link_graph(cyclic_closure(p1)), reconstruct_link_graph(cyclic_closure(p2))
    for gm in iter_isomorphisms(g1, g2, respect_colors=True, partners=(_pairing(p1.q), _pairing(p2.q))):
        sigma = _letter_map(gm, p1.q)
        if sigma is not None:
            yield sigma


def _pairing(q):
    out = {}
    for a in range(1, q + 1):
        out[f"x{a}"], out[f"y{a}"] = f"y{a}", f"x{a}"
    return out


@dataclass
class EquivalenceReport:
    equivalent: bool
    witness: dict | None
    equivalent_with_reversal: bool
    reversal_witness: dict | None
    links_isomorphic: bool
    compatible_checked: int = 0
    reversal_links_isomorphic: bool = False
    reversal_compatible_checked: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def w(s):
            return None if s is None else {str(a): b for a, b in sorted(s.items())}

        return {"schema_version": SCHEMA_VERSION,
                "orientation_preserving": {"equivalent": self.equivalent, "witness": w(self.witness),
                                           "lambda_compatible_maps": self.compatible_checked},
                "with_reversal": {"equivalent": self.equivalent_with_reversal,
                                  "witness": w(self.reversal_witness),
                                  "links_isomorphic": self.reversal_links_isomorphic,
                                  "lambda_compatible_maps": self.reversal_compatible_checked},
                "links_isomorphic": self.links_isomorphic, "notes": self.notes}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _search_equivalence(p1, p2):
    """(sigma or None, links isomorphic?, lambda-compatible maps tried)"""
    k1 = set(cyclic_closure(p1).tuples)
    k2 = set(cyclic_closure(p2).tuples)
    checked = 0
    for sigma in lambda_compatible_isomorphisms(p1, p2):
        checked += 1
        if _maps_onto(sigma, k1, k2):
            return sigma, True, checked
    g1 = reconstruct_link_graph(cyclic_closure(p1))
    g2 = reconstruct_link_graph(cyclic_closure(p2))
    return None, checked > 0 or find_isomorphism(g1, g2) is not None, checked


def presentations_equivalent(p1: PolygonalPresentation, p2: PolygonalPresentation) -> EquivalenceReport:
    """Is there a letter bijection, induced by a link isomorphism, mapping closed p1 onto closed p2?

    The orientation-preserving verdict and the verdict for reversed p1
    are searched and reported separately.
    """
    if (p1.q, p1.k) != (p2.q, p2.k):
        raise ValueError("presentations differ in alphabet size or arity")
    for p in (p1, p2):
        if not validate_presentation(p).passed:
            raise ValueError(f"presentation {p.name or ''} is not valid")
    notes = []
    sigma, iso, checked = _search_equivalence(p1, p2)
    if not iso:
        notes.append("link graphs are not isomorphic")
    rev = p1.reversed()
    rsigma, riso, rchecked = None, False, 0
    if validate_presentation(rev).passed:
        rsigma, riso, rchecked = _search_equivalence(rev, p2)
        if not riso:
            notes.append("reversed link graph is not isomorphic to the second link graph")
    else:
        notes.append("reversed presentation is not valid")
    return EquivalenceReport(sigma is not None, sigma, rsigma is not None, rsigma, iso,
                             checked, riso, rchecked, notes)


# -- canonical form ---------------------------------------------------------------


def _refine(closed, colors, q):
    """Color refinement on letters, driven by the positions of letters in tuples."""
    while True:
        sig = {}
        for x in range(1, q + 1):
            sig[x] = [colors[x]]
        occ = {x: [] for x in range(1, q + 1)}
        for t in closed:
            ct = tuple(colors[y] for y in t)
            for i, x in enumerate(t):
                occ[x].append((i, ct))
        for x in occ:
            sig[x] = (colors[x], tuple(sorted(occ[x])))
        ranks = {s: r for r, s in enumerate(sorted(set(sig.values())))}
        new = {x: ranks[sig[x]] for x in sig}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def _encode(closed, sigma):
    return tuple(sorted(tuple(sigma[x] for x in t) for t in closed))


def canonical_labelings(p: PolygonalPresentation) -> list[dict]:
    """Leaf labelings of the individualization-refinement tree of ``p``."""
    closed = cyclic_closure(p).tuples
    q = p.q
    leaves = []

    def descend(colors):
        colors = _refine(closed, colors, q)
        cells = {}
        for x, c in colors.items():
            cells.setdefault(c, []).append(x)
        if len(cells) == q:
            leaves.append({x: c + 1 for x, c in colors.items()})
            return
        target = min((len(v), c) for c, v in cells.items() if len(v) > 1)[1]
        for x in cells[target]:
            # individualize x: it sorts just ahead of its former cellmates
            nc = {y: 2 * c + (1 if c == target and y != x else 0) for y, c in colors.items()}
            descend(nc)

    descend({x: 0 for x in range(1, q + 1)})
    return leaves


def canonical_form(p: PolygonalPresentation) -> bytes:
    """Byte string equal for two presentations iff some letter bijection maps one closed set onto the other."""
    closed = cyclic_closure(p).tuples
    best = min((_encode(closed, s) for s in canonical_labelings(p)), default=())
    body = ";".join(",".join(map(str, t)) for t in best)
    return f"q={p.q};k={p.k};{body}".encode()


def canonical_presentation(p: PolygonalPresentation) -> PolygonalPresentation:
    """The closed presentation spelled by ``canonical_form``."""
    body = canonical_form(p).decode().split(";", 2)[2]
    tuples = tuple(tuple(int(x) for x in t.split(",")) for t in body.split(";")) if body else ()
    return PolygonalPresentation(p.q, p.k, tuples, p.n, closed=True)


def doily_collineations(doily=None) -> list[dict]:
    """Point permutations (as letter maps) induced by color-preserving automorphisms of the doily."""
    from .incidence import build_doily

    doily = doily or build_doily()
    out = []
    for gm in enumerate_automorphisms(doily.graph, respect_colors=True):
        out.append({i: int(gm[f"p{i}"][1:]) for i in range(1, len(doily.points) + 1)})
    return out

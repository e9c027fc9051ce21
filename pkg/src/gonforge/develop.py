"""
Radius-limited development of the universal cover of a one-vertex
polyhedron.

Vertices of the cover carry, for every letter a, one outgoing and one
incoming a-edge, and one face per corner type (a, b). Starting from a
root, every vertex closer than ``radius`` gets its link completed to the
model link. Closing a face may force two already existing vertices to be
the same point of the cover; those coincidences are merged on the spot,
exactly as in coset enumeration, so the result never contains a vertex
twice.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace

from .complex import link_graph
from .incidence import LabeledGraph
from .presentation import (SCHEMA_VERSION, PolygonalPresentation, orbit_representatives,
                           reconstruct_link_graph, validate_presentation)

MAX_RADIUS = 3


class DevelopmentError(RuntimeError):
    pass


@dataclass(frozen=True)
class DevelopedComplex:
    """A developed ball. Vertex 0 is the root; ids follow BFS order."""

    radius: int
    distance: tuple[int, ...]
    interior: tuple[bool, ...]
    edges: tuple[tuple[int, int, int], ...]       # (tail, letter, head)
    faces: tuple[tuple[int, tuple[int, ...]], ...]  # (orbit index, corner vertices)
    words: tuple[tuple[int, ...], ...]              # orbit words, indexed by orbit
    model_link: LabeledGraph = field(repr=False, compare=False)

    @property
    def V(self):
        return len(self.distance)

    def status(self, v: int) -> str:
        return "interior" if self.interior[v] else "boundary"

    def without_face(self, i: int) -> "DevelopedComplex":
        return replace(self, faces=self.faces[:i] + self.faces[i + 1:])

    def link_of(self, v: int) -> LabeledGraph:
        ends, corners = _local_data(self, [v])
        return link_graph(ends[v], corners[v])

    def to_text(self) -> str:
        out = [f"vertices {self.V}"]
        out += [f"vertex {v} distance {self.distance[v]} {self.status(v)}" for v in range(self.V)]
        out += [f"edge {a} {t} -> {h}" for t, a, h in self.edges]
        out += ["face " + " ".join(map(str, self.words[o])) + " at " + " ".join(map(str, vs))
                for o, vs in self.faces]
        return "\n".join(out) + "\n"


class _Builder:
    def __init__(self, p: PolygonalPresentation):
        self.words = orbit_representatives(p)
        self.letters = list(p.letters())
        self.corner_type = {}
        for o, w in enumerate(self.words):
            for i in range(len(w)):
                key = (w[i - 1], w[i])
                if key in self.corner_type:
                    raise DevelopmentError(f"corner type {key} occurs twice")
                self.corner_type[key] = (o, i)
        self.parent = []
        self.out = []
        self.inn = []
        self.faces_at = []  # orbit ids of faces whose corner 0 sits at the vertex
        self.complete = set()
        self.merges = 0
        self.pending = deque()

    def new_vertex(self):
        self.parent.append(len(self.parent))
        self.out.append({})
        self.inn.append({})
        self.faces_at.append(set())
        return len(self.parent) - 1

    def find(self, v):
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    # -- edges and coincidences -------------------------------------------------

    def step(self, v, a, forward=True):
        """Endpoint of the a-edge leaving (or entering) v, created if absent."""
        v = self.find(v)
        table = self.out if forward else self.inn
        if a not in table[v]:
            w = self.new_vertex()
            if forward:
                self.join(v, a, w)
            else:
                self.join(w, a, v)
            v = self.find(v)
        return self.find(table[v][a])

    def join(self, v, a, w):
        """Require an a-edge v -> w."""
        self.pending.append((v, a, w))
        self._drain()

    def _drain(self):
        while self.pending:
            v, a, w = self.pending.popleft()
            v, w = self.find(v), self.find(w)
            z = self.out[v].get(a)
            z2 = self.inn[w].get(a)
            if z is None and z2 is None:
                self.out[v][a] = w
                self.inn[w][a] = v
                continue
            if z is not None and self.find(z) != w:
                self._merge(self.find(z), w)
            if z2 is not None and self.find(z2) != self.find(v):
                self._merge(self.find(z2), self.find(v))
            v, w = self.find(v), self.find(w)
            self.out[v][a] = w
            self.inn[w][a] = v

    def _merge(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        keep, gone = min(x, y), max(x, y)
        self.parent[gone] = keep
        self.merges += 1
        for a, w in self.out[gone].items():
            self.pending.append((keep, a, w))
        for a, u in self.inn[gone].items():
            self.pending.append((u, a, keep))
        self.out[gone], self.inn[gone] = {}, {}
        self.faces_at[keep] |= self.faces_at[gone]
        self.faces_at[gone] = set()
        if gone in self.complete:
            self.complete.discard(gone)
            self.complete.add(keep)

    # -- faces -----------------------------------------------------------------------

    def face_vertices(self, o, v0):
        w = self.words[o]
        verts = [self.find(v0)]
        for a in w[:-1]:
            verts.append(self.find(self.out[verts[-1]][a]))
        return tuple(verts)

    def add_face_at(self, v, a, b):
        """Make sure the face with corner (in a, out b) at v exists."""
        o, i = self.corner_type[(a, b)]
        w = self.words[o]
        # walk back from v to the vertex at corner 0
        v0 = self.find(v)
        for j in range(i - 1, -1, -1):
            v0 = self.step(v0, w[j], forward=False)
        if o in self.faces_at[self.find(v0)]:
            return
        cur = v0
        for a_ in w[:-1]:
            cur = self.step(cur, a_)
        self.join(cur, w[-1], v0)
        self.faces_at[self.find(v0)].add(o)

    def faces(self):
        return [(v, o) for v in range(len(self.parent)) if self.parent[v] == v
                for o in sorted(self.faces_at[v])]

    def complete_vertex(self, v):
        for a in self.letters:
            self.step(v, a)
            self.step(v, a, forward=False)
        for a, b in sorted(self.corner_type):
            self.add_face_at(v, a, b)
        self.complete.add(self.find(v))

    def distances(self, root):
        root = self.find(root)
        dist = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            nbrs = [self.find(x) for x in list(self.out[u].values()) + list(self.inn[u].values())]
            for w in nbrs:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist


def develop_ball(p: PolygonalPresentation, radius: int) -> DevelopedComplex:
    if not 0 <= radius <= MAX_RADIUS:
        raise ValueError(f"radius must be in 0..{MAX_RADIUS}")
    report = validate_presentation(p)
    if not report.passed or report.n != 1:
        raise DevelopmentError("development needs a valid presentation with a single link")
    model = reconstruct_link_graph(p)
    b = _Builder(p)
    root = b.new_vertex()
    while True:
        dist = b.distances(root)
        todo = sorted((d, v) for v, d in dist.items() if d < radius and v not in b.complete)
        if not todo:
            break
        for _, v in todo:
            v = b.find(v)
            if v not in b.complete:
                b.complete_vertex(v)
    return _freeze(b, root, radius, model)


def _freeze(b: _Builder, root, radius, model) -> DevelopedComplex:
    """Renumber vertices in BFS order (out-letters before in-letters, ascending)."""
    root = b.find(root)
    order = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        nbrs = [b.find(b.out[u][a]) for a in sorted(b.out[u])]
        nbrs += [b.find(b.inn[u][a]) for a in sorted(b.inn[u])]
        for w in nbrs:
            if w not in order:
                order[w] = len(order)
                queue.append(w)
    dist = b.distances(root)
    n = len(order)
    distance = [0] * n
    interior = [False] * n
    for v, i in order.items():
        distance[i] = dist[v]
        interior[i] = v in b.complete
    edges = sorted((order[v], a, order[b.find(w)]) for v in order for a, w in b.out[v].items())
    faces = sorted((o, tuple(order[x] for x in b.face_vertices(o, v))) for v, o in b.faces())
    return DevelopedComplex(radius, tuple(distance), tuple(interior), tuple(edges), tuple(faces),
                            tuple(b.words), model)


@dataclass(frozen=True)
class BallCensus:
    radius: int
    V: int
    E: int
    F: int
    boundary: int
    shells: tuple[int, ...]  # vertex count at each distance 0..radius

    def counts(self):
        return self.V, self.E, self.F

    def to_dict(self):
        return {"schema_version": SCHEMA_VERSION, "radius": self.radius, "V": self.V, "E": self.E,
                "F": self.F, "boundary_vertices": self.boundary, "shells": list(self.shells)}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def ball_census(d: DevelopedComplex) -> BallCensus:
    shells = [0] * (max(d.distance, default=0) + 1)
    for x in d.distance:
        shells[x] += 1
    return BallCensus(d.radius, d.V, len(d.edges), len(d.faces),
                      sum(1 for x in d.interior if not x), tuple(shells))


def _local_data(d: DevelopedComplex, vertices):
    want = set(vertices)
    ends = {v: [] for v in want}
    corners = {v: [] for v in want}
    for t, a, h in d.edges:
        if t in want:
            ends[t].append((a, "s"))
        if h in want:
            ends[h].append((a, "t"))
    for orbit, verts in d.faces:
        w = d.words[orbit]
        for i, u in enumerate(verts):
            if u in want:
                corners[u].append((w[i - 1], w[i]))
    return ends, corners


def interior_link_check(d: DevelopedComplex) -> list[tuple[int, bool]]:
    """(vertex, verdict) for every interior vertex: is its link colored-isomorphic to the model link?"""
    from .symmetry import find_isomorphism

    inner = [v for v in range(d.V) if d.interior[v]]
    ends, corners = _local_data(d, inner)
    out = []
    for v in inner:
        try:
            link = link_graph(ends[v], corners[v])
        except ValueError:
            out.append((v, False))
            continue
        ok = link.edge_set == d.model_link.edge_set or (
            find_isomorphism(link, d.model_link, respect_colors=True) is not None)
        out.append((v, ok))
    return out


def edge_thickness(d: DevelopedComplex) -> dict[tuple[int, int, int], int]:
    """Faces per edge, keyed by (tail, letter, head)."""
    count = {e: 0 for e in d.edges}
    for o, verts in d.faces:
        w = d.words[o]
        for i, a in enumerate(w):
            count[(verts[i], a, verts[(i + 1) % len(w)])] += 1
    return count

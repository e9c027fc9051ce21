"""
The 2-complex of a polygonal presentation: one oriented k-gon per cyclic
orbit, sides with equal letters glued respecting orientation.

Links are computed here from face corners alone, without going through
the presentation's incidence condition, so that they can be compared
with ``presentation.reconstruct_link_graph``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .incidence import BLACK, WHITE, LabeledGraph, Vertex, girth
from .presentation import (SCHEMA_VERSION, PolygonalPresentation, orbit_representatives,
                           validate_presentation)


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    letter: int
    tail: int
    head: int


@dataclass(frozen=True)
class Face:
    id: int
    word: tuple[int, ...]


@dataclass(frozen=True)
class Corner:
    """Corner of ``face`` at the start of side ``position``."""

    face: int
    position: int
    incoming: int
    outgoing: int


@dataclass(frozen=True)
class Polyhedron:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]

    def edge(self, letter: int) -> Edge:
        return self.edges[letter - 1]

    def corners(self) -> list[Corner]:
        out = []
        for f in self.faces:
            k = len(f.word)
            for i in range(k):
                out.append(Corner(f.id, i, f.word[i - 1], f.word[i]))
        return out

    def corner_vertex(self, c: Corner) -> int:
        return self.edge(c.outgoing).tail

    def to_text(self) -> str:
        out = [f"vertices {len(self.vertices)}"]
        out += [f"edge {e.letter} {e.tail} -> {e.head}" for e in self.edges]
        out += ["face " + " ".join(map(str, f.word)) for f in self.faces]
        return "\n".join(out) + "\n"


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def build_polyhedron(p: PolygonalPresentation, check: bool = True) -> Polyhedron:
    """Glue one k-gon per orbit of ``p``.

    Edge ends are ("s", a) / ("t", a) for the initial / terminal end of
    letter a; each corner identifies the terminal end of its incoming
    side with the initial end of its outgoing side.
    """
    if check:
        report = validate_presentation(p)
        if not report.passed:
            bad = ", ".join(c.name for c in report.failures())
            raise ComplexError(f"refusing to build from an invalid presentation ({bad})")
    words = orbit_representatives(p)
    uf = _UnionFind()
    for a in p.letters():
        uf.find(("s", a))
        uf.find(("t", a))
    for w in words:
        for i in range(len(w)):
            uf.union(("t", w[i - 1]), ("s", w[i]))
    roots = sorted({uf.find(x) for x in list(uf.parent)}, key=lambda r: (r[1], r[0]))
    vid = {r: i for i, r in enumerate(roots)}
    edges = tuple(Edge(a, vid[uf.find(("s", a))], vid[uf.find(("t", a))]) for a in p.letters())
    faces = tuple(Face(i, w) for i, w in enumerate(words))
    poly = Polyhedron(tuple(range(len(roots))), edges, faces)
    for c in poly.corners():
        # gluing respects orientation: incoming side ends where the outgoing one starts
        assert poly.edge(c.incoming).head == poly.edge(c.outgoing).tail
    return poly


def link_graph(ends, corner_pairs) -> LabeledGraph:
    """Link from edge ends and corners.

    ``ends`` lists (letter, end) with end "s" (initial, black x_a) or "t"
    (terminal, white y_a); ``corner_pairs`` lists (incoming, outgoing)
    letters, each giving the link edge {y_in, x_out}.
    """
    vertices = []
    for a, end in ends:
        if end == "s":
            vertices.append(Vertex(f"x{a}", BLACK, str(a)))
        else:
            vertices.append(Vertex(f"y{a}", WHITE, str(a)))
    vertices.sort(key=lambda v: (v.color != BLACK, int(v.label)))
    edges = sorted(((f"y{a}", f"x{b}") for a, b in corner_pairs),
                   key=lambda e: (int(e[0][1:]), int(e[1][1:])))
    return LabeledGraph(vertices, edges, bipartite=True)


def vertex_links(poly: Polyhedron) -> list[LabeledGraph]:
    """One link per vertex, indexed like ``poly.vertices``."""
    ends = {v: [] for v in poly.vertices}
    for e in poly.edges:
        ends[e.tail].append((e.letter, "s"))
        ends[e.head].append((e.letter, "t"))
    corners = {v: [] for v in poly.vertices}
    for c in poly.corners():
        corners[poly.corner_vertex(c)].append((c.incoming, c.outgoing))
    return [link_graph(ends[v], corners[v]) for v in poly.vertices]


@dataclass
class CellCensus:
    V: int
    E: int
    F: int
    links: list[tuple[int, int]]
    k: int = 3
    formula_edges: int = 0
    formula_faces: int = 0

    @property
    def euler_characteristic(self) -> int:
        return self.V - self.E + self.F

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "V": self.V, "E": self.E, "F": self.F,
                "euler_characteristic": self.euler_characteristic,
                "links": [{"s": s, "t": t} for s, t in self.links],
                "closed_form_counts": {"edges_k_sum_s": self.formula_edges,
                                   "faces_sum_t": self.formula_faces,
                                   "matches_computed": (self.formula_edges, self.formula_faces)
                                   == (self.E, self.F)}}


def cell_census(poly: Polyhedron) -> CellCensus:
    links = vertex_links(poly)
    st = [(len(g), len(g.edges)) for g in links]
    k = len(poly.faces[0].word) if poly.faces else 3
    return CellCensus(len(poly.vertices), len(poly.edges), len(poly.faces), st, k,
                      formula_edges=k * sum(s for s, _ in st), formula_faces=sum(t for _, t in st))


@dataclass
class CurvatureReport:
    p_sides: int
    m_angle: int
    link_girths: list
    gromov: bool
    hyperbolic_strict: bool
    euclidean_boundary: bool
    mn_inequality: bool
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "p_sides": self.p_sides, "m_angle": self.m_angle,
                "link_girths": [None if g == math.inf else g for g in self.link_girths],
                "gromov_link_condition": self.gromov, "hyperbolic_strict": self.hyperbolic_strict,
                "euclidean_boundary": self.euclidean_boundary, "mn_inequality": self.mn_inequality,
                "notes": self.notes}


def check_link_condition(poly: Polyhedron, p_sides: int, m_angle: int) -> CurvatureReport:
    """Integer curvature checks for faces with ``p_sides`` sides and corner angles pi/``m_angle``.

    gromov: every link girth g has g * pi/m >= 2 pi, i.e. g >= 2m.
    hyperbolic_strict: m p > 2m + p (equality is the Euclidean case).
    mn_inequality: with g the least link girth, g n >= 2 (g + n) for
    n = p_sides.
    """
    arities = {len(f.word) for f in poly.faces}
    if len(arities) > 1:
        raise ComplexError(f"mixed face arities {sorted(arities)}")
    if arities and arities != {p_sides}:
        raise ComplexError(f"faces have {arities.pop()} sides, not {p_sides}")
    girths = [girth(g) for g in vertex_links(poly)]
    gromov = all(g >= 2 * m_angle for g in girths)
    strict = m_angle * p_sides > 2 * m_angle + p_sides
    boundary = m_angle * p_sides == 2 * m_angle + p_sides
    notes = []
    least = min(girths, default=math.inf)
    if least == math.inf:
        mn = True
        notes.append("links are forests; (m,n) inequality holds vacuously")
    else:
        mn = least * p_sides >= 2 * (least + p_sides)
    return CurvatureReport(p_sides, m_angle, girths, gromov, strict, boundary, mn, notes)


def census_json(poly: Polyhedron) -> str:
    return json.dumps(cell_census(poly).to_dict(), indent=2, sort_keys=True)

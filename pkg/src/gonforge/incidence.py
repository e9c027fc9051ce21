"""
Finite bipartite graphs with colored, labeled vertices, the distance
invariants used to recognise generalized polygons, and the duad model of
the smallest generalized quadrangle (the "doily").

Vertices carry a color ("black" or "white") and a label. Black vertices
play the role of points / letters x_i, white vertices lines / letters y_i.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable

BLACK = "black"
WHITE = "white"
COLORS = (BLACK, WHITE)

MAX_VERTICES = 1 << 16


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: Hashable
    color: str
    label: str


@dataclass(frozen=True)
class LabeledGraph:
    """Simple undirected graph with colored, labeled vertices.

    ``edges`` are stored as (id, id) pairs in the order given; adjacency
    and index maps are derived lazily. If ``bipartite`` is set, every
    edge must join a black vertex to a white one.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[Hashable, Hashable], ...]
    bipartite: bool = True

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(self.vertices) > MAX_VERTICES:
            raise GraphError(f"graph has {len(self.vertices)} vertices, cap is {MAX_VERTICES}")
        color = {}
        labels = set()
        for v in self.vertices:
            if v.id in color:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            if v.color not in COLORS:
                raise GraphError(f"bad color {v.color!r} on {v.id!r}")
            if (v.color, v.label) in labels:
                raise GraphError(f"label {v.label!r} repeated among {v.color} vertices")
            labels.add((v.color, v.label))
            color[v.id] = v.color
        seen = set()
        for a, b in self.edges:
            if a not in color or b not in color:
                raise GraphError(f"edge ({a!r}, {b!r}) uses an unknown vertex")
            if a == b:
                raise GraphError(f"self-loop at {a!r}")
            key = frozenset((a, b))
            if key in seen:
                raise GraphError(f"parallel edge ({a!r}, {b!r})")
            seen.add(key)
            if self.bipartite and color[a] == color[b]:
                raise GraphError(f"edge ({a!r}, {b!r}) joins two {color[a]} vertices")

    # -- derived structure -------------------------------------------------

    @cached_property
    def index(self) -> dict:
        return {v.id: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency lists over vertex indices, each sorted."""
        nbrs: list[list[int]] = [[] for _ in self.vertices]
        idx = self.index
        for a, b in self.edges:
            i, j = idx[a], idx[b]
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(n)) for n in nbrs)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges)

    def __len__(self):
        return len(self.vertices)

    def vertex(self, vid) -> Vertex:
        return self.vertices[self.index[vid]]

    def has_edge(self, a, b) -> bool:
        return frozenset((a, b)) in self.edge_set

    def neighbors(self, vid) -> list:
        return [self.vertices[j].id for j in self.adj[self.index[vid]]]

    def degree(self, vid) -> int:
        return len(self.adj[self.index[vid]])

    def degrees(self) -> list[int]:
        return [len(n) for n in self.adj]

    def ids(self, color: str | None = None) -> list:
        return [v.id for v in self.vertices if color is None or v.color == color]

    def without_edge(self, a, b) -> "LabeledGraph":
        key = frozenset((a, b))
        return LabeledGraph(self.vertices, [e for e in self.edges if frozenset(e) != key],
                            self.bipartite)

    def components(self) -> list[list]:
        """Connected components as lists of vertex ids, in first-seen order."""
        seen = [False] * len(self.vertices)
        out = []
        for s in range(len(self.vertices)):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append([self.vertices[i].id for i in comp])
        return out

    def subgraph(self, vids: Iterable) -> "LabeledGraph":
        keep = set(vids)
        return LabeledGraph([v for v in self.vertices if v.id in keep],
                            [e for e in self.edges if e[0] in keep and e[1] in keep],
                            self.bipartite)

    # -- export --------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"v {v.id} {v.color} {v.label}" for v in self.vertices]
        lines += [f"e {a} {b}" for a, b in self.edges]
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "G") -> str:
        out = [f"graph {name} {{"]
        for v in self.vertices:
            shape = "box" if v.color == BLACK else "circle"
            out.append(f'  "{v.id}" [shape={shape}, label="{v.label}"];')
        for a, b in self.edges:
            out.append(f'  "{a}" -- "{b}";')
        out.append("}")
        return "\n".join(out) + "\n"


def parse_graph_text(text: str, bipartite: bool = True) -> LabeledGraph:
    """Read the ``v <id> <color> <label>`` / ``e <id> <id>`` format.

    Ids are kept as strings. A label may be omitted, in which case the id
    is used.
    """
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) in (3, 4):
            label = parts[3] if len(parts) == 4 else parts[1]
            vertices.append(Vertex(parts[1], parts[2], label))
        elif parts[0] == "e" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw!r}")
    return LabeledGraph(vertices, edges, bipartite)


def graph_from_edges(edges, bipartite: bool = False) -> LabeledGraph:
    """Uncolored convenience constructor (every vertex black) for plain graphs."""
    order = []
    for e in edges:
        for v in e:
            if v not in order:
                order.append(v)
    return LabeledGraph([Vertex(v, BLACK, str(v)) for v in order], edges, bipartite)


def cycle_graph(n: int) -> LabeledGraph:
    """C_n, alternately colored when n is even."""
    vs = [Vertex(i, (BLACK, WHITE)[i % 2] if n % 2 == 0 else BLACK, str(i)) for i in range(n)]
    return LabeledGraph(vs, [(i, (i + 1) % n) for i in range(n)], bipartite=n % 2 == 0)


# -- invariants ------------------------------------------------------------


def bfs_distances(g: LabeledGraph, source: int) -> list[int]:
    """Edge-count distances from vertex index ``source``; -1 if unreachable."""
    dist = [-1] * len(g)
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance_matrix(g: LabeledGraph) -> list[list[int]]:
    return [bfs_distances(g, s) for s in range(len(g))]


def bipartite_classes(g: LabeledGraph):
    """Two-color ``g`` by breadth-first layering.

    Returns ``(black_ids, white_ids)`` or None if ``g`` has an odd cycle.
    Within each component the layer parity is anchored so that the
    stored colors are reproduced whenever they are a proper coloring.
    """
    side = [-1] * len(g)
    for comp in g.components():
        start = g.index[comp[0]]
        dist = bfs_distances(g, start)
        for vid in comp:
            i = g.index[vid]
            side[i] = dist[i] % 2
        for vid in comp:
            i = g.index[vid]
            if any(side[j] == side[i] for j in g.adj[i]):
                return None
        anchor = 0 if g.vertices[start].color == BLACK else 1
        if anchor:
            for vid in comp:
                side[g.index[vid]] ^= 1
    black = [v.id for i, v in enumerate(g.vertices) if side[i] == 0]
    white = [v.id for i, v in enumerate(g.vertices) if side[i] == 1]
    return black, white


def girth(g: LabeledGraph) -> int | float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    adj = g.adj
    n = len(g)
    for s in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def diameter(g: LabeledGraph) -> int | float:
    """Largest shortest-path distance, ``math.inf`` when disconnected."""
    if len(g) == 0:
        return 0
    worst = 0
    for s in range(len(g)):
        dist = bfs_distances(g, s)
        if min(dist) < 0:
            return math.inf
        worst = max(worst, max(dist))
    return worst


@dataclass(frozen=True)
class GeneralizedPolygonReport:
    m: int
    is_connected: bool
    is_bipartite: bool
    diameter: int | float
    girth: int | float
    min_degree: int
    verdict: bool

    def to_dict(self) -> dict:
        def num(x):
            return None if x == math.inf else x

        return {"m": self.m, "is_connected": self.is_connected,
                "is_bipartite": self.is_bipartite, "diameter": num(self.diameter),
                "girth": num(self.girth), "min_degree": self.min_degree,
                "verdict": self.verdict}


def is_generalized_m_gon(g: LabeledGraph, m: int) -> GeneralizedPolygonReport:
    if m < 2:
        raise ValueError("m must be at least 2")
    connected = len(g.components()) <= 1
    bip = bipartite_classes(g) is not None
    d = diameter(g)
    gi = girth(g)
    mindeg = min(g.degrees(), default=0)
    verdict = connected and bip and d == m and gi == 2 * m and mindeg >= 2
    return GeneralizedPolygonReport(m, connected, bip, d, gi, mindeg, verdict)


# -- the doily -------------------------------------------------------------


@dataclass(frozen=True)
class Doily:
    """Incidence graph of GQ(2,2) in the duad model.

    ``points[i-1]`` is the pair labelled ``i``; ``lines[j]`` is a frozenset
    of point labels. Graph ids are ``p<i>`` for points and ``L<j>`` for
    lines (1-based).
    """

    graph: LabeledGraph
    points: tuple[tuple[int, int], ...]
    lines: tuple[frozenset, ...] = field(repr=False)

    def point_id(self, i: int) -> str:
        return f"p{i}"

    def line_id(self, j: int) -> str:
        return f"L{j + 1}"

    @cached_property
    def line_index(self) -> dict:
        return {line: j for j, line in enumerate(self.lines)}

    def lines_through(self, i: int) -> list[int]:
        return [j for j, line in enumerate(self.lines) if i in line]


def _synthemes(symbols):
    """All partitions of ``symbols`` (even size) into unordered pairs."""
    if not symbols:
        yield ()
        return
    first, rest = symbols[0], symbols[1:]
    for k, other in enumerate(rest):
        for tail in _synthemes(rest[:k] + rest[k + 1:]):
            yield ((first, other),) + tail


def build_doily() -> Doily:
    points = tuple(itertools.combinations(range(1, 7), 2))
    label = {pair: i + 1 for i, pair in enumerate(points)}
    lines = sorted(tuple(sorted(label[p] for p in s)) for s in _synthemes(tuple(range(1, 7))))
    vertices = [Vertex(f"p{i}", BLACK, str(i)) for i in range(1, len(points) + 1)]
    vertices += [Vertex(f"L{j + 1}", WHITE, "|".join("%d%d" % points[i - 1] for i in line))
                 for j, line in enumerate(lines)]
    edges = [(f"p{i}", f"L{j + 1}") for j, line in enumerate(lines) for i in line]
    graph = LabeledGraph(vertices, edges, bipartite=True)
    return Doily(graph, points, tuple(frozenset(line) for line in lines))

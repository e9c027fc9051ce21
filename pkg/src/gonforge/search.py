"""
Enumerate triangle presentations over a fixed link and basic bijection.

With lambda fixed, condition (2) says the closed presentation has a
tuple starting (a, b) exactly for the arcs a -> b of the arc digraph
(b lies on line lambda(a)). Condition (1) makes every face a directed
3-cycle a -> b -> c -> a, and condition (3) makes the faces partition the
arcs. So presentations are exact covers of the arcs by directed
triangles; this module finds them with Knuth's Algorithm X on
dict-of-sets columns, choosing the arc with fewest remaining triangles.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .incidence import Doily
from .presentation import (SCHEMA_VERSION, BasicBijection, PolygonalPresentation, least_rotation,
                           leading_pairs, validate_presentation)


@dataclass(frozen=True)
class ArcDigraph:
    q: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(set(self.arcs))))

    def out_degree(self, a: int) -> int:
        return sum(1 for x, _ in self.arcs if x == a)

    def in_degree(self, b: int) -> int:
        return sum(1 for _, y in self.arcs if y == b)

    def loops(self) -> list[int]:
        return [a for a, b in self.arcs if a == b]


def build_arc_digraph(doily: Doily, lam: BasicBijection) -> ArcDigraph:
    arcs = [(a, b) for a in sorted(lam.line_of) for b in sorted(doily.lines[lam[a]])]
    return ArcDigraph(len(doily.points), arcs)


def arc_digraph_of(p: PolygonalPresentation) -> ArcDigraph:
    """The arcs a presentation covers (its leading pairs)."""
    return ArcDigraph(p.q, tuple(leading_pairs(p)))


def directed_triangles(d: ArcDigraph) -> dict[tuple[int, int, int], frozenset]:
    """Least-rotation triangle -> its three arcs; triangles reusing an arc are skipped."""
    arcs = set(d.arcs)
    succ: dict[int, list[int]] = {}
    for a, b in d.arcs:
        succ.setdefault(a, []).append(b)
    out = {}
    for a, b in d.arcs:
        for c in succ.get(b, ()):
            if (c, a) in arcs:
                used = frozenset([(a, b), (b, c), (c, a)])
                if len(used) == 3:
                    out[least_rotation((a, b, c))] = used
    return dict(sorted(out.items()))


@dataclass
class SearchStats:
    nodes: int = 0
    solutions: int = 0
    exhausted: bool = False
    budget_hit: bool = False
    seconds: float = 0.0


class _ExactCover:
    def __init__(self, columns: Iterable, rows: dict):
        self.rows = rows
        self.cols = {c: set() for c in columns}
        for r, cs in rows.items():
            for c in cs:
                self.cols[c].add(r)

    def select(self, r):
        removed = []
        for j in sorted(self.rows[r]):
            for i in self.cols[j]:
                for k in self.rows[i]:
                    if k != j:
                        self.cols[k].discard(i)
            removed.append((j, self.cols.pop(j)))
        return removed

    def deselect(self, r, removed):
        for j, rows in reversed(removed):
            self.cols[j] = rows
            for i in rows:
                for k in self.rows[i]:
                    if k != j:
                        self.cols[k].add(i)


def enumerate_triangle_presentations(d: ArcDigraph, limit: int | None = None,
                                     prefix: Iterable[tuple] = (), max_nodes: int | None = None,
                                     stats: SearchStats | None = None) -> Iterator[PolygonalPresentation]:
    """Yield every partition of the arcs of ``d`` into directed triangles.

    ``prefix`` pins some triangles before the search starts (an empty
    stream if they overlap or are not triangles of ``d``). ``max_nodes``
    bounds the search tree; ``stats`` records what happened.
    """
    stats = stats if stats is not None else SearchStats()
    started = time.perf_counter()
    tri = directed_triangles(d)
    cover = _ExactCover(d.arcs, tri)
    chosen = []
    for t in prefix:
        t = least_rotation(tuple(t))
        if t not in tri or any(c not in cover.cols for c in tri[t]):
            stats.exhausted = True
            return
        cover.select(t)
        chosen.append(t)

    def solve():
        if max_nodes is not None and stats.nodes >= max_nodes:
            stats.budget_hit = True
            return
        stats.nodes += 1
        if not cover.cols:
            yield sorted(chosen)
            return
        col = min(cover.cols, key=lambda c: (len(cover.cols[c]), c))
        for r in sorted(cover.cols[col]):
            chosen.append(r)
            removed = cover.select(r)
            yield from solve()
            cover.deselect(r, removed)
            chosen.pop()
            if stats.budget_hit:
                return

    try:
        for cycles in solve():
            p = PolygonalPresentation(d.q, 3, tuple(cycles), n=1)
            # exact-cover postcondition, then the axioms themselves
            assert sorted(a for t in cycles for a in tri[t]) == list(d.arcs)
            assert validate_presentation(p).passed
            stats.solutions += 1
            yield p
            if limit is not None and stats.solutions >= limit:
                return
        stats.exhausted = not stats.budget_hit
    finally:
        stats.seconds = time.perf_counter() - started


@dataclass
class CatalogClass:
    canonical: bytes
    representative: PolygonalPresentation
    count: int = 1
    members: list[PolygonalPresentation] = field(default_factory=list, repr=False)


@dataclass
class Catalog:
    classes: list[CatalogClass]
    total: int

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def class_of(self, p: PolygonalPresentation) -> int | None:
        from .symmetry import canonical_form

        key = canonical_form(p)
        return next((i for i, c in enumerate(self.classes) if c.canonical == key), None)

    def to_dict(self, stats: SearchStats | None = None) -> dict:
        out = {"schema_version": SCHEMA_VERSION, "presentations": self.total,
               "class_count": self.class_count,
               "classes": [{"size": c.count,
                            "representative": ["(" + ",".join(map(str, t)) + ")"
                                               for t in c.representative.tuples]}
                           for c in self.classes]}
        if stats is not None:
            out.update(node_count=stats.nodes, exhausted=stats.exhausted,
                       wall_time=round(stats.seconds, 6))
        return out

    def to_json(self, stats: SearchStats | None = None) -> str:
        return json.dumps(self.to_dict(stats), indent=2, sort_keys=True)


def dedupe_up_to_equivalence(stream: Iterable[PolygonalPresentation]) -> Catalog:
    from .symmetry import canonical_form

    classes: dict[bytes, CatalogClass] = {}
    total = 0
    for p in stream:
        total += 1
        key = canonical_form(p)
        if key in classes:
            classes[key].count += 1
            classes[key].members.append(p)
        else:
            classes[key] = CatalogClass(key, p, 1, [p])
    return Catalog(sorted(classes.values(), key=lambda c: c.canonical), total)

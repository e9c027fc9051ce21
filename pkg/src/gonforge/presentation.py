"""
Polygonal presentations: parsing, cyclic closure, the three defining
conditions, and the link graph forced by the incidence condition.

Letters are plain ints 1..q. A presentation stores its tuples as listed;
``cyclic_closure`` produces the rotation-closed set that the conditions
quantify over.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field, replace

from .incidence import BLACK, WHITE, Doily, LabeledGraph, Vertex, bipartite_classes, diameter, girth

SCHEMA_VERSION = 1


class PresentationError(ValueError):
    """Malformed presentation text or data."""

    def __init__(self, msg, lineno=None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


@dataclass(frozen=True)
class PolygonalPresentation:
    q: int
    k: int
    tuples: tuple[tuple[int, ...], ...]
    n: int | None = None
    closed: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(tuple(t) for t in self.tuples))
        if self.k < 3:
            raise PresentationError(f"arity must be at least 3, got {self.k}")
        for t in self.tuples:
            if len(t) != self.k:
                raise PresentationError(f"tuple {t} has arity {len(t)}, expected {self.k}")
            for x in t:
                if not 1 <= x <= self.q:
                    raise PresentationError(f"letter {x} outside 1..{self.q}")

    def __len__(self):
        return len(self.tuples)

    def letters(self) -> range:
        return range(1, self.q + 1)

    def relabel(self, sigma) -> "PolygonalPresentation":
        """Apply the letter map ``sigma`` (dict or callable) entrywise."""
        f = sigma if callable(sigma) else sigma.__getitem__
        return replace(self, tuples=tuple(tuple(f(x) for x in t) for t in self.tuples))

    def reversed(self) -> "PolygonalPresentation":
        """Orientation flip: every tuple read backwards."""
        return replace(self, tuples=tuple(t[::-1] for t in self.tuples),
                       name=f"rev({self.name})" if self.name else "")


def rotations(t: tuple) -> list[tuple]:
    return [t[i:] + t[:i] for i in range(len(t))]


def least_rotation(t: tuple) -> tuple:
    return min(rotations(t))


def orbit_representatives(p: PolygonalPresentation) -> list[tuple]:
    """One least rotation per cyclic orbit, sorted; these are the faces."""
    return sorted({least_rotation(t) for t in p.tuples})


# -- text format -------------------------------------------------------------

_TUPLE_RE = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)$")
_HEADER_RE = re.compile(r"^(k|q|n)\s*=\s*(\d+)$")


def parse_presentation(text: str, k: int | None = None, name: str = "") -> PolygonalPresentation:
    """Parse the presentation file format.

    Optional ``k=``, ``q=``, ``n=`` header lines; one ``(i,j,...)`` tuple
    per line; ``#`` comments. ``q`` defaults to the largest letter seen.
    """
    header: dict[str, int] = {}
    tuples = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER_RE.match(line)
        if m:
            header[m.group(1)] = int(m.group(2))
            continue
        m = _TUPLE_RE.match(line)
        if not m:
            raise PresentationError(f"cannot parse {raw.strip()!r}", lineno)
        t = tuple(int(s) for s in m.group(1).split(","))
        if any(x < 1 for x in t):
            raise PresentationError(f"letter index below 1 in {raw.strip()!r}", lineno)
        arity = k or header.get("k") or (len(tuples[0][1]) if tuples else len(t))
        if len(t) != arity:
            raise PresentationError(f"arity {len(t)} does not match k={arity}", lineno)
        tuples.append((lineno, t))
    arity = k or header.get("k") or (len(tuples[0][1]) if tuples else 3)
    q = header.get("q", max((max(t) for _, t in tuples), default=0))
    for lineno, t in tuples:
        if max(t) > q:
            raise PresentationError(f"letter {max(t)} exceeds declared q={q}", lineno)
    return PolygonalPresentation(q, arity, tuple(t for _, t in tuples), header.get("n"), name=name)


def format_presentation(p: PolygonalPresentation, header: bool = True) -> str:
    out = []
    if p.name:
        out.append(f"# {p.name}")
    if header:
        out += [f"k={p.k}", f"q={p.q}"]
        if p.n is not None:
            out.append(f"n={p.n}")
    out += ["(" + ",".join(map(str, t)) + ")" for t in p.tuples]
    return "\n".join(out) + "\n"


T1_TEXT = """\
# T1
k=3
q=15
(1,2,7)
(1,8,11)
(1,14,5)
(2,4,13)
(12,4,2)
(4,9,3)
(6,8,3)
(14,6,3)
(12,10,5)
(13,15,5)
(12,9,6)
(11,10,7)
(14,13,7)
(9,15,8)
(11,15,10)
"""

T2_TEXT = """\
# T2
k=3
q=15
(1,10,1)
(1,15,2)
(2,11,9)
(2,14,3)
(3,7,4)
(3,15,13)
(4,8,6)
(12,11,4)
(5,8,5)
(5,10,12)
(6,14,6)
(7,12,7)
(13,9,8)
(14,15,9)
(13,11,10)
"""

BUILTINS = {"T1": T1_TEXT, "T2": T2_TEXT}


def builtin(name: str) -> PolygonalPresentation:
    return parse_presentation(BUILTINS[name], name=name)


def T1() -> PolygonalPresentation:
    return builtin("T1")


def T2() -> PolygonalPresentation:
    return builtin("T2")


# -- closure and conditions ----------------------------------------------------


def cyclic_closure(p: PolygonalPresentation) -> PolygonalPresentation:
    closed = sorted({r for t in p.tuples for r in rotations(t)})
    return replace(p, tuples=tuple(closed), closed=True)


def _closed(p):
    return p if p.closed else cyclic_closure(p)


def leading_pairs(p: PolygonalPresentation) -> dict[tuple[int, int], list[tuple]]:
    """Closed tuples grouped by their first two letters."""
    groups = defaultdict(list)
    for t in _closed(p).tuples:
        groups[t[:2]].append(t)
    return dict(groups)


def link_vertex_ids(a: int) -> tuple[str, str]:
    return f"x{a}", f"y{a}"


def _link_vertices(q):
    return ([Vertex(f"x{a}", BLACK, str(a)) for a in range(1, q + 1)]
            + [Vertex(f"y{a}", WHITE, str(a)) for a in range(1, q + 1)])


def reconstruct_link_graph(p: PolygonalPresentation) -> LabeledGraph:
    """The graph condition (2) forces: edge {y_a, x_b} per closed tuple (a, b, ...).

    Requires condition (3); a repeated leading pair raises, since the
    graph would need a parallel edge.
    """
    pairs = leading_pairs(p)
    bad = [ab for ab, ts in pairs.items() if len(ts) > 1]
    if bad:
        raise PresentationError(f"leading pairs {bad[:3]} extend to more than one tuple")
    edges = [(f"y{a}", f"x{b}") for a, b in sorted(pairs)]
    return LabeledGraph(_link_vertices(p.q), edges, bipartite=True)


@dataclass
class ConditionResult:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    note: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": self.passed,
                "witnesses": [list(w) if isinstance(w, tuple) else w for w in self.witnesses],
                "note": self.note}


@dataclass
class ValidationReport:
    conditions: list[ConditionResult]
    n: int | None = None
    closed_count: int = 0
    graph: LabeledGraph | None = field(default=None, repr=False)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, name) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)

    def failures(self) -> list[ConditionResult]:
        return [c for c in self.conditions if not c.passed]

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "passed": self.passed, "n": self.n,
                "closed_tuples": self.closed_count,
                "conditions": [c.to_dict() for c in self.conditions], "graph": self.stats}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def validate_presentation(p: PolygonalPresentation, graph: LabeledGraph | None = None) -> ValidationReport:
    """Check conditions (1)-(3) on the closed presentation.

    Condition (2) is checked against the reconstructed link graph, in both
    directions, and then the graph must split into ``p.n`` connected
    bipartite components (any number if ``p.n`` is None). When ``graph``
    is given it must be colored-isomorphic to the reconstruction.
    """
    closed = cyclic_closure(p)
    tuples = set(closed.tuples)
    report = ValidationReport([], closed_count=len(tuples))

    not_closed = [t for t in tuples if t[1:] + t[:1] not in tuples]
    report.conditions.append(ConditionResult("(1) rotation closure", not not_closed, not_closed))

    pairs = leading_pairs(closed)
    clashes = [(ab, ts) for ab, ts in sorted(pairs.items()) if len(ts) > 1]
    report.conditions.append(ConditionResult(
        "(3) unique extension", not clashes, [list(ab) + [t[2] for t in ts] for ab, ts in clashes]))
    if clashes:
        report.conditions.append(ConditionResult(
            "(2) incidence iff", False, [], "link graph undefined: condition (3) fails"))
        return report

    g = reconstruct_link_graph(closed)
    report.graph = g
    # both directions of the iff, re-read from the graph
    missing = [(a, b) for a, b in pairs if not g.has_edge(f"y{a}", f"x{b}")]
    extra = []
    for a in p.letters():
        for xb in g.neighbors(f"y{a}"):
            if (a, int(xb[1:])) not in pairs:
                extra.append((a, int(xb[1:])))
    ok2 = not missing and not extra
    witnesses = [("missing edge",) + w for w in missing] + [("edge without tuple",) + w for w in extra]

    comps = g.components()
    bip = bipartite_classes(g) is not None
    n = len(comps)
    report.n = n
    if p.n is not None and n != p.n:
        witnesses.append(("components", n, "expected", p.n))
        ok2 = False
    isolated = [vid for vid in g.ids() if g.degree(vid) == 0]
    if isolated:
        witnesses.append(("isolated",) + tuple(isolated))
        ok2 = False
    if not bip:
        ok2 = False
        witnesses.append(("not bipartite",))
    report.conditions.append(ConditionResult("(2) incidence iff", ok2, witnesses))

    if graph is not None:
        from .symmetry import find_isomorphism

        iso = find_isomorphism(g, graph, respect_colors=True)
        report.conditions.append(ConditionResult(
            "supplied graph", iso is not None, [], "" if iso else "not colored-isomorphic"))

    degs = g.degrees()
    report.stats = {"vertices": len(g), "edges": len(g.edges), "components": n,
                    "min_degree": min(degs, default=0), "max_degree": max(degs, default=0),
                    "girth": _num(girth(g)), "diameter": _num(diameter(g))}
    return report


def _num(x):
    return None if x == float("inf") else x


# -- basic bijection -----------------------------------------------------------


@dataclass(frozen=True)
class BasicBijection:
    """Letter a -> index of the doily line playing the role of y_a."""

    line_of: dict

    def __getitem__(self, a):
        return self.line_of[a]

    def __len__(self):
        return len(self.line_of)

    def is_bijective(self) -> bool:
        return len(set(self.line_of.values())) == len(self.line_of)


def out_neighborhoods(p: PolygonalPresentation) -> dict[int, frozenset]:
    out = defaultdict(set)
    for a, b in leading_pairs(p):
        out[a].add(b)
    return {a: frozenset(out[a]) for a in p.letters()}


def derive_basic_bijection(p: PolygonalPresentation, doily: Doily) -> BasicBijection | None:
    """Read lambda off ``p`` assuming letter i is the doily point labelled i.

    None when some out-neighborhood is not a line (or two letters share
    one); callers then fall back to an isomorphism search.
    """
    if p.q != len(doily.points):
        return None
    line_of = {}
    for a, nbhd in out_neighborhoods(p).items():
        j = doily.line_index.get(nbhd)
        if j is None:
            return None
        line_of[a] = j
    lam = BasicBijection(line_of)
    return lam if lam.is_bijective() else None


def presentation_from_cycles(cycles, q: int, name: str = "") -> PolygonalPresentation:
    return PolygonalPresentation(q, len(cycles[0]) if cycles else 3, tuple(cycles), name=name)


def single_letter_mutations(p: PolygonalPresentation):
    """Yield (position, old, new, mutant) for every one-letter change of a listed tuple."""
    for i, t in enumerate(p.tuples):
        for j, old in enumerate(t):
            for new in p.letters():
                if new == old:
                    continue
                nt = t[:j] + (new,) + t[j + 1:]
                yield (i, j), old, new, replace(p, tuples=p.tuples[:i] + (nt,) + p.tuples[i + 1:],
                                                 name="")

"""
Acceptance criteria as runnable checks.

Each check returns ``(passed, detail)``; ``run_criterion`` adds timing
and fails a check that overruns its wall-clock limit. Used by the
``selftest`` subcommand and by tests/test_acceptance.py.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .complex import build_polyhedron, cell_census, check_link_condition, vertex_links
from .develop import ball_census, develop_ball, interior_link_check
from .grouppres import abelianization, relation_matrix, smith_normal_form, to_group_presentation
from .incidence import (bipartite_classes, build_doily, diameter, girth, is_generalized_m_gon)
from .presentation import (T1, T2, cyclic_closure, derive_basic_bijection, leading_pairs,
                           reconstruct_link_graph, single_letter_mutations, validate_presentation)
from .search import (SearchStats, build_arc_digraph, dedupe_up_to_equivalence,
                     enumerate_triangle_presentations)
from .symmetry import (canonical_form, doily_collineations, enumerate_automorphisms,
                       find_isomorphism, presentations_equivalent)

SEED = 20260419


@dataclass
class Criterion:
    number: int
    title: str
    limit: float  # seconds
    check: Callable[[], tuple[bool, str]]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number:2d}. {self.title} ({self.seconds:.2f}s / {self.limit:g}s) {self.detail}"


def doily_structure():
    d = build_doily()
    g = d.graph
    classes = bipartite_classes(g)
    rep = is_generalized_m_gon(g, 4)
    facts = {
        "points": len(g.ids("black")), "lines": len(g.ids("white")), "edges": len(g.edges),
        "degrees": sorted(set(g.degrees())), "bipartite": classes is not None,
        "girth": girth(g), "diameter": diameter(g), "verdict": rep.verdict,
    }
    ok = facts == {"points": 15, "lines": 15, "edges": 45, "degrees": [3], "bipartite": True,
                   "girth": 8, "diameter": 4, "verdict": True}
    return ok, str(facts)


def presentations_valid():
    details = []
    ok = True
    for p in (T1(), T2()):
        closed = cyclic_closure(p)
        report = validate_presentation(p)
        distinct = len(leading_pairs(closed)) == len(closed.tuples)
        good = report.passed and len(closed.tuples) == 45 and distinct and report.n == 1
        ok &= good
        details.append(f"{p.name}: closed={len(closed.tuples)} distinct_pairs={distinct} n={report.n}")
    return ok, "; ".join(details)


def link_soundness():
    doily = build_doily().graph
    ok = True
    details = []
    for p in (T1(), T2()):
        corner = vertex_links(build_polyhedron(p))
        forced = reconstruct_link_graph(p)
        if len(corner) != 1:
            return False, f"{p.name}: {len(corner)} vertices"
        m1 = find_isomorphism(corner[0], forced, respect_colors=True)
        m2 = find_isomorphism(forced, doily, respect_colors=True)
        good = (m1 is not None and m1.is_isomorphism(corner[0], forced)
                and m2 is not None and m2.is_isomorphism(forced, doily))
        ok &= good
        details.append(f"{p.name}: corner~forced={m1 is not None} forced~doily={m2 is not None}")
    return ok, "; ".join(details)


def cell_counts():
    details = []
    ok = True
    for p in (T1(), T2()):
        c = cell_census(build_polyhedron(p))
        got = (c.V, c.E, c.F, c.euler_characteristic, c.links)
        ok &= got == (1, 15, 15, 1, [(30, 45)])
        details.append(f"{p.name}: V={c.V} E={c.E} F={c.F} chi={c.euler_characteristic} s,t={c.links}")
    return ok, "; ".join(details)


def curvature_arithmetic():
    poly = build_polyhedron(T1())
    hyp = check_link_condition(poly, 3, 4)
    euc = check_link_condition(poly, 3, 3)
    ok = (hyp.link_girths == [8] and hyp.gromov and hyp.hyperbolic_strict and hyp.mn_inequality
          and not euc.hyperbolic_strict and euc.euclidean_boundary)
    return ok, (f"p=3,m=4: girth={hyp.link_girths} gromov={hyp.gromov} strict={hyp.hyperbolic_strict}; "
                f"p=3,m=3: strict={euc.hyperbolic_strict} boundary={euc.euclidean_boundary}")


def automorphisms():
    g = build_doily().graph
    col = enumerate_automorphisms(g, respect_colors=True)
    full = enumerate_automorphisms(g, respect_colors=False)
    ids = g.ids()
    keys = {tuple(m[v] for v in ids) for m in col}
    pos = {v: i for i, v in enumerate(ids)}
    perms = [tuple(pos[m[v]] for v in ids) for m in col]
    pset = set(perms)
    closed = all(tuple(a[b[i]] for i in range(len(ids))) in pset for a in perms for b in perms)
    inverses = all(tuple(sorted(range(len(ids)), key=lambda i: a[i])) in pset for a in perms)
    ok = col.order == 720 and full.order == 1440 and len(keys) == 720 and closed and inverses
    return ok, f"color-preserving={col.order} full={full.order} closed={closed} inverses={inverses}"


def inequivalence():
    rep = presentations_equivalent(T1(), T2())
    rng = random.Random(SEED)
    sigmas = rng.sample(doily_collineations(), 20)
    k1 = set(cyclic_closure(T1()).tuples)
    recovered = 0
    for s in sigmas:
        moved = T1().relabel(s)
        r = presentations_equivalent(T1(), moved)
        w = r.witness
        if r.equivalent and {tuple(w[x] for x in t) for t in k1} == set(cyclic_closure(moved).tuples):
            recovered += 1
    ok = not rep.equivalent and rep.links_isomorphic and recovered == 20
    return ok, f"T1~T2={rep.equivalent} (with reversal {rep.equivalent_with_reversal}); witnesses {recovered}/20"


def group_presentation():
    p = T1()
    gp = to_group_presentation(p)
    m = relation_matrix(gp)
    snf = smith_normal_form(m)
    cols = [sum(row[j] for row in m) for j in range(gp.rank)]
    base = abelianization(p)
    rng = random.Random(SEED + 1)
    invariant = all(abelianization(p.relabel(s)) == base for s in rng.sample(doily_collineations(), 10))
    ok = (gp.rank == 15 and len(gp.relators) == 15 and all(len(r) == 3 for r in gp.relators)
          and set(cols) == {3} and snf.verify(m) and invariant)
    return ok, f"generators={gp.rank} relators={len(gp.relators)} H1={base} invariant={invariant}"


def development():
    c1 = {}
    details = []
    ok = True
    for p in (T1(), T2()):
        for r in (1, 2):
            d = develop_ball(p, r)
            c1[(p.name, r)] = ball_census(d).counts()
            if r == 2:
                verdicts = interior_link_check(d)
                good = bool(verdicts) and all(v for _, v in verdicts)
                links_ok = all(is_generalized_m_gon(d.link_of(v), 4).verdict for v, _ in verdicts)
                ok &= good and links_ok
                details.append(f"{p.name} r=2 interior={len(verdicts)} ok={good and links_ok}")
    ok &= c1[("T1", 1)] == (31, 75, 45)
    ok &= all(c1[("T1", r)] == c1[("T2", r)] for r in (1, 2))
    details.append(f"T1 r=1 {c1[('T1', 1)]} r=2 {c1[('T1', 2)]}")
    return ok, "; ".join(details)


def search_closure(max_nodes: int = 1_000_000):
    doily = build_doily()
    emitted = []
    details = []
    ok = True
    for p in (T1(), T2()):
        lam = derive_basic_bijection(p, doily)
        if lam is None:
            return False, f"{p.name}: identity labeling does not give a basic bijection"
        arcs = build_arc_digraph(doily, lam)
        # seeded prefix: T's first three cycles must extend
        seeded = next(enumerate_triangle_presentations(arcs, prefix=p.tuples[:3], max_nodes=max_nodes), None)
        stats = SearchStats()
        found = list(enumerate_triangle_presentations(arcs, max_nodes=max_nodes, stats=stats))
        revalid = all(validate_presentation(x).passed for x in found)
        key = canonical_form(p)
        hit = any(canonical_form(x) == key for x in found)
        ok &= seeded is not None and canonical_form(seeded) == key and hit and revalid and stats.exhausted
        emitted += found
        details.append(f"{p.name}: emitted={len(found)} nodes={stats.nodes} rediscovered={hit}")
    cat = dedupe_up_to_equivalence(emitted)
    i1, i2 = cat.class_of(T1()), cat.class_of(T2())
    ok &= i1 is not None and i2 is not None and i1 != i2
    details.append(f"classes={cat.class_count}")
    return ok, "; ".join(details)


def mutation_sensitivity():
    survivors = []
    total = 0
    for where, old, new, mutant in single_letter_mutations(T1()):
        total += 1
        report = validate_presentation(mutant)
        if report.passed and is_generalized_m_gon(report.graph, 4).verdict:
            survivors.append((where, old, new))
    return total == 45 * 14 and not survivors, f"mutations={total} survivors={survivors[:5]}"


CRITERIA = [
    Criterion(1, "doily structure", 1, doily_structure),
    Criterion(2, "T1/T2 satisfy conditions (1)-(3)", 1, presentations_valid),
    Criterion(3, "link soundness (corner link = forced link = doily)", 1, link_soundness),
    Criterion(4, "cell census", 1, cell_counts),
    Criterion(5, "curvature arithmetic", 1, curvature_arithmetic),
    Criterion(6, "doily automorphism groups 720 / 1440", 30, automorphisms),
    Criterion(7, "T1 and T2 inequivalent; sigma-translates recovered", 30, inequivalence),
    Criterion(8, "group presentation and abelianization", 5, group_presentation),
    Criterion(9, "development of the universal cover", 60, development),
    Criterion(10, "search rediscovers T1 and T2 in distinct classes", 600, search_closure),
    Criterion(11, "mutation sensitivity", 60, mutation_sensitivity),
]


def run_criterion(c: Criterion) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = c.check()
    except Exception as exc:  # a crash is a failed criterion, reported like one
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if elapsed > c.limit:
        passed = False
        detail += f" [over time limit {c.limit}s]"
    return CriterionResult(c.number, c.title, passed, detail, elapsed, c.limit)


def run_all(stop_on_failure: bool = False, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    results = []
    for c in CRITERIA:
        r = run_criterion(c)
        results.append(r)
        if echo:
            echo(r.line())
        if stop_on_failure and not r.passed:
            break
    return results

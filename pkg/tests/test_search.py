import itertools

import pytest

from gonforge.presentation import cyclic_closure, derive_basic_bijection, validate_presentation
from gonforge.search import (ArcDigraph, SearchStats, arc_digraph_of, build_arc_digraph,
                             dedupe_up_to_equivalence, directed_triangles,
                             enumerate_triangle_presentations)
from gonforge.symmetry import canonical_form


@pytest.fixture(scope="module")
def digraphs(t1, t2, doily):
    return {p.name: build_arc_digraph(doily, derive_basic_bijection(p, doily)) for p in (t1, t2)}


def brute_triangles(arcs):
    a = set(arcs)
    out = set()
    for x, y, z in itertools.product(range(1, 16), repeat=3):
        if {(x, y), (y, z), (z, x)} <= a and len({(x, y), (y, z), (z, x)}) == 3:
            out.add(min([(x, y, z), (y, z, x), (z, x, y)]))
    return sorted(out)


def brute_covers(d):
    """Every 15-subset of triangles whose arcs are exactly the arc set."""
    tris = brute_triangles(d.arcs)
    want = sorted(d.arcs)
    out = []
    for combo in itertools.combinations(tris, len(d.arcs) // 3):
        got = sorted(arc for x, y, z in combo for arc in ((x, y), (y, z), (z, x)))
        if got == want:
            out.append(sorted(combo))
    return out


def test_arc_digraphs(digraphs, t1, t2):
    for name, p in (("T1", t1), ("T2", t2)):
        d = digraphs[name]
        assert len(d.arcs) == 45
        assert all(d.out_degree(a) == d.in_degree(a) == 3 for a in range(1, 16))
        assert d == arc_digraph_of(cyclic_closure(p))
    # loops are the letters with a repeated-letter face
    assert digraphs["T1"].loops() == []
    assert digraphs["T2"].loops() == [1, 5, 6, 7]


def test_triangles_match_brute_force(digraphs):
    for d in digraphs.values():
        assert list(directed_triangles(d)) == brute_triangles(d.arcs)
    assert (len(directed_triangles(digraphs["T1"])), len(directed_triangles(digraphs["T2"]))) == (17, 18)


def test_enumeration_matches_brute_force(digraphs):
    for d in digraphs.values():
        found = [sorted(p.tuples) for p in enumerate_triangle_presentations(d)]
        assert found == brute_covers(d)


def test_rediscovery(digraphs, t1, t2):
    for name, p in (("T1", t1), ("T2", t2)):
        stats = SearchStats()
        found = list(enumerate_triangle_presentations(digraphs[name], stats=stats))
        assert stats.exhausted and not stats.budget_hit and stats.solutions == len(found) == 1
        assert canonical_form(found[0]) == canonical_form(p)
        assert all(validate_presentation(x).passed for x in found)


def test_seeded_prefix(digraphs, t1):
    done = next(enumerate_triangle_presentations(digraphs["T1"], prefix=t1.tuples[:3]))
    assert set(cyclic_closure(done).tuples) == set(cyclic_closure(t1).tuples)


def test_overlapping_prefix_is_empty(digraphs):
    tris = directed_triangles(digraphs["T1"])
    a, b = next((a, b) for a, b in itertools.combinations(tris, 2) if tris[a] & tris[b])
    assert list(enumerate_triangle_presentations(digraphs["T1"], prefix=[a, b])) == []


def test_uncoverable_arc():
    d = ArcDigraph(3, ((1, 2), (2, 3), (3, 1), (1, 3)))
    stats = SearchStats()
    assert list(enumerate_triangle_presentations(d, stats=stats)) == []
    assert stats.exhausted


def test_deterministic(digraphs):
    d = digraphs["T2"]
    assert [p.tuples for p in enumerate_triangle_presentations(d)] == \
        [p.tuples for p in enumerate_triangle_presentations(d)]


def test_limit_and_budget(digraphs):
    d = digraphs["T1"]
    assert len(list(enumerate_triangle_presentations(d, limit=1))) == 1
    stats = SearchStats()
    assert list(enumerate_triangle_presentations(d, max_nodes=3, stats=stats)) == []
    assert stats.budget_hit and not stats.exhausted


def test_dedupe(t1, t2, collineations):
    cat = dedupe_up_to_equivalence([t1, t1.relabel(collineations[100]), t2])
    assert cat.total == 3 and cat.class_count == 2
    assert sorted(c.count for c in cat.classes) == [1, 2]
    assert cat.class_of(t1) != cat.class_of(t2)
    assert cat.class_of(t1.relabel(collineations[7])) == cat.class_of(t1)


def test_catalog_json_stable(digraphs, t1):
    found = list(enumerate_triangle_presentations(digraphs["T1"]))
    a = dedupe_up_to_equivalence(found).to_json()
    assert a == dedupe_up_to_equivalence(found).to_json()
    assert '"(1,2,7)"' in a

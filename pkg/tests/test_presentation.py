import collections
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gonforge.incidence import build_doily, is_generalized_m_gon
from gonforge.presentation import (T1_TEXT, T2_TEXT, PolygonalPresentation, PresentationError,
                                   cyclic_closure, derive_basic_bijection, format_presentation,
                                   leading_pairs, parse_presentation, reconstruct_link_graph,
                                   single_letter_mutations, validate_presentation)
from gonforge.symmetry import find_isomorphism

from oracles import closure

# typed in independently from the published lists
T1_LISTED = [(1, 2, 7), (1, 8, 11), (1, 14, 5), (2, 4, 13), (12, 4, 2), (4, 9, 3), (6, 8, 3),
             (14, 6, 3), (12, 10, 5), (13, 15, 5), (12, 9, 6), (11, 10, 7), (14, 13, 7),
             (9, 15, 8), (11, 15, 10)]
T2_LISTED = [(1, 10, 1), (1, 15, 2), (2, 11, 9), (2, 14, 3), (3, 7, 4), (3, 15, 13), (4, 8, 6),
             (12, 11, 4), (5, 8, 5), (5, 10, 12), (6, 14, 6), (7, 12, 7), (13, 9, 8), (14, 15, 9),
             (13, 11, 10)]


def test_builtins_match_transcription(t1, t2):
    assert list(t1.tuples) == T1_LISTED and list(t2.tuples) == T2_LISTED
    assert (t1.q, t1.k) == (t2.q, t2.k) == (15, 3)


def test_parse_single_tuple():
    p = parse_presentation("(1,2,7)")
    assert p.k == 3 and p.tuples == ((1, 2, 7),) and p.q == 7 and not p.closed


def test_parse_headers_and_comments():
    p = parse_presentation("# demo\nk=3\nq=9\n(1, 2, 3)  # trailing\n\n(3,2,1)\n")
    assert (p.q, p.k, p.tuples) == (9, 3, ((1, 2, 3), (3, 2, 1)))


def test_format_round_trip(t1, t2):
    for p, text in ((t1, T1_TEXT), (t2, T2_TEXT)):
        assert parse_presentation(format_presentation(p)).tuples == p.tuples
        assert parse_presentation(text).tuples == p.tuples


@pytest.mark.parametrize("text, line", [
    ("k=3\n(1,2)\n", 2),
    ("(1,2,3)\n(1,2,3\n", 2),
    ("(0,1,2)\n", 1),
    ("(1,2,3)\n(1,2,3,4)\n", 2),
    ("q=3\n(1,2,4)\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(PresentationError) as info:
        parse_presentation(text)
    assert info.value.lineno == line


def test_closure_examples(t1):
    p = PolygonalPresentation(7, 3, ((1, 2, 7),))
    assert set(cyclic_closure(p).tuples) == {(1, 2, 7), (2, 7, 1), (7, 1, 2)}
    assert len(cyclic_closure(t1).tuples) == 45
    assert set(cyclic_closure(t1).tuples) == closure(T1_LISTED)
    assert cyclic_closure(PolygonalPresentation(1, 3, ((1, 1, 1),))).tuples == ((1, 1, 1),)


def relabelings():
    return st.permutations(list(range(1, 16))).map(lambda perm: dict(zip(range(1, 16), perm)))


@settings(max_examples=30, deadline=None)
@given(relabelings())
def test_closure_idempotent_and_equivariant(sigma):
    for p in (parse_presentation(T1_TEXT), parse_presentation(T2_TEXT)):
        c = cyclic_closure(p)
        assert set(cyclic_closure(c).tuples) == set(c.tuples)
        assert set(cyclic_closure(p.relabel(sigma)).tuples) == set(c.relabel(sigma).tuples)


def test_builtins_validate(t1, t2):
    for p in (t1, t2):
        rep = validate_presentation(p)
        assert rep.passed and rep.n == 1
        assert [c.name for c in rep.conditions] == ["(1) rotation closure", "(3) unique extension",
                                                   "(2) incidence iff"]


def test_sample_mutation(t1):
    # 7 -> 8 in (1,2,7): (1)-(3) still hold over the reconstructed graph,
    # which is no longer a quadrangle (x7 loses an edge, x8 gains one)
    mutant = parse_presentation(T1_TEXT.replace("(1,2,7)", "(1,2,8)"))
    rep = validate_presentation(mutant)
    assert rep.passed
    gq = is_generalized_m_gon(rep.graph, 4)
    assert not gq.verdict
    assert rep.graph.degree("x7") == 2 and rep.graph.degree("x8") == 4
    assert (gq.girth, gq.diameter) == (4, 6)


def test_clash_reported_with_witness():
    p = PolygonalPresentation(4, 3, ((1, 2, 3), (1, 2, 4)))
    rep = validate_presentation(p)
    cond = rep.condition("(3) unique extension")
    assert not cond.passed and cond.witnesses == [[1, 2, 3, 4]]
    assert not rep.condition("(2) incidence iff").passed


def test_mutation_sweep(t1):
    """Every one-letter change fails validation or the quadrangle check."""
    outcomes = collections.Counter()
    for _, _, _, m in single_letter_mutations(t1):
        rep = validate_presentation(m)
        if not rep.passed:
            outcomes["invalid"] += 1
        else:
            assert not is_generalized_m_gon(rep.graph, 4).verdict
            outcomes["valid, link not a quadrangle"] += 1
    assert outcomes == {"invalid": 174, "valid, link not a quadrangle": 456}


def test_reconstruct_small():
    g = reconstruct_link_graph(PolygonalPresentation(3, 3, ((1, 2, 3),)))
    assert len(g) == 6
    assert g.edge_set == frozenset(map(frozenset, [("y1", "x2"), ("y2", "x3"), ("y3", "x1")]))


def test_reconstructed_links_are_the_doily(t1, t2, doily):
    for p in (t1, t2):
        g = reconstruct_link_graph(p)
        assert len(g) == 30 and len(g.edges) == 45 and set(g.degrees()) == {3}
        assert is_generalized_m_gon(g, 4).verdict
        m = find_isomorphism(g, doily.graph)
        assert m is not None and m.is_isomorphism(g, doily.graph)


def test_letters_balanced(t1, t2):
    for p in (t1, t2):
        closed = cyclic_closure(p)
        g = reconstruct_link_graph(closed)
        assert len(g.edges) == len(closed.tuples)
        first = collections.Counter(t[0] for t in closed.tuples)
        second = collections.Counter(t[1] for t in closed.tuples)
        assert first == second
        assert sorted(g.degree(f"x{a}") for a in p.letters()) == sorted(g.degree(f"y{a}") for a in p.letters())


def test_identity_labeling_gives_basic_bijection(t1, t2, doily):
    for p in (t1, t2):
        lam = derive_basic_bijection(p, doily)
        assert lam is not None and len(lam) == 15 and lam.is_bijective()
        for a in p.letters():
            nbhd = {b for x, b in leading_pairs(p) if x == a}
            assert nbhd == set(doily.lines[lam[a]])


def test_identity_labeling_differs_between_builtins(t1, t2, doily):
    assert derive_basic_bijection(t1, doily).line_of != derive_basic_bijection(t2, doily).line_of


def test_basic_bijection_absent_for_non_quadrangle(t1, doily):
    assert derive_basic_bijection(PolygonalPresentation(3, 3, ((1, 2, 3),)), doily) is None
    # swapping duads 12 and 56 fixes no line structure
    swapped = t1.relabel({**{a: a for a in range(1, 16)}, 1: 15, 15: 1})
    assert derive_basic_bijection(swapped, doily) is None


def test_mutations_enumerated(t1):
    muts = list(single_letter_mutations(t1))
    assert len(muts) == 45 * 14
    (pos, old, new, m) = muts[0]
    assert pos == (0, 0) and old == 1 and m.tuples[0] == (new, 2, 7)

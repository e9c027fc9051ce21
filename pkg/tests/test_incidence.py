import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gonforge.incidence import (BLACK, WHITE, GraphError, LabeledGraph, Vertex, bipartite_classes,
                                build_doily, cycle_graph, diameter, distance_matrix, girth,
                                graph_from_edges, is_generalized_m_gon, parse_graph_text)

from oracles import duad_model, floyd_warshall, girth_by_edge_removal


def index_edges(g):
    return [(g.index[a], g.index[b]) for a, b in g.edges]


def k22():
    vs = [Vertex("a", BLACK, "a"), Vertex("b", BLACK, "b"), Vertex("c", WHITE, "c"), Vertex("d", WHITE, "d")]
    return LabeledGraph(vs, [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def test_single_edge_classes():
    g = LabeledGraph([Vertex("a", BLACK, "a"), Vertex("b", WHITE, "b")], [("a", "b")])
    black, white = bipartite_classes(g)
    assert (set(black), set(white)) == ({"a"}, {"b"})


def test_triangle_has_no_bipartition():
    assert bipartite_classes(graph_from_edges([(0, 1), (1, 2), (2, 0)])) is None


def test_doily_classes(doily):
    black, white = bipartite_classes(doily.graph)
    assert len(black) == len(white) == 15
    assert all(v.startswith("p") for v in black)


def test_girth_examples():
    assert girth(cycle_graph(8)) == 8
    assert girth(graph_from_edges([(0, 1), (1, 2), (1, 3), (3, 4)])) == math.inf


def test_doily_girth_matches_oracle(doily):
    g = doily.graph
    assert girth(g) == girth_by_edge_removal(len(g), index_edges(g)) == 8


def test_diameter_examples():
    assert diameter(graph_from_edges([(0, 1)])) == 1
    assert diameter(graph_from_edges([(0, 1), (2, 3)])) == math.inf


def test_doily_diameter_matches_oracle(doily):
    g = doily.graph
    d = floyd_warshall(len(g), index_edges(g))
    assert diameter(g) == max(max(row) for row in d) == 4


def test_thin_quadrangle():
    # the 8-cycle has every vertex on two edges, diameter 4 and girth 8
    rep = is_generalized_m_gon(cycle_graph(8), 4)
    assert (rep.min_degree, rep.diameter, rep.girth, rep.verdict) == (2, 4, 8, True)


def test_k22_is_a_digon():
    assert is_generalized_m_gon(k22(), 2).verdict


def test_doily_is_quadrangle(doily):
    rep = is_generalized_m_gon(doily.graph, 4)
    assert rep.verdict and rep.to_dict()["girth"] == 8


def test_m_below_two_rejected():
    with pytest.raises(ValueError):
        is_generalized_m_gon(cycle_graph(4), 1)


def test_doily_against_partition_enumeration(doily):
    pairs, _, lines = duad_model()
    assert list(doily.points) == pairs
    assert sorted(doily.lines, key=sorted) == lines
    g = doily.graph
    assert len(g.ids(BLACK)) == 15 and len(g.ids(WHITE)) == 15
    assert len(g.edges) == 45 and set(g.degrees()) == {3}
    assert all(len(doily.lines_through(i)) == 3 for i in range(1, 16))


def test_lexicographic_labels(doily):
    assert doily.points[0] == (1, 2) and doily.points[5] == (2, 3) and doily.points[14] == (5, 6)


def test_removing_any_edge_breaks_doily(doily):
    g = doily.graph
    for a, b in g.edges:
        assert not is_generalized_m_gon(g.without_edge(a, b), 4).verdict


@st.composite
def random_graphs(draw, max_n=64):
    n = draw(st.integers(1, max_n))
    possible = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.floats(0, 0.3))
    rng = random.Random(seed)
    edges = [e for e in possible if rng.random() < density]
    vs = [Vertex(i, BLACK, str(i)) for i in range(n)]
    return LabeledGraph(vs, edges, bipartite=False)


@settings(max_examples=40, deadline=None)
@given(random_graphs())
def test_distances_agree_with_floyd_warshall(g):
    fw = floyd_warshall(len(g), index_edges(g))
    mine = distance_matrix(g)
    for i in range(len(g)):
        for j in range(len(g)):
            want = -1 if fw[i][j] == math.inf else fw[i][j]
            assert mine[i][j] == want
    finite = all(x != math.inf for row in fw for x in row)
    assert diameter(g) == (max(max(r) for r in fw) if finite else math.inf)


@settings(max_examples=40, deadline=None)
@given(random_graphs(max_n=16))
def test_girth_agrees_with_edge_removal(g):
    got = girth(g)
    assert got == girth_by_edge_removal(len(g), index_edges(g))
    assert got == math.inf or got >= 3


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 20), st.integers(1, 20), st.integers(0, 2**32 - 1))
def test_bipartition_agrees_with_stored_colors(nb, nw, seed):
    rng = random.Random(seed)
    vs = [Vertex(f"b{i}", BLACK, str(i)) for i in range(nb)] + [Vertex(f"w{i}", WHITE, str(i)) for i in range(nw)]
    edges = [(f"b{i}", f"w{j}") for i in range(nb) for j in range(nw) if rng.random() < 0.3]
    g = LabeledGraph(vs, edges)
    black, white = bipartite_classes(g)
    for comp in g.components():
        if len(comp) > 1:
            on_black = {v for v in comp if v in set(black)}
            stored = {v for v in comp if g.vertex(v).color == BLACK}
            assert on_black == stored or on_black == set(comp) - stored


def test_graph_invariants_enforced():
    a, b = Vertex("a", BLACK, "a"), Vertex("b", BLACK, "b")
    with pytest.raises(GraphError):
        LabeledGraph([a, b], [("a", "b")])  # black to black in a bipartite graph
    with pytest.raises(GraphError):
        LabeledGraph([a], [("a", "a")], bipartite=False)
    with pytest.raises(GraphError):
        LabeledGraph([a, Vertex("c", WHITE, "c")], [("a", "c"), ("c", "a")])
    with pytest.raises(GraphError):
        LabeledGraph([a, Vertex("z", BLACK, "a")], [])


def test_text_round_trip(doily):
    g = doily.graph
    back = parse_graph_text(g.to_text())
    assert [(v.id, v.color, v.label) for v in back.vertices] == [(v.id, v.color, v.label) for v in g.vertices]
    assert back.edge_set == g.edge_set


def test_text_parse_error_names_line():
    with pytest.raises(GraphError, match="line 2"):
        parse_graph_text("v a black\nbogus\n")


def test_dot_shapes(doily):
    dot = doily.graph.to_dot("doily")
    assert dot.startswith("graph doily")
    assert dot.count("shape=box") == 15 and dot.count("shape=circle") == 15
    assert dot.count(" -- ") == 45

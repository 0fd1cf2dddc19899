import pytest
from hypothesis import given, strategies as st

from strategies import edge_set, multigraphs, naive_lc, simple_graphs
from vminor.graphs import (
    GraphError,
    LabeledGraph,
    MultiGraph,
    apply_lc_sequence,
    degree,
    delete_vertices,
    graph_union,
    induced_subgraph,
    local_complement,
    parse_text,
    to_dot,
    to_text,
)


def path_abc():
    return LabeledGraph("abc", [("a", "b"), ("b", "c")])


def triangle():
    return LabeledGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])


def test_lc_path_to_triangle():
    assert local_complement(path_abc(), "b") == triangle()


def test_lc_triangle_to_path():
    assert local_complement(triangle(), "a") == LabeledGraph("abc", [("b", "a"), ("a", "c")])


def test_lc_unknown_vertex_names_label():
    with pytest.raises(GraphError, match="'z'"):
        local_complement(path_abc(), "z")


def test_lc_leaves_vertex_order():
    g = LabeledGraph("cab", [("c", "a")])
    assert local_complement(g, "a").vertices == ("c", "a", "b")


@given(simple_graphs(), st.data())
def test_lc_involution(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    assert local_complement(local_complement(g, v), v) == g


@given(simple_graphs(), st.data())
def test_lc_matches_set_reference(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    assert edge_set(local_complement(g, v)) == naive_lc(g.vertices, frozenset(edge_set(g)), v)


@given(simple_graphs(), st.data())
def test_lc_neighbourhood_formula(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    h = local_complement(g, v)
    nv = set(g.neighbors(v))
    for u in g.vertices:
        want = set(g.neighbors(u)) ^ (nv - {u}) if u in nv else set(g.neighbors(u))
        assert set(h.neighbors(u)) == want


def test_apply_lc_sequence():
    g = path_abc()
    assert apply_lc_sequence(g, []) == g
    assert apply_lc_sequence(g, ["b", "b"]) == g
    assert apply_lc_sequence(g, ["b", "a"]) == local_complement(local_complement(g, "b"), "a")


def test_c5_sequence_b_e_b():
    c5 = LabeledGraph("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
    h = apply_lc_sequence(c5, "beb")
    # by hand: tau_b adds a-c; tau_e toggles a-d; tau_b (N_b = a, c) removes a-c
    assert edge_set(h) == edge_set(LabeledGraph("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"),
                                                          ("e", "a"), ("a", "d")]))


def test_induced_and_delete():
    k3 = triangle()
    assert induced_subgraph(k3, ["a", "b"]) == LabeledGraph("ab", [("a", "b")])
    assert induced_subgraph(k3, k3.vertices) == k3
    assert delete_vertices(k3, ["a"]) == LabeledGraph("bc", [("b", "c")])
    assert delete_vertices(k3, []) == k3
    g = LabeledGraph("abcdx", [("a", "b"), ("c", "d")])
    assert delete_vertices(g, ["x"]) == LabeledGraph("abcd", [("a", "b"), ("c", "d")])
    with pytest.raises(GraphError):
        induced_subgraph(k3, ["q"])


@given(simple_graphs(), st.data())
def test_induced_idempotent(g, data):
    vs = data.draw(st.sets(st.sampled_from(g.vertices)))
    h = induced_subgraph(g, vs)
    assert induced_subgraph(h, vs) == h


def test_simple_graph_rejects_loops():
    with pytest.raises(GraphError):
        LabeledGraph("a", [("a", "a")])


def test_equality_is_labelled():
    assert LabeledGraph("ab", [("a", "b")]) != LabeledGraph("ac", [("a", "c")])
    assert LabeledGraph("ab", [("a", "b")]) == LabeledGraph("ba", [("b", "a")])


def test_degree_conventions():
    assert degree(MultiGraph("v", [("v", "v")]), "v") == 2
    assert degree(MultiGraph("ab", [("a", "b"), ("a", "b")]), "a") == 2
    with pytest.raises(GraphError):
        degree(MultiGraph("a"), "b")


@given(multigraphs())
def test_degree_sum(g):
    assert sum(g.degree(v) for v in g.vertices) == 2 * g.num_edges()


def test_graph_union():
    g = MultiGraph("ab", [("a", "b")])
    assert graph_union(g, MultiGraph()) == g
    u = graph_union(g, MultiGraph("ab", [("a", "b")]))
    assert u.num_edges() == 2 and set(u.edges.values()) == {("a", "b")}
    assert u.edge_ids() == [0, 1]


def test_text_round_trip_multi():
    g = MultiGraph(["x", "y"], [("x", "y"), ("x", "y"), ("y", "y")])
    name, h = parse_text(to_text(g, "m"))
    assert name == "m" and h == g


@given(simple_graphs())
def test_text_round_trip_simple(g):
    _, h = parse_text(to_text(g))
    assert h == g


def test_parse_text_errors():
    with pytest.raises(GraphError, match="header"):
        parse_text("v a\n")
    with pytest.raises(GraphError, match="line 2"):
        parse_text("graph g simple\nbogus\n")
    with pytest.raises(GraphError, match="parallel"):
        parse_text("graph g simple\ne a b\ne b a\n")


def test_dot_quotes_labels():
    g = LabeledGraph(["pad:p1", "pad:p1'"], [("pad:p1", "pad:p1'")])
    dot = to_dot(g, "G", highlight=["pad:p1"])
    assert '"pad:p1" -- "pad:p1\'"' in dot
    assert "color=red" in dot

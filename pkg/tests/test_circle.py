import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from strategies import interleave
from vminor.circle import (
    DoubleOccurrenceWord,
    EulerianTour,
    TourError,
    alternance_graph,
    eulerian_tours,
    extend_to_eulerian,
    find_eulerian_tour,
    format_tour,
    induced_word,
    parse_tour,
    restrict_word,
)
from vminor.generators import all_4regular_multigraphs, word_host
from vminor.graphs import LabeledGraph, MultiGraph, induced_subgraph

HOST_WORD = "adcbaebced"


def test_two_self_loops():
    f = MultiGraph("v", [("v", "v"), ("v", "v")])
    t = find_eulerian_tour(f)
    t.check()
    assert induced_word(t) == ("v", "v")


def test_four_parallel_edges():
    f = MultiGraph("ab", [("a", "b")] * 4)
    t = find_eulerian_tour(f)
    t.check()
    assert len(t.edges) == 4
    assert "".join(induced_word(t)) == "abab"


def test_word_host_tours():
    f = word_host()
    t = find_eulerian_tour(f)
    t.check()
    w = induced_word(t)
    assert len(w) == 10 and DoubleOccurrenceWord(w).is_valid()
    u0 = EulerianTour(f, tuple(HOST_WORD + "a"), tuple(range(10)))
    u0.check()
    assert "".join(induced_word(u0)) == HOST_WORD


def test_hierholzer_rejects_bad_hosts():
    with pytest.raises(TourError, match="odd degree"):
        find_eulerian_tour(MultiGraph("ab", [("a", "b")]))
    with pytest.raises(TourError, match="disconnected"):
        find_eulerian_tour(MultiGraph("ab", [("a", "a"), ("b", "b")]))


def test_extend_full_tour_unchanged():
    f = word_host()
    t = find_eulerian_tour(f)
    assert extend_to_eulerian(t) == t


def test_extend_empty_tour_equals_hierholzer():
    f = word_host()
    for v in f.vertices:
        assert extend_to_eulerian(EulerianTour(f, (v,), ())) == find_eulerian_tour(f, v)


def _is_subsequence(small, big):
    it = iter(big)
    return all(any(x == y for y in it) for x in small)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_extend_keeps_partial_steps(n, data):
    graphs = list(all_4regular_multigraphs(n))
    f = data.draw(st.sampled_from(graphs))
    full = data.draw(st.sampled_from(list(itertools.islice(eulerian_tours(f), 50))))
    # closed sub-walk: a prefix that returns to the start vertex
    closes = [i for i in range(len(full.edges) + 1) if full.vertices[i] == full.vertices[0]]
    cut = data.draw(st.sampled_from(closes))
    partial = EulerianTour(f, full.vertices[:cut + 1], full.edges[:cut])
    ext = extend_to_eulerian(partial)
    ext.check()
    assert _is_subsequence(partial.steps, ext.steps)


def test_restrict_word():
    assert "".join(restrict_word(HOST_WORD, "abcde")) == HOST_WORD
    assert "".join(restrict_word(HOST_WORD, "ab")) == "abab"
    assert restrict_word(HOST_WORD, []) == ()


def test_alternance_of_host_word():
    g = alternance_graph(HOST_WORD)
    want = LabeledGraph("abcde", [("a", "b"), ("a", "c"), ("a", "d"), ("b", "e"), ("c", "e")])
    assert g == want


def test_alternance_small_words():
    assert alternance_graph("uuvv") == LabeledGraph("uv")
    assert alternance_graph("uvuv") == LabeledGraph("uv", [("u", "v")])
    with pytest.raises(TourError):
        alternance_graph("uvu")


@st.composite
def dows(draw, max_letters=7):
    k = draw(st.integers(0, max_letters))
    letters = [chr(ord("a") + i) for i in range(k)]
    return draw(st.permutations(letters * 2))


@given(dows())
def test_alternance_matches_reference(w):
    g = alternance_graph(w)
    for u, v in itertools.combinations(sorted(set(w)), 2):
        assert g.has_edge(u, v) == interleave(w, u, v)


@given(dows(), st.data())
def test_subword_identity(w, data):
    keep = data.draw(st.sets(st.sampled_from(sorted(set(w)) or ["a"])))
    keep &= set(w)
    assert alternance_graph(restrict_word(w, keep)) == induced_subgraph(alternance_graph(w), [x for x in dict.fromkeys(w) if x in keep])


def test_eulerian_tours_counts():
    # 3!! transitions at each end, 9 systems, 6 of them single circuits
    f = MultiGraph("ab", [("a", "b")] * 4)
    tours = list(eulerian_tours(f))
    assert len(tours) == 6
    assert len({t.edges for t in tours}) == 6
    for t in tours:
        t.check()
        assert "".join(induced_word(t)) == "abab"


def _brute_force_circuits(f):
    """Circuits as cyclic edge sequences up to rotation and reversal, by edge backtracking."""
    m = f.num_edges()
    e0 = f.edge_ids()[0]
    a, b = f.endpoints(e0)
    found = set()

    def go(v, used, seq):
        if len(seq) == m:
            if v == a:
                found.add(tuple(seq))
            return
        for e in f.incident(v):
            if e not in used:
                go(f.other(e, v), used | {e}, seq + [e])

    go(b, {e0}, [e0])
    return found


def test_eulerian_tours_vs_backtracking():
    # loop-free hosts, so each circuit is a distinct directed edge sequence from e0
    for n in (2, 3):
        for f in all_4regular_multigraphs(n):
            if any(a == b for a, b in f.edges.values()):
                continue
            ours = {t.edges for t in eulerian_tours(f)}
            assert ours == _brute_force_circuits(f)


def test_tour_text_round_trip():
    f = word_host()
    t = find_eulerian_tour(f)
    assert parse_tour(f, format_tour(t)) == t
    with pytest.raises(TourError):
        parse_tour(f, "v:a x:1")


def test_tour_check_errors():
    f = MultiGraph("ab", [("a", "b")] * 2)
    with pytest.raises(TourError, match="not closed"):
        EulerianTour(f, ("a", "b"), (0,)).check(complete=False)
    with pytest.raises(TourError, match="not visited"):
        EulerianTour(f, ("a",), ()).check()
    with pytest.raises(TourError, match="repeats"):
        EulerianTour(f, ("a", "b", "a"), (0, 0)).check(complete=False)


def test_transition_count_bound():
    f = word_host()
    n_tours = sum(1 for _ in eulerian_tours(f))
    assert 0 < n_tours <= math.prod(3 for _ in f.vertices)

import json
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strategies import simple_graphs
from vminor.generators import random_graph
from vminor.graphs import LabeledGraph, local_complement
from vminor.oracles import PairSet, bell_graph, decide_bellvm
from vminor.quantum import (
    HADAMARD,
    QubitLimitError,
    StateVector,
    bell_target_state,
    graph_state,
    lc_unitary,
    pauli_measure,
    plus_state,
    replay_witness,
    schmidt_profile,
    schmidt_rank,
)


def test_single_vertex_is_plus():
    s = graph_state(LabeledGraph("a"))
    assert np.allclose(s.amplitudes, [2 ** -0.5, 2 ** -0.5])


def test_k2_amplitudes():
    s = graph_state(LabeledGraph("ab", [("a", "b")]))
    assert np.allclose(s.amplitudes, [0.5, 0.5, 0.5, -0.5])


def test_k2_is_hadamard_on_bell():
    k2 = graph_state(LabeledGraph("ab", [("a", "b")]))
    phi = bell_target_state(PairSet([("a", "b")]))
    assert np.allclose(phi.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert abs(k2.fidelity(phi.apply("b", HADAMARD)) - 1) < 1e-12


def test_bell_pairs_schmidt():
    b = PairSet([("a", "b"), ("c", "d")])
    s = bell_target_state(b)
    assert s.n == 4
    assert schmidt_rank(s, ["a"]) == 2
    assert schmidt_rank(s, ["a", "b"]) == 1
    gb = graph_state(bell_graph(b))
    for q in ("b", "d"):
        s = s.apply(q, HADAMARD)
    assert abs(gb.fidelity(s) - 1) < 1e-12


@settings(max_examples=80, deadline=None)
@given(simple_graphs(max_n=6), st.data())
def test_lc_unitary_correspondence(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    s = lc_unitary(g, v, graph_state(g))
    assert abs(s.norm() - 1) < 1e-10
    assert s.fidelity(graph_state(local_complement(g, v))) >= 1 - 1e-10


def test_lc_unitary_isolated_vertex():
    g = LabeledGraph("ab", [])
    s = lc_unitary(g, "a", graph_state(g))
    assert local_complement(g, "a") == g
    # exp(-i pi/4 X) fixes |+> up to phase
    assert abs(s.fidelity(graph_state(g)) - 1) < 1e-12


def test_lc_unitary_twice():
    g = random_graph(5, 0.5, random.Random(2))
    v = g.vertices[0]
    h = local_complement(g, v)
    s = lc_unitary(h, v, lc_unitary(g, v, graph_state(g)))
    assert abs(s.fidelity(graph_state(g)) - 1) < 1e-10


def test_lc_unitary_label_mismatch():
    g = LabeledGraph("ab", [("a", "b")])
    with pytest.raises(ValueError):
        lc_unitary(g, "a", plus_state(["a", "c"]))
    with pytest.raises(ValueError):
        lc_unitary(g, "z", graph_state(g))


def test_z_measure_plus_outcomes():
    outs = {pauli_measure(plus_state(["a"]), "a", "Z", seed)[0] for seed in range(40)}
    assert outs == {1, -1}


def test_z_measure_k2():
    k2 = graph_state(LabeledGraph("ab", [("a", "b")]))
    for seed in range(20):
        out, post = pauli_measure(k2, "b", "Z", seed)
        want = np.array([1, 1 if out == 1 else -1]) / np.sqrt(2)
        assert post.labels == ("a",)
        assert abs(abs(np.vdot(want, post.amplitudes)) - 1) < 1e-12


def test_measure_never_picks_zero_branch():
    zero = StateVector(("a",), np.array([1, 0]))
    assert all(pauli_measure(zero, "a", "Z", s)[0] == 1 for s in range(30))


def test_measure_is_seeded():
    s = graph_state(random_graph(4, 0.6, random.Random(0)))
    a = pauli_measure(s, s.labels[0], "Y", 123)
    b = pauli_measure(s, s.labels[0], "Y", 123)
    assert a[0] == b[0] and np.array_equal(a[1].amplitudes, b[1].amplitudes)


@given(simple_graphs(max_n=5), st.sampled_from("XYZ"), st.integers(0, 10))
def test_measure_keeps_norm(g, basis, seed):
    _, post = pauli_measure(graph_state(g), g.vertices[0], basis, seed)
    assert abs(post.norm() - 1) < 1e-10


def test_guards():
    with pytest.raises(QubitLimitError):
        graph_state(LabeledGraph([f"q{i}" for i in range(13)]))
    with pytest.raises(QubitLimitError):
        bell_target_state(PairSet([(f"a{i}", f"b{i}") for i in range(7)]))


def test_schmidt_profile_is_local_invariant():
    s = graph_state(random_graph(5, 0.5, random.Random(9)))
    t = s.apply(s.labels[2], HADAMARD).apply(s.labels[0], HADAMARD)
    assert schmidt_profile(s) == schmidt_profile(t)


def test_witness_replay_profiles():
    rng = random.Random(4)
    done = 0
    while done < 15:
        g = random_graph(rng.randint(2, 6), 0.5, rng)
        vs = rng.sample(g.vertices, 2 * rng.randint(1, len(g) // 2))
        b = PairSet(zip(vs[0::2], vs[1::2]))
        res = decide_bellvm(g, b)
        if not res.decision:
            continue
        post, h = replay_witness(g, res.witness, seed=done)
        assert h == bell_graph(b)
        assert schmidt_profile(post) == schmidt_profile(graph_state(bell_graph(b)))
        done += 1


def test_amplitude_dump():
    d = json.loads(graph_state(LabeledGraph("ab", [("a", "b")])).to_json())
    assert d["labels"] == ["a", "b"] and d["amplitudes"][3] == [-0.5, 0.0]

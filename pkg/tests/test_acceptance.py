"""Acceptance harness: one recorded PASS/FAIL line per criterion.

Instance families are generated from fixed seeds and shared between the
criteria that reuse them (5, 6 and 10 reuse the EDPDT set; 10 reuses 4).
"""

import functools
import itertools
import json
import random
import time

import pytest

from strategies import naive_edp
from vminor import instances as io
from vminor.bellvm_reduction import build_h_graph, check_pad_ring, pad_labels, pad_ring_graph, reduce_edpdt_to_bellvm
from vminor.circle import alternance_graph, eulerian_tours, find_eulerian_tour, induced_word, restrict_word
from vminor.cli import main, solve_instance
from vminor.gadgets import build_grid_gadget, reduce_edp_to_4reg_edpdt, route_pairing
from vminor.generators import (
    all_4regular_multigraphs,
    bottleneck_edpdt,
    three_circuit_instance,
    perfect_matchings,
    random_4reg_edpdt,
    random_eulerian_edp,
    random_graph,
    ring_instance,
)
from vminor.graphs import LabeledGraph, induced_subgraph, local_complement
from vminor.oracles import (
    DEFAULT_BUDGET,
    CertificateError,
    OrbitTruncated,
    PairSet,
    bell_graph,
    check_paths,
    decide_bellvm,
    decide_bellvm_via_tours,
    decide_edp,
    decide_edpdt,
)
from vminor.quantum import HADAMARD, bell_target_state, graph_state, lc_unitary, replay_witness, schmidt_profile


# --- shared instance families -------------------------------------------------

@functools.cache
def edp_family():
    """Three-circuit example plus 320 random Eulerian EDP instances, |V| <= 8, |E(D)| <= 3."""
    out = [three_circuit_instance()]
    rng = random.Random(2024)
    while len(out) < 321:
        out.append(random_eulerian_edp(rng.randint(2, 8), rng.randint(1, 3), rng, max_degree=6))
    return out


@functools.cache
def edpdt_family():
    """320 valid 4-regular EDPDT instances, |V| <= 8, k <= 3; half from the bottleneck family.

    Instances with a terminal-free component are resampled: the reduction
    would drop that component, and criterion 6 measures H against all of G.
    """
    out = []
    rng = random.Random(7)
    while len(out) < 320:
        n = rng.randint(2, 8)
        k = rng.randint(1, min(3, n // 2))
        gen = bottleneck_edpdt if len(out) % 2 else random_4reg_edpdt
        g, t = gen(n, k, rng)
        terms = set(t.vertices())
        if all(terms.intersection(c) for c in g.components()):
            out.append((g, t))
    return out


@functools.cache
def edp_results():
    rows = []
    for g, d in edp_family():
        gg, t = reduce_edp_to_4reg_edpdt(g, d)
        rows.append((decide_edp(g, d).decision, gg, t, decide_edpdt(gg, t).decision))
    return rows


# --- 1 -------------------------------------------------------------------------

def test_criterion_1_alternance_example(criterion):
    want = LabeledGraph("abcde", [("a", "b"), ("a", "c"), ("a", "d"), ("b", "e"), ("c", "e")])
    got = alternance_graph("adcbaebced")
    best = min(_elapsed(lambda: alternance_graph("adcbaebced")) for _ in range(50))
    ok = got == want and best < 1e-3
    criterion("1", ok, f"edges {sorted(got.edges())}; best of 50 runs {best * 1e6:.0f} us (< 1 ms)")
    assert ok


def _elapsed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


# --- 2 -------------------------------------------------------------------------

def test_criterion_2_involution_and_subword(criterion):
    t0 = time.perf_counter()
    bad = exhaustive = 0
    for n in range(1, 5):
        vs = [f"x{i}" for i in range(n)]
        pairs = list(itertools.combinations(vs, 2))
        for mask in range(1 << len(pairs)):
            g = LabeledGraph(vs, [p for j, p in enumerate(pairs) if mask >> j & 1])
            exhaustive += 1
            bad += sum(local_complement(local_complement(g, v), v) != g for v in vs)
    rng = random.Random(1)
    for _ in range(500):
        g = random_graph(rng.randint(1, 8), rng.random(), rng)
        bad += sum(local_complement(local_complement(g, v), v) != g for v in g.vertices)
    sub = 0
    for _ in range(200):
        f, _ = random_4reg_edpdt(rng.randint(1, 6), 0, rng)
        w = induced_word(find_eulerian_tour(f))
        keep = [v for v in f.vertices if rng.random() < 0.6]
        lhs = alternance_graph(restrict_word(w, keep))
        rhs = induced_subgraph(alternance_graph(w), [v for v in dict.fromkeys(w) if v in keep])
        sub += lhs != rhs
    dt = time.perf_counter() - t0
    ok = bad == 0 and sub == 0 and dt < 10
    criterion("2", ok, f"{exhaustive} exhaustive + 500 random graphs, {bad} involution violations; "
                       f"200 subword checks, {sub} violations; {dt:.1f} s (< 10 s)")
    assert ok


# --- 3 -------------------------------------------------------------------------

MIXED_ROWS = [("v2", "v4'"), ("v1", "v4"), ("v3'", "v6'"), ("v3", "v1'"), ("v5", "v2'"), ("v6", "v5'")]


def test_criterion_3_grid_routing(criterion):
    t0 = time.perf_counter()
    bad = total = 0
    for n in (2, 3):
        gg = build_grid_gadget(n)
        for m in perfect_matchings(list(gg.boundary)):
            total += 1
            bad += _route_fails(gg, m)
    gg = build_grid_gadget(6)
    rng = random.Random(8)
    pairings = [MIXED_ROWS]
    while len(pairings) < 1000:
        b = list(gg.boundary)
        rng.shuffle(b)
        pairings.append(list(zip(b[0::2], b[1::2])))
    for m in pairings:
        total += 1
        bad += _route_fails(gg, m)
    mixed = route_pairing(gg, MIXED_ROWS)
    meet = set(mixed[1].vertices) & set(mixed[2].vertices)
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 60
    criterion("3", ok, f"{total} pairings (n=2,3 exhaustive; n=6 1000 incl. mixed-row pairing), {bad} violations; "
                       f"mixed-row unprimed/primed trails meet at {sorted(meet)}; {dt:.1f} s (< 60 s)")
    assert ok


def _route_fails(gg, m):
    try:
        check_paths(gg.graph, m, route_pairing(gg, m), simple=False, cover=True)
    except CertificateError:
        return 1
    return 0


# --- 4 -------------------------------------------------------------------------

def test_criterion_4_grape_regularize_soundness(criterion):
    t0 = time.perf_counter()
    rows = edp_results()
    dt = time.perf_counter() - t0
    agree = sum(a == b for a, _, _, b in rows)
    yes = sum(a for a, *_ in rows)
    three_circuit_yes = rows[0][0] and rows[0][3]
    ok = agree == len(rows) and 0 < yes < len(rows) and three_circuit_yes and dt < 300
    criterion("4", ok, f"{agree}/{len(rows)} agree ({yes} YES, {len(rows) - yes} NO, three-circuit YES={three_circuit_yes}); "
                       f"{dt:.1f} s (< 300 s)")
    assert ok


def test_criterion_4_source_oracle_cross_check():
    # decide_edp itself against brute-force path enumeration on the same family
    for g, d in edp_family()[:120]:
        assert decide_edp(g, d).decision == naive_edp(g, [d.endpoints(e) for e in d.edge_ids()])


# --- 5 / 6 ----------------------------------------------------------------------

def test_criterion_5_bellvm_reduction_soundness(criterion):
    t0 = time.perf_counter()
    agree = truncated = yes = 0
    fam = edpdt_family()
    for g, t in fam:
        want = decide_edpdt(g, t).decision
        yes += want
        inst = reduce_edpdt_to_bellvm(g, t)
        try:
            got = decide_bellvm(inst.graph, inst.pairs, DEFAULT_BUDGET).decision
        except OrbitTruncated:
            truncated += 1
            continue
        agree += got == want
    dt = time.perf_counter() - t0
    ok = agree == len(fam) and truncated == 0 and 0 < yes < len(fam) and dt < 900
    criterion("5", ok, f"{agree}/{len(fam)} agree ({yes} YES, {len(fam) - yes} NO), {truncated} truncations "
                       f"at budget {DEFAULT_BUDGET}; {dt:.1f} s (< 900 s)")
    assert ok


def _h_sizes():
    rows = []
    for g, t in edpdt_family():
        h = build_h_graph(g, t).host
        rows.append((len(h) - len(g), h.num_edges() - g.num_edges(), len(t),
                     all(h.degree(v) == 4 for v in h.vertices)))
    return rows


def test_criterion_6_size_identities(criterion):
    rows = _h_sizes()
    n = len(rows)
    v_ok = sum(dv == 2 * k for dv, _, k, _ in rows)
    reg = sum(r for *_, r in rows)
    e_stated = sum(de == 4 * k for _, de, k, _ in rows)
    e_degsum = sum(de == 5 * k for _, de, k, _ in rows)
    ok = v_ok == reg == e_stated == n
    criterion("6", ok, f"|V(H)| = |V(G)| + 2|T| on {v_ok}/{n}; 4-regular on {reg}/{n}; "
                       f"|E(H)| = |E(G)| + 4|T| on {e_stated}/{n}, |E(G)| + 5|T| on {e_degsum}/{n} "
                       f"(the stated edge count contradicts 4-regularity; see decisions ledger)")
    assert v_ok == n and reg == n and e_degsum == n


@pytest.mark.xfail(strict=True, reason="|E(G)| + 4|T| contradicts 4-regularity of H: the degree sum forces +5|T|")
def test_criterion_6_stated_edge_identity():
    assert all(de == 4 * k for _, de, k, _ in _h_sizes())


# --- 7 -------------------------------------------------------------------------

def test_criterion_7_pad_ring(criterion):
    t0 = time.perf_counter()
    configs = bad = tours = 0
    for k in (1, 2, 3):
        gb = bell_graph(PairSet(pad_labels(k)))
        for tilde in perfect_matchings([x for p in pad_labels(k) for x in p]):
            configs += 1
            hits = [alternance_graph(induced_word(u)) == gb for u in eulerian_tours(pad_ring_graph(k, tilde))]
            tours += len(hits)
            matched = check_pad_ring(k, tilde)
            # tour independence: every tour agrees with the matched/mismatched criterion
            bad += not (all(hits) if matched else not any(hits))
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 60
    criterion("7", ok, f"{configs} configurations (k <= 3), {tours} tours enumerated, {bad} disagreements; "
                       f"{dt:.1f} s (< 60 s)")
    assert ok


# --- 8 -------------------------------------------------------------------------

def test_criterion_8_vm_of_eulerian(criterion):
    t0 = time.perf_counter()
    hosts = cases = agree = 0
    for n in range(1, 6):
        for f in all_4regular_multigraphs(n):
            hosts += 1
            if n < 4:
                continue
            alt = alternance_graph(induced_word(find_eulerian_tour(f)))
            for quad in itertools.combinations(f.vertices, 4):
                a = quad[0]
                for b in quad[1:]:
                    c, d = [x for x in quad[1:] if x != b]
                    pairs = PairSet([(a, b), (c, d)])
                    cases += 1
                    agree += decide_bellvm_via_tours(f, pairs) == decide_bellvm(alt, pairs).decision
    dt = time.perf_counter() - t0
    ok = agree == cases and cases > 0
    criterion("8", ok, f"{hosts} connected 4-regular hosts on <= 5 vertices, {agree}/{cases} "
                       f"two-pair cases agree; {dt:.1f} s")
    assert ok


# --- 9 -------------------------------------------------------------------------

def test_criterion_9_quantum(criterion):
    t0 = time.perf_counter()
    rng = random.Random(9)
    worst = 1.0
    for _ in range(200):
        g = random_graph(rng.randint(1, 6), rng.random(), rng)
        s = graph_state(g)
        for v in g.vertices:
            worst = min(worst, lc_unitary(g, v, s).fidelity(graph_state(local_complement(g, v))))
    k2 = graph_state(LabeledGraph("ab", [("a", "b")]))
    bell = abs(1 - k2.fidelity(bell_target_state(PairSet([("a", "b")])).apply("b", HADAMARD)))
    replays = good = 0
    while replays < 60:
        g = random_graph(rng.randint(2, 6), 0.5, rng)
        vs = rng.sample(g.vertices, 2 * rng.randint(1, len(g) // 2))
        b = PairSet(zip(vs[0::2], vs[1::2]))
        res = decide_bellvm(g, b)
        if not res.decision:
            continue
        replays += 1
        post, _ = replay_witness(g, res.witness, seed=replays)
        good += schmidt_profile(post) == schmidt_profile(graph_state(bell_graph(b)))
    dt = time.perf_counter() - t0
    ok = worst >= 1 - 1e-10 and bell <= 1e-12 and good == replays and dt < 300
    criterion("9", ok, f"min LC fidelity {worst:.15f} over 200 graphs; |1 - <K2|H_b|Phi+>| = {bell:.1e}; "
                       f"{good}/{replays} witness replays match; {dt:.1f} s (< 300 s)")
    assert ok


# --- 10 ------------------------------------------------------------------------

def _solve_and_verify(tmp_path, inst, idx):
    inp = tmp_path / f"i{idx}.json"
    cert = tmp_path / f"c{idx}.json"
    inp.write_text(io.dump_instance(inst), encoding="utf-8")
    code = main(["solve", str(inp), "--cert", str(cert), "-o", str(tmp_path / f"r{idx}.json")])
    if code != 0:
        return code, None
    return code, main(["verify", str(inp), str(cert), "-o", str(tmp_path / f"v{idx}.json")])


def test_criterion_10_cli_contract(criterion, tmp_path):
    g, d = three_circuit_instance()
    samples = [io.InstanceFile("edp", g, demand=d, name="three_circuit", seed=1)]
    g0, t0 = edpdt_family()[0]
    samples.append(io.InstanceFile("edpdt", g0, pairs=t0))
    inst = reduce_edpdt_to_bellvm(g0, t0)
    samples.append(io.InstanceFile("bellvm", inst.graph, pairs=inst.pairs, provenance=inst.provenance))
    round_trip = all(io.load_instance(io.dump_instance(s)) == s for s in samples)

    jobs = []
    for (g, d), (_, gg, t, _) in zip(edp_family(), edp_results()):
        jobs += [io.InstanceFile("edp", g, demand=d), io.InstanceFile("edpdt", gg, pairs=t)]
    for g, t in edpdt_family():
        b = reduce_edpdt_to_bellvm(g, t)
        jobs += [io.InstanceFile("edpdt", g, pairs=t), io.InstanceFile("bellvm", b.graph, pairs=b.pairs)]
    certs = passed = 0
    for i, inst in enumerate(jobs):
        code, vcode = _solve_and_verify(tmp_path, inst, i)
        if code == 0:
            certs += 1
            passed += vcode == 0

    rg, rp = _big_ring()
    ring = io.InstanceFile("bellvm", rg, pairs=rp)
    p = tmp_path / "ring.json"
    p.write_text(io.dump_instance(ring))
    trunc = main(["solve", str(p), "--budget", "3", "-o", str(tmp_path / "t.json")])
    verdict = json.loads((tmp_path / "t.json").read_text())["verdict"]
    ok = round_trip and certs > 0 and passed == certs and trunc == 2 and verdict == "truncated"
    criterion("10", ok, f"round trip on edp/edpdt/bellvm: {round_trip}; {passed}/{certs} solve certificates "
                        f"verified over {len(jobs)} instances; tiny budget exit code {trunc} ({verdict})")
    assert ok


def _big_ring():
    g, pairs, _ = ring_instance(3, random.Random(0), matched=False)
    return g, pairs


def test_cli_solve_matches_library():
    # the CLI report verdicts are the library verdicts
    for g, t in edpdt_family()[:20]:
        report, _ = solve_instance(io.InstanceFile("edpdt", g, pairs=t), DEFAULT_BUDGET)
        assert (report["verdict"] == "yes") == decide_edpdt(g, t).decision

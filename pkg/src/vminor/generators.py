"""Instance generators for tests, benchmarks and ``vminor gen``.

All generators are deterministic given a ``random.Random``.
"""

from __future__ import annotations

import itertools
import random

from .bellvm_reduction import pad_labels, pad_ring_graph
from .circle import alternance_graph, find_eulerian_tour, induced_word
from .graphs import LabeledGraph, MultiGraph
from .oracles import PairSet


def three_circuit_instance() -> tuple[MultiGraph, MultiGraph]:
    """EDP instance whose solution is the three circuits ``a c a``, ``d b c d``, ``d e f d``."""
    g = MultiGraph(list("abcdef"), [("a", "c"), ("d", "b"), ("b", "c"), ("d", "e"), ("e", "f")])
    d = MultiGraph(list("acdf"), [("c", "a"), ("c", "d"), ("f", "d")])
    return g, d


def word_host() -> MultiGraph:
    """A 4-regular multigraph with an Eulerian tour whose word is ``adcbaebced``."""
    word = "adcbaebced"
    return MultiGraph(sorted(set(word)), [(word[i], word[(i + 1) % len(word)]) for i in range(len(word))])


def _pair_stubs(stubs: list[str], rng: random.Random) -> list[tuple[str, str]]:
    rng.shuffle(stubs)
    return [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]


def random_4reg_edpdt(n: int, k: int, rng: random.Random, max_tries: int = 10_000) -> tuple[MultiGraph, PairSet]:
    """Connected multigraph with ``2k`` degree-3 terminals and all else degree 4.

    Built by random pairing of degree stubs (loops and parallel edges
    allowed), resampled until connected.
    """
    if not (0 <= 2 * k <= n) or n < 1:
        raise ValueError(f"need 0 <= 2k <= n, got n={n}, k={k}")
    vs = [f"v{i}" for i in range(n)]
    for _ in range(max_tries):
        terms = rng.sample(vs, 2 * k)
        tset = set(terms)
        stubs = [v for v in vs for _ in range(3 if v in tset else 4)]
        g = MultiGraph(vs, _pair_stubs(stubs, rng))
        if g.is_connected():
            return g, PairSet(zip(terms[0::2], terms[1::2]))
    raise RuntimeError("could not generate a connected instance")


def bottleneck_edpdt(n: int, k: int, rng: random.Random, max_tries: int = 10_000) -> tuple[MultiGraph, PairSet]:
    """Two random halves joined by ``c <= 3`` edges (possibly none).

    Terminals land on either side at random, so the number of pairs that
    must cross the cut may exceed its capacity: these are the usual NO
    instances.
    """
    if not (1 <= 2 * k <= n) or n < 2:
        raise ValueError(f"need 1 <= 2k <= n and n >= 2, got n={n}, k={k}")
    vs = [f"v{i}" for i in range(n)]
    for _ in range(max_tries):
        terms = rng.sample(vs, 2 * k)
        tset = set(terms)
        left = set(rng.sample(vs, rng.randint(1, n - 1)))
        c = rng.choice([0, 1, 2, 3])
        sides = []
        for part in ([v for v in vs if v in left], [v for v in vs if v not in left]):
            stubs = [v for v in part for _ in range(3 if v in tset else 4)]
            if len(stubs) < c or (len(stubs) - c) % 2:
                break
            rng.shuffle(stubs)
            sides.append((stubs[:c], stubs[c:]))
        if len(sides) < 2:
            continue
        edges = list(zip(sides[0][0], sides[1][0]))
        edges += _pair_stubs(sides[0][1], rng) + _pair_stubs(sides[1][1], rng)
        return MultiGraph(vs, edges), PairSet(zip(terms[0::2], terms[1::2]))
    raise RuntimeError("could not generate an instance")


def random_eulerian_edp(n: int, n_demands: int, rng: random.Random, extra_edges: int | None = None,
                        max_degree: int = 6) -> tuple[MultiGraph, MultiGraph]:
    """Random ``(G, D)`` with ``G u D`` of even degree everywhere.

    ``D`` has ``n_demands`` edges between distinct vertices; odd-degree
    vertices of the union are then paired up by extra ``G`` edges.
    Vertex degrees in the union are capped by ``max_degree`` where possible.
    """
    vs = [f"u{i}" for i in range(n)]
    deg = dict.fromkeys(vs, 0)
    demand = []
    for _ in range(n_demands):
        a, b = rng.sample(vs, 2)
        demand.append((a, b))
        deg[a] += 1
        deg[b] += 1
    if extra_edges is None:
        extra_edges = rng.randint(n - 1, 2 * n)
    edges = []
    for _ in range(extra_edges):
        cand = [v for v in vs if deg[v] < max_degree - 1]
        if len(cand) < 2:
            break
        a, b = rng.sample(cand, 2)
        edges.append((a, b))
        deg[a] += 1
        deg[b] += 1
    odd = [v for v in vs if deg[v] % 2]
    rng.shuffle(odd)
    for a, b in zip(odd[0::2], odd[1::2]):
        edges.append((a, b))
    return MultiGraph(vs, edges), MultiGraph([], demand)


def random_graph(n: int, p: float, rng: random.Random) -> LabeledGraph:
    vs = [f"q{i}" for i in range(n)]
    return LabeledGraph(vs, [(a, b) for a, b in itertools.combinations(vs, 2) if rng.random() < p])


def perfect_matchings(items: list) -> list[list[tuple]]:
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for k in range(len(rest)):
        for tail in perfect_matchings(rest[:k] + rest[k + 1:]):
            out.append([(first, rest[k])] + tail)
    return out


def ring_instance(k: int, rng: random.Random, matched: bool | None = None):
    """BellVM instance from the doubled pad ring plus a random re-pairing.

    Returns ``(graph, pairs, extra_edges)``; ``matched`` forces the extra
    edges to re-pair each ``p_i`` with ``p_i'`` (True) or not (False).
    """
    pads = pad_labels(k)
    verts = [x for p in pads for x in p]
    options = perfect_matchings(verts)
    want = {frozenset(p) for p in pads}
    if matched is True:
        options = [m for m in options if {frozenset(e) for e in m} == want]
    elif matched is False:
        options = [m for m in options if {frozenset(e) for e in m} != want]
    if not options:
        raise ValueError(f"no {'un' if matched is False else ''}matched re-pairing for k={k}")
    tilde = rng.choice(options)
    f = pad_ring_graph(k, tilde)
    return alternance_graph(induced_word(find_eulerian_tour(f))), PairSet(pads), tilde


def grid_demo(n: int, rng: random.Random) -> tuple[MultiGraph, MultiGraph]:
    """Star with a degree-``2n`` hub and ``n`` demands between random leaf pairs."""
    leaves = [f"l{i}" for i in range(2 * n)]
    g = MultiGraph(["hub"] + leaves, [("hub", x) for x in leaves])
    order = leaves[:]
    rng.shuffle(order)
    return g, MultiGraph([], list(zip(order[0::2], order[1::2])))


def all_4regular_multigraphs(n: int, connected: bool = True):
    """Every 4-regular multigraph on vertices ``w0 .. w{n-1}`` (labelled).

    Edge ids follow the order loops first, then pairs in lexicographic order.
    """
    vs = [f"w{i}" for i in range(n)]
    pairs = list(itertools.combinations(range(n), 2))

    def fill(idx, rem, mult):
        if idx == len(pairs):
            if all(r % 2 == 0 for r in rem):
                yield dict(mult), [r // 2 for r in rem]
            return
        a, b = pairs[idx]
        for m in range(min(rem[a], rem[b]) + 1):
            rem[a] -= m
            rem[b] -= m
            mult[a, b] = m
            yield from fill(idx + 1, rem, mult)
            rem[a] += m
            rem[b] += m
        del mult[a, b]

    for mult, loops in fill(0, [4] * n, {}):
        edges = []
        for i, c in enumerate(loops):
            edges += [(vs[i], vs[i])] * c
        for (a, b), m in sorted(mult.items()):
            edges += [(vs[a], vs[b])] * m
        f = MultiGraph(vs, edges)
        if not connected or f.is_connected():
            yield f

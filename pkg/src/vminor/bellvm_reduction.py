"""Reduction from 4-regular EDPDT to BellVM.

Each terminal pair ``(t_i, t_i')`` gets two pad vertices ``p_i, p_i'`` joined
by a double edge, attached to the terminals and chained into a ring
``p_1' - p_2, ..., p_k' - p_1``. The resulting 4-regular multigraph ``H`` is
toured once; the alternance graph of that tour together with the pad pairs
is the BellVM instance.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from .circle import EulerianTour, alternance_graph, find_eulerian_tour, induced_word
from .graphs import LabeledGraph, MultiGraph
from .oracles import InstanceError, PairSet, Walk, check_paths, validate_edpdt

log = logging.getLogger(__name__)

__all__ = [
    "HGraph",
    "BellVmInstance",
    "pad_labels",
    "build_h_graph",
    "reduce_edpdt_to_bellvm",
    "witness_tour",
    "witness_tour_word",
    "pad_ring_graph",
    "check_pad_ring",
]


def pad_labels(k: int) -> list[tuple[str, str]]:
    return [(f"pad:p{i}", f"pad:p{i}'") for i in range(1, k + 1)]


@dataclass(frozen=True)
class HGraph:
    """``H`` together with the ids of the edges added around the pads.

    ``ring[i]`` joins ``p_i'`` to ``p_{i+1}`` (cyclically). Terminal-free
    components of the input that were dropped are listed in ``dropped``.
    """

    host: MultiGraph
    terminals: tuple[tuple[str, str], ...]
    pads: tuple[tuple[str, str], ...]
    attach: tuple[tuple[int, int], ...]
    doubles: tuple[tuple[int, int], ...]
    ring: tuple[int, ...]
    dropped: tuple[str, ...] = ()


@dataclass
class BellVmInstance:
    graph: LabeledGraph
    pairs: PairSet
    provenance: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        missing = [v for v in self.pairs.vertices() if v not in self.graph]
        if missing:
            raise InstanceError(f"pair vertices not in graph: {missing}")


def build_h_graph(g: MultiGraph, t: PairSet) -> HGraph:
    validate_edpdt(g, t)
    terminals = set(t.vertices())
    keep, dropped = [], []
    comps = g.components()
    for comp in comps:
        if terminals.intersection(comp) or (not terminals and not keep):
            keep += comp
        else:
            dropped += comp
    if dropped:
        log.warning("dropping %d vertices in components without terminals", len(dropped))
        g = g.subgraph(keep)
    k = len(t)
    pads = pad_labels(k)
    clash = [p for pair in pads for p in pair if p in g]
    if clash:
        raise InstanceError(f"pad label {clash[0]!r} already used by the input graph")
    new_edges = []
    for (ti, tpi), (p, pp) in zip(t, pads):
        new_edges += [(ti, p), (tpi, pp), (p, pp), (p, pp)]
    for i in range(k):
        new_edges.append((pads[i][1], pads[(i + 1) % k][0]))
    base = g.next_edge_id()
    h = g.add([x for pair in pads for x in pair], new_edges)
    attach = tuple((base + 4 * i, base + 4 * i + 1) for i in range(k))
    doubles = tuple((base + 4 * i + 2, base + 4 * i + 3) for i in range(k))
    ring = tuple(base + 4 * k + i for i in range(k))
    return HGraph(h, tuple(t), tuple(pads), attach, doubles, ring, tuple(dropped))


def reduce_edpdt_to_bellvm(g: MultiGraph, t: PairSet) -> BellVmInstance:
    """Build ``H``, tour it with Hierholzer, and emit its alternance graph."""
    hg = build_h_graph(g, t)
    prov = {}
    for (ti, tpi), (p, pp) in zip(hg.terminals, hg.pads):
        prov[p], prov[pp] = ti, tpi
    if len(hg.host) == 0:
        return BellVmInstance(LabeledGraph(), PairSet(), prov)
    word = induced_word(find_eulerian_tour(hg.host))
    return BellVmInstance(alternance_graph(word), PairSet(hg.pads), prov)


def _oriented(hg: HGraph, paths: Sequence[Walk]) -> list[Walk]:
    check_paths(hg.host, hg.terminals, paths)
    out = []
    for (ti, _), w in zip(hg.terminals, paths):
        out.append(w if w.vertices[0] == ti else Walk(w.vertices[::-1], w.edges[::-1]))
    return out


def witness_tour(hg: HGraph, paths: Sequence[Walk]) -> EulerianTour:
    """Closed (partial) tour ``p1 p1' p1 P1 p1' p2 ... pk' pk pk' pk Pk pk' p1``.

    ``paths[i]`` must join the i-th terminal pair; paths are edge-disjoint.
    """
    paths = _oriented(hg, paths)
    k = len(hg.pads)
    if k == 0:
        return EulerianTour(hg.host, (hg.host.vertices[0],), ())
    verts: list[str] = []
    edges: list[int] = []
    for i, ((p, pp), w) in enumerate(zip(hg.pads, paths)):
        verts += [p, pp, p]
        edges += [hg.doubles[i][0], hg.doubles[i][1], hg.attach[i][0]]
        verts += list(w.vertices)
        edges += list(w.edges)
        edges += [hg.attach[i][1], hg.ring[i]]
        verts.append(pp)
    verts.append(hg.pads[0][0])
    tour = EulerianTour(hg.host, tuple(verts), tuple(edges))
    tour.check(complete=False)
    return tour


def witness_tour_word(t: PairSet, paths: Sequence[Walk]) -> tuple[str, ...]:
    """Word of :func:`witness_tour`, with pads named as in :func:`pad_labels`."""
    word: list[str] = []
    for (ti, tpi), (p, pp), w in zip(t, pad_labels(len(t)), paths):
        if {w.vertices[0], w.vertices[-1]} != {ti, tpi}:
            raise InstanceError(f"path {w.vertices} does not join {ti!r} and {tpi!r}")
        vs = w.vertices if w.vertices[0] == ti else w.vertices[::-1]
        word += [p, pp, p, *vs, pp]
    return tuple(word)


def pad_ring_graph(k: int, tilde: Sequence[tuple[str, str]]) -> MultiGraph:
    """The doubled pad cycle plus the extra edges ``tilde``."""
    pads = pad_labels(k)
    edges = []
    for i, (p, pp) in enumerate(pads):
        edges += [(p, pp), (p, pp), (pp, pads[(i + 1) % k][0])]
    edges += [tuple(e) for e in tilde]
    f = MultiGraph([x for pair in pads for x in pair], edges)
    if len(f) != 2 * k:
        raise InstanceError("extra edges must stay on the pad vertices")
    bad = [v for v in f.vertices if f.degree(v) != 4]
    if bad:
        raise InstanceError(f"pad ring is not 4-regular at {bad[0]!r}")
    return f


def check_pad_ring(k: int, tilde: Sequence[tuple[str, str]]) -> bool:
    """True iff the extra edges re-pair every ``p_i`` with its own ``p_i'``."""
    pad_ring_graph(k, tilde)
    want = {frozenset(p) for p in pad_labels(k)}
    return {frozenset(e) for e in tilde} == want

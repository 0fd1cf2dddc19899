"""Eulerian tours, double-occurrence words and alternance (circle) graphs."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .graphs import GraphError, LabeledGraph, MultiGraph

__all__ = [
    "TourError",
    "EulerianTour",
    "DoubleOccurrenceWord",
    "find_eulerian_tour",
    "extend_to_eulerian",
    "induced_word",
    "restrict_word",
    "alternance_graph",
    "eulerian_tours",
    "parse_tour",
    "format_tour",
]


class TourError(GraphError):
    pass


@dataclass(frozen=True)
class EulerianTour:
    """Closed walk ``v1 e1 v2 ... em v1`` on ``host``.

    ``vertices`` has one more entry than ``edges``; the last vertex repeats
    the first. A tour that does not (yet) use every edge of the host is a
    partial tour, see :meth:`check`.
    """

    host: MultiGraph
    vertices: tuple[str, ...]
    edges: tuple[int, ...]

    @property
    def steps(self) -> tuple:
        out: list = [self.vertices[0]]
        for e, v in zip(self.edges, self.vertices[1:]):
            out += [e, v]
        return tuple(out)

    def check(self, complete: bool = True) -> None:
        vs, es = self.vertices, self.edges
        if len(vs) != len(es) + 1:
            raise TourError("tour must have exactly one more vertex than edges")
        if not vs:
            raise TourError("empty tour")
        if vs[0] != vs[-1]:
            raise TourError("tour is not closed")
        if vs[0] not in self.host:
            raise TourError(f"unknown vertex {vs[0]!r}")
        if len(set(es)) != len(es):
            raise TourError("tour repeats an edge")
        for i, e in enumerate(es):
            a, b = self.host.endpoints(e)
            if {a, b} != {vs[i], vs[i + 1]}:
                raise TourError(f"edge {e} does not join {vs[i]!r} and {vs[i + 1]!r}")
        if complete and len(es) != self.host.num_edges():
            missing = sorted(set(self.host.edge_ids()) - set(es))
            raise TourError(f"edges not visited: {missing}")


class DoubleOccurrenceWord(tuple):
    """Tuple of letters; valid when every letter occurs exactly twice."""

    def __new__(cls, letters: Iterable[str] = ()):
        return super().__new__(cls, letters)

    def is_valid(self) -> bool:
        counts: dict[str, int] = {}
        for x in self:
            counts[x] = counts.get(x, 0) + 1
        return all(c == 2 for c in counts.values())

    def letters(self) -> list[str]:
        return list(dict.fromkeys(self))

    def __str__(self) -> str:
        return " ".join(self)


def _check_eulerian(f: MultiGraph) -> None:
    if len(f) == 0:
        raise TourError("graph has no vertices")
    for v in f.vertices:
        if f.degree(v) % 2:
            raise TourError(f"vertex {v!r} has odd degree {f.degree(v)}")
    comps = f.components()
    if len(comps) > 1:
        raise TourError(f"graph is disconnected; component {comps[1]} is unreachable from {comps[0][0]!r}")


def _hierholzer(f: MultiGraph, start: str, used: set[int]) -> tuple[list[str], list[int]]:
    """Closed trail from ``start`` over all unused edges of its component.

    Unused incident edges are taken in ascending id. ``used`` is updated.
    """
    ptr = {}
    stack: list[tuple[str, int | None]] = [(start, None)]
    out: list[tuple[str, int | None]] = []
    while stack:
        v, _ = stack[-1]
        inc = f.incident(v)
        i = ptr.get(v, 0)
        while i < len(inc) and inc[i] in used:
            i += 1
        ptr[v] = i
        if i < len(inc):
            e = inc[i]
            used.add(e)
            stack.append((f.other(e, v), e))
        else:
            out.append(stack.pop())
    out.reverse()
    # out[k] = (vertex, edge arriving at it); reversed order means the edge
    # stored with out[k+1] is the one traversed between out[k] and out[k+1].
    verts = [v for v, _ in out]
    edges = [e for _, e in out[1:]]
    return verts, edges


def find_eulerian_tour(f: MultiGraph, start: str | None = None) -> EulerianTour:
    """Hierholzer's algorithm; deterministic given the edge ids."""
    _check_eulerian(f)
    if start is None:
        start = f.vertices[0]
    elif start not in f:
        raise TourError(f"unknown start vertex {start!r}")
    verts, edges = _hierholzer(f, start, set())
    return EulerianTour(f, tuple(verts), tuple(edges))


def extend_to_eulerian(partial: EulerianTour) -> EulerianTour:
    """Splice closed trails of the unused edges into ``partial``.

    The result contains the partial tour's steps as an ordered subsequence.
    """
    f = partial.host
    partial.check(complete=False)
    for v in f.vertices:
        if f.degree(v) % 2:
            raise TourError(f"vertex {v!r} has odd degree {f.degree(v)}")
    used = set(partial.edges)
    verts = list(partial.vertices)
    edges = list(partial.edges)
    i = 0
    while i < len(verts):
        x = verts[i]
        if any(e not in used for e in f.incident(x)):
            sv, se = _hierholzer(f, x, used)
            verts[i:i + 1] = sv
            edges[i:i] = se
            i += len(sv)
        else:
            i += 1
    if len(used) != f.num_edges():
        rest = sorted(set(f.edge_ids()) - used)
        raise TourError(f"edges {rest} are not reachable from the partial tour")
    return EulerianTour(f, tuple(verts), tuple(edges))


def induced_word(t: EulerianTour) -> DoubleOccurrenceWord:
    return DoubleOccurrenceWord(t.vertices[:-1])


def restrict_word(w: Iterable[str], vs: Iterable[str]) -> DoubleOccurrenceWord:
    keep = set(vs)
    return DoubleOccurrenceWord(x for x in w if x in keep)


def alternance_graph(w: Iterable[str]) -> LabeledGraph:
    """Graph on the letters of ``w``; ``u~v`` iff they interleave as u..v..u..v."""
    w = tuple(w)
    pos: dict[str, list[int]] = {}
    for i, x in enumerate(w):
        pos.setdefault(x, []).append(i)
    bad = [x for x, p in pos.items() if len(p) != 2]
    if bad:
        raise TourError(f"not a double-occurrence word: {bad[0]!r} occurs {len(pos[bad[0]])} times")
    letters = list(pos)
    edges = []
    for u in letters:
        a, b = pos[u]
        inside: dict[str, int] = {}
        for x in w[a + 1:b]:
            inside[x] = inside.get(x, 0) + 1
        edges.extend((u, x) for x, c in inside.items() if c == 1 and u < x)
    return LabeledGraph(letters, edges)


def eulerian_tours(f: MultiGraph) -> Iterator[EulerianTour]:
    """Every Eulerian circuit of ``f`` exactly once.

    Circuits are enumerated as transition systems: at each vertex the incident
    half-edges are paired up, and a system is kept when following it traces a
    single closed trail through all edges. Each yielded tour starts at the
    lowest edge id, traversed from its first endpoint. Feasible only for small
    hosts (the count is the product of (deg-1)!! over vertices).
    """
    _check_eulerian(f)
    if f.num_edges() == 0:
        yield EulerianTour(f, (f.vertices[0],), ())
        return
    ends: dict[str, list[tuple[int, int]]] = {v: [] for v in f.vertices}
    for e, (a, b) in f.edges.items():
        ends[a].append((e, 0))
        ends[b].append((e, 1))
    choices = [list(_pairings(ends[v])) for v in f.vertices]
    e0 = f.edge_ids()[0]
    m = f.num_edges()
    for combo in itertools.product(*choices):
        link: dict[tuple[int, int], tuple[int, int]] = {}
        for pairing in combo:
            for x, y in pairing:
                link[x] = y
                link[y] = x
        verts = [f.endpoints(e0)[0]]
        edges = []
        e, s = e0, 0
        while True:
            edges.append(e)
            far = (e, 1 - s)
            verts.append(f.endpoints(e)[1 - s])
            nxt = link[far]
            if nxt == (e0, 0):
                break
            e, s = nxt
        if len(edges) == m:
            yield EulerianTour(f, tuple(verts), tuple(edges))


def _pairings(items: list) -> Iterator[list[tuple]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest)):
        for tail in _pairings(rest[:k] + rest[k + 1:]):
            yield [(first, rest[k])] + tail


def format_tour(t: EulerianTour) -> str:
    out = []
    for x in t.steps:
        out.append(f"e:{x}" if isinstance(x, int) else f"v:{x}")
    return " ".join(out)


def parse_tour(host: MultiGraph, text: str) -> EulerianTour:
    verts, edges = [], []
    for tok in text.split():
        kind, _, val = tok.partition(":")
        if kind == "v":
            verts.append(val)
        elif kind == "e":
            edges.append(int(val))
        else:
            raise TourError(f"bad tour token {tok!r}")
    t = EulerianTour(host, tuple(verts), tuple(edges))
    t.check(complete=False)
    return t

"""Exact (exponential-time) deciders used as ground truth.

* vertex-minor and BellVM via breadth-first search of the local
  complementation orbit, with replayable witnesses;
* BellVM on circle graphs via exhaustive Eulerian-tour enumeration;
* EDP / 4-regular EDPDT via backtracking over edge-disjoint paths, with
  certificates that :func:`check_paths` and :func:`check_circuits` verify
  independently of the search.
"""

from __future__ import annotations

import os
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from . import _kernels
from .circle import alternance_graph, eulerian_tours, induced_word, restrict_word
from .graphs import (
    GraphError,
    LabeledGraph,
    MultiGraph,
    apply_lc_sequence,
    delete_vertices,
    induced_subgraph,
)

DEFAULT_BUDGET = 2_000_000


def default_budget() -> int:
    return int(os.environ.get("VMINOR_BUDGET", DEFAULT_BUDGET))


class OrbitTruncated(RuntimeError):
    """The LC orbit grew past the budget; the question was not decided."""

    def __init__(self, budget: int):
        super().__init__(f"orbit truncated: more than {budget} graphs")
        self.budget = budget


class InstanceError(ValueError):
    pass


class CertificateError(ValueError):
    pass


# --- domain types --------------------------------------------------------------

class PairSet:
    """Disjoint unordered vertex pairs; the stored orientation is kept."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[Sequence[str]] = ()):
        out = []
        seen: set[str] = set()
        for p in pairs:
            a, b = p
            if a == b:
                raise InstanceError(f"pair {{{a}, {a}}} is degenerate")
            for x in (a, b):
                if x in seen:
                    raise InstanceError(f"vertex {x!r} occurs in two pairs")
                seen.add(x)
            out.append((a, b))
        self.pairs = tuple(out)

    def vertices(self) -> list[str]:
        return [x for p in self.pairs for x in p]

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        if not isinstance(other, PairSet):
            return NotImplemented
        return {frozenset(p) for p in self.pairs} == {frozenset(p) for p in other.pairs}

    def __hash__(self):
        return hash(frozenset(frozenset(p) for p in self.pairs))

    def __repr__(self):
        return f"PairSet({list(self.pairs)})"


@dataclass(frozen=True)
class Walk:
    vertices: tuple[str, ...]
    edges: tuple[int, ...]

    @property
    def ends(self) -> tuple[str, str]:
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class VmWitness:
    lc_sequence: tuple[str, ...]
    deleted: tuple[str, ...]

    def replay(self, g: LabeledGraph) -> LabeledGraph:
        return delete_vertices(apply_lc_sequence(g, self.lc_sequence), self.deleted)


@dataclass
class VmResult:
    decision: bool
    witness: VmWitness | None = None
    orbit_size: int = 0


@dataclass
class PathResult:
    decision: bool
    paths: tuple[Walk, ...] | None = None
    nodes_explored: int = 0
    demand_ids: tuple[int, ...] = field(default_factory=tuple)


def bell_graph(b: PairSet) -> LabeledGraph:
    """The perfect-matching graph on the pairs of ``b``."""
    return LabeledGraph(b.vertices(), list(b))


def strip_isolated(target: LabeledGraph) -> LabeledGraph:
    """Drop degree-0 vertices; they impose nothing on a qubit-minor."""
    keep = [v for v in target.vertices if target.rows[target.index(v)]]
    return induced_subgraph(target, keep)


# --- LC orbit and vertex-minors ------------------------------------------------

def _run(g, budget, mask=0, target=None, collect=False, backend=None):
    if budget < 1:
        raise ValueError("budget must be at least 1")
    res = _kernels.bfs(g.rows, budget, mask, target, collect, backend)
    if res[0] == _kernels.TRUNCATED:
        raise OrbitTruncated(budget)
    return res


def lc_orbit(g: LabeledGraph, budget: int | None = None, backend: str | None = None) -> set[LabeledGraph]:
    """All graphs reachable from ``g`` by local complementations."""
    _, _, _, members, _, _ = _run(g, budget or default_budget(), collect=True, backend=backend)
    return {LabeledGraph.from_rows(g.vertices, r) for r in members}


def lc_orbit_sequences(g: LabeledGraph, budget: int | None = None,
                       backend: str | None = None) -> dict[LabeledGraph, tuple[str, ...]]:
    """Orbit members mapped to a shortest LC sequence reaching them from ``g``."""
    _, _, _, members, parent, via = _run(g, budget or default_budget(), collect=True, backend=backend)
    seqs: list[tuple[str, ...]] = [()]
    for i in range(1, len(members)):
        seqs.append(seqs[parent[i]] + (g.vertices[via[i]],))
    return {LabeledGraph.from_rows(g.vertices, r): s for r, s in zip(members, seqs)}


def is_vertex_minor(g: LabeledGraph, target: LabeledGraph, budget: int | None = None,
                    backend: str | None = None) -> VmResult:
    """Decide whether ``target`` is a vertex-minor of ``g``.

    Deletions commute to the end, so this searches the LC orbit of ``g`` for a
    member whose induced subgraph on ``V(target)`` equals ``target``.
    """
    missing = [v for v in target.vertices if v not in g]
    if missing:
        raise GraphError(f"target vertices not in graph: {missing}")
    mask = 0
    want = [0] * len(g)
    for v in target.vertices:
        mask |= 1 << g.index(v)
    for v in target.vertices:
        r = 0
        for u in target.neighbors(v):
            r |= 1 << g.index(u)
        want[g.index(v)] = r
    status, size, path, *_ = _run(g, budget or default_budget(), mask, want, backend=backend)
    if status != _kernels.FOUND:
        return VmResult(False, None, size)
    keep = set(target.vertices)
    w = VmWitness(tuple(g.vertices[i] for i in path), tuple(v for v in g.vertices if v not in keep))
    return VmResult(True, w, size)


def decide_bellvm(g: LabeledGraph, b: PairSet, budget: int | None = None,
                  backend: str | None = None) -> VmResult:
    missing = [v for v in b.vertices() if v not in g]
    if missing:
        raise InstanceError(f"pair vertices not in graph: {missing}")
    return is_vertex_minor(g, strip_isolated(bell_graph(b)), budget, backend)


def check_vm_witness(g: LabeledGraph, target: LabeledGraph, w: VmWitness) -> None:
    """Raise ``CertificateError`` unless replaying ``w`` on ``g`` gives ``target``."""
    for v in list(w.lc_sequence) + list(w.deleted):
        if v not in g:
            raise CertificateError(f"witness vertex {v!r} is not in the graph")
    got = w.replay(g)
    if got != target:
        raise CertificateError(f"witness replay gives {got!r}, expected {target!r}")


def _is_4regular(f: MultiGraph) -> bool:
    return all(f.degree(v) == 4 for v in f.vertices)


def decide_bellvm_via_tours(f: MultiGraph, b: PairSet) -> bool:
    """BellVM on any circle graph of ``f``, by enumerating Eulerian tours of ``f``."""
    if not (_is_4regular(f) and f.is_connected()):
        raise InstanceError("host must be a connected 4-regular multigraph")
    missing = [v for v in b.vertices() if v not in f]
    if missing:
        raise InstanceError(f"pair vertices not in graph: {missing}")
    want = bell_graph(b)
    keep = set(b.vertices())
    for t in eulerian_tours(f):
        if alternance_graph(restrict_word(induced_word(t), keep)) == want:
            return True
    return False


# --- edge-disjoint paths --------------------------------------------------------

def _reachable(g: MultiGraph, s: str, t: str, used: set[int], blocked: set[str] = frozenset()) -> bool:
    if s == t:
        return True
    seen = {s}
    todo = deque([s])
    while todo:
        x = todo.popleft()
        for e in g.incident(x):
            if e in used:
                continue
            y = g.other(e, x)
            if y in seen or y in blocked:
                continue
            if y == t:
                return True
            seen.add(y)
            todo.append(y)
    return False


def _distances(g: MultiGraph, t: str, used: set[int]) -> dict[str, int]:
    dist = {t: 0}
    todo = deque([t])
    while todo:
        x = todo.popleft()
        for e in g.incident(x):
            if e in used:
                continue
            y = g.other(e, x)
            if y not in dist:
                dist[y] = dist[x] + 1
                todo.append(y)
    return dist


def _min_cut_side(g: MultiGraph, s: str, t: str, used: set[int]) -> set[str]:
    """Source side of a minimum ``s``-``t`` edge cut in the residual graph."""
    flow: dict[tuple[int, str], int] = {}  # (edge, head) -> units sent towards head

    def cap(e, x, y):
        return 1 - flow.get((e, y), 0) + flow.get((e, x), 0)

    while True:
        prev = {s: None}
        todo = deque([s])
        while todo and t not in prev:
            x = todo.popleft()
            for e in g.incident(x):
                if e in used:
                    continue
                y = g.other(e, x)
                if y in prev or y == x or cap(e, x, y) <= 0:
                    continue
                prev[y] = (x, e)
                todo.append(y)
        if t not in prev:
            return set(prev)
        y = t
        while prev[y] is not None:
            x, e = prev[y]
            if flow.get((e, x), 0):
                flow[e, x] -= 1
            else:
                flow[e, y] = flow.get((e, y), 0) + 1
            y = x


def _cut_ok(g: MultiGraph, demands: list[tuple[str, str]], used: set[int]) -> bool:
    """Cut condition on minimum cuts around each remaining demand."""
    for s, t in demands:
        if s == t:
            continue
        for a, b in ((s, t), (t, s)):
            side = _min_cut_side(g, a, b, used)
            if b in side:
                continue
            cap = sum(1 for x in side for e in g.incident(x)
                      if e not in used and g.other(e, x) not in side)
            need = sum(1 for u, v in demands if (u in side) != (v in side))
            if need > cap:
                return False
    return True


def _route(g: MultiGraph, demands: list[tuple[str, str]]) -> tuple[list[Walk] | None, int]:
    """Backtracking search for edge-disjoint simple paths, one per demand.

    Demands are routed in order. A path grows along unused edges, nearest to
    its target first (ties by ascending edge id), so the first candidate is
    a shortest path. Prunes: the target must stay reachable without
    revisiting the partial path, every later demand must stay connected, and
    at each demand boundary the cut condition must hold on minimum cuts
    around the remaining demands. Failed ``(demand, used edges)`` states are
    memoised.
    """
    k = len(demands)
    used: set[int] = set()
    paths: list[Walk | None] = [None] * k
    failed: set = set()
    nodes = 0

    def later_ok(i):
        return all(_reachable(g, u, v, used) for u, v in demands[i:])

    def solve(i):
        if i == k:
            return True
        key = (i, frozenset(used))
        if key in failed:
            return False
        if not later_ok(i) or not _cut_ok(g, demands[i:], used):
            failed.add(key)
            return False
        s, t = demands[i]
        if s == t:
            paths[i] = Walk((s,), ())
            if solve(i + 1):
                return True
            failed.add(key)
            return False
        dist = _distances(g, t, used)
        far = len(dist) + 1
        verts, edges, on = [s], [], {s}

        def extend(x):
            nonlocal nodes
            cand = []
            for e in g.incident(x):
                if e in used:
                    continue
                y = g.other(e, x)
                if y not in on:
                    cand.append((dist.get(y, far), e, y))
            cand.sort()
            for _, e, y in cand:
                if e in used:
                    continue
                nodes += 1
                used.add(e)
                verts.append(y)
                edges.append(e)
                on.add(y)
                if y == t:
                    paths[i] = Walk(tuple(verts), tuple(edges))
                    if solve(i + 1):
                        return True
                elif _reachable(g, y, t, used, on) and later_ok(i + 1):
                    if extend(y):
                        return True
                used.discard(e)
                verts.pop()
                edges.pop()
                on.discard(y)
            return False

        if extend(s):
            return True
        failed.add(key)
        return False

    ok = solve(0)
    return (list(paths) if ok else None), nodes


def decide_edp(g: MultiGraph, d: MultiGraph) -> PathResult:
    """Edge-disjoint paths in ``g`` joining the ends of every demand edge of ``d``.

    ``paths[i]`` serves demand edge ``demand_ids[i]``; closing it with that
    edge gives the circuit on ``g`` plus ``d``.
    """
    missing = [v for v in d.vertices if v not in g]
    if missing:
        raise InstanceError(f"demand vertices not in graph: {missing}")
    ids = tuple(d.edge_ids())
    paths, nodes = _route(g, [d.endpoints(e) for e in ids])
    if paths is None:
        return PathResult(False, None, nodes, ids)
    return PathResult(True, tuple(paths), nodes, ids)


def validate_edpdt(g: MultiGraph, t: PairSet) -> None:
    """Degree profile of a 4-regular EDPDT instance; raises ``InstanceError``."""
    terminals = set(t.vertices())
    missing = sorted(terminals.difference(g.vertices))
    if missing:
        raise InstanceError(f"terminals not in graph: {missing}")
    for v in g.vertices:
        want = 3 if v in terminals else 4
        if g.degree(v) != want:
            raise InstanceError(f"vertex {v!r} has degree {g.degree(v)}, expected {want}")


def decide_edpdt(g: MultiGraph, t: PairSet) -> PathResult:
    validate_edpdt(g, t)
    paths, nodes = _route(g, list(t))
    if paths is None:
        return PathResult(False, None, nodes)
    return PathResult(True, tuple(paths), nodes)


def check_walk(g: MultiGraph, w: Walk, simple: bool = True) -> None:
    if len(w.vertices) != len(w.edges) + 1:
        raise CertificateError("walk must have one more vertex than edges")
    for v in w.vertices:
        if v not in g:
            raise CertificateError(f"walk vertex {v!r} is not in the graph")
    if len(set(w.edges)) != len(w.edges):
        dup = next(e for e in w.edges if w.edges.count(e) > 1)
        raise CertificateError(f"walk repeats edge {dup}")
    for i, e in enumerate(w.edges):
        if e not in g.edges:
            raise CertificateError(f"edge {e} is not in the graph")
        if {*g.endpoints(e)} != {w.vertices[i], w.vertices[i + 1]}:
            raise CertificateError(f"edge {e} does not join {w.vertices[i]!r} and {w.vertices[i + 1]!r}")
    if simple and len(set(w.vertices)) != len(w.vertices):
        raise CertificateError(f"path {w.vertices} repeats a vertex")


def check_paths(g: MultiGraph, pairs: Sequence[tuple[str, str]], walks: Sequence[Walk],
                simple: bool = True, cover: bool = False) -> None:
    """Independent certificate check for edge-disjoint routings.

    Each walk must join its pair (either orientation), walks must be pairwise
    edge-disjoint, and with ``cover`` their union must be all of ``E(g)``.
    """
    pairs = list(pairs)
    if len(pairs) != len(walks):
        raise CertificateError(f"{len(walks)} paths for {len(pairs)} pairs")
    owner: dict[int, int] = {}
    for i, ((a, b), w) in enumerate(zip(pairs, walks)):
        check_walk(g, w, simple)
        if {w.vertices[0], w.vertices[-1]} != {a, b} or (a == b) != (w.vertices[0] == w.vertices[-1]):
            raise CertificateError(f"path {i} joins {w.ends}, expected {(a, b)}")
        for e in w.edges:
            if e in owner:
                raise CertificateError(f"edge {e} is used by paths {owner[e]} and {i}")
            owner[e] = i
    if cover:
        rest = sorted(set(g.edge_ids()) - set(owner))
        if rest:
            raise CertificateError(f"edges not covered: {rest}")


def check_circuits(g: MultiGraph, d: MultiGraph, demand_ids: Sequence[int], walks: Sequence[Walk]) -> None:
    """EDP certificate: one path in ``g`` per demand edge, all edge-disjoint."""
    ids = list(demand_ids)
    if sorted(ids) != sorted(d.edge_ids()):
        raise CertificateError("certificate must cover every demand edge exactly once")
    check_paths(g, [d.endpoints(e) for e in ids], walks)


def edp_circuits(g: MultiGraph, d: MultiGraph, res: PathResult) -> list[Walk]:
    """Closed circuits on ``graph_union(g, d)`` from a YES result of :func:`decide_edp`."""
    base = g.next_edge_id()
    order = {e: k for k, e in enumerate(d.edge_ids())}
    out = []
    for e, w in zip(res.demand_ids, res.paths):
        a, _ = w.ends
        out.append(Walk(w.vertices + (a,), w.edges + (base + order[e],)))
    return out

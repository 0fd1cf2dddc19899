"""Reduction from Eulerian EDP to 4-regular EDPDT.

Two gadgets do the work. Every demand edge ``e = (u, v)`` is expanded into a
chain ``u - x_u - x'_u ... x'_v - x_v - v`` with tripled inner edges, so the
demand graph becomes a disjoint union of ``K2``s (:func:`grape_expand`).
Afterwards degree-2 vertices get a self-loop and every vertex of degree
``2n > 4`` is replaced by an ``n x n`` grid gadget whose ``2n`` boundary
vertices take over the incident edges (:func:`regularize`).

The grid gadget routes any perfect pairing of its boundary edge-disjointly
through all of its edges; :func:`route_pairing` constructs those routes.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .circle import _hierholzer
from .graphs import GraphError, MultiGraph, graph_union
from .oracles import InstanceError, PairSet, Walk

__all__ = [
    "GridGadget",
    "build_grid_gadget",
    "edge_interval_horizontal",
    "edge_interval_vertical",
    "route_pairing",
    "grape_expand",
    "regularize",
    "reduce_edp_to_4reg_edpdt",
    "Provenance",
]


@dataclass(frozen=True)
class GridGadget:
    """Grid gadget for a vertex of degree ``2n``.

    Positions ``(r, c)`` with ``0 <= r, c <= n`` address vertices: ``(i, 0)``
    is the unprimed boundary vertex ``v_i``, ``(0, j)`` the primed boundary
    vertex ``v_j'`` and ``(i, j)`` the inner vertex ``v_{i,j'}``.
    ``hor[i, l]`` is the edge from column ``l`` to ``l + 1`` on row ``i``;
    ``ver[j, l]`` the edge from row ``l`` to ``l + 1`` on column ``j``.
    """

    n: int
    prefix: str
    graph: MultiGraph
    boundary: tuple[str, ...]
    hor: dict = field(repr=False)
    ver: dict = field(repr=False)

    def label(self, r: int, c: int) -> str:
        if r == 0 and c == 0 or not (0 <= r <= self.n and 0 <= c <= self.n):
            raise GraphError(f"no grid vertex at position {(r, c)}")
        if c == 0:
            return f"{self.prefix}{r}"
        if r == 0:
            return f"{self.prefix}{c}'"
        return f"{self.prefix}{r},{c}'"

    def position(self, label: str) -> tuple[int, int]:
        if not label.startswith(self.prefix):
            raise GraphError(f"{label!r} is not a vertex of this gadget")
        body = label[len(self.prefix):]
        try:
            if "," in body:
                r, c = body.split(",")
                pos = int(r), int(c.rstrip("'"))
            elif body.endswith("'"):
                pos = 0, int(body[:-1])
            else:
                pos = int(body), 0
        except ValueError:
            raise GraphError(f"{label!r} is not a vertex of this gadget") from None
        self.label(*pos)
        return pos

    def step(self, a: tuple[int, int], b: tuple[int, int]) -> int:
        """Edge id of the grid edge between adjacent positions ``a`` and ``b``."""
        (r1, c1), (r2, c2) = sorted((a, b))
        if r1 == r2 and c2 == c1 + 1 and r1 >= 1:
            return self.hor[r1, c1]
        if c1 == c2 and r2 == r1 + 1 and c1 >= 1:
            return self.ver[c1, r1]
        raise GraphError(f"positions {a} and {b} are not joined by a grid edge")


def build_grid_gadget(n: int, prefix: str = "v") -> GridGadget:
    """Grid gadget with ``n**2 + 2n`` vertices.

    Boundary vertices have degree 3 and inner vertices degree 4; the extra
    ``(v_1, v_1')`` edge of the textbook edge list is left out because it
    would push ``v_1`` and ``v_1'`` to degree 4.
    """
    if n < 1:
        raise GraphError("grid gadget needs n >= 1")
    lab = GridGadget(n, prefix, MultiGraph(), (), {}, {}).label
    verts = [lab(i, 0) for i in range(1, n + 1)] + [lab(0, j) for j in range(1, n + 1)]
    verts += [lab(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    edges: list[tuple[str, str]] = []
    for i in range(1, n):
        edges.append((lab(i, 0), lab(i + 1, 0)))
    edges.append((lab(n, 0), lab(1, 0)))
    for i in range(1, n):
        edges.append((lab(0, i), lab(0, i + 1)))
    edges.append((lab(0, n), lab(0, 1)))
    hor, ver = {}, {}
    for i in range(1, n + 1):
        for l in range(n):
            hor[i, l] = len(edges)
            edges.append((lab(i, l), lab(i, l + 1)))
    for j in range(1, n + 1):
        for l in range(n):
            ver[j, l] = len(edges)
            edges.append((lab(l, j), lab(l + 1, j)))
    for i in range(1, n + 1):
        edges.append((lab(i, n), lab(n, i)))
    return GridGadget(n, prefix, MultiGraph(verts, edges), tuple(verts[:2 * n]), hor, ver)


def _interval(table, n, line, j, k, what):
    if not (1 <= line <= n and 0 <= j <= k <= n):
        raise GraphError(f"{what} interval {line}[{j},{k}] out of range for n={n}")
    return {table[line, l] for l in range(j, k)}


def edge_interval_horizontal(gg: GridGadget, i: int, j: int, k: int) -> set[int]:
    """Row-``i`` edges between columns ``j`` and ``k`` (column 0 is ``v_i``)."""
    return _interval(gg.hor, gg.n, i, j, k, "horizontal")


def edge_interval_vertical(gg: GridGadget, i: int, j: int, k: int) -> set[int]:
    """Column-``i'`` edges between rows ``j`` and ``k`` (row 0 is ``v_i'``)."""
    return _interval(gg.ver, gg.n, i, j, k, "vertical")


def _walk(gg: GridGadget, positions: list[tuple[int, int]]) -> Walk:
    edges = tuple(gg.step(a, b) for a, b in zip(positions, positions[1:]))
    return Walk(tuple(gg.label(*p) for p in positions), edges)


def _line(a: int, b: int) -> range:
    return range(a, b + 1) if a <= b else range(a, b - 1, -1)


def route_pairing(gg: GridGadget, pairing: Sequence[tuple[str, str]]) -> list[Walk]:
    """Edge-disjoint trails joining each boundary pair and covering every edge.

    Mixed pairs ``(v_k, v_l')`` run right along row ``k`` and down column
    ``l``. The x-th unprimed pair ``(v_i, v_j)`` and x-th primed pair
    ``(v_m', v_n')`` share the corner ``v_{i,m'}``: the unprimed trail runs
    row ``i`` to column ``m``, column ``m`` to row ``j`` and back along row
    ``j``; the primed one climbs column ``m`` to row ``i``, follows row ``i``
    to column ``n`` and descends column ``n``. Leftover edges form closed
    components, each spliced as an Eulerian circuit into the first trail that
    touches it. Trails are returned in pairing order, oriented as given.
    """
    n = gg.n
    pos = []
    seen = set()
    for pair in pairing:
        if len(pair) != 2:
            raise GraphError(f"bad pair {pair!r}")
        ps = []
        for lab in pair:
            p = gg.position(lab)
            if p[0] != 0 and p[1] != 0:
                raise GraphError(f"{lab!r} is not a boundary vertex")
            if p in seen:
                raise GraphError(f"{lab!r} appears in two pairs")
            seen.add(p)
            ps.append(p)
        pos.append(ps)
    if len(seen) != 2 * n:
        raise GraphError("pairing must cover all boundary vertices")

    unprimed = [k for k, (a, b) in enumerate(pos) if a[1] == 0 and b[1] == 0]
    primed = [k for k, (a, b) in enumerate(pos) if a[0] == 0 and b[0] == 0]
    routes: list[list[tuple[int, int]] | None] = [None] * len(pos)

    for k, (a, b) in enumerate(pos):
        if k in unprimed or k in primed:
            continue
        row, col = (a[0], b[1]) if a[1] == 0 else (b[0], a[1])
        route = [(row, c) for c in range(0, col + 1)] + [(r, col) for r in range(row - 1, -1, -1)]
        routes[k] = route if route[0] == a else route[::-1]

    for ku, kp in zip(unprimed, primed):
        i, j = sorted(p[0] for p in pos[ku])
        m, nn = sorted(p[1] for p in pos[kp])
        route = [(i, c) for c in _line(0, m)] + [(r, m) for r in _line(i + 1, j)]
        route += [(j, c) for c in _line(m - 1, 0)]
        routes[ku] = route if route[0] == pos[ku][0] else route[::-1]
        route = [(r, m) for r in _line(0, i)] + [(i, c) for c in _line(m + 1, nn)]
        route += [(r, nn) for r in _line(i - 1, 0)]
        routes[kp] = route if route[0] == pos[kp][0] else route[::-1]

    walks = [_walk(gg, r) for r in routes]
    return _absorb_remainder(gg.graph, walks)


def _absorb_remainder(g: MultiGraph, walks: list[Walk]) -> list[Walk]:
    used = {e for w in walks for e in w.edges}
    verts = [list(w.vertices) for w in walks]
    edges = [list(w.edges) for w in walks]
    for comp in g.without_edges(used).components():
        if not any(e not in used for v in comp for e in g.incident(v)):
            continue
        cs = set(comp)
        for k in range(len(verts)):
            hit = next((p for p, v in enumerate(verts[k]) if v in cs), None)
            if hit is not None:
                break
        else:
            raise GraphError(f"leftover component {comp} touches no trail")
        sv, se = _hierholzer(g, verts[k][hit], used)
        verts[k][hit:hit + 1] = sv
        edges[k][hit:hit] = se
    return [Walk(tuple(v), tuple(e)) for v, e in zip(verts, edges)]


# --- EDP -> 4-regular EDPDT -----------------------------------------------------

@dataclass
class Provenance:
    """Lineage of the reduced instance.

    ``gadgets`` maps a replaced vertex to its grid-gadget vertices,
    ``loops`` lists padded vertices with the ids of their new self-loops,
    ``demands`` maps each output pair index to the source demand edge id and
    ``grape`` maps every grape vertex to that demand edge id.
    """

    gadgets: dict[str, list[str]] = field(default_factory=dict)
    loops: dict[str, list[int]] = field(default_factory=dict)
    demands: list[int] = field(default_factory=list)
    grape: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"gadgets": self.gadgets, "loops": self.loops, "demands": self.demands, "grape": self.grape}


def _fresh(taken: set[str], label: str) -> str:
    if label in taken:
        raise GraphError(f"generated label {label!r} collides with an existing vertex")
    taken.add(label)
    return label


def _union_degrees(g: MultiGraph, d: MultiGraph) -> dict[str, int]:
    u = graph_union(g, d)
    return {v: u.degree(v) for v in u.vertices}


def grape_expand(g: MultiGraph, d: MultiGraph, provenance: Provenance | None = None) -> tuple[MultiGraph, PairSet]:
    """Replace each demand edge by a pair of tripled-edge chains.

    The new demand pairs join the two primed chain ends; their order follows
    the demand edge ids.
    """
    missing = [v for v in d.vertices if v not in g]
    if missing:
        raise InstanceError(f"demand vertices not in graph: {missing}")
    for v, deg in _union_degrees(g, d).items():
        if deg % 2:
            raise InstanceError(f"G u D is not Eulerian: {v!r} has degree {deg}")
    taken = set(g.vertices)
    new_verts, new_edges, pairs = [], [], []
    for e in d.edge_ids():
        u, v = d.endpoints(e)
        xu = _fresh(taken, f"grape:x_{u}^{e}")
        xpu = _fresh(taken, f"grape:x'_{u}^{e}")
        vv = v if v != u else f"{v}#2"
        xpv = _fresh(taken, f"grape:x'_{vv}^{e}")
        xv = _fresh(taken, f"grape:x_{vv}^{e}")
        new_verts += [xu, xpu, xpv, xv]
        new_edges += [(u, xu)] + [(xu, xpu)] * 3 + [(xpv, xv)] * 3 + [(xv, v)]
        pairs.append((xpu, xpv))
        if provenance is not None:
            provenance.demands.append(e)
            for x in (xu, xpu, xpv, xv):
                provenance.grape[x] = e
    return g.add(new_verts, new_edges), PairSet(pairs)


def regularize(gp: MultiGraph, dp: PairSet, provenance: Provenance | None = None) -> tuple[MultiGraph, PairSet]:
    """Make ``gp`` plus the demand pairs 4-regular.

    Degree-2 vertices get one self-loop (isolated vertices two). A vertex of
    degree ``2n > 4`` is replaced by a grid gadget; its incident edge ends go,
    in ascending edge id, to ``v_1 .. v_n, v_1' .. v_n'`` and keep their ids.
    """
    terminals = set(dp.vertices())
    missing = sorted(terminals.difference(gp.vertices))
    if missing:
        raise InstanceError(f"demand vertices not in graph: {missing}")
    for v in gp.vertices:
        deg = gp.degree(v) + (v in terminals)
        if deg % 2:
            raise InstanceError(f"vertex {v!r} has odd degree {deg}")
        if v in terminals and deg != 4:
            raise InstanceError(f"demand vertex {v!r} has degree {deg}, expected 4")
    prov = provenance if provenance is not None else Provenance()
    verts = list(gp.vertices)
    edges = gp.edges
    next_id = gp.next_edge_id()
    taken = set(verts)
    for v in gp.vertices:
        deg = gp.degree(v) + (v in terminals)
        if deg in (0, 2):
            count = 2 if deg == 0 else 1
            prov.loops[v] = list(range(next_id, next_id + count))
            for _ in range(count):
                edges[next_id] = (v, v)
                next_id += 1
        elif deg > 4:
            gg = build_grid_gadget(deg // 2, prefix=f"grid:{v}@")
            for x in gg.graph.vertices:
                _fresh(taken, x)
            slots = iter(gg.boundary)
            for e in sorted(edges):
                a, b = edges[e]
                if a == v:
                    a = next(slots)
                if b == v:
                    b = next(slots)
                edges[e] = (a, b)
            for k in gg.graph.edge_ids():
                edges[next_id] = gg.graph.endpoints(k)
                next_id += 1
            pos = verts.index(v)
            verts[pos:pos + 1] = list(gg.graph.vertices)
            prov.gadgets[v] = list(gg.graph.vertices)
    out = MultiGraph(verts, edges)
    for v in out.vertices:
        want = 3 if v in terminals else 4
        if out.degree(v) != want:
            raise AssertionError(f"regularize left {v!r} with degree {out.degree(v)}")
    return out, dp


def reduce_edp_to_4reg_edpdt(g: MultiGraph, d: MultiGraph,
                             provenance: Provenance | None = None) -> tuple[MultiGraph, PairSet]:
    gp, dp = grape_expand(g, d, provenance)
    return regularize(gp, dp, provenance)

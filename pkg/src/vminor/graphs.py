"""Simple labeled graphs and multigraphs.

Vertex labels are strings. Both graph kinds are immutable: every operation
returns a new value.

``LabeledGraph`` keeps adjacency as one integer bitset per vertex, indexed by
the position of the vertex in ``vertices``. Local complementation is then a
masked XOR of the neighbourhood into each neighbour's row.

``MultiGraph`` stores edges by integer ``EdgeId`` so that parallel edges and
self-loops stay distinguishable. Tours and paths refer to edge ids, never to
endpoint pairs.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence

__all__ = [
    "GraphError",
    "LabeledGraph",
    "MultiGraph",
    "local_complement",
    "apply_lc_sequence",
    "induced_subgraph",
    "delete_vertices",
    "degree",
    "graph_union",
    "parse_text",
    "to_text",
    "to_dot",
]


class GraphError(ValueError):
    pass


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class LabeledGraph:
    """Simple undirected graph with stable vertex labels."""

    __slots__ = ("_vertices", "_index", "_rows", "_hash")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()):
        verts = tuple(vertices)
        index = {v: i for i, v in enumerate(verts)}
        if len(index) != len(verts):
            raise GraphError("duplicate vertex label")
        rows = [0] * len(verts)
        for u, v in edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphError(f"edge endpoint {missing!r} is not a vertex")
            if u == v:
                raise GraphError(f"self-loop at {u!r} in a simple graph")
            i, j = index[u], index[v]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        self._vertices = verts
        self._index = index
        self._rows = tuple(rows)
        self._hash = None

    @classmethod
    def from_rows(cls, vertices: Sequence[str], rows: Sequence[int]) -> LabeledGraph:
        g = cls.__new__(cls)
        g._vertices = tuple(vertices)
        g._index = {v: i for i, v in enumerate(g._vertices)}
        g._rows = tuple(rows)
        g._hash = None
        return g

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self._vertices)

    def neighbors(self, v: str) -> list[str]:
        return [self._vertices[j] for j in _bits(self._rows[self.index(v)])]

    def has_edge(self, u: str, v: str) -> bool:
        return bool(self._rows[self.index(u)] >> self.index(v) & 1)

    def edges(self) -> list[tuple[str, str]]:
        """Edges as sorted label pairs, in sorted order."""
        out = []
        for i, row in enumerate(self._rows):
            for j in _bits(row):
                if j > i:
                    a, b = self._vertices[i], self._vertices[j]
                    out.append((a, b) if a <= b else (b, a))
        return sorted(out)

    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self._rows) // 2

    def _key(self):
        return frozenset(self._vertices), frozenset(self.edges())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        if self._vertices == other._vertices:
            return self._rows == other._rows
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        es = ", ".join(f"{a}-{b}" for a, b in self.edges())
        return f"LabeledGraph(V={list(self._vertices)}, E=[{es}])"


class MultiGraph:
    """Undirected multigraph with integer edge ids.

    ``edges`` may be a sequence of endpoint pairs (ids assigned 0, 1, ...) or a
    mapping from id to endpoint pair. Vertices named only by edges are added
    after the explicit ones, in order of first appearance.
    """

    __slots__ = ("_vertices", "_vset", "_edges", "_incident")

    def __init__(
        self,
        vertices: Iterable[str] = (),
        edges: Sequence[tuple[str, str]] | Mapping[int, tuple[str, str]] = (),
    ):
        verts = list(dict.fromkeys(vertices))
        if isinstance(edges, Mapping):
            items = sorted((int(k), tuple(v)) for k, v in edges.items())
        else:
            items = [(i, tuple(e)) for i, e in enumerate(edges)]
        seen = set(verts)
        for _, (u, v) in items:
            for x in (u, v):
                if x not in seen:
                    seen.add(x)
                    verts.append(x)
        self._vertices = tuple(verts)
        self._vset = frozenset(verts)
        self._edges = dict(items)
        if len(self._edges) != len(items):
            raise GraphError("duplicate edge id")
        inc = {v: [] for v in self._vertices}
        for eid, (u, v) in items:
            inc[u].append(eid)
            if v != u:
                inc[v].append(eid)
        self._incident = {v: tuple(ids) for v, ids in inc.items()}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> dict[int, tuple[str, str]]:
        return dict(self._edges)

    def edge_ids(self) -> list[int]:
        return list(self._edges)

    def endpoints(self, eid: int) -> tuple[str, str]:
        try:
            return self._edges[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid}") from None

    def other(self, eid: int, v: str) -> str:
        a, b = self.endpoints(eid)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"edge {eid} is not incident on {v!r}")

    def incident(self, v: str) -> tuple[int, ...]:
        """Edge ids incident on ``v`` in ascending order; a self-loop appears once."""
        try:
            return self._incident[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v: str) -> int:
        return sum(2 if self._edges[e][0] == self._edges[e][1] else 1 for e in self.incident(v))

    def __contains__(self, v) -> bool:
        return v in self._vset

    def __len__(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def next_edge_id(self) -> int:
        return max(self._edges, default=-1) + 1

    def add(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()) -> MultiGraph:
        """Return a copy with extra vertices and fresh-id edges appended."""
        start = self.next_edge_id()
        new = dict(self._edges)
        for k, e in enumerate(edges):
            new[start + k] = tuple(e)
        return MultiGraph(list(self._vertices) + list(vertices), new)

    def without_edges(self, ids: Iterable[int]) -> MultiGraph:
        drop = set(ids)
        return MultiGraph(self._vertices, {k: e for k, e in self._edges.items() if k not in drop})

    def subgraph(self, vertices: Iterable[str]) -> MultiGraph:
        keep = list(dict.fromkeys(vertices))
        ks = set(keep)
        return MultiGraph(keep, {k: (u, v) for k, (u, v) in self._edges.items() if u in ks and v in ks})

    def components(self) -> list[list[str]]:
        """Connected components, each in vertex order, ordered by first vertex."""
        seen: set[str] = set()
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for e in self._incident[x]:
                    y = self.other(e, x)
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            order = {v: i for i, v in enumerate(self._vertices)}
            comps.append(sorted(comp, key=order.__getitem__))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vset == other._vset and self._edges == other._edges

    def __hash__(self):
        return hash((self._vset, frozenset(self._edges.items())))

    def __repr__(self) -> str:
        es = ", ".join(f"{k}:{u}-{v}" for k, (u, v) in self._edges.items())
        return f"MultiGraph(V={list(self._vertices)}, E=[{es}])"


def local_complement(g: LabeledGraph, v: str) -> LabeledGraph:
    """Complement the subgraph induced on the neighbourhood of ``v``."""
    i = g.index(v)
    rows = list(g.rows)
    nb = rows[i]
    for j in _bits(nb):
        rows[j] ^= nb & ~(1 << j)
    return LabeledGraph.from_rows(g.vertices, rows)


def apply_lc_sequence(g: LabeledGraph, vs: Iterable[str]) -> LabeledGraph:
    """Apply local complementations left to right."""
    for v in vs:
        g = local_complement(g, v)
    return g


def induced_subgraph(g: LabeledGraph, vs: Iterable[str]) -> LabeledGraph:
    keep = set(vs)
    missing = keep.difference(g.vertices)
    if missing:
        raise GraphError(f"vertices not in graph: {sorted(missing)}")
    idx = [g.index(v) for v in g.vertices if v in keep]
    pos = {old: new for new, old in enumerate(idx)}
    rows = []
    for old in idx:
        r = 0
        for j in _bits(g.rows[old]):
            if j in pos:
                r |= 1 << pos[j]
        rows.append(r)
    return LabeledGraph.from_rows([g.vertices[i] for i in idx], rows)


def delete_vertices(g: LabeledGraph, vs: Iterable[str]) -> LabeledGraph:
    drop = set(vs)
    missing = drop.difference(g.vertices)
    if missing:
        raise GraphError(f"vertices not in graph: {sorted(missing)}")
    return induced_subgraph(g, [v for v in g.vertices if v not in drop])


def degree(g: MultiGraph, v: str) -> int:
    return g.degree(v)


def graph_union(g: MultiGraph, d: MultiGraph) -> MultiGraph:
    """Vertex union, edge multiset union; ``d``'s edges get fresh ids after ``g``'s."""
    return g.add(d.vertices, [d.endpoints(e) for e in d.edge_ids()])


# --- text format -------------------------------------------------------------

def to_text(g: LabeledGraph | MultiGraph, name: str = "g") -> str:
    kind = "simple" if isinstance(g, LabeledGraph) else "multi"
    lines = [f"graph {name} {kind}"]
    lines += [f"v {v}" for v in g.vertices]
    if isinstance(g, LabeledGraph):
        lines += [f"e {a} {b}" for a, b in g.edges()]
    else:
        lines += [f"e {u} {v}" for _, (u, v) in sorted(g.edges.items())]
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> tuple[str, LabeledGraph | MultiGraph]:
    """Parse the line format back into ``(name, graph)``."""
    name, kind = None, None
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "graph":
            if len(parts) != 3 or parts[2] not in ("simple", "multi"):
                raise GraphError(f"line {lineno}: expected 'graph <name> simple|multi'")
            name, kind = parts[1], parts[2]
        elif parts[0] == "v" and len(parts) == 2:
            verts.append(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw!r}")
    if kind is None:
        raise GraphError("missing 'graph' header")
    if kind == "simple":
        vs = list(dict.fromkeys(verts + [x for e in edges for x in e]))
        seen = set()
        for a, b in edges:
            key = frozenset((a, b))
            if key in seen:
                raise GraphError(f"parallel edge {a}-{b} in a simple graph")
            seen.add(key)
        return name, LabeledGraph(vs, edges)
    return name, MultiGraph(verts, edges)


_DOT_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _dot_quote(s: str) -> str:
    if _DOT_ID.match(s):
        return s
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: LabeledGraph | MultiGraph, name: str = "G", highlight: Iterable[str] = ()) -> str:
    hl = set(highlight)
    lines = [f"graph {_dot_quote(name)} {{"]
    for v in g.vertices:
        attr = " [shape=box, color=red]" if v in hl else ""
        lines.append(f"  {_dot_quote(v)}{attr};")
    if isinstance(g, LabeledGraph):
        pairs = g.edges()
    else:
        pairs = [g.endpoints(e) for e in g.edge_ids()]
    for a, b in pairs:
        lines.append(f"  {_dot_quote(a)} -- {_dot_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"

"""JSON instance and certificate files (schema ``"format": 1``).

Instance kinds::

    edp     {"graph": <multi>, "demand": <multi>}
    edpdt   {"graph": <multi>, "pairs": [[t, t'], ...]}
    bellvm  {"graph": <simple>, "pairs": [[p, p'], ...]}

where ``<multi>`` is ``{"vertices": [...], "edges": [[id, u, v], ...]}`` and
``<simple>`` is ``{"vertices": [...], "edges": [[u, v], ...]}``. Optional keys:
``name``, ``seed``, ``provenance``.

Certificates are ``{"format": 1, "kind": "vm_witness", "lc_sequence", "deleted"}``
or ``{"format": 1, "kind": "paths", "paths": [{"vertices", "edges"}],
"demand_ids"?, "circuits"?}``.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any

from .graphs import LabeledGraph, MultiGraph, parse_text
from .oracles import (
    CertificateError,
    InstanceError,
    PairSet,
    VmWitness,
    Walk,
    validate_edpdt,
)

FORMAT = 1
KINDS = ("edp", "edpdt", "bellvm")


class MalformedCertificate(CertificateError):
    """The certificate file cannot be parsed (as opposed to failing a check)."""


@dataclass
class InstanceFile:
    kind: str
    graph: MultiGraph | LabeledGraph
    demand: MultiGraph | None = None
    pairs: PairSet | None = None
    name: str = ""
    seed: int | None = None
    provenance: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InstanceError(f"unknown instance kind {self.kind!r}")
        if self.kind == "edp":
            if not isinstance(self.graph, MultiGraph) or self.demand is None:
                raise InstanceError("edp instance needs a multigraph and a demand graph")
            missing = [v for v in self.demand.vertices if v not in self.graph]
            if missing:
                raise InstanceError(f"demand vertices not in graph: {missing}")
        elif self.kind == "edpdt":
            if not isinstance(self.graph, MultiGraph) or self.pairs is None:
                raise InstanceError("edpdt instance needs a multigraph and pairs")
            validate_edpdt(self.graph, self.pairs)
        else:
            if not isinstance(self.graph, LabeledGraph) or self.pairs is None:
                raise InstanceError("bellvm instance needs a simple graph and pairs")
            missing = [v for v in self.pairs.vertices() if v not in self.graph]
            if missing:
                raise InstanceError(f"pair vertices not in graph: {missing}")

    def __eq__(self, other):
        if not isinstance(other, InstanceFile):
            return NotImplemented
        return instance_to_dict(self) == instance_to_dict(other)


def _multi_to_dict(g: MultiGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [[e, a, b] for e, (a, b) in sorted(g.edges.items())]}


def _simple_to_dict(g: LabeledGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges()]}


def _multi_from(d: Any) -> MultiGraph:
    try:
        edges = {}
        for item in d["edges"]:
            if len(item) == 3:
                e, a, b = item
            else:
                a, b = item
                e = len(edges)
            if int(e) in edges:
                raise InstanceError(f"duplicate edge id {e}")
            edges[int(e)] = (str(a), str(b))
        return MultiGraph([str(v) for v in d.get("vertices", [])], edges)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(f"malformed multigraph: {exc}") from exc


def _simple_from(d: Any) -> LabeledGraph:
    try:
        return LabeledGraph([str(v) for v in d.get("vertices", [])], [(str(a), str(b)) for a, b in d["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed graph: {exc}") from exc


def instance_to_dict(inst: InstanceFile) -> dict:
    out: dict[str, Any] = {"format": FORMAT, "kind": inst.kind}
    if inst.name:
        out["name"] = inst.name
    if inst.seed is not None:
        out["seed"] = inst.seed
    if inst.kind == "bellvm":
        out["graph"] = _simple_to_dict(inst.graph)
    else:
        out["graph"] = _multi_to_dict(inst.graph)
    if inst.kind == "edp":
        out["demand"] = _multi_to_dict(inst.demand)
    else:
        out["pairs"] = [list(p) for p in inst.pairs]
    if inst.provenance:
        out["provenance"] = inst.provenance
    return out


def instance_from_dict(d: dict) -> InstanceFile:
    if not isinstance(d, dict):
        raise InstanceError("instance must be a JSON object")
    if d.get("format") != FORMAT:
        raise InstanceError(f"unsupported format {d.get('format')!r}, expected {FORMAT}")
    kind = d.get("kind")
    if kind not in KINDS:
        raise InstanceError(f"unknown instance kind {kind!r}")
    if "graph" not in d:
        raise InstanceError("instance has no graph")
    graph = _simple_from(d["graph"]) if kind == "bellvm" else _multi_from(d["graph"])
    demand = pairs = None
    if kind == "edp":
        demand = _multi_from(d.get("demand", {"edges": []}))
    else:
        pairs = PairSet(tuple(map(str, p)) for p in d.get("pairs", []))
    inst = InstanceFile(kind, graph, demand, pairs, d.get("name", ""), d.get("seed"), d.get("provenance", {}))
    inst.validate()
    return inst


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def dump_instance(inst: InstanceFile) -> str:
    return dumps(instance_to_dict(inst))


def load_instance(text: str) -> InstanceFile:
    """Parse a JSON instance, or a text-format graph (an instance with no pairs)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"invalid JSON: {exc}") from exc
        return instance_from_dict(d)
    name, g = parse_text(text)
    if isinstance(g, MultiGraph):
        inst = InstanceFile("edpdt", g, pairs=PairSet(), name=name)
    else:
        inst = InstanceFile("bellvm", g, pairs=PairSet(), name=name)
    inst.validate()
    return inst


# --- certificates -------------------------------------------------------------

def _walk_to_dict(w: Walk) -> dict:
    return {"vertices": list(w.vertices), "edges": list(w.edges)}


def _walk_from(d: Any) -> Walk:
    try:
        return Walk(tuple(str(v) for v in d["vertices"]), tuple(int(e) for e in d["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificate(f"malformed walk: {exc}") from exc


def witness_to_dict(w: VmWitness) -> dict:
    return {"format": FORMAT, "kind": "vm_witness", "lc_sequence": list(w.lc_sequence), "deleted": list(w.deleted)}


def paths_to_dict(paths, demand_ids=None, circuits=None) -> dict:
    out: dict[str, Any] = {"format": FORMAT, "kind": "paths", "paths": [_walk_to_dict(w) for w in paths]}
    if demand_ids is not None:
        out["demand_ids"] = list(demand_ids)
    if circuits is not None:
        out["circuits"] = [_walk_to_dict(w) for w in circuits]
    return out


def certificate_from_dict(d: Any) -> VmWitness | dict:
    """``VmWitness`` for witnesses; for path certificates a dict of ``Walk`` lists."""
    if not isinstance(d, dict) or d.get("format") != FORMAT:
        raise MalformedCertificate("certificate must be a JSON object with \"format\": 1")
    kind = d.get("kind")
    try:
        if kind == "vm_witness":
            return VmWitness(tuple(map(str, d["lc_sequence"])), tuple(map(str, d["deleted"])))
        if kind == "paths":
            out = {"paths": [_walk_from(w) for w in d["paths"]]}
            if "demand_ids" in d:
                out["demand_ids"] = [int(e) for e in d["demand_ids"]]
            if "circuits" in d:
                out["circuits"] = [_walk_from(w) for w in d["circuits"]]
            return out
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CertificateError):
            raise
        raise MalformedCertificate(f"malformed certificate: {exc}") from exc
    raise MalformedCertificate(f"unknown certificate kind {kind!r}")


def write_atomic(path: str, text: str) -> None:
    """Write UTF-8 text via a temporary file in the same directory, then rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

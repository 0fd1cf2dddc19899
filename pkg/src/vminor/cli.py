"""``vminor`` command-line front end.

Exit codes: 0 yes/pass, 1 no/fail, 2 truncated or error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from collections.abc import Sequence

from . import instances as io
from .bellvm_reduction import build_h_graph, reduce_edpdt_to_bellvm
from .circle import alternance_graph, find_eulerian_tour, format_tour, induced_word
from .gadgets import Provenance, reduce_edp_to_4reg_edpdt
from .generators import grid_demo, random_4reg_edpdt, ring_instance
from .graphs import GraphError, LabeledGraph, MultiGraph, to_dot, to_text
from .oracles import (
    CertificateError,
    InstanceError,
    OrbitTruncated,
    PathResult,
    VmWitness,
    bell_graph,
    check_circuits,
    check_paths,
    check_vm_witness,
    decide_bellvm,
    decide_edp,
    decide_edpdt,
    default_budget,
    edp_circuits,
    lc_orbit_sequences,
    strip_isolated,
)

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

log = logging.getLogger("vminor")


class CliError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, path: str | None) -> None:
    if path and path != "-":
        io.write_atomic(path, text)
    else:
        sys.stdout.write(text)


def _instance_text(inst: io.InstanceFile) -> str:
    out = to_text(inst.graph, inst.name or inst.kind)
    if inst.kind == "edp":
        out += "".join(f"# demand {a} {b}\n" for _, (a, b) in sorted(inst.demand.edges.items()))
    else:
        out += "".join(f"# pair {a} {b}\n" for a, b in inst.pairs)
    return out


def _write_instance(inst: io.InstanceFile, args) -> None:
    text = _instance_text(inst) if args.format == "text" else io.dump_instance(inst)
    _emit(text, args.output)


# --- reduce ------------------------------------------------------------------

def reduce_instance(inst: io.InstanceFile, target: str) -> io.InstanceFile:
    chain = {("edp", "edpdt"), ("edp", "bellvm"), ("edpdt", "bellvm")}
    if (inst.kind, target) not in chain:
        raise CliError(f"no reduction from {inst.kind} to {target}")
    prov: dict = {}
    cur = inst
    if inst.kind == "edp":
        p = Provenance()
        g, t = reduce_edp_to_4reg_edpdt(inst.graph, inst.demand, p)
        prov["edp"] = p.to_json()
        cur = io.InstanceFile("edpdt", g, pairs=t, name=inst.name, seed=inst.seed)
    if target == "bellvm":
        b = reduce_edpdt_to_bellvm(cur.graph, cur.pairs)
        prov["pads"] = b.provenance
        cur = io.InstanceFile("bellvm", b.graph, pairs=b.pairs, name=inst.name, seed=inst.seed)
    cur.provenance = prov
    cur.validate()
    return cur


def cmd_reduce(args) -> int:
    inst = io.load_instance(_read(args.input))
    out = reduce_instance(inst, args.to)
    if args.dot:
        io.write_atomic(args.dot, to_dot(out.graph, out.name or out.kind, out.pairs.vertices()))
    _write_instance(out, args)
    return EXIT_YES


# --- solve -------------------------------------------------------------------

def solve_instance(inst: io.InstanceFile, budget: int) -> tuple[dict, int]:
    """Decide ``inst``; returns the report dict and the exit code."""
    report: dict = {"format": io.FORMAT, "kind": inst.kind}
    if inst.kind == "bellvm":
        try:
            res = decide_bellvm(inst.graph, inst.pairs, budget)
        except OrbitTruncated as exc:
            report.update(verdict="truncated", error=str(exc), stats={"budget": budget})
            return report, EXIT_ERROR
        report["verdict"] = "yes" if res.decision else "no"
        if res.decision:
            report["certificate"] = io.witness_to_dict(res.witness)
        report["stats"] = {"orbit_size": res.orbit_size}
    elif inst.kind == "edpdt":
        res = decide_edpdt(inst.graph, inst.pairs)
        report["verdict"] = "yes" if res.decision else "no"
        if res.decision:
            report["certificate"] = io.paths_to_dict(res.paths)
        report["stats"] = {"nodes_explored": res.nodes_explored}
    else:
        res = decide_edp(inst.graph, inst.demand)
        report["verdict"] = "yes" if res.decision else "no"
        if res.decision:
            circuits = edp_circuits(inst.graph, inst.demand, res)
            report["certificate"] = io.paths_to_dict(res.paths, res.demand_ids, circuits)
        report["stats"] = {"nodes_explored": res.nodes_explored}
    return report, EXIT_YES if report["verdict"] == "yes" else EXIT_NO


def _report_text(report: dict) -> str:
    lines = [f"verdict: {report['verdict']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
    for k, v in report.get("stats", {}).items():
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    inst = io.load_instance(_read(args.input))
    budget = args.budget if args.budget is not None else default_budget()
    t0 = time.perf_counter()
    report, code = solve_instance(inst, budget)
    if args.seed is not None:
        report["seed"] = args.seed
    if args.timing:
        report["stats"]["wall_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    if args.cert and "certificate" in report:
        io.write_atomic(args.cert, io.dumps(report["certificate"]))
    if args.dot:
        io.write_atomic(args.dot, to_dot(inst.graph, inst.name or inst.kind, _pair_vertices(inst)))
    _emit(_report_text(report) if args.format == "text" else io.dumps(report), args.output)
    return code


def _pair_vertices(inst: io.InstanceFile) -> list[str]:
    if inst.kind == "edp":
        return list(inst.demand.vertices)
    return inst.pairs.vertices()


# --- verify ------------------------------------------------------------------

def verify_certificate(inst: io.InstanceFile, cert_data: dict) -> None:
    """Raise ``CertificateError`` unless the certificate proves ``inst`` is YES."""
    if isinstance(cert_data, dict) and "certificate" in cert_data and "verdict" in cert_data:
        cert_data = cert_data["certificate"]
    cert = io.certificate_from_dict(cert_data)
    if inst.kind == "bellvm":
        if not isinstance(cert, VmWitness):
            raise CertificateError("bellvm instances need a vm_witness certificate")
        check_vm_witness(inst.graph, strip_isolated(bell_graph(inst.pairs)), cert)
        return
    if isinstance(cert, VmWitness):
        raise CertificateError(f"{inst.kind} instances need a paths certificate")
    try:
        if inst.kind == "edpdt":
            check_paths(inst.graph, list(inst.pairs), cert["paths"])
            return
        ids = cert.get("demand_ids", list(inst.demand.edge_ids()))
        if len(ids) != len(cert["paths"]):
            raise CertificateError("demand_ids and paths differ in length")
        check_circuits(inst.graph, inst.demand, ids, cert["paths"])
        if "circuits" in cert:
            want = edp_circuits(inst.graph, inst.demand, PathResult(True, tuple(cert["paths"]), 0, tuple(ids)))
            if list(cert["circuits"]) != want:
                raise CertificateError("circuits do not close the paths with their demand edges")
    except GraphError as exc:
        raise CertificateError(str(exc)) from exc


def cmd_verify(args) -> int:
    inst = io.load_instance(_read(args.input))
    try:
        data = json.loads(_read(args.certificate))
    except json.JSONDecodeError as exc:
        raise io.MalformedCertificate(f"invalid JSON: {exc}") from exc
    try:
        verify_certificate(inst, data)
    except io.MalformedCertificate:
        raise
    except CertificateError as exc:
        report = {"format": io.FORMAT, "verdict": "fail", "error": str(exc)}
        code = EXIT_NO
    else:
        report = {"format": io.FORMAT, "verdict": "pass"}
        code = EXIT_YES
    _emit(_report_text(report) if args.format == "text" else io.dumps(report), args.output)
    return code


# --- gen ---------------------------------------------------------------------

def generate(family: str, n: int | None, k: int | None, seed: int, matched: bool | None = None) -> io.InstanceFile:
    rng = random.Random(seed)
    if family == "ring":
        k = k if k is not None else 2
        g, pairs, tilde = ring_instance(k, rng, matched)
        return io.InstanceFile("bellvm", g, pairs=pairs, name=f"ring-{k}", seed=seed,
                               provenance={"extra_edges": [list(e) for e in tilde]})
    if family == "random-4reg":
        n = n if n is not None else 8
        k = k if k is not None else 2
        g, t = random_4reg_edpdt(n, k, rng)
        inst = io.InstanceFile("edpdt", g, pairs=t, name=f"random-4reg-{n}-{k}", seed=seed)
        inst.validate()
        return inst
    if family == "grid-demo":
        n = n if n is not None else 3
        g, d = grid_demo(n, rng)
        return io.InstanceFile("edp", g, demand=d, name=f"grid-demo-{n}", seed=seed)
    raise CliError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    try:
        inst = generate(args.family, args.n, args.k, args.seed if args.seed is not None else 0, args.matched)
    except ValueError as exc:
        raise CliError(f"infeasible parameters: {exc}") from exc
    if args.dot:
        io.write_atomic(args.dot, to_dot(inst.graph, inst.name, _pair_vertices(inst)))
    _write_instance(inst, args)
    return EXIT_YES


# --- orbit / tour --------------------------------------------------------------

def cmd_orbit(args) -> int:
    inst = io.load_instance(_read(args.input))
    if not isinstance(inst.graph, LabeledGraph):
        raise CliError("orbit needs a simple graph")
    budget = args.budget if args.budget is not None else default_budget()
    try:
        seqs = lc_orbit_sequences(inst.graph, budget)
    except OrbitTruncated as exc:
        report = {"format": io.FORMAT, "verdict": "truncated", "error": str(exc)}
        _emit(_report_text(report) if args.format == "text" else io.dumps(report), args.output)
        return EXIT_ERROR
    members = sorted(seqs.items(), key=lambda kv: (len(kv[1]), kv[1]))
    if args.format == "text":
        lines = [f"{' '.join(s) or '-'}\t{' '.join(f'{a}-{b}' for a, b in g.edges())}" for g, s in members]
        text = f"orbit_size: {len(members)}\n" + "\n".join(lines) + "\n"
    else:
        text = io.dumps({"format": io.FORMAT, "vertices": list(inst.graph.vertices), "orbit_size": len(members),
                         "members": [{"lc_sequence": list(s), "edges": [list(e) for e in g.edges()]}
                                     for g, s in members]})
    _emit(text, args.output)
    return EXIT_YES


def cmd_tour(args) -> int:
    inst = io.load_instance(_read(args.input))
    if not isinstance(inst.graph, MultiGraph):
        raise CliError("tour needs a multigraph")
    host = inst.graph
    if inst.kind == "edpdt" and len(inst.pairs):
        host = build_h_graph(inst.graph, inst.pairs).host  # terminals have degree 3 until padded
    t = find_eulerian_tour(host, args.start)
    word = induced_word(t)
    alt = alternance_graph(word)
    if args.dot:
        io.write_atomic(args.dot, to_dot(alt, "alternance"))
    if args.format == "text":
        text = f"tour: {format_tour(t)}\nword: {word}\n" + to_text(alt, "alternance")
    else:
        text = io.dumps({"format": io.FORMAT, "tour": format_tour(t), "word": list(word),
                         "alternance": {"vertices": list(alt.vertices), "edges": [list(e) for e in alt.edges()]}})
    _emit(text, args.output)
    return EXIT_YES


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vminor", description="Vertex-minor, circle-graph and edge-disjoint-path tools.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget=False):
        sp.add_argument("-o", "--output", help="output file (default stdout)")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--dot", help="write a DOT rendering to this path")
        if budget:
            sp.add_argument("--budget", type=int, help="LC orbit budget (default $VMINOR_BUDGET or 2000000)")

    sp = sub.add_parser("reduce", help="reduce edp -> edpdt -> bellvm")
    sp.add_argument("input")
    sp.add_argument("--to", choices=("edpdt", "bellvm"), default="bellvm")
    common(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("solve", help="decide an instance with the exact oracles")
    sp.add_argument("input")
    sp.add_argument("--cert", help="write the certificate to this path")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--timing", action="store_true", help="add wall_ms to the report")
    common(sp, budget=True)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check a certificate against an instance")
    sp.add_argument("input")
    sp.add_argument("certificate")
    sp.add_argument("-o", "--output")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("family", choices=("ring", "random-4reg", "grid-demo"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--seed", type=int, default=0)
    m = sp.add_mutually_exclusive_group()
    m.add_argument("--matched", dest="matched", action="store_true", default=None)
    m.add_argument("--mismatched", dest="matched", action="store_false")
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("orbit", help="dump the LC orbit of a simple graph")
    sp.add_argument("input")
    common(sp, budget=True)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("tour", help="Eulerian tour, word and alternance graph of a multigraph")
    sp.add_argument("input")
    sp.add_argument("--start")
    common(sp)
    sp.set_defaults(func=cmd_tour)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (CliError, InstanceError, CertificateError, GraphError, OSError) as exc:
        print(f"vminor: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

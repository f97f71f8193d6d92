"""Command line front end: JSON in, one JSON document out.

Exit codes: 0 success, 1 checked failure (rejected sequence, failed audit,
not collapsible, domain error), 2 inconclusive (search budget exhausted),
64 usage error (bad flags, unreadable or malformed input).

Verbs read their main input from a file flag or, when it is omitted, from
standard input, and accept the output of the previous verb, so that

    hellysat gen --n 6 --seed 3 | hellysat nerve | hellysat collapse \\
        | hellysat reduce | hellysat verify | hellysat replay-lemma

works as a pipeline.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from typing import Optional

from . import audit as audit_mod
from .certificate import certificate_rank, replay_lemma
from .collapse import DEFAULT_BUDGET, Status, find_collapse_sequence, sequence_from_json, sequence_to_json
from .complex_core import SimplicialComplex, VertexPartition
from .errors import HellySatError, NotCollapsibleOrUnknown
from .geometry import Box, gen_family, nerve
from .reduction import reduce_colorful, reduce_fractional
from .saturation import (
    DEFAULT_CAP,
    Hypergraph,
    SaturationInstance,
    StarPattern,
    closure,
    colorful_patterns,
    fractional_pattern,
    host_from_descriptor,
    verify_saturation_sequence,
    wsat_bruteforce,
)

log = logging.getLogger("hellysat")

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _read_json(path: Optional[str]):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path or 'stdin'}: {exc}") from exc


def _unwrap(doc, key):
    if isinstance(doc, dict) and key in doc:
        return doc[key]
    return doc


def _load(builder, doc, what):
    try:
        return builder(doc)
    except HellySatError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise UsageError(f"malformed {what} document: {exc}") from exc


_COMPLETE = re.compile(r"^k(\d+)(?:u(\d+))?$")
_PARTITE = re.compile(r"^k(\d+(?:x\d+)+)$")


def parse_host(spec: str) -> Hypergraph:
    """``k4`` is K_4, ``k5u3`` the complete 3-graph on 5, ``k3x3`` is K_{3,3}."""
    m = _COMPLETE.match(spec)
    if m:
        return Hypergraph.complete(int(m.group(1)), int(m.group(2) or 2))
    m = _PARTITE.match(spec)
    if m:
        return Hypergraph.complete_partite(VertexPartition.blocks(_ints(m.group(1).replace("x", ","))))
    return _load(host_from_descriptor, _read_json(spec), "host")


def _patterns(host: Hypergraph, m: Optional[str], r: Optional[str]) -> list[StarPattern]:
    if (m is None) == (r is None):
        raise UsageError("give exactly one of --m and --r")
    if host.partition is None:
        if m is not None:
            return [StarPattern(host.uniformity, int(m))]
        return [fractional_pattern(host.n, host.uniformity - 1, int(r))]
    sizes = host.partition.sizes
    if m is not None:
        ms = _ints(m)
        if len(ms) == 1:
            ms = ms * len(sizes)
        return [StarPattern(host.uniformity, mi, i) for i, mi in enumerate(ms)]
    return colorful_patterns(sizes, _ints(r))


def _complex_doc(args):
    doc = _read_json(args.complex)
    K = _load(SimplicialComplex.from_json, _unwrap(doc, "complex"), "complex")
    return doc, K


def _sequence_for(args, doc):
    if getattr(args, "sequence", None):
        return _load(sequence_from_json, _unwrap(_read_json(args.sequence), "sequence"), "sequence")
    if isinstance(doc, dict) and "sequence" in doc:
        return _load(sequence_from_json, doc["sequence"], "sequence")
    return None


def _d_for(args, doc, default=1):
    if args.d is not None:
        return args.d
    if isinstance(doc, dict) and "d" in doc:
        return int(doc["d"])
    return default


# -- verbs -------------------------------------------------------------------


def cmd_gen(args):
    fam = gen_family(args.kind, args.k, args.n, args.seed, args.max_overlap, grid=args.grid)
    return [b.to_json() for b in fam], EXIT_OK


def cmd_nerve(args):
    doc = _unwrap(_read_json(args.family), "family")
    if not isinstance(doc, list):
        raise UsageError("family document must be a JSON array of boxes")
    fam = [_load(Box.from_json, b, "box") for b in doc]
    return nerve(fam, args.max_size).to_json(), EXIT_OK


def cmd_collapse(args):
    doc, K = _complex_doc(args)
    d = _d_for(args, doc)
    out = find_collapse_sequence(K, d, args.mode, args.budget)
    log.info("collapse: %s after %d nodes", out.status.value, out.nodes)
    result = {"status": out.status.value, "d": d, "complex": K.to_json()}
    if out.sequence is not None:
        result["sequence"] = sequence_to_json(out.sequence)
    result["stats"] = {"nodes": out.nodes, "memoized": out.memoized}
    code = {Status.COLLAPSIBLE: EXIT_OK, Status.NOT_COLLAPSIBLE: EXIT_FAIL}.get(out.status, EXIT_UNKNOWN)
    return result, code


def _require_sequence(args, doc, K, d):
    seq = _sequence_for(args, doc)
    if seq is not None:
        return seq
    if isinstance(doc, dict) and doc.get("status") in ("not-collapsible", "unknown"):
        raise HellySatError(f"input complex is {doc['status']}; nothing to reduce")
    out = find_collapse_sequence(K, d, "exhaustive", args.budget)
    if out.status is Status.UNKNOWN:
        raise NotCollapsibleOrUnknown("collapse search budget exhausted", status="unknown")
    if out.status is Status.NOT_COLLAPSIBLE:
        raise NotCollapsibleOrUnknown(f"complex is not {d}-collapsible", status="not-collapsible")
    return out.sequence


def cmd_reduce(args):
    doc, K = _complex_doc(args)
    d = _d_for(args, doc)
    seq = _require_sequence(args, doc, K, d)
    return reduce_fractional(K, d, args.r, seq).to_json(), EXIT_OK


def cmd_reduce_colorful(args):
    doc, K = _complex_doc(args)
    P = _load(VertexPartition.from_json, _unwrap(_read_json(args.partition), "partition"), "partition")
    seq = _require_sequence(args, doc, K, len(P.parts) - 1)
    r_vec = _ints(args.r) if args.r else None
    return reduce_colorful(K, P, r_vec, seq).to_json(), EXIT_OK


def cmd_closure(args):
    H = _load(Hypergraph.from_json, _unwrap(_read_json(args.graph), "graph"), "hypergraph")
    if args.host:
        host = parse_host(args.host)
    elif H.partition is not None:
        host = Hypergraph.complete_partite(H.partition)
    else:
        host = Hypergraph.complete(H.n, H.uniformity)
    if H.partition is None and host.partition is not None:
        H = Hypergraph(H.n, H.uniformity, H.edges, host.partition)
    fam = _patterns(host, args.m, args.r)
    cl = closure(H, fam, host)
    saturated = cl.edges == host.edges
    result = {"saturated": saturated, "size": len(cl), "closure": cl.to_json()}
    return result, EXIT_OK if saturated else EXIT_FAIL


def _instance(args):
    doc = _unwrap(_read_json(args.instance), "instance")
    return _load(SaturationInstance.from_json, doc, "instance")


def cmd_verify(args):
    inst = _instance(args)
    rep = verify_saturation_sequence(inst)
    result = rep.to_json()
    result["instance"] = inst.to_json()
    return result, EXIT_OK if rep.ok else EXIT_FAIL


def cmd_replay_lemma(args):
    inst = _instance(args)
    rep = verify_saturation_sequence(inst)
    if not rep.ok:
        return {"ok": False, "index": rep.index, "reason": f"not a saturation sequence: {rep.reason}"}, EXIT_FAIL
    lem = replay_lemma(inst)
    return lem.to_json(), EXIT_OK if lem.ok else EXIT_FAIL


def cmd_wsat_min(args):
    host = parse_host(args.host)
    fam = _patterns(host, args.m, args.r)
    directed = any(p.color is not None for p in fam)
    k, start = wsat_bruteforce(host, fam, directed, cap=args.cap, jobs=args.jobs)
    return {"k": k, "optimal_start": [list(e) for e in start.sorted_edges()]}, EXIT_OK


def cmd_certificate(args):
    if args.host:
        host = parse_host(args.host)
    elif args.sizes:
        host = Hypergraph.complete_partite(VertexPartition.blocks(_ints(args.sizes)))
    elif args.n is not None and args.d is not None:
        host = Hypergraph.complete(args.n, args.d + 1)
    else:
        raise UsageError("give --host, --sizes, or both --n and --d")
    if args.r is None:
        raise UsageError("--r is required")
    d = host.uniformity - 1
    r = _ints(args.r) if host.partition is not None else int(args.r)
    return certificate_rank(host, d, r).to_json(), EXIT_OK


def cmd_audit(args):
    doc, K = _complex_doc(args)
    seq = _sequence_for(args, doc)
    try:
        if args.theorem == audit_mod.FRAC_HELLY:
            d = _d_for(args, doc)
            rep = audit_mod.fractional_helly_audit(K, d, args.r and int(args.r), seq, args.budget)
        else:
            if not args.partition:
                raise UsageError(f"{args.theorem} needs --partition")
            P = _load(VertexPartition.from_json, _unwrap(_read_json(args.partition), "partition"), "partition")
            if args.theorem == audit_mod.COLORFUL_FRAC_HELLY:
                r_vec = _ints(args.r) if args.r else None
                rep = audit_mod.colorful_fractional_audit(K, P, r_vec, seq, args.budget)
            else:
                rep = audit_mod.colorful_helly_audit(K, P, seq, args.budget)
    except NotCollapsibleOrUnknown as exc:
        status = exc.details.get("status")
        return ({"theorem": args.theorem, "pass": None, "status": status, "reason": str(exc)},
                EXIT_UNKNOWN if status == "unknown" else EXIT_FAIL)
    return rep.to_json(), EXIT_OK if rep.passed else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hellysat", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file of default option values")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    def verb(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = verb("gen", cmd_gen, "generate a seeded interval or box family")
    sp.add_argument("--kind", choices=["intervals", "boxes"], default="intervals")
    sp.add_argument("--k", type=int, default=1, help="axes for boxes")
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-overlap", type=int)
    sp.add_argument("--grid", type=int, default=256)

    sp = verb("nerve", cmd_nerve, "nerve of a box family")
    sp.add_argument("--family")
    sp.add_argument("--max-size", type=int)

    sp = verb("collapse", cmd_collapse, "search for a d-collapse sequence")
    sp.add_argument("--complex")
    sp.add_argument("--d", type=int)
    sp.add_argument("--mode", choices=["exhaustive", "greedy"], default="exhaustive")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    for name, func in (("reduce", cmd_reduce), ("reduce-colorful", cmd_reduce_colorful)):
        sp = verb(name, func, "collapse sequence to saturation sequence")
        sp.add_argument("--complex")
        sp.add_argument("--sequence")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "reduce":
            sp.add_argument("--d", type=int)
            sp.add_argument("--r", type=int)
        else:
            sp.add_argument("--partition", required=True)
            sp.add_argument("--r", help="comma-separated r_i")

    sp = verb("closure", cmd_closure, "bootstrap closure of a start hypergraph")
    sp.add_argument("--graph")
    sp.add_argument("--host")
    sp.add_argument("--m")
    sp.add_argument("--r")

    sp = verb("verify", cmd_verify, "check a saturation sequence with witnesses")
    sp.add_argument("--instance")

    sp = verb("replay-lemma", cmd_replay_lemma, "check the span never grows along a sequence")
    sp.add_argument("--instance")

    sp = verb("wsat-min", cmd_wsat_min, "brute-force weak saturation number")
    sp.add_argument("--host", required=True)
    sp.add_argument("--m")
    sp.add_argument("--r")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--jobs", type=int, default=1)

    sp = verb("certificate", cmd_certificate, "exact rank lower bound")
    sp.add_argument("--host")
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--sizes")
    sp.add_argument("--r")

    sp = verb("audit", cmd_audit, "check a Helly-type bound on a complex")
    sp.add_argument("--theorem", choices=[audit_mod.FRAC_HELLY, audit_mod.COLORFUL_FRAC_HELLY,
                                          audit_mod.COLORFUL_HELLY], required=True)
    sp.add_argument("--complex")
    sp.add_argument("--sequence")
    sp.add_argument("--partition")
    sp.add_argument("--d", type=int)
    sp.add_argument("--r")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    conf = _read_json(known.config)
    if not isinstance(conf, dict):
        raise UsageError("config must be a JSON object")
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sp in action.choices.values():
                dests = {a.dest for a in sp._actions}
                sp.set_defaults(**{k.replace("-", "_"): v for k, v in conf.items() if k.replace("-", "_") in dests})


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(name)s: %(message)s", stream=sys.stderr)
        if not getattr(args, "func", None):
            raise UsageError("a verb is required")
        result, code = args.func(args)
    except UsageError as exc:
        print(f"hellysat: usage error: {exc}", file=sys.stderr)
        json.dump({"error": "usage", "reason": str(exc)}, stdout)
        stdout.write("\n")
        return EXIT_USAGE
    except HellySatError as exc:
        log.error("%s", exc)
        status = exc.details.get("status")
        json.dump({"error": exc.code, "reason": str(exc)}, stdout)
        stdout.write("\n")
        return EXIT_UNKNOWN if status == "unknown" else EXIT_FAIL
    json.dump(result, stdout)
    stdout.write("\n")
    return code


def main():
    sys.exit(run())

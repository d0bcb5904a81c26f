"""Command-line interface.

Exit codes: 0 success or feasible, 1 infeasible (or demo mismatch), 2 input
parse error, 3 model violation, 4 verification failure, 5 disagreement
between the rank and enumeration secrecy checks.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import netcode
from .altpath import extract_witness, is_protected, w_sets
from .figures import DEMOS
from .generate import random_network
from .graph import KEYCAST, MULTICAST, GraphError, Instance, NoPath, block_decomposition, reachable_from
from .instance_io import InstanceFormatError, dumps_instance, load_instance, to_dot
from .keydist import synth_keycast
from .multicast import Infeasible, NoAvoidingPath, extend_to_keycast, synth_multicast

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_MODEL = 3
EXIT_VERIFY = 4
EXIT_DISAGREE = 5


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _load(path) -> Instance:
    try:
        return load_instance(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from exc
    except InstanceFormatError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    except GraphError as exc:
        raise CliError(f"model violation: {exc}", EXIT_MODEL) from exc


def _sorted(net, vs):
    return sorted(vs, key=net.index.__getitem__)


def _pairs(inst: Instance):
    net = inst.network
    terminals = _sorted(net, inst.terminals)
    if inst.mode == MULTICAST:
        sources = [inst.message_source]
    else:
        sources = [v for v in net.vertices if v not in inst.terminals]
    for s in sources:
        reach = reachable_from(net, s)
        for d in terminals:
            if d in reach:
                yield s, d


def _fmt_set(net, vs) -> str:
    return "{" + ", ".join(map(str, _sorted(net, vs))) + "}"


def analyze_report(inst: Instance, w_vertex=None) -> list[str]:
    net = inst.network
    lines = []
    for s, d in _pairs(inst):
        dec = block_decomposition(net, s, d)
        lines.append(f"pair ({s}, {d})")
        if not dec.cuts:
            lines.append("  no cut vertices")
        for u in dec.cuts:
            if is_protected(net, s, d, u):
                w = extract_witness(net, s, d, u)
                lines.append(f"  cut {u}: protected (ℓ={w.ell})")
            else:
                lines.append(f"  cut {u}: UNPROTECTED")
        for i, b in enumerate(dec.blocks, start=1):
            if b.kind == "type1":
                conn = f"edge {b.start}->{b.end}"
            else:
                conn = " | ".join("->".join(map(str, p)) for p in b.paths)
            lines.append(f"  block {i} {b.kind}: {_fmt_set(net, b.members)} via {conn}")
    if w_vertex is not None:
        net.check_vertex(w_vertex)
        sources = sorted({s for s, _ in _pairs(inst)} - {w_vertex}, key=net.index.__getitem__)
        for s in sources:
            wu, wsu, wbar = w_sets(net, s, w_vertex)
            lines.append(
                f"W-sets for ({s}, {w_vertex}): W_u={_fmt_set(net, wu)} "
                f"W_su={_fmt_set(net, wsu)} W_bar={_fmt_set(net, wbar)}"
            )
    return lines


def cmd_analyze(args) -> int:
    inst = _load(args.instance)
    try:
        lines = analyze_report(inst, args.w_sets)
    except GraphError as exc:
        raise CliError(str(exc), EXIT_MODEL) from exc
    print("\n".join(lines))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(inst.network))
    return EXIT_OK


def synthesize(inst: Instance, second_source=None):
    net = inst.network
    terminals = _sorted(net, inst.terminals)
    if inst.mode == MULTICAST:
        if second_source is not None:
            return extend_to_keycast(net, inst.message_source, second_source, terminals)
        return synth_multicast(net, inst.message_source, terminals)
    return synth_keycast(net, terminals)


def describe_infeasible(result: Infeasible) -> str:
    if result.cut is not None:
        return f"infeasible: cut {result.cut} is unprotected for ({result.source}, {result.terminal})"
    d = result.detail
    parts = [f"infeasible: {result.reason}"]
    if d.get("exposed"):
        parts.append("exposed vertices " + ", ".join(map(str, d["exposed"])))
    if "largest_size_examined" in d:
        parts.append(f"largest source-set size examined {d['largest_size_examined']}")
    return "; ".join(parts)


def cmd_synth(args) -> int:
    inst = _load(args.instance)
    try:
        result = synthesize(inst, args.second_source)
    except NoAvoidingPath as exc:
        print(f"infeasible: {exc}")
        return EXIT_INFEASIBLE
    except NoPath as exc:
        raise CliError(str(exc), EXIT_MODEL) from exc
    except GraphError as exc:
        raise CliError(str(exc), EXIT_MODEL) from exc
    if isinstance(result, Infeasible):
        print(describe_infeasible(result))
        return EXIT_INFEASIBLE
    net = inst.network
    verify_inst = inst if args.second_source is None else Instance(net, KEYCAST)
    report = netcode.verify(result, verify_inst)
    print(f"feasible: {len(result.basis)} symbols, key " + ", ".join(result.basis.format(k) for k in result.key))
    for k, (a, b) in enumerate(net.edges):
        payload = [result.basis.format(v) for v in result.payloads[k]]
        print(f"  {a}->{b}: " + ("; ".join(payload) if payload else "-"))
    print(report.summary())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(netcode.dumps(result, net) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load(args.instance)
    if args.keycast and inst.mode == MULTICAST:
        inst = Instance(inst.network, KEYCAST)
    try:
        with open(args.code, encoding="utf-8") as fh:
            code = netcode.loads(fh.read(), inst.network)
    except OSError as exc:
        raise CliError(f"cannot read {args.code}: {exc.strerror}", EXIT_PARSE) from exc
    except (json.JSONDecodeError, netcode.CodeError, ValueError) as exc:
        raise CliError(f"bad code file: {exc}", EXIT_PARSE) from exc
    report = netcode.verify(code, inst, bruteforce=args.bruteforce, max_symbols=args.max_symbols)
    print(report.summary())
    if report.disagreements:
        print("DEFECT: rank and enumeration secrecy verdicts disagree")
        return EXIT_DISAGREE
    if report.failures:
        for node, reason in report.failures:
            print(f"FAIL {node if node is not None else '-'}: {reason}")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        net = random_network(args.vertices, args.edge_prob, args.terminals, args.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    if args.mode == MULTICAST:
        terminals = set(net.terminals)
        source = next(
            (v for v in net.topological_order if v not in terminals and terminals <= reachable_from(net, v)),
            None,
        )
        if source is None:
            print("no vertex reaches every terminal", file=sys.stderr)
            return EXIT_INFEASIBLE
        inst = Instance(net, MULTICAST, source)
    else:
        inst = Instance(net, KEYCAST)
    text = dumps_instance(inst) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def run_demo(name: str) -> tuple[list[str], bool]:
    """Analyze and synthesize a built-in example; returns report lines and match flag."""
    demo = DEMOS[name]
    net = demo.network
    terminals = _sorted(net, net.terminals)
    lines = [f"{name}: {demo.note}"]
    ok = True

    def check(label, expected, actual):
        nonlocal ok
        good = expected == actual
        ok &= good
        lines.append(f"  {label}: expected {expected}, got {actual} [{'match' if good else 'MISMATCH'}]")

    for s in demo.sources:
        lines += ["  " + line for line in analyze_report(Instance(net, MULTICAST, s))]
        result = synth_multicast(net, s, terminals)
        feasible = not isinstance(result, Infeasible)
        check(f"multicast from {s}", demo.multicast_feasible[s], feasible)
        if s in demo.blocking_cuts:
            check(f"blocking cut for {s}", demo.blocking_cuts[s], getattr(result, "cut", None))
        if feasible and demo.second_source is not None:
            ext = extend_to_keycast(net, s, demo.second_source, terminals)
            check(
                f"key from extra bit at {demo.second_source}",
                "m + m'",
                ext.basis.format(ext.key[0]),
            )
    result = synth_keycast(net, terminals)
    feasible = not isinstance(result, Infeasible)
    check("keycast", demo.keycast_feasible, feasible)
    if demo.key is not None and feasible:
        check("key", demo.key, result.basis.format(result.key[0]))
    return lines, ok


def cmd_demo(args) -> int:
    lines, ok = run_demo(args.name)
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="keycast", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="cut vertices, protection status and blocks")
    a.add_argument("instance")
    a.add_argument("--w-sets", metavar="U", help="also print W-sets for vertex U")
    a.add_argument("--dot", metavar="PATH", help="write a Graphviz rendering")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("synth", help="synthesize a secure code")
    s.add_argument("instance")
    s.add_argument("-o", "--output", metavar="PATH", help="write the code as JSON")
    s.add_argument(
        "--second-source",
        metavar="V",
        help="multicast instances: turn the code into a key-cast with an extra bit from V",
    )
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="check a code against an instance")
    v.add_argument("instance")
    v.add_argument("code")
    v.add_argument("--bruteforce", action="store_true", help="also enumerate all symbol assignments")
    v.add_argument("--max-symbols", type=int, default=netcode.DEFAULT_MAX_SYMBOLS)
    v.add_argument("--keycast", action="store_true", help="treat a multicast instance as key-cast")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="random instance")
    g.add_argument("--vertices", type=int, required=True)
    g.add_argument("--edge-prob", type=float, required=True)
    g.add_argument("--terminals", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--mode", choices=(MULTICAST, KEYCAST), default=KEYCAST)
    g.add_argument("-o", "--output", metavar="PATH")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("demo", help="run a built-in example")
    d.add_argument("name", choices=sorted(DEMOS))
    d.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

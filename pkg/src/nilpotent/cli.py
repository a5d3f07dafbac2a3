"""Command-line entry point.

Exit codes: 0 success, 1 hypothesis or construction failure, 2 unreadable
input or bad parameters, 3 state cap or search budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from . import constructions as C
from .digraph import (
    SignedDigraph,
    admits_boolean_function,
    find_wheel,
    initial_components,
    is_primitive,
    loop_number,
    strongly_connected_components,
)
from .dynamics import DEFAULT_STATE_CAP, analyze, interaction_graph, is_G_function
from .errors import BadAlphabet, BadParam, CapExceeded, NilpotentError, ParseError
from .oracle import BUDGET, DEFAULT_BUDGET, DEFAULT_ORACLE_STATES, admits_nilpotent, min_nilpotent_class
from .textio import format_fds, format_graph, format_report, parse_fds, parse_graph

OK, FAILED, BAD_INPUT, EXCEEDED = 0, 1, 2, 3


def _extend_initial(G: SignedDigraph, alphabet: int) -> C.Construction:
    return C.extend_from_initial(G, C.default_component_functions(G, alphabet))


def _complete_loops(G: SignedDigraph, alphabet: int) -> C.Construction:
    if G.unsigned() != C.complete_loops(G.n).unsigned():
        raise BadParam("complete_loops needs the complete graph with a loop on every vertex")
    return C.complete_loops_class2(G.n)


METHODS: dict[str, Callable[..., C.Construction]] = {
    "four_letter": lambda G, q: C.nilpotent_4letter(G),
    "three_letter": lambda G, q: C.nilpotent_3letter(G),
    "three_letter_class2": lambda G, q: C.nilpotent_3letter_class2(G),
    "primitive_andnet": lambda G, q: C.primitive_andnet(G),
    "strong_loop": lambda G, q: C.strong_loop_nilpotent(G),
    "strong_wheel": lambda G, q: C.strong_wheel_nilpotent(G),
    "universal_class3": lambda G, q: C.universal_class3(G),
    "undirected_class3": lambda G, q: C.undirected_class3(G),
    "loops_added": lambda G, q: C.loops_added_nilpotent(G),
    "xor_class2": lambda G, q: C.xor_class2(G),
    "complete_loops": _complete_loops,
    "extend_initial": _extend_initial,
}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None, stream: TextIO) -> None:
    if out:
        Path(out).write_text(text)
    else:
        stream.write(text)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def cmd_construct(args: argparse.Namespace, out: TextIO) -> int:
    G = parse_graph(_read(args.graph))
    con = METHODS[args.method](G, args.alphabet)
    _emit(format_fds(con.fds), args.out, out)
    cert = con.certificate
    out.write(f"method {cert.method}\nbound {cert.claimed_bound}\nsigned_match {_bool(cert.signed_match)}\n")
    if not args.verify:
        return OK
    rep = analyze(con.fds, args.max_states)
    out.write(format_report(rep))
    matches = is_G_function(con.fds, con.graph, signed=cert.signed_match)
    out.write(f"graph_match {_bool(matches)}\n")
    good = rep.nilpotent and rep.class_ <= cert.claimed_bound and matches
    out.write(f"verified {_bool(good)}\n")
    return OK if good else FAILED


def cmd_analyze(args: argparse.Namespace, out: TextIO) -> int:
    f = parse_fds(_read(args.function))
    out.write(format_report(analyze(f, args.max_states)))
    return OK


def cmd_igraph(args: argparse.Namespace, out: TextIO) -> int:
    f = parse_fds(_read(args.function))
    _emit(format_graph(interaction_graph(f)), args.out, out)
    return OK


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    G = parse_graph(_read(args.graph))
    search = admits_nilpotent if args.first else min_nilpotent_class
    v = search(G, args.alphabet, signed=args.signed, budget=args.budget, max_class=args.max_class,
               max_states=args.max_states)
    out.write(f"verdict {v.outcome}\n")
    out.write(f"min_class {v.min_class if v.min_class is not None else '-'}\n")
    out.write(f"examined {v.functions_examined}\n")
    out.write(f"space {v.space_size}\n")
    if v.witness is not None:
        _emit(format_fds(v.witness), args.out, out)
    return EXCEEDED if v.outcome == BUDGET else OK


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    _emit(format_graph(C.gen_family(args.family, *args.params)), args.out, out)
    return OK


def cmd_check_graph(args: argparse.Namespace, out: TextIO) -> int:
    G = parse_graph(_read(args.graph))
    strong = G.is_strong()
    lines = [
        f"n {G.n}",
        f"arcs {G.num_arcs}",
        f"strong {_bool(strong)}",
        f"strong_components {len(strongly_connected_components(G))}",
        f"initial_components {len(initial_components(G))}",
        f"symmetric {_bool(G.is_symmetric())}",
        f"loops {sum(G.has_loop(v) for v in G.vertices)}",
        f"loop_number {loop_number(G) if strong and G.num_arcs else '-'}",
        f"primitive {_bool(is_primitive(G))}",
    ]
    w = find_wheel(G)
    lines.append(f"wheel {w.center} {' '.join(map(str, w.cycle))}" if w else "wheel -")
    lines.append(f"admits_boolean_function {_bool(admits_boolean_function(G))}")
    out.write("\n".join(lines) + "\n")
    return OK


def cmd_verify_table(args: argparse.Namespace, out: TextIO) -> int:
    from .table import table_rows

    failures = 0
    for row in table_rows(args.size_limit):
        ok, note = row.check()
        failures += not ok
        out.write(f"{'PASS' if ok else 'FAIL'} {row.name}: {note}\n")
    return OK if failures == 0 else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilpotent", description="Nilpotent finite dynamical systems on signed digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a nilpotent G-function")
    c.add_argument("method", choices=sorted(METHODS))
    c.add_argument("-g", "--graph", required=True)
    c.add_argument("-o", "--out")
    c.add_argument("--alphabet", type=int, default=3, help="alphabet size for extend_initial")
    c.add_argument("--verify", action="store_true")
    c.add_argument("--max-states", type=int, default=DEFAULT_STATE_CAP)
    c.set_defaults(run=cmd_construct)

    a = sub.add_parser("analyze", help="exhaustive nilpotency check and class")
    a.add_argument("-f", "--function", required=True)
    a.add_argument("--max-states", type=int, default=DEFAULT_STATE_CAP)
    a.set_defaults(run=cmd_analyze)

    ig = sub.add_parser("igraph", help="interaction graph of a system")
    ig.add_argument("-f", "--function", required=True)
    ig.add_argument("-o", "--out")
    ig.set_defaults(run=cmd_igraph)

    o = sub.add_parser("oracle", help="search every G-function of a small graph")
    o.add_argument("-g", "--graph", required=True)
    o.add_argument("-o", "--out", help="write the witness here")
    o.add_argument("--alphabet", type=int, default=2)
    sign = o.add_mutually_exclusive_group()
    sign.add_argument("--signed", dest="signed", action="store_true", default=True)
    sign.add_argument("--unsigned", dest="signed", action="store_false")
    o.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    o.add_argument("--max-states", type=int, default=DEFAULT_ORACLE_STATES)
    o.add_argument("--max-class", type=int)
    o.add_argument("--first", action="store_true", help="stop at the first nilpotent system")
    o.set_defaults(run=cmd_oracle)

    g = sub.add_parser("gen", help="generate a standard family")
    g.add_argument("family", choices=sorted(C.FAMILIES))
    g.add_argument("params", type=int, nargs="*")
    g.add_argument("-o", "--out")
    g.set_defaults(run=cmd_gen)

    cg = sub.add_parser("check-graph", help="structural facts about a graph")
    cg.add_argument("-g", "--graph", required=True)
    cg.set_defaults(run=cmd_check_graph)

    vt = sub.add_parser("verify-table", help="check the summary table at desk scale")
    vt.add_argument("--size-limit", type=int, default=6)
    vt.set_defaults(run=cmd_verify_table)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.run(args, out)
    except (ParseError, BadParam, BadAlphabet) as exc:
        err.write(f"error: {exc}\n")
        return BAD_INPUT
    except CapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXCEEDED
    except NilpotentError as exc:
        err.write(f"error: {exc}\n")
        return FAILED


def main() -> None:
    sys.exit(run())

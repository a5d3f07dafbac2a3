"""Desk-scale instances of the existence/upper-bound summary table.

Each row pairs a digraph class with an alphabet size and either "no nilpotent
function" (checked by the oracle) or an upper bound (checked by running the
matching construction through ``analyze``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from . import constructions as C
from .digraph import SignedDigraph
from .dynamics import analyze, is_G_function
from .oracle import NONE, min_nilpotent_class


@dataclass
class TableRow:
    name: str
    check: Callable[[], tuple[bool, str]]


def _bounded(build: Callable[[Any], C.Construction], items: list[Any],
             bound: Callable[[int], int]) -> Callable[[], tuple[bool, str]]:
    def check() -> tuple[bool, str]:
        seen = []
        for item in items:
            con = build(item)
            rep = analyze(con.fds)
            n = con.graph.n
            limit = bound(n)
            fits = con.bound <= limit and is_G_function(con.fds, con.graph, con.certificate.signed_match)
            if not (rep.nilpotent and rep.class_ <= limit and fits):
                return False, f"n={n}: class {rep.class_} against bound {limit}"
            seen.append(f"{rep.class_}/{limit}")
        return True, "class/bound " + " ".join(seen)

    return check


def _absent(graphs: list[SignedDigraph], signed: bool) -> Callable[[], tuple[bool, str]]:
    def check() -> tuple[bool, str]:
        for G in graphs:
            v = min_nilpotent_class(G, 2, signed=signed)
            if v.outcome != NONE:
                return False, f"n={G.n}: oracle says {v.outcome}"
        return True, f"no nilpotent function on {len(graphs)} graphs"

    return check


def _samples(limit: int) -> list[SignedDigraph]:
    base = [
        SignedDigraph(2, [(1, 2, "+"), (2, 1, "-")]),
        SignedDigraph(3, [(1, 2, "0"), (2, 3, "-"), (3, 1, "+"), (3, 3, "0")]),
        SignedDigraph(4, [(1, 2, "0"), (2, 3, "+"), (3, 2, "+"), (2, 4, "+"), (4, 2, "+")]),
        C.tight_full(1),
        C.tight_general(5),
        C.tight_general(6),
    ]
    return [G for G in base if G.n <= limit]


def _log_bound(n: int) -> int:
    return n.bit_length() + 1


def table_rows(limit: int = 6) -> list[TableRow]:
    """Instances with at most ``limit`` vertices (the four-letter row uses at most 4)."""
    small = [G for G in _samples(limit) if G.n <= 4]
    three = [G for G in _samples(limit) if G.n <= min(limit, 6)]
    signed_only = [
        G for G in (
            SignedDigraph(2, [(1, 2, "+"), (2, 1, "-"), (1, 1, "-")]),
            SignedDigraph(3, [(1, 2, "+"), (2, 3, "-"), (3, 1, "+"), (2, 2, "-")]),
        ) if G.n <= limit
    ]
    same_sign = [G for G in (
        SignedDigraph(2, [(1, 2, "+"), (2, 1, "+")]),
        SignedDigraph(2, [(1, 2, "+"), (2, 1, "-")]),
        SignedDigraph(3, [(1, 2, "+"), (2, 1, "+"), (2, 3, "+"), (3, 2, "+")]),
        SignedDigraph(3, [(1, 1, "-"), (1, 2, "-"), (2, 1, "+")]),
    ) if G.n <= limit]
    cycles = [C.cycle(n) for n in range(2, limit + 1) if n <= 5]
    nondiv = [C.double_cycle(l, r) for l, r in ((2, 3), (3, 2), (3, 4)) if l + r - 1 <= limit]
    div = [(l, r) for l, r in ((1, 2), (2, 2), (2, 4), (1, 5), (3, 3)) if l + r - 1 <= limit]
    prim = [G for G in (
        SignedDigraph(4, list(C.double_cycle(2, 3).arc_pairs()) + [(3, 1)]),
        SignedDigraph(3, list(C.cycle(3).arc_pairs()) + [(1, 1), (2, 1)]),
    ) if G.n <= limit]
    looped = [G for G in (C.double_cycle(1, 4), C.double_cycle(1, 3), C.wheel_good_arc(2)) if G.n <= limit]
    hub = [C.complete(n) for n in range(3, min(limit, 5) + 1)]
    undirected = [G for G in (
        SignedDigraph(3, [(1, 2), (2, 1), (2, 3), (3, 2)]),
        SignedDigraph(4, [(1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3), (4, 1), (1, 4)]),
        SignedDigraph(5, [(1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3), (4, 5), (5, 4)]),
        C.complete(4),
    ) if G.n <= limit]
    min_in_one = [G for G in (C.cycle(3), C.cycle(4), SignedDigraph(3, [(1, 2), (2, 3), (3, 1), (1, 3)])) if G.n <= limit]
    symmetric = [G for G in (C.complete(3), undirected[0] if undirected else C.complete(3)) if G.n <= limit]
    with_hub = [G for G in (
        SignedDigraph(3, [(1, 2), (1, 3), (2, 3), (3, 1)]),
        SignedDigraph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 1)]),
    ) if G.n <= limit]

    return [
        TableRow("signed digraphs, |A| >= 4, class <= 2",
                 _bounded(C.nilpotent_4letter, small, lambda n: 2)),
        TableRow("signed digraphs, |A| = 3, class <= floor(log2 n) + 2",
                 _bounded(C.nilpotent_3letter, three, _log_bound)),
        TableRow("all arcs signed, |A| = 3, class <= 2",
                 _bounded(C.nilpotent_3letter_class2, signed_only, lambda n: 2)),
        TableRow("strong, all cycles of one sign, |A| = 2: none",
                 _absent(same_sign, signed=True)),
        TableRow("cycles C_n, |A| = 2: none", _absent(cycles, signed=False)),
        TableRow("double cycles, min does not divide max, |A| = 2: none", _absent(nondiv, signed=False)),
        TableRow("double cycles, min divides max, class <= 2n - 1",
                 _bounded(lambda lr: C.double_cycle_function(*lr), div, lambda n: 2 * n - 1)),
        TableRow("primitive spanning strict subgraph, class <= n^2 - 2n + 3",
                 _bounded(C.primitive_andnet, prim, lambda n: n * n - 2 * n + 3)),
        TableRow("strong with a loop or a wheel, class <= 2n - 1",
                 _bounded(_loop_or_wheel, looped, lambda n: 2 * n - 1)),
        TableRow("loop-less, min in-degree >= 2, a hub, class <= 3",
                 _bounded(C.universal_class3, hub, lambda n: 3)),
        TableRow("connected symmetric loop-less, n >= 3, class <= 3",
                 _bounded(C.undirected_class3, undirected, lambda n: 3)),
        TableRow("loop on each vertex, min in-degree >= 2, class <= 4",
                 _bounded(C.loops_added_nilpotent, min_in_one, lambda n: 4)),
        TableRow("symmetric with a loop on each vertex, class <= 3",
                 _bounded(C.loops_added_nilpotent, symmetric, lambda n: 3)),
        TableRow("loop on each vertex and a vertex of out-degree n, class <= 3",
                 _bounded(C.loops_added_nilpotent, with_hub, lambda n: 3)),
        TableRow("complete with a loop on each vertex, class <= 2",
                 _bounded(C.complete_loops_class2, list(range(2, min(limit, 5) + 1)), lambda n: 2)),
    ]


def _loop_or_wheel(G: SignedDigraph) -> C.Construction:
    if any(G.has_loop(v) for v in G.vertices):
        return C.strong_loop_nilpotent(G)
    return C.strong_wheel_nilpotent(G)


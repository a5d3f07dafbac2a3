"""Line-oriented text formats for graphs, systems and reports.

Graph::

    n 3
    arc 1 2 +
    arc 2 3 0

System::

    fds
    alphabet 3
    n 2
    inputs 1 2
    table 1 0 0 2
    inputs 2
    table 2 1

``#`` starts a comment line. Writers emit a canonical form so that a file
written, read and written again is byte-identical.
"""

from __future__ import annotations

from typing import Iterable

from .digraph import SIGNS, SignedDigraph
from .dynamics import FDS, DynamicsReport
from .errors import NilpotentError, ParseError


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse_graph(text: str) -> SignedDigraph:
    n = None
    arcs = []
    for lineno, toks in _lines(text):
        key = toks[0]
        if key == "n":
            if n is not None or len(toks) != 2:
                raise ParseError(f"line {lineno}: malformed or repeated 'n' header")
            n = _int(toks[1], lineno)
            if n < 1:
                raise ParseError(f"line {lineno}: vertex count must be at least 1")
        elif key == "arc":
            if n is None:
                raise ParseError(f"line {lineno}: 'arc' before the 'n' header")
            if len(toks) != 4 or toks[3] not in SIGNS:
                raise ParseError(f"line {lineno}: expected 'arc <u> <v> <+|-|0>'")
            arcs.append((_int(toks[1], lineno), _int(toks[2], lineno), toks[3]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {key!r}")
    if n is None:
        raise ParseError("missing 'n' header")
    try:
        return SignedDigraph(n, arcs)
    except NilpotentError as exc:
        raise ParseError(str(exc)) from exc


def format_graph(G: SignedDigraph) -> str:
    out = [f"n {G.n}"]
    out += [f"arc {u} {v} {s}" for u, v, s in G.arcs]
    return "\n".join(out) + "\n"


def parse_fds(text: str) -> FDS:
    lines = list(_lines(text))
    if not lines or lines[0][1] != ["fds"]:
        raise ParseError("system files start with 'fds'")
    q = n = None
    inputs: dict[int, tuple[int, ...]] = {}
    tables: dict[int, tuple[int, ...]] = {}
    for lineno, toks in lines[1:]:
        key = toks[0]
        if key == "alphabet" and len(toks) == 2:
            q = _int(toks[1], lineno)
        elif key == "n" and len(toks) == 2:
            n = _int(toks[1], lineno)
        elif key in ("inputs", "table") and len(toks) >= 2:
            i = _int(toks[1], lineno)
            vals = tuple(_int(t, lineno) for t in toks[2:])
            target = inputs if key == "inputs" else tables
            if i in target:
                raise ParseError(f"line {lineno}: repeated '{key}' for component {i}")
            target[i] = vals
        else:
            raise ParseError(f"line {lineno}: unknown or malformed directive {key!r}")
    if q is None or n is None:
        raise ParseError("missing 'alphabet' or 'n' header")
    if n < 1:
        raise ParseError("component count must be at least 1")
    for i in range(1, n + 1):
        if i not in tables:
            raise ParseError(f"no table for component {i}")
    extra = (set(inputs) | set(tables)) - set(range(1, n + 1))
    if extra:
        raise ParseError(f"components {sorted(extra)} outside 1..{n}")
    try:
        return FDS(q, tuple(inputs.get(i, ()) for i in range(1, n + 1)), tuple(tables[i] for i in range(1, n + 1)))
    except NilpotentError as exc:
        raise ParseError(str(exc)) from exc


def format_fds(f: FDS) -> str:
    out = ["fds", f"alphabet {f.q}", f"n {f.n}"]
    for i in range(1, f.n + 1):
        out.append(" ".join(["inputs", str(i), *map(str, f.inputs[i - 1])]))
        out.append(" ".join(["table", str(i), *map(str, f.tables[i - 1])]))
    return "\n".join(out) + "\n"


def _bool(b: bool) -> str:
    return "true" if b else "false"


def format_report(r: DynamicsReport) -> str:
    fp = " ".join(map(str, r.fixed_point)) if r.fixed_point is not None else "-"
    out = [
        f"nilpotent {_bool(r.nilpotent)}",
        f"class {r.class_ if r.class_ is not None else '-'}",
        f"fixed_point {fp}",
        f"states {r.state_count}",
    ]
    if not r.nilpotent:
        out.append(f"fixed_points {r.fixed_points}")
        out.append(f"cyclic_states {r.cyclic_states}")
    return "\n".join(out) + "\n"


def parse_report(text: str) -> dict[str, str]:
    """Key/value view of a report; used by round-trip tests and scripts."""
    out = {}
    for _, toks in _lines(text):
        out[toks[0]] = " ".join(toks[1:])
    return out

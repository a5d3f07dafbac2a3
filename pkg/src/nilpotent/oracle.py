"""Exhaustive search over every G-function of a small signed digraph.

Each component ranges over the lookup tables that depend essentially on every
in-neighbour with the prescribed sign. The product of these sets is walked in
mixed-radix order (component 1 most significant, each component's tables in
lexicographic order). Successor maps for a whole chunk of candidate systems are
summed from per-component contribution arrays and classified in one call to
``batch_classes``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .digraph import NEG, NULL, POS, SignedDigraph, initial_components
from .dynamics import FDS, Alphabet, analyze, batch_classes, interaction_graph
from .errors import CapExceeded

DEFAULT_BUDGET = 10**8
DEFAULT_ORACLE_STATES = 2**16
# raw table space scanned when filtering local functions
TABLE_SPACE_CAP = 2**24
# entries of the (candidates x states) successor block handled at once
CHUNK_ENTRIES = 2**22

EXISTS, NONE, BUDGET = "exists", "none", "budget"


@dataclass(frozen=True)
class OracleVerdict:
    """Outcome of a search.

    ``min_class`` and ``witness`` describe the best system seen: the
    minimum over the whole space for ``exists``, the best so far for
    ``budget``. First-hit searches report the class of the first hit.
    """

    outcome: str
    min_class: int | None
    witness: FDS | None
    functions_examined: int
    budget: int
    space_size: int

    @property
    def exists(self) -> bool:
        return self.outcome == EXISTS


def _alphabet_size(A: int | Alphabet) -> int:
    return A.size if isinstance(A, Alphabet) else Alphabet(int(A)).size


def _sign_mask(T: np.ndarray, q: int, k: int, t: int, sign: str | None) -> np.ndarray:
    idx = np.arange(q**k)
    w = q ** (k - 1 - t)
    lo = idx[(idx // w) % q < q - 1]
    diff = T[:, lo + w].astype(np.int16) - T[:, lo]
    essential = (diff != 0).any(axis=1)
    up = (diff >= 0).all(axis=1)
    down = (diff <= 0).all(axis=1)
    if sign is None:
        return essential
    if sign == POS:
        return essential & up
    if sign == NEG:
        return essential & down
    if sign == NULL:
        return essential & ~up & ~down
    raise ValueError(f"unknown sign {sign!r}")


@lru_cache(maxsize=256)
def _local_tables(k: int, signs: tuple[str | None, ...], q: int) -> np.ndarray:
    rows = q**k
    space = q**rows
    if space > TABLE_SPACE_CAP:
        raise CapExceeded(f"{space} raw tables for in-degree {k} over {q} letters", required=space)
    found = []
    step = max(1, CHUNK_ENTRIES // max(1, rows))
    for start in range(0, space, step):
        code = np.arange(start, min(space, start + step), dtype=np.int64)
        T = np.empty((code.size, rows), dtype=np.int8)
        for col in range(rows):
            T[:, col] = (code // q ** (rows - 1 - col)) % q
        keep = np.ones(code.size, dtype=bool)
        for t, s in enumerate(signs):
            keep &= _sign_mask(T, q, k, t, s)
        found.append(T[keep])
    out = np.concatenate(found) if found else np.zeros((0, rows), dtype=np.int8)
    out.setflags(write=False)
    return out


def enumerate_local_functions(k: int, signs: Sequence[str | None], A: int | Alphabet) -> Iterator[tuple[int, ...]]:
    """Tables ``A^k -> A`` depending essentially on each input with its sign.

    ``None`` in ``signs`` accepts any essential dependence. Tables come in
    lexicographic order.
    """
    q = _alphabet_size(A)
    signs = tuple(signs)
    if len(signs) != k:
        raise ValueError(f"{len(signs)} signs for {k} inputs")
    for row in _local_tables(k, signs, q):
        yield tuple(int(v) for v in row)


def count_local_functions(k: int, signs: Sequence[str | None], A: int | Alphabet) -> int:
    return int(_local_tables(k, tuple(signs), _alphabet_size(A)).shape[0])


class _Space:
    """Candidate tables and their successor-map contributions per component."""

    def __init__(self, G: SignedDigraph, q: int, signed: bool, max_states: int) -> None:
        n = G.n
        N = q**n
        if N > max_states:
            raise CapExceeded(f"{N} states exceed the oracle cap of {max_states}", required=N)
        self.G, self.q, self.n, self.N = G, q, n, N
        self.inputs = [G.in_neighbors(i) for i in G.vertices]
        states = np.arange(N, dtype=np.int64)
        digits = [(states // q ** (n - j)) % q for j in range(1, n + 1)]
        self.tables: list[np.ndarray] = []
        self.contrib: list[np.ndarray] = []
        for i in G.vertices:
            ins = self.inputs[i - 1]
            signs = tuple(G.sign(j, i) if signed else None for j in ins)
            T = _local_tables(len(ins), signs, q)
            idx = np.zeros(N, dtype=np.int64)
            for j in ins:
                idx = idx * q + digits[j - 1]
            self.tables.append(T)
            self.contrib.append((T[:, idx].astype(np.int32)) * q ** (n - i))
        self.sizes = [t.shape[0] for t in self.tables]
        self.total = 1
        for s in self.sizes:
            self.total *= s

    def chunks(self, limit: int) -> Iterator[tuple[int, np.ndarray]]:
        """``(first index, successor block)`` over the first ``limit`` systems."""
        B = max(1, CHUNK_ENTRIES // self.N)
        radix = [1] * self.n
        for i in range(self.n - 2, -1, -1):
            radix[i] = radix[i + 1] * self.sizes[i + 1]
        # digits above the scanned range are zero; keep numpy arithmetic in int64
        radix = [min(r, 2**62) for r in radix]
        for start in range(0, limit, B):
            code = np.arange(start, min(limit, start + B), dtype=np.int64)
            succ = np.zeros((code.size, self.N), dtype=np.int32)
            for i in range(self.n):
                succ += self.contrib[i][(code // radix[i]) % self.sizes[i]]
            yield start, succ

    def system(self, index: int) -> FDS:
        picks = []
        for i in range(self.n - 1, -1, -1):
            index, d = divmod(index, self.sizes[i])
            picks.append(d)
        picks.reverse()
        tabs = tuple(tuple(int(v) for v in self.tables[i][d]) for i, d in enumerate(picks))
        return FDS(self.q, tuple(self.inputs), tabs)


def _search(G: SignedDigraph, A: int | Alphabet, signed: bool, budget: int, max_class: int | None,
            max_states: int, first_hit: bool) -> OracleVerdict:
    q = _alphabet_size(A)
    space = _Space(G, q, signed, max_states)
    if space.total == 0:
        return OracleVerdict(NONE, None, None, 0, budget, 0)
    limit = min(space.total, budget)
    best: tuple[int, int] | None = None
    examined = 0
    for start, succ in space.chunks(limit):
        cap = max_class
        if best is not None:
            cap = best[0] - 1 if cap is None else min(cap, best[0] - 1)
            if cap < 1:
                break
        classes = batch_classes(succ, cap)
        examined = start + succ.shape[0]
        hits = np.flatnonzero(classes > 0)
        if hits.size:
            if first_hit:
                best = (int(classes[hits[0]]), start + int(hits[0]))
                break
            pos = hits[np.argmin(classes[hits])]
            best = (int(classes[pos]), start + int(pos))
            if best[0] == 1:
                break
    covered = examined >= space.total
    if best is not None:
        witness = space.system(best[1])
        # a class-1 hit cannot be beaten, so stopping there is still exhaustive
        if first_hit or covered or best[0] == 1:
            return OracleVerdict(EXISTS, best[0], witness, examined, budget, space.total)
        return OracleVerdict(BUDGET, best[0], witness, examined, budget, space.total)
    if covered:
        return OracleVerdict(NONE, None, None, examined, budget, space.total)
    return OracleVerdict(BUDGET, None, None, examined, budget, space.total)

def min_nilpotent_class(G: SignedDigraph, A: int | Alphabet = 2, signed: bool = True, budget: int = DEFAULT_BUDGET,
                        max_class: int | None = None, max_states: int = DEFAULT_ORACLE_STATES) -> OracleVerdict:
    """Smallest class of a nilpotent G-function, over the whole space.

    With ``max_class`` only systems of class at most that value count, so
    ``none`` then means no such system exists.
    """
    return _search(G, A, signed, int(budget), max_class, max_states, first_hit=False)


def admits_nilpotent(G: SignedDigraph, A: int | Alphabet = 2, signed: bool = True, budget: int = DEFAULT_BUDGET,
                     max_class: int | None = None, max_states: int = DEFAULT_ORACLE_STATES,
                     decompose: bool = True) -> OracleVerdict:
    """Stop at the first nilpotent G-function in enumeration order.

    For unsigned boolean questions without a class limit, a digraph that is
    not strong is answered from its initial strong components alone: it
    admits a nilpotent function iff each of them does, and the witness is
    extended from theirs.
    """
    comps = initial_components(G)
    q = _alphabet_size(A)
    if decompose and not signed and q == 2 and max_class is None and not G.is_strong():
        return _admits_from_components(G, comps, budget, max_states)
    return _search(G, A, signed, int(budget), max_class, max_states, first_hit=True)


def _admits_from_components(G: SignedDigraph, comps: list[tuple[int, ...]], budget: int,
                            max_states: int) -> OracleVerdict:
    from .constructions.nonboolean import extend_from_initial

    examined = 0
    witnesses = []
    signs: dict[tuple[int, int], str] = {a: POS for a in G.arc_pairs()}
    for comp in comps:
        sub, index = G.induced(comp)
        v = _search(sub, 2, False, int(budget), None, max_states, first_hit=True)
        examined += v.functions_examined
        if v.outcome != EXISTS:
            return OracleVerdict(v.outcome, None, None, examined, budget, v.space_size)
        back = {k: u for u, k in index.items()}
        for s_, t_, sign in interaction_graph(v.witness).arcs:
            signs[(back[s_], back[t_])] = sign
        witnesses.append(v.witness)
    signed_G = G.with_signs(signs)
    f = extend_from_initial(signed_G, witnesses).fds
    rep = analyze(f, max_states)
    return OracleVerdict(EXISTS, rep.class_, f, examined, budget, 0)

"""Finite dynamical systems ``f: A^n -> A^n`` and their exhaustive analysis.

A system is stored as one lookup table per component. Component ``i`` reads
the variables listed in ``inputs[i-1]`` (ascending); its table is indexed by
the mixed-radix number of those variables, first input most significant.

States are packed into integers in base ``|A|`` with ``x_1`` most
significant, so the whole state space is ``range(|A|**n)`` and a successor
map is a flat integer array.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .digraph import NEG, NULL, POS, SignedDigraph
from .errors import BadAlphabet, BadParam, CapExceeded, DimensionMismatch

DEFAULT_STATE_CAP = 2**27

LocalRule = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Alphabet:
    """The integer interval ``{0, ..., size - 1}``."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 2:
            raise BadAlphabet(f"alphabet needs at least two letters, got {self.size}")

    @property
    def s(self) -> int:
        return self.size - 1


def _state_dtype(count: int):
    return np.int32 if count < 2**31 else np.int64


def input_digits(q: int, k: int) -> np.ndarray:
    """All ``q**k`` assignments of ``k`` variables as rows, in table order."""
    idx = np.arange(q**k, dtype=np.int64)
    cols = [(idx // q ** (k - 1 - t)) % q for t in range(k)]
    if not cols:
        return np.zeros((1, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


@dataclass(frozen=True, eq=True)
class FiniteDynamicalSystem:
    q: int
    inputs: tuple[tuple[int, ...], ...]
    tables: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        Alphabet(self.q)
        if not self.inputs:
            raise BadParam("a system needs at least one component")
        if len(self.inputs) != len(self.tables):
            raise BadParam("one table per component is required")
        n = len(self.inputs)
        for i, (ins, tab) in enumerate(zip(self.inputs, self.tables), start=1):
            if any(b <= a for a, b in zip(ins, ins[1:])):
                raise BadParam(f"inputs of component {i} must be strictly ascending")
            if any(not 1 <= j <= n for j in ins):
                raise BadParam(f"component {i} reads a variable outside 1..{n}")
            if len(tab) != self.q ** len(ins):
                raise BadParam(f"table of component {i} has length {len(tab)}, expected {self.q ** len(ins)}")
            if any(not 0 <= v < self.q for v in tab):
                raise BadParam(f"table of component {i} has a value outside the alphabet")

    @classmethod
    def from_rules(
        cls, q: int, inputs: Sequence[Sequence[int]], rules: Sequence[LocalRule]
    ) -> FiniteDynamicalSystem:
        """Tabulate vectorised local rules.

        ``rules[i](X)`` receives the ``(q**k, k)`` array of input assignments
        (column ``t`` holds the variable ``inputs[i][t]``) and returns the
        component's values.
        """
        ins = tuple(tuple(sorted(x)) for x in inputs)
        tabs = []
        for inp, rule in zip(ins, rules):
            X = input_digits(q, len(inp))
            vals = np.broadcast_to(np.asarray(rule(X), dtype=np.int64), (X.shape[0],))
            tabs.append(tuple(int(v) for v in vals))
        return cls(q, ins, tuple(tabs))

    @property
    def n(self) -> int:
        return len(self.inputs)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.q)

    @property
    def state_count(self) -> int:
        return self.q**self.n

    @cached_property
    def table_arrays(self) -> tuple[np.ndarray, ...]:
        return tuple(np.asarray(t, dtype=np.int64) for t in self.tables)

    # -- state encoding --------------------------------------------------

    def encode(self, x: Sequence[int]) -> int:
        if len(x) != self.n:
            raise DimensionMismatch(f"state has {len(x)} entries, expected {self.n}")
        code = 0
        for v in x:
            if not 0 <= v < self.q:
                raise BadParam(f"state entry {v} outside the alphabet")
            code = code * self.q + int(v)
        return code

    def decode(self, state: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            state, r = divmod(state, self.q)
            out.append(r)
        return tuple(reversed(out))

    def local(self, i: int, x: Sequence[int]) -> int:
        """Value of component ``i`` (1-based) at the unpacked state ``x``."""
        idx = 0
        for j in self.inputs[i - 1]:
            idx = idx * self.q + x[j - 1]
        return self.tables[i - 1][idx]

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.local(i, x) for i in range(1, self.n + 1))

    # -- whole state space ----------------------------------------------

    def successor_map(self, state_cap: int = DEFAULT_STATE_CAP) -> np.ndarray:
        """``succ[x] = f(x)`` for every packed state ``x``."""
        count = self.state_count
        if count > state_cap:
            raise CapExceeded(f"{count} states exceed the cap of {state_cap}", required=count)
        dtype = _state_dtype(count)
        states = np.arange(count, dtype=np.int64)
        q, n = self.q, self.n
        digit_cache: dict[int, np.ndarray] = {}

        def digit(j: int) -> np.ndarray:
            if j not in digit_cache:
                d = (states // q ** (n - j)) % q
                # keep a few columns around; the full matrix can be huge
                if len(digit_cache) < 8:
                    digit_cache[j] = d
                return d
            return digit_cache[j]

        succ = np.zeros(count, dtype=np.int64)
        for i in range(1, n + 1):
            idx = np.zeros(count, dtype=np.int64)
            for j in self.inputs[i - 1]:
                idx *= q
                idx += digit(j)
            succ += self.table_arrays[i - 1][idx] * q ** (n - i)
        return succ.astype(dtype, copy=False)


FDS = FiniteDynamicalSystem


def evaluate(f: FDS, x: int) -> int:
    """One synchronous update of the packed state ``x``."""
    return f.encode(f.apply(f.decode(x)))


def iterate(f: FDS, x: int, k: int) -> int:
    """``f^k(x)``; ``k = 0`` returns ``x``."""
    if k < 0:
        raise BadParam("iteration count must be non-negative")
    y = f.decode(x)
    for _ in range(k):
        y = f.apply(y)
    return f.encode(y)


# ---------------------------------------------------------------------------
# interaction graph


def local_signs(table: np.ndarray, q: int, k: int) -> list[str | None]:
    """Sign of the dependence of one table on each of its ``k`` inputs.

    ``None`` marks an inessential input. Comparing neighbouring values of one
    input is enough: monotonicity along every unit step is monotonicity.
    """
    out: list[str | None] = []
    idx = np.arange(q**k)
    for t in range(k):
        w = q ** (k - 1 - t)
        lo = idx[(idx // w) % q < q - 1]
        diff = table[lo + w] - table[lo]
        if not diff.any():
            out.append(None)
        elif (diff >= 0).all():
            out.append(POS)
        elif (diff <= 0).all():
            out.append(NEG)
        else:
            out.append(NULL)
    return out


def interaction_graph(f: FDS) -> SignedDigraph:
    arcs = []
    for i in range(1, f.n + 1):
        ins = f.inputs[i - 1]
        for j, s in zip(ins, local_signs(f.table_arrays[i - 1], f.q, len(ins))):
            if s is not None:
                arcs.append((j, i, s))
    return SignedDigraph(f.n, arcs)


def is_G_function(f: FDS, G: SignedDigraph, signed: bool = True) -> bool:
    if f.n != G.n:
        raise DimensionMismatch(f"system has {f.n} components, graph has {G.n} vertices")
    H = interaction_graph(f)
    if signed:
        return H == G
    return H.arc_pairs() == G.arc_pairs()


# ---------------------------------------------------------------------------
# analysis


@dataclass(frozen=True)
class DynamicsReport:
    nilpotent: bool
    class_: int | None
    fixed_point: tuple[int, ...] | None
    state_count: int
    fixed_points: int = 0
    cyclic_states: int = 0
    limit_sample: tuple[tuple[int, ...], ...] = field(default=())


def _cyclic_states(succ: np.ndarray) -> np.ndarray:
    # f^(2^t) with 2^t >= |states| maps every state onto its limit cycle
    p = succ
    steps = max(1, int(np.ceil(np.log2(max(2, succ.size)))))
    for _ in range(steps):
        p = p[p]
    return np.unique(p)


def hitting_times(succ: np.ndarray, target: int) -> np.ndarray:
    """Steps needed by each state to reach ``target`` (``-1`` if never).

    Reverse BFS over the functional graph with a CSR predecessor index.
    """
    count = succ.size
    order = np.argsort(succ, kind="stable")
    counts = np.bincount(succ, minlength=count)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    dist = np.full(count, -1, dtype=np.int64)
    dist[target] = 0
    frontier = np.array([target], dtype=np.int64)
    d = 0
    while frontier.size:
        c = counts[frontier]
        total = int(c.sum())
        if total == 0:
            break
        base = np.repeat(starts[frontier], c)
        offset = np.arange(total) - np.repeat(np.cumsum(c) - c, c)
        preds = order[base + offset]
        preds = preds[dist[preds] < 0]
        d += 1
        dist[preds] = d
        frontier = preds
    return dist


def analyze_map(succ: np.ndarray, decode: Callable[[int], tuple[int, ...]], sample_cap: int = 16) -> DynamicsReport:
    count = succ.size
    fixed = np.flatnonzero(succ == np.arange(count))
    if fixed.size == 1:
        alpha = int(fixed[0])
        dist = hitting_times(succ, alpha)
        if (dist >= 0).all():
            return DynamicsReport(
                nilpotent=True,
                class_=int(dist.max()),
                fixed_point=decode(alpha),
                state_count=count,
                fixed_points=1,
                cyclic_states=1,
            )
    cyc = _cyclic_states(succ)
    return DynamicsReport(
        nilpotent=False,
        class_=None,
        fixed_point=None,
        state_count=count,
        fixed_points=int(fixed.size),
        cyclic_states=int(cyc.size),
        limit_sample=tuple(decode(int(s)) for s in cyc[:sample_cap]),
    )


def analyze(f: FDS, state_cap: int = DEFAULT_STATE_CAP) -> DynamicsReport:
    """Exhaustive nilpotency check and exact class.

    ``f`` is nilpotent iff it has a single fixed point that every state
    reaches; the class is then the largest hitting time of that point.
    """
    return analyze_map(f.successor_map(state_cap), f.decode)


def batch_classes(succ: np.ndarray, limit: int | None = None) -> np.ndarray:
    """Class of each row of a ``(B, N)`` stack of successor maps.

    Returns ``-1`` for rows that are not nilpotent, or whose class exceeds
    ``limit`` when one is given.
    """
    B, N = succ.shape
    result = np.full(B, -1, dtype=np.int64)
    if B == 0:
        return result
    ar = np.arange(N)
    alive = np.flatnonzero((succ == ar).sum(axis=1) == 1)
    if alive.size == 0:
        return result
    S = succ[alive]
    max_steps = N - 1 if limit is None else min(limit, N - 1)
    if limit is None or limit >= 8:
        # squaring first: f^(2^t), 2^t >= N, is constant iff f is nilpotent
        P = S
        for _ in range(max(1, int(np.ceil(np.log2(N))))):
            P = np.take_along_axis(P, P, axis=1)
        keep = (P == P[:, :1]).all(axis=1)
        alive, S = alive[keep], S[keep]
    cur = S
    k = 1
    while alive.size and k <= max_steps:
        done = (cur == cur[:, :1]).all(axis=1)
        if done.any():
            result[alive[done]] = k
            alive, S, cur = alive[~done], S[~done], cur[~done]
        if not alive.size or k == max_steps:
            break
        cur = np.take_along_axis(S, cur, axis=1)
        k += 1
    return result

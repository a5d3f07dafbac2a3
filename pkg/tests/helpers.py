"""Random generators and independent reference oracles shared by the tests."""

from __future__ import annotations

import itertools

import numpy as np
from hypothesis import strategies as st

from nilpotent.digraph import SIGNS, SignedDigraph
from nilpotent.dynamics import FDS

# (criterion, passed, detail) lines recorded by the acceptance suite
ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(label: str, ok: bool, detail: str) -> None:
    """Log one acceptance line, then fail the test if the criterion failed."""
    ACCEPTANCE.append((label, ok, detail))
    assert ok, detail


def random_digraph(rng: np.random.Generator, n: int, p: float, signed: bool = True,
                   loops: bool = True) -> SignedDigraph:
    arcs = []
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if (u != v or loops) and rng.random() < p:
                arcs.append((u, v, SIGNS[rng.integers(3)] if signed else "+"))
    return SignedDigraph(n, arcs)


def random_strong(rng: np.random.Generator, n: int, p: float, loops: bool = False) -> SignedDigraph:
    """A Hamiltonian cycle on a shuffled order plus random extra arcs."""
    order = [int(v) + 1 for v in rng.permutation(n)]
    arcs = {(order[k], order[(k + 1) % n]) for k in range(n)}
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if (u != v or loops) and rng.random() < p:
                arcs.add((u, v))
    return SignedDigraph(n, sorted(arcs))


def random_connected_symmetric(rng: np.random.Generator, n: int, p: float) -> SignedDigraph:
    """A random spanning tree plus random extra edges, both directions."""
    edges = set()
    for v in range(2, n + 1):
        u = int(rng.integers(1, v))
        edges.add((u, v))
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                edges.add((u, v))
    # shuffle labels so the tree is not always rooted at 1
    perm = [0] + [int(x) + 1 for x in rng.permutation(n)]
    arcs = {(perm[u], perm[v]) for u, v in edges} | {(perm[v], perm[u]) for u, v in edges}
    return SignedDigraph(n, sorted(arcs))


def random_fds(rng: np.random.Generator, n: int, q: int, max_in: int = 3) -> FDS:
    inputs, tables = [], []
    for _ in range(n):
        k = int(rng.integers(0, min(max_in, n) + 1))
        ins = tuple(sorted(int(v) + 1 for v in rng.choice(n, size=k, replace=False)))
        inputs.append(ins)
        tables.append(tuple(int(v) for v in rng.integers(0, q, size=q**k)))
    return FDS(q, tuple(inputs), tuple(tables))


def random_acyclic_fds(rng: np.random.Generator, n: int, q: int, max_in: int = 3) -> FDS:
    """Inputs only come from earlier vertices of a random order."""
    order = [int(v) + 1 for v in rng.permutation(n)]
    inputs: list[tuple[int, ...]] = [()] * n
    tables: list[tuple[int, ...]] = [()] * n
    for pos, i in enumerate(order):
        k = int(rng.integers(0, min(max_in, pos) + 1))
        ins = tuple(sorted(order[int(t)] for t in rng.choice(pos, size=k, replace=False))) if k else ()
        inputs[i - 1] = ins
        tables[i - 1] = tuple(int(v) for v in rng.integers(0, q, size=q**k))
    return FDS(q, tuple(inputs), tuple(tables))


def brute_successors(f: FDS) -> list[int]:
    """Successor of every packed state, one ``apply`` call at a time."""
    out = []
    for x in itertools.product(range(f.q), repeat=f.n):
        out.append(f.encode(f.apply(x)))
    return out


def saturation_class(f: FDS) -> int | None:
    """Reference class: after ``n * |A|^n`` steps a nilpotent system has
    collapsed every state onto one point; the class is the first step at
    which the image is a single state."""
    succ = brute_successors(f)
    N = len(succ)
    image = set(range(N))
    steps = f.n * N
    for k in range(1, steps + 1):
        image = {succ[s] for s in image}
        if len(image) == 1:
            (s,) = image
            return k if succ[s] == s else None
    return None


def brute_force_tables(k: int, signs, q: int) -> list[tuple[int, ...]]:
    """Filter every table ``q^k -> q`` by the sign semantics, point by point."""
    points = list(itertools.product(range(q), repeat=k))
    index = {x: r for r, x in enumerate(points)}
    found = []
    for table in itertools.product(range(q), repeat=len(points)):
        ok = True
        for t, s in enumerate(signs):
            up = down = False
            for x in points:
                if x[t] == q - 1:
                    continue
                y = x[:t] + (x[t] + 1,) + x[t + 1:]
                a, b = table[index[x]], table[index[y]]
                up |= b > a
                down |= b < a
            if not (up or down):
                ok = False
            elif s == "+" and down or s == "-" and up or s == "0" and not (up and down):
                ok = False
            if not ok:
                break
        if ok:
            found.append(table)
    return found


def matrix_loop_number(G: SignedDigraph) -> int:
    """Gcd of the cycle lengths of a strong digraph, read off the closed
    walks of length at most ``n`` in the adjacency matrix powers."""
    n = G.n
    A = np.zeros((n, n), dtype=np.int64)
    for u, v in G.arc_pairs():
        A[u - 1, v - 1] = 1
    g = 0
    P = np.eye(n, dtype=np.int64)
    for length in range(1, n + 1):
        P = np.minimum(P @ A, 1)
        if np.trace(P):
            g = np.gcd(g, length)
    return int(g)


def is_primitive_by_powers(G: SignedDigraph) -> bool:
    """Some power of the adjacency matrix is entrywise positive (the
    exponent never exceeds ``(n-1)^2 + 1``)."""
    n = G.n
    A = np.zeros((n, n), dtype=np.int64)
    for u, v in G.arc_pairs():
        A[u - 1, v - 1] = 1
    P = np.eye(n, dtype=np.int64)
    for _ in range((n - 1) ** 2 + 1):
        P = np.minimum(P @ A, 1)
    return bool(P.all())


@st.composite
def signed_digraphs(draw, max_n: int = 6, min_n: int = 1, loops: bool = True, signed: bool = True) -> SignedDigraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if loops or u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    arcs = [(u, v, draw(st.sampled_from(SIGNS)) if signed else "+") for u, v in chosen]
    return SignedDigraph(n, arcs)


@st.composite
def small_fds(draw, max_n: int = 4, max_q: int = 3, max_in: int = 2) -> FDS:
    n = draw(st.integers(1, max_n))
    q = draw(st.integers(2, max_q))
    inputs, tables = [], []
    for _ in range(n):
        ins = tuple(sorted(draw(st.sets(st.integers(1, n), max_size=min(max_in, n)))))
        inputs.append(ins)
        tables.append(tuple(draw(st.lists(st.integers(0, q - 1), min_size=q ** len(ins), max_size=q ** len(ins)))))
    return FDS(q, tuple(inputs), tuple(tables))

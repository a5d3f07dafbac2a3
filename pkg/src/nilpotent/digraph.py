"""Signed digraphs and the graph machinery used by the constructions.

Vertices are the integers ``1..n``. Every arc carries one of three signs:
``"+"`` (positive), ``"-"`` (negative) or ``"0"`` (null, i.e. unsigned).
Graphs are immutable; every operation that "modifies" a graph returns a new
one.

All searches are deterministic: vertices are scanned in ascending order and
ties between arcs or paths are broken lexicographically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BadParam,
    HasLoopError,
    NoSuchArcError,
    NotACycleError,
    NotStrongError,
    NotSymmetricError,
    UnreachableError,
)

POS = "+"
NEG = "-"
NULL = "0"
SIGNS = (POS, NEG, NULL)

Arc = tuple[int, int]


class SignedDigraph:
    """A digraph on ``1..n`` whose arcs are labelled ``+``, ``-`` or ``0``.

    ``arcs`` may contain ``(u, v)`` pairs (taken as positive) or
    ``(u, v, sign)`` triples. Loops are allowed, parallel arcs are not.
    """

    __slots__ = ("_n", "_signs", "_in", "_out", "_hash")

    def __init__(self, n: int, arcs: Iterable[Sequence] = ()) -> None:
        if not isinstance(n, int) or n < 1:
            raise BadParam(f"vertex count must be a positive integer, got {n!r}")
        signs: dict[Arc, str] = {}
        for arc in arcs:
            if len(arc) == 2:
                u, v = arc
                s = POS
            else:
                u, v, s = arc
            u, v = int(u), int(v)
            if not (1 <= u <= n and 1 <= v <= n):
                raise BadParam(f"arc ({u},{v}) has an endpoint outside 1..{n}")
            if s not in SIGNS:
                raise BadParam(f"arc ({u},{v}) has invalid sign {s!r}")
            if (u, v) in signs:
                raise BadParam(f"parallel arc ({u},{v})")
            signs[(u, v)] = s
        self._n = n
        self._signs = signs
        ins: list[list[int]] = [[] for _ in range(n + 1)]
        outs: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in sorted(signs):
            outs[u].append(v)
            ins[v].append(u)
        self._in = tuple(tuple(sorted(x)) for x in ins)
        self._out = tuple(tuple(x) for x in outs)
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def vertices(self) -> range:
        return range(1, self._n + 1)

    @property
    def arcs(self) -> tuple[tuple[int, int, str], ...]:
        """All arcs as ``(source, target, sign)``, sorted by (source, target)."""
        return tuple((u, v, self._signs[(u, v)]) for u, v in sorted(self._signs))

    def arc_pairs(self) -> list[Arc]:
        return sorted(self._signs)

    @property
    def num_arcs(self) -> int:
        return len(self._signs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._signs

    def sign(self, u: int, v: int) -> str:
        try:
            return self._signs[(u, v)]
        except KeyError:
            raise NoSuchArcError(f"no arc ({u},{v})") from None

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def out_neighbors(self, u: int) -> tuple[int, ...]:
        return self._out[u]

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def out_degree(self, u: int) -> int:
        return len(self._out[u])

    def in_neighbors_with_sign(self, v: int, sign: str) -> tuple[int, ...]:
        return tuple(u for u in self._in[v] if self._signs[(u, v)] == sign)

    def positive_in(self, v: int) -> tuple[int, ...]:
        return self.in_neighbors_with_sign(v, POS)

    def negative_in(self, v: int) -> tuple[int, ...]:
        return self.in_neighbors_with_sign(v, NEG)

    def null_in(self, v: int) -> tuple[int, ...]:
        return self.in_neighbors_with_sign(v, NULL)

    def sources(self) -> list[int]:
        return [v for v in self.vertices if not self._in[v]]

    def has_loop(self, v: int) -> bool:
        return (v, v) in self._signs

    def has_loops(self) -> bool:
        return any(u == v for u, v in self._signs)

    def is_symmetric(self) -> bool:
        return all((v, u) in self._signs for u, v in self._signs)

    # -- derived graphs --------------------------------------------------

    def unsigned(self, sign: str = POS) -> SignedDigraph:
        """``|G|`` with every arc relabelled ``sign``."""
        return SignedDigraph(self._n, ((u, v, sign) for u, v in self._signs))

    def without_arc(self, u: int, v: int) -> SignedDigraph:
        if (u, v) not in self._signs:
            raise NoSuchArcError(f"no arc ({u},{v})")
        return SignedDigraph(self._n, (a for a in self.arcs if a[:2] != (u, v)))

    def with_signs(self, signs: Mapping[Arc, str]) -> SignedDigraph:
        return SignedDigraph(self._n, ((u, v, signs.get((u, v), s)) for u, v, s in self.arcs))

    def induced(self, vertices: Iterable[int]) -> tuple[SignedDigraph, dict[int, int]]:
        """Induced subgraph relabelled ``1..k`` in ascending vertex order.

        Returns the subgraph and the map from old to new labels.
        """
        keep = sorted(set(vertices))
        index = {v: k + 1 for k, v in enumerate(keep)}
        arcs = [(index[u], index[v], s) for u, v, s in self.arcs if u in index and v in index]
        return SignedDigraph(len(keep), arcs), index

    # -- reachability ----------------------------------------------------

    def reachable_from(self, source: int, skip: Arc | None = None) -> set[int]:
        """Vertices reachable from ``source`` (itself included), optionally ignoring one arc."""
        seen = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in self._out[u]:
                if v not in seen and (u, v) != skip:
                    seen.add(v)
                    queue.append(v)
        return seen

    def reaching(self, target: int, skip: Arc | None = None) -> set[int]:
        """Vertices that have a path to ``target`` (itself included)."""
        seen = {target}
        queue = deque([target])
        while queue:
            v = queue.popleft()
            for u in self._in[v]:
                if u not in seen and (u, v) != skip:
                    seen.add(u)
                    queue.append(u)
        return seen

    def is_strong(self) -> bool:
        return len(self.reachable_from(1)) == self._n and len(self.reaching(1)) == self._n

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedDigraph):
            return NotImplemented
        return self._n == other._n and self._signs == other._signs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._signs.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{u}{s}{v}" for u, v, s in self.arcs)
        return f"SignedDigraph(n={self._n}, arcs=[{body}])"


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class WheelWitness:
    center: int
    cycle: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class GoodArcWitness:
    arc: Arc
    for_arc: Arc
    # vertices reached only through (a, b) along in-degree-one vertices
    degree_one_tail: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Contraction:
    """Result of collapsing a cycle into one fresh vertex ``c``."""

    graph: SignedDigraph
    c: int
    vertex_map: dict[int, int]
    back_map: dict[Arc, Arc]

    def original_arc(self, arc: Arc) -> Arc:
        return self.back_map[arc]


# ---------------------------------------------------------------------------
# components


def strongly_connected_components(G: SignedDigraph) -> list[tuple[int, ...]]:
    """Strong components in reverse topological order (sinks first).

    Iterative Tarjan; roots and successors are scanned in ascending order.
    Each component is returned as a sorted tuple.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[tuple[int, ...]] = []
    counter = 0
    for root in G.vertices:
        if root in index:
            continue
        work: list[tuple[int, Iterator[int]]] = [(root, iter(G.out_neighbors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(G.out_neighbors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(tuple(sorted(comp)))
    return out


def initial_components(G: SignedDigraph) -> list[tuple[int, ...]]:
    """Strong components with no arc entering from outside, sorted by least vertex."""
    result = []
    for comp in strongly_connected_components(G):
        members = set(comp)
        if all(u in members for v in comp for u in G.in_neighbors(v)):
            result.append(comp)
    return sorted(result)


def bfs_forest(G: SignedDigraph, roots: Iterable[int]) -> tuple[dict[int, int], dict[int, int], list[int]]:
    """BFS from a virtual source joined to ``roots``.

    Returns ``(parent, depth, order)``; roots have depth 0 and no parent.
    Unreached vertices are simply absent.
    """
    roots = sorted(set(roots))
    parent: dict[int, int] = {}
    depth = {r: 0 for r in roots}
    order = list(roots)
    queue = deque(roots)
    while queue:
        u = queue.popleft()
        for v in G.out_neighbors(u):
            if v not in depth:
                depth[v] = depth[u] + 1
                parent[v] = u
                order.append(v)
                queue.append(v)
    return parent, depth, order


def spanning_forest_rooted_at(G: SignedDigraph, roots: Iterable[int]) -> dict[int, int]:
    """Parent map of a BFS spanning forest whose roots all lie in ``roots``."""
    parent, depth, _ = bfs_forest(G, roots)
    missing = [v for v in G.vertices if v not in depth]
    if missing:
        raise UnreachableError(f"vertices {missing} are not reachable from the root set")
    return parent


# ---------------------------------------------------------------------------
# cycles, loop number, primitivity


def shortest_cycle(G: SignedDigraph, allowed: Iterable[int] | None = None) -> tuple[int, ...] | None:
    """Shortest cycle inside ``G[allowed]``, ties broken lexicographically.

    A cycle is written starting from its least vertex. Returns ``None`` when
    the induced subgraph is acyclic.
    """
    verts = sorted(set(G.vertices if allowed is None else allowed))
    pool = set(verts)
    best: tuple[int, ...] | None = None
    for s in verts:
        if best is not None and len(best) == 1:
            break
        if G.has_loop(s):
            cand: tuple[int, ...] = (s,)
        else:
            # distances to s inside {v in pool : v > s}
            sub = {v for v in pool if v >= s}
            dist = {s: 0}
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in G.in_neighbors(v):
                    if u in sub and u not in dist:
                        dist[u] = dist[v] + 1
                        queue.append(u)
            succ = [w for w in G.out_neighbors(s) if w in dist and w != s]
            if not succ:
                continue
            length = 1 + min(dist[w] for w in succ)
            if best is not None and length > len(best):
                continue
            path = [s]
            cur = s
            for remaining in range(length - 1, 0, -1):
                cur = min(w for w in G.out_neighbors(cur) if w != s and dist.get(w) == remaining)
                path.append(cur)
            cand = tuple(path)
        if best is None or (len(cand), cand) < (len(best), best):
            best = cand
    return best


def is_cycle(G: SignedDigraph, cycle: Sequence[int]) -> bool:
    if not cycle or len(set(cycle)) != len(cycle):
        return False
    return all(G.has_arc(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle)))


def loop_number(G: SignedDigraph) -> int:
    """gcd of all cycle lengths of a strong digraph.

    Uses BFS levels: the gcd over arcs (u, v) of level(u) + 1 - level(v).
    """
    if not G.is_strong():
        raise NotStrongError("loop number is only defined for strong digraphs")
    if G.num_arcs == 0:
        raise NotStrongError("a single vertex without loop has no cycle")
    _, level, _ = bfs_forest(G, [1])
    g = 0
    for u, v in G.arc_pairs():
        g = gcd(g, abs(level[u] + 1 - level[v]))
    return g


def is_primitive(G: SignedDigraph) -> bool:
    if G.num_arcs == 0 or not G.is_strong():
        return False
    return loop_number(G) == 1


def find_wheel(G: SignedDigraph) -> WheelWitness | None:
    """First vertex (ascending) whose out-neighbourhood induces a cycle.

    The center itself is excluded from the induced subgraph since a wheel's
    center is not on its cycle.
    """
    for v in G.vertices:
        outs = [w for w in G.out_neighbors(v) if w != v]
        cycle = shortest_cycle(G, outs)
        if cycle is not None:
            return WheelWitness(center=v, cycle=cycle)
    return None


def is_wheel(G: SignedDigraph, w: WheelWitness) -> bool:
    return (
        w.center not in w.cycle
        and is_cycle(G, w.cycle)
        and all(G.has_arc(w.center, c) for c in w.cycle)
    )


# ---------------------------------------------------------------------------
# good arcs


def _degree_one_tree(G: SignedDigraph, b: int) -> dict[int, int | None]:
    """Vertices reachable from ``b`` through in-degree-one vertices only.

    Maps each such vertex to its predecessor in that tree (``None`` for b).
    Empty when b itself does not have in-degree one.
    """
    if G.in_degree(b) != 1:
        return {}
    tree: dict[int, int | None] = {b: None}
    queue = deque([b])
    while queue:
        u = queue.popleft()
        for x in G.out_neighbors(u):
            if x not in tree and G.in_degree(x) == 1:
                tree[x] = u
                queue.append(x)
    return tree


def _good_arc_tail(G: SignedDigraph, ab: Arc, vw: Arc) -> tuple[bool, tuple[int, ...]]:
    a, b = ab
    v, w = vw
    if b == w:
        return False, ()
    to_v = G.reaching(v, skip=ab)
    if any(u not in to_v for u in G.vertices if u != w):
        return False, ()
    from_w = G.reachable_from(w, skip=ab)
    missing = [u for u in G.vertices if u not in from_w]
    if not missing:
        return True, ()
    # second alternative: w ~> a -> b ~> u with b..u of in-degree one
    if a not in from_w:
        return False, ()
    tree = _degree_one_tree(G, b)
    tail = []
    for u in missing:
        if u not in tree:
            return False, ()
        node: int | None = u
        while node is not None:
            if node == w:
                return False, ()
            node = tree[node]
        tail.append(u)
    return True, tuple(tail)


def _check_arcs(G: SignedDigraph, *arcs: Arc) -> None:
    for u, v in arcs:
        if not G.has_arc(u, v):
            raise NoSuchArcError(f"no arc ({u},{v})")


def is_good_arc(G: SignedDigraph, ab: Arc, vw: Arc) -> bool:
    """Whether ``ab`` is a good arc for ``vw``.

    (i) b != w; (ii) every u != w reaches v in G minus ab; (iii) w reaches
    every u in G minus ab, or through ab with the part after b made of
    in-degree-one vertices.
    """
    _check_arcs(G, ab, vw)
    return _good_arc_tail(G, tuple(ab), tuple(vw))[0]


def find_good_arc(G: SignedDigraph, vw: Arc) -> GoodArcWitness:
    """Lexicographically smallest good arc for ``vw``.

    Every arc of a strong digraph on at least two vertices has one, so a
    failed search means a bug rather than bad input.
    """
    vw = tuple(vw)
    _check_arcs(G, vw)
    if G.n < 2 or not G.is_strong():
        raise NotStrongError("good arcs are searched in strong digraphs with n >= 2")
    for ab in G.arc_pairs():
        ok, tail = _good_arc_tail(G, ab, vw)
        if ok:
            return GoodArcWitness(arc=ab, for_arc=vw, degree_one_tail=tail or None)
    raise AssertionError(f"no good arc for {vw} in {G!r}")


# ---------------------------------------------------------------------------
# transformations


def contract_cycle(G: SignedDigraph, cycle: Sequence[int]) -> Contraction:
    """Collapse ``cycle`` into a fresh vertex ``c`` (the last label).

    Other vertices keep their relative order. The loop that would appear on
    ``c`` is dropped and parallel arcs are merged, keeping the sign and the
    back-reference of the lexicographically smallest original arc.
    """
    if not is_cycle(G, cycle):
        raise NotACycleError(f"{list(cycle)} is not a cycle")
    members = set(cycle)
    rest = [v for v in G.vertices if v not in members]
    vertex_map = {v: k + 1 for k, v in enumerate(rest)}
    c = len(rest) + 1
    for v in members:
        vertex_map[v] = c
    arcs: dict[Arc, str] = {}
    back: dict[Arc, Arc] = {}
    for u, v, s in G.arcs:
        nu, nv = vertex_map[u], vertex_map[v]
        if nu == c and nv == c:
            continue
        if (nu, nv) not in arcs:
            arcs[(nu, nv)] = s
            back[(nu, nv)] = (u, v)
    H = SignedDigraph(c, ((u, v, s) for (u, v), s in arcs.items()))
    return Contraction(graph=H, c=c, vertex_map=vertex_map, back_map=back)


def add_loops(G: SignedDigraph, signs: str | Mapping[int, str] | Sequence[str] = POS) -> SignedDigraph:
    """``G`` with a loop added on every vertex.

    ``signs`` is one sign for all loops, a mapping vertex -> sign, or a
    sequence indexed by ``vertex - 1``.
    """
    if G.has_loops():
        raise HasLoopError("add_loops expects a loop-less digraph")
    if isinstance(signs, str):
        pick = lambda v: signs  # noqa: E731
    elif isinstance(signs, Mapping):
        pick = signs.__getitem__
    else:
        pick = lambda v: signs[v - 1]  # noqa: E731
    return SignedDigraph(G.n, list(G.arcs) + [(v, v, pick(v)) for v in G.vertices])


def admits_boolean_function(G: SignedDigraph) -> bool:
    """Boolean G-functions exist iff no vertex has a lone null in-arc without two signed ones."""
    for i in G.vertices:
        if len(G.null_in(i)) == 1 and len(G.positive_in(i)) + len(G.negative_in(i)) < 2:
            return False
    return True


def closed_two_ball(G: SignedDigraph, v: int) -> set[int]:
    """Vertices at distance at most two from ``v`` in a symmetric digraph."""
    if not G.is_symmetric():
        raise NotSymmetricError("closed_two_ball needs a symmetric digraph")
    ball = {v}
    frontier = {v}
    for _ in range(2):
        frontier = {w for u in frontier for w in G.out_neighbors(u)} - ball
        ball |= frontier
    return ball

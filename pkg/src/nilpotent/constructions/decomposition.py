"""Three-letter nilpotent functions of logarithmic class.

The graph is cut into a maximal union ``H`` of disjoint cycles, the acyclic
remainder ``G'`` (arcs entering ``H`` removed), and a spanning family of
balanced trees grown in ``G'``. A labelling ``rho`` measures how far each vertex
sits along a chain of same-kind arcs; the local function of a vertex is a
scaled AND or OR of indicators chosen so that it settles at most
``rho + 3`` steps in.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..digraph import NEG, NULL, POS, SignedDigraph, bfs_forest, shortest_cycle
from ..dynamics import FDS
from ..errors import BadParam
from ._common import Construction, ConstructionCertificate, combine, constant, eq, lt, ne


def floor_log2(n: int) -> int:
    return n.bit_length() - 1


def _signed(s: str) -> bool:
    return s != NULL


@dataclass(frozen=True)
class BalancedTree:
    root: int
    vertices: tuple[int, ...]
    # attachment vertex for trees grown after the roots in R
    attach: int | None = None


@dataclass
class DecompositionPlan:
    cycles: tuple[tuple[int, ...], ...]
    H: tuple[tuple[int, int], ...]
    Gp: tuple[tuple[int, int, str], ...]
    R: tuple[int, ...]
    trees: tuple[BalancedTree, ...]
    tree_parent: dict[int, int]
    pred: dict[int, int]
    succ_in_H: dict[int, int]
    sigma: dict[int, int]
    depth: dict[int, int]
    depth_sets: tuple[tuple[int, ...], ...]
    rho: dict[int, int]
    alpha: dict[int, int]
    beta: dict[int, int]
    S: frozenset[int]
    sources: frozenset[int] = field(default_factory=frozenset)

    @property
    def p(self) -> int:
        return len(self.R)

    @property
    def q(self) -> int:
        return len(self.trees)

    @property
    def max_rho(self) -> int:
        return max(self.rho.values())

    def tree_children(self) -> dict[int, list[int]]:
        kids: dict[int, list[int]] = {v: [] for v in self.depth}
        for c, p in sorted(self.tree_parent.items()):
            kids[p].append(c)
        return kids

    def leaves(self) -> set[int]:
        return {v for v, ks in self.tree_children().items() if not ks}


def disjoint_cycles(G: SignedDigraph, first: tuple[int, ...] | None = None) -> list[tuple[int, ...]]:
    """Greedy inclusion-maximal family of vertex-disjoint cycles, shortest
    first, optionally seeded with the cycle ``first``."""
    cycles = [first] if first else []
    remaining = set(G.vertices) - set(first or ())
    while True:
        cyc = shortest_cycle(G, remaining)
        if cyc is None:
            return cycles
        cycles.append(cyc)
        remaining -= set(cyc)


def _grow_tree(out: dict[int, list[tuple[int, str]]], root: int, covered: set[int],
               parent: dict[int, int]) -> list[int]:
    """FIFO attach-all growth of a maximal balanced tree from ``root``.

    A vertex becomes inner only when it has both a signed and an unsigned arc
    to uncovered vertices, and then takes all of them.
    """
    covered.add(root)
    verts = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        avail = [(v, s) for v, s in out[u] if v not in covered]
        if any(_signed(s) for _, s in avail) and any(not _signed(s) for _, s in avail):
            for v, _ in avail:
                covered.add(v)
                parent[v] = u
                verts.append(v)
                queue.append(v)
    return verts


def _choose_sigma(G: SignedDigraph, order: list[int], children: dict[int, list[int]],
                  height: dict[int, int]) -> dict[int, int]:
    """First step of a shortest path to a leaf, for every inner tree vertex.

    When both arc kinds reach a nearest leaf, the kind is picked to keep the
    largest label in the subtree small (labels continue along arcs of the
    same kind as the chosen step); remaining ties go to the smallest vertex.
    """
    memo: dict[tuple[int, int], int] = {}

    def options(u: int) -> list[bool]:
        return sorted({_signed(G.sign(u, c)) for c in children[u] if height[c] == height[u] - 1})

    def worst(u: int, r: int, kind: bool) -> int:
        out = r
        for c in children[u]:
            out = max(out, best(c, r + 1 if _signed(G.sign(u, c)) == kind else 0))
        return out

    def best(u: int, r: int) -> int:
        key = (u, r)
        if key not in memo:
            memo[key] = min(worst(u, r, k) for k in options(u)) if children[u] else r
        return memo[key]

    sigma: dict[int, int] = {}
    rho: dict[int, int] = {}
    for u in order:
        r = rho.setdefault(u, 0)
        if not children[u]:
            continue
        kind = min(options(u), key=lambda k: (worst(u, r, k), k))
        sigma[u] = min(c for c in children[u] if height[c] == height[u] - 1 and _signed(G.sign(u, c)) == kind)
        for c in children[u]:
            rho[c] = r + 1 if _signed(G.sign(u, c)) == kind else 0
    return sigma


def build_decomposition(G: SignedDigraph, cycles: list[tuple[int, ...]] | None = None) -> DecompositionPlan:
    """Compute every intermediate object of the logarithmic construction.

    ``cycles`` overrides the greedy choice of ``H``; it must be an
    inclusion-maximal family of disjoint cycles.
    """
    if G.n < 2:
        raise BadParam("the decomposition needs at least two vertices")
    cycles = disjoint_cycles(G) if cycles is None else [tuple(c) for c in cycles]
    in_H: set[int] = set()
    pred: dict[int, int] = {}
    succ_in_H: dict[int, int] = {}
    H_arcs = []
    for cyc in cycles:
        for k, v in enumerate(cyc):
            w = cyc[(k + 1) % len(cyc)]
            succ_in_H[v] = w
            pred[w] = v
            H_arcs.append((v, w))
        in_H |= set(cyc)

    Gp = tuple(a for a in G.arcs if a[1] not in in_H)
    out: dict[int, list[tuple[int, str]]] = {v: [] for v in G.vertices}
    gp_in: dict[int, list[int]] = {v: [] for v in G.vertices}
    for u, v, s in Gp:
        out[u].append((v, s))
        gp_in[v].append(u)
    sources = frozenset(G.sources())
    R = tuple(v for v in G.vertices if not gp_in[v])

    covered: set[int] = set()
    tree_parent: dict[int, int] = {}
    trees = []
    for r in R:
        trees.append(BalancedTree(r, tuple(_grow_tree(out, r, covered, tree_parent))))
    while len(covered) < G.n:
        r = min(v for v in G.vertices if v not in covered and any(u in covered for u in gp_in[v]))
        ell = min(u for u in gp_in[r] if u in covered)
        pred[r] = ell
        trees.append(BalancedTree(r, tuple(_grow_tree(out, r, covered, tree_parent)), ell))
    for c, p in tree_parent.items():
        pred[c] = p

    children: dict[int, list[int]] = {v: [] for v in G.vertices}
    for c, p in sorted(tree_parent.items()):
        children[p].append(c)

    depth: dict[int, int] = {}
    order: list[int] = []
    for t in trees:
        depth[t.root] = 0
        queue = deque([t.root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for c in children[u]:
                depth[c] = depth[u] + 1
                queue.append(c)

    height: dict[int, int] = {}
    for u in reversed(order):
        height[u] = 1 + min(height[c] for c in children[u]) if children[u] else 0
    sigma = _choose_sigma(G, order, children, height)

    rho: dict[int, int] = {}
    for u in order:
        if u not in tree_parent:
            rho[u] = 0
            continue
        p = tree_parent[u]
        same = _signed(G.sign(p, u)) == _signed(G.sign(p, sigma[p]))
        rho[u] = rho[p] + 1 if same else 0

    attached_null = {t.attach for t in trees if t.attach is not None and G.sign(t.attach, t.root) == NULL}
    alpha: dict[int, int] = {}
    for i in G.vertices:
        if i in sources:
            alpha[i] = 1
        elif i in in_H:
            alpha[i] = 2 if G.sign(i, succ_in_H[i]) == NULL else 1
        elif not children[i]:
            alpha[i] = 2 if i in attached_null else 1
        else:
            up = any(_signed(G.sign(i, j)) and rho[i] < rho[j] for j in children[i])
            alpha[i] = 2 if up else 1

    S = set()
    for i in G.vertices:
        if rho[i] != 0 or i in sources:
            continue
        s = G.sign(pred[i], i)
        if (_signed(s) and alpha[pred[i]] == 2) or (not _signed(s) and alpha[pred[i]] == 1):
            S.add(i)

    beta: dict[int, int] = {}

    def beta_of(i: int, trail: frozenset = frozenset()) -> int:
        if i in beta:
            return beta[i]
        if i in trail:
            raise AssertionError(f"cyclic beta dependency at vertex {i}")
        if rho[i] == 0 and i not in S:
            b = 0 if (i in sources or G.sign(pred[i], i) == POS) else 1
        else:
            j = pred[i]
            v = alpha[j] * beta_of(j, trail | {i})
            s = G.sign(j, i)
            low = (s == POS and v < 2) or (s == NEG and v == 2) or (s == NULL and v != 1)
            b = 0 if low else 1
        beta[i] = b
        return b

    for i in G.vertices:
        beta_of(i)

    levels = max(depth.values()) + 1
    depth_sets = tuple(tuple(sorted(v for v in depth if depth[v] == k)) for k in range(levels))
    return DecompositionPlan(
        cycles=tuple(cycles),
        H=tuple(H_arcs),
        Gp=Gp,
        R=R,
        trees=tuple(trees),
        tree_parent=tree_parent,
        pred=pred,
        succ_in_H=succ_in_H,
        sigma=sigma,
        depth=depth,
        depth_sets=depth_sets,
        rho=rho,
        alpha=alpha,
        beta=beta,
        S=frozenset(S),
        sources=sources,
    )


def plan_function(G: SignedDigraph, plan: DecompositionPlan) -> FDS:
    """The three-letter system described by a decomposition plan."""
    and_lit = {POS: eq(2), NEG: lt(2), NULL: eq(1)}
    or_lit = {POS: eq(2), NEG: lt(2), NULL: ne(1)}
    inputs = [G.in_neighbors(i) for i in G.vertices]
    rules = []
    for i in G.vertices:
        if i in plan.sources:
            rules.append(constant(0))
            continue
        table = and_lit if plan.beta[i] == 0 else or_lit
        lits = [table[G.sign(j, i)] for j in inputs[i - 1]]
        p = plan.pred[i]
        if plan.beta[i] == 1 and G.sign(p, i) == NULL and (plan.rho[i] > 0 or i in plan.S):
            # the predecessor settles at 1 here, where [x != 1] would not decide the OR
            lits[inputs[i - 1].index(p)] = eq(1)
        rules.append(combine(lits, "and" if plan.beta[i] == 0 else "or", plan.alpha[i]))
    return FDS.from_rules(3, inputs, rules)


_SINGLE_VERTEX = {None: (), POS: (0, 0, 1), NEG: (1, 1, 0), NULL: (0, 2, 0)}


def _single_vertex(G: SignedDigraph) -> FDS:
    s = G.sign(1, 1) if G.has_loop(1) else None
    if s is None:
        return FDS(3, ((),), ((0,),))
    return FDS(3, ((1,),), (_SINGLE_VERTEX[s],))


def _cascade(G: SignedDigraph, root: int) -> tuple[FDS, dict[int, int]]:
    """Settle ``root`` on its own, then let every vertex copy its BFS parent's
    eventual value through a dominating literal.

    ``root`` must have no in-arc other than an optional loop. Each vertex
    settles one step after its parent, so the class is at most the BFS depth
    plus two.
    """
    parent, depth, order = bfs_forest(G, [root])
    settle: dict[int, int] = {}
    inputs = [G.in_neighbors(i) for i in G.vertices]
    rules: list = [None] * G.n
    if G.has_loop(root):
        tab = np.array(_SINGLE_VERTEX[G.sign(root, root)])
        rules[root - 1] = lambda X, tab=tab: tab[X[:, 0]]
        settle[root] = int(tab[tab[0]])
    else:
        rules[root - 1] = constant(0)
        settle[root] = 0
    default = {POS: eq(2), NEG: lt(2), NULL: eq(1)}
    for i in order[1:]:
        p = parent[i]
        c = settle[p]
        s = G.sign(p, i)
        # c is 0 or 1 for every vertex, so these literals are decided at c
        if s == POS:
            mode, dom = "and", eq(2)
        elif s == NEG:
            mode, dom = "or", lt(2)
        else:
            mode, dom = "and", (ne(1) if c == 1 else eq(1))
        lits = [dom if j == p else default[G.sign(j, i)] for j in inputs[i - 1]]
        rules[i - 1] = combine(lits, mode)
        settle[i] = 0 if mode == "and" else 1
    return FDS.from_rules(3, inputs, rules), depth


def _cycle_through(G: SignedDigraph, r: int) -> tuple[int, ...] | None:
    """Shortest cycle of length at least two through ``r``."""
    dist = {r: 0}
    prev: dict[int, int] = {}
    queue = deque([r])
    while queue:
        u = queue.popleft()
        for v in G.out_neighbors(u):
            if v == r and u != r:
                path = [u]
                while path[-1] != r:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            if v not in dist:
                dist[v] = dist[u] + 1
                prev[v] = u
                queue.append(v)
    return None


def nilpotent_3letter(G: SignedDigraph) -> Construction:
    """A nilpotent G-function over ``{0,1,2}``, normally of class at most ``floor(log2 n) + 2``.

    The decomposition route is certified by ``max rho + 3``. When that exceeds
    the logarithmic target, two alternatives are tried for a single root:
    re-rooting ``H`` on a longer cycle through it, or a dominating cascade from
    an autonomous root. The candidate with the smallest proven bound wins.
    """
    n = G.n
    target = floor_log2(n) + 2
    if n == 1:
        cert = ConstructionCertificate("three_letter", target, ("n = 1",), True)
        return Construction(_single_vertex(G), cert, G, {"route": "single_vertex"})

    plan = build_decomposition(G)
    candidates = [(plan.max_rho + 3, "decomposition", plan)]
    if plan.max_rho + 3 > target and len(plan.R) == 1:
        (r,) = plan.R
        if any(u != r for u in G.in_neighbors(r)):
            cyc = _cycle_through(G, r)
            if cyc is not None and cyc not in plan.cycles:
                # H must stay maximal, so complete it greedily around the forced cycle
                forced = build_decomposition(G, disjoint_cycles(G, cyc))
                candidates.append((forced.max_rho + 3, "forced_cycle", forced))
        else:
            candidates.append((None, "cascade", plan))

    best = None
    for bound, route, pl in candidates:
        if route == "cascade":
            f, depth = _cascade(G, pl.R[0])
            bound = max(depth.values()) + 2
            details = {"route": route, "plan": pl, "cascade_depth": depth}
        else:
            f = plan_function(G, pl)
            details = {"route": route, "plan": pl}
        if best is None or bound < best[0]:
            best = (bound, f, details)
    bound, f, details = best
    hyp = ("max rho + 1 <= floor(log n)",) if bound <= target else ("logarithmic certificate failed; bound from labels",)
    cert = ConstructionCertificate("three_letter", max(bound, target), hyp, True)
    return Construction(f, cert, G, details)


"""Boolean constructions: and-nets with a few negated inputs, and the
constant-class families."""

from __future__ import annotations

from ..digraph import (
    NEG,
    POS,
    SignedDigraph,
    add_loops,
    bfs_forest,
    closed_two_ball,
    contract_cycle,
    find_good_arc,
    find_wheel,
    initial_components,
    is_primitive,
)
from ..dynamics import FDS
from ..errors import BadParam, HypothesisFailed, NoPrimitiveSubgraph, NoSuchArcError
from ._common import Construction, ConstructionCertificate, and_net, combine, ident
from .families import complete_loops, double_cycle


def primitive_andnet(G: SignedDigraph, H: SignedDigraph | None = None) -> Construction:
    """And-net on ``|G|`` reading ``H``-arcs positively and the rest negatively.

    ``H`` must be a primitive spanning strict subgraph of ``|G|``. When omitted,
    the first single-arc deletion that stays primitive is used; any primitive
    strict subgraph is contained in one of those, so the search is complete.
    """
    pairs = set(G.arc_pairs())
    if H is None:
        for arc in G.arc_pairs():
            cand = G.without_arc(*arc)
            if is_primitive(cand):
                H = cand
                break
        else:
            raise NoPrimitiveSubgraph("no single-arc deletion leaves a primitive spanning subgraph")
    else:
        if H.n != G.n or not set(H.arc_pairs()) < pairs:
            raise HypothesisFailed("H must be a spanning strict subgraph of G")
        if not is_primitive(H):
            raise NoPrimitiveSubgraph("the supplied subgraph is not primitive")
    kept = set(H.arc_pairs())
    f = and_net(G, lambda j, i: (j, i) not in kept)
    n = G.n
    cert = ConstructionCertificate("primitive_andnet", n * n - 2 * n + 3, ("primitive spanning strict subgraph",), False)
    return Construction(f, cert, G, {"subgraph": H})


def double_cycle_function(ell: int, r: int) -> Construction | None:
    """The canonical nilpotent boolean function on the double cycle, or
    ``None`` when neither length divides the other (none exists then)."""
    if ell < 1 or r < 1:
        raise BadParam("cycle lengths must be positive")
    if ell == 1 and r == 1:
        raise BadParam("two loops on one vertex do not form a simple digraph")
    G = double_cycle(ell, r)
    lo, hi = min(ell, r), max(ell, r)
    if hi % lo:
        return None
    n = ell + r - 1
    last_short = ell  # predecessor of 1 on the first cycle
    last_long = n if r > 1 else 1
    if r % ell == 0:
        negated = {(last_long, 1)}
    else:
        negated = {(last_short, 1)}
    f = and_net(G, negated)
    cert = ConstructionCertificate("double_cycle", 2 * hi - 1, (f"{lo} divides {hi}",), False)
    return Construction(f, cert, G, {"negated": tuple(sorted(negated))})


def gab_andnet(G: SignedDigraph, a: int, b: int) -> FDS:
    """And-net on ``|G|`` with the single input along ``(a, b)`` negated."""
    if not G.has_arc(a, b):
        raise NoSuchArcError(f"({a}, {b}) is not an arc")
    return and_net(G, {(a, b)})


def _strong_check(G: SignedDigraph) -> None:
    if G.n < 2:
        raise HypothesisFailed("needs at least two vertices")
    if not G.is_strong():
        raise HypothesisFailed("digraph is not strongly connected")


def strong_loop_nilpotent(G: SignedDigraph) -> Construction:
    """``G_ab``-and-net for a good arc of the smallest loop; class at most ``2n - 1``."""
    _strong_check(G)
    looped = [v for v in G.vertices if G.has_loop(v)]
    if not looped:
        raise HypothesisFailed("digraph has no loop")
    v = looped[0]
    a, b = find_good_arc(G, (v, v)).arc
    cert = ConstructionCertificate("strong_loop", 2 * G.n - 1, ("strong", f"loop on {v}"), False)
    return Construction(gab_andnet(G, a, b), cert, G, {"good_arc": (a, b), "loop": v})


def strong_wheel_nilpotent(G: SignedDigraph) -> Construction:
    """``G_ab``-and-net from a good arc found after contracting a wheel's cycle.

    Class at most ``2n - m + 1`` for a wheel of length ``m``.
    """
    _strong_check(G)
    wheel = find_wheel(G)
    if wheel is None:
        raise HypothesisFailed("digraph contains no wheel")
    con = contract_cycle(G, wheel.cycle)
    centre = con.vertex_map[wheel.center]
    good = find_good_arc(con.graph, (centre, con.c)).arc
    a, b = con.original_arc(good)
    m = wheel.m
    cert = ConstructionCertificate("strong_wheel", 2 * G.n - m + 1, ("strong", f"{m}-wheel centred at {wheel.center}"), False)
    details = {"wheel": wheel, "contracted_good_arc": good, "good_arc": (a, b)}
    return Construction(gab_andnet(G, a, b), cert, G, details)


def _hub(G: SignedDigraph) -> int | None:
    for v in G.vertices:
        if len(set(G.out_neighbors(v)) - {v}) == G.n - 1:
            return v
    return None


def universal_class3(G: SignedDigraph) -> Construction:
    """Class 3 when every in-degree is at least two and some vertex sees all others.

    The hub reads only negated inputs, every other vertex a plain conjunction.
    """
    if G.has_loops():
        raise HypothesisFailed("digraph has loops")
    low = [v for v in G.vertices if G.in_degree(v) < 2]
    if low:
        raise HypothesisFailed(f"vertex {low[0]} has in-degree below two")
    hub = _hub(G)
    if hub is None:
        raise HypothesisFailed("no vertex has out-degree n - 1")
    f = and_net(G, lambda j, i: i == hub)
    cert = ConstructionCertificate("universal_class3", 3, ("min in-degree >= 2", f"hub {hub}"), False)
    return Construction(f, cert, G, {"hub": hub})


def _independent_far_set(G: SignedDigraph) -> list[int]:
    """Greedy set of vertices pairwise at distance at least three, degree-one
    vertices first, covering every vertex within distance two."""
    ones = [v for v in G.vertices if G.out_degree(v) == 1]
    remaining = set(G.vertices)
    chosen: list[int] = []
    for pool in (ones, list(G.vertices)):
        for v in pool:
            if v in remaining:
                chosen.append(v)
                remaining -= closed_two_ball(G, v)
    return chosen


def undirected_class3(G: SignedDigraph) -> Construction:
    """Class 3 for connected graphs other than ``K_2``: and-net negated on a
    far-apart vertex set. Cliques use the hub construction."""
    if not G.is_symmetric() or G.has_loops():
        raise HypothesisFailed("expects a loop-less symmetric digraph")
    if G.n < 3:
        raise HypothesisFailed("K_1 and K_2 admit no such function")
    if not G.is_strong():
        raise HypothesisFailed("graph is not connected")
    if G.num_arcs == G.n * (G.n - 1):
        out = universal_class3(G)
        cert = ConstructionCertificate("undirected_class3", 3, ("clique",), False)
        return Construction(out.fds, cert, G, {"clique": True, **out.details})
    I = _independent_far_set(G)
    ones = {v for v in G.vertices if G.out_degree(v) == 1}
    touched = {j for i in I for j in G.out_neighbors(i)}
    assert not ones & touched, "a degree-one vertex neighbours the far set"
    chosen = set(I)
    f = and_net(G, lambda j, i: i in chosen)
    cert = ConstructionCertificate("undirected_class3", 3, ("connected", "not K_2"), False)
    return Construction(f, cert, G, {"I": tuple(I)})


def loops_added_nilpotent(G: SignedDigraph) -> Construction:
    """Class 4 (3 for symmetric graphs or with a hub) on ``G`` plus a loop everywhere.

    Vertices at even distance from the seed set get a negative loop, the rest
    a positive one; every other input is positive.
    """
    if G.has_loops():
        raise HypothesisFailed("expects a loop-less digraph")
    low = [v for v in G.vertices if G.in_degree(v) == 0]
    if low:
        raise HypothesisFailed(f"vertex {low[0]} has in-degree 0")
    hub = _hub(G)
    seeds = [hub] if hub is not None else [c[0] for c in initial_components(G)]
    _, depth, _ = bfs_forest(G, seeds)
    I = {v for v in G.vertices if depth[v] % 2 == 0}
    looped = add_loops(G, {v: NEG if v in I else POS for v in G.vertices})
    f = and_net(looped, lambda j, i: i == j and i in I)
    short = G.is_symmetric() or hub is not None
    hyp = ("min in-degree >= 1",) + (("symmetric or hub",) if short else ())
    cert = ConstructionCertificate("loops_added", 3 if short else 4, hyp, False)
    return Construction(f, cert, looped, {"seeds": tuple(seeds), "I": tuple(sorted(I))})


def xor_class2(G: SignedDigraph) -> Construction:
    """``f_i`` is the parity of the in-neighbours; class at most 2 when every
    in/out neighbourhood intersection is even."""
    for i in G.vertices:
        ins = set(G.in_neighbors(i))
        for k in G.vertices:
            if len(ins & set(G.out_neighbors(k))) % 2:
                raise HypothesisFailed(f"in({i}) and out({k}) share an odd number of vertices")
    inputs = [G.in_neighbors(i) for i in G.vertices]
    f = FDS.from_rules(2, inputs, [combine([ident()] * len(ins), "xor") for ins in inputs])
    cert = ConstructionCertificate("xor_class2", 2, ("even intersections",), False)
    return Construction(f, cert, G)


# found by exhaustive search over the boolean functions of the complete
# graph with loops on two vertices; the engine confirms class 2
_COMPLETE_LOOPS_2 = FDS(2, ((1, 2), (1, 2)), ((0, 0, 0, 1), (1, 1, 1, 0)))


def complete_loops_class2(n: int) -> Construction:
    """Class 2 on the complete graph with loops."""
    if n < 2:
        raise BadParam("needs n >= 2")
    G = complete_loops(n)
    if n == 2:
        f = _COMPLETE_LOOPS_2
    else:
        f = and_net(G, lambda j, i: i == j)
    cert = ConstructionCertificate("complete_loops", 2, (f"n = {n}",), False)
    return Construction(f, cert, G)


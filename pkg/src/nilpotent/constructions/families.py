"""Generators for the standard digraph families (all arcs positive unless noted)."""

from __future__ import annotations

from ..digraph import NULL, POS, SignedDigraph
from ..errors import BadParam


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise BadParam(msg)


def cycle(n: int) -> SignedDigraph:
    """``1 -> 2 -> ... -> n -> 1``; ``n = 1`` is a loop."""
    _need(n >= 1, "cycle length must be positive")
    return SignedDigraph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def double_cycle(ell: int, r: int) -> SignedDigraph:
    """Two cycles sharing vertex 1: ``1..ell`` and ``1, ell+1, ..., ell+r-1``."""
    _need(ell >= 1 and r >= 1, "cycle lengths must be positive")
    _need((ell, r) != (1, 1), "two loops on one vertex are not a simple digraph")
    n = ell + r - 1
    arcs = {(i, i % ell + 1) for i in range(1, ell + 1)}
    second = [1, *range(ell + 1, n + 1)]
    arcs |= {(second[k], second[(k + 1) % r]) for k in range(r)}
    return SignedDigraph(n, sorted(arcs))


def wheel(m: int) -> SignedDigraph:
    """Centre 1 with arcs to every vertex of the cycle ``2 -> ... -> m+1 -> 2``."""
    _need(m >= 1, "wheel cycle must have length at least 1")
    ring = list(range(2, m + 2))
    arcs = [(ring[k], ring[(k + 1) % m]) for k in range(m)]
    arcs += [(1, v) for v in ring]
    return SignedDigraph(m + 1, arcs)


def wheel_good_arc(m: int) -> SignedDigraph:
    """The wheel ``W_m`` plus a 2-cycle ``a <-> b`` wired so that the and-net
    negated on ``(a, b)`` is slow.

    ``a = m+2``, ``b = m+3``; with ``u = 2`` and ``w`` the cycle vertex before
    it, the extra arcs are ``a->b, b->a, a->u, w->v, v->a``.
    """
    _need(m >= 2, "the family starts at m = 2")
    base = wheel(m)
    v, u, w = 1, 2, m + 1
    a, b = m + 2, m + 3
    extra = [(a, b), (b, a), (a, u), (w, v), (v, a)]
    return SignedDigraph(m + 3, list(base.arc_pairs()) + extra)


def tight_full(d: int) -> SignedDigraph:
    """Perfect binary tree of depth ``d`` in heap order (children ``2i`` by a
    positive arc and ``2i+1`` by a null arc), plus null arcs leaf -> root."""
    _need(d >= 0, "depth must be non-negative")
    n = 2 ** (d + 1) - 1
    arcs = []
    for i in range(1, 2**d):
        arcs.append((i, 2 * i, POS))
        arcs.append((i, 2 * i + 1, NULL))
    arcs += [(leaf, 1, NULL) for leaf in range(2**d, n + 1)]
    return SignedDigraph(n, arcs)


def tight_general(n: int) -> SignedDigraph:
    """Lower-bound graph for any ``n``: ``tight_full`` when ``n = 2^(d+1) - 1``,
    otherwise a depth ``d-1`` tree fed by a positively looped vertex ``w`` that
    also feeds ``n - 2^d`` extra vertices through null arcs."""
    _need(n >= 1, "n must be positive")
    d = n.bit_length() - 1
    if n == 2 ** (d + 1) - 1:
        return tight_full(d)
    arcs = []
    for i in range(1, 2 ** (d - 1)):
        arcs.append((i, 2 * i, POS))
        arcs.append((i, 2 * i + 1, NULL))
    w = 2**d
    arcs.append((w, w, POS))
    arcs += [(w, v, NULL) for v in range(1, n + 1) if v != w]
    return SignedDigraph(n, arcs)


def complete(n: int) -> SignedDigraph:
    """``K_n`` as a loop-less symmetric digraph."""
    _need(n >= 1, "n must be positive")
    return SignedDigraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v])


def complete_loops(n: int) -> SignedDigraph:
    """``K_n`` with a loop on every vertex."""
    _need(n >= 1, "n must be positive")
    return SignedDigraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)])


FAMILIES = {
    "cycle": cycle,
    "double_cycle": double_cycle,
    "wheel": wheel,
    "wheel_good_arc": wheel_good_arc,
    "tight_full": tight_full,
    "tight_general": tight_general,
    "complete": complete,
    "complete_loops": complete_loops,
}


def gen_family(name: str, *params: int) -> SignedDigraph:
    if name not in FAMILIES:
        raise BadParam(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    try:
        return FAMILIES[name](*params)
    except TypeError as exc:
        raise BadParam(f"wrong parameters for {name}: {exc}") from None

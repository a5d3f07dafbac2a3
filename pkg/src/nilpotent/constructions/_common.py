from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from ..digraph import SignedDigraph
from ..dynamics import FDS

Literal = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ConstructionCertificate:
    """What a construction promises: the system is nilpotent of class at most ``claimed_bound``.

    Certificates never claim exactness; only ``analyze`` establishes a class.
    """

    method: str
    claimed_bound: int
    hypotheses: tuple[str, ...] = ()
    signed_match: bool = True

    def __post_init__(self) -> None:
        if self.claimed_bound < 1:
            raise ValueError("claimed bound must be at least 1")


@dataclass(frozen=True)
class Construction:
    fds: FDS
    certificate: ConstructionCertificate
    # the digraph the system is meant to realise (differs from the input for G-ring)
    graph: SignedDigraph
    details: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def bound(self) -> int:
        return self.certificate.claimed_bound


# literals over a digit column


def eq(c: int) -> Literal:
    return lambda x: x == c


def ne(c: int) -> Literal:
    return lambda x: x != c


def ge(c: int) -> Literal:
    return lambda x: x >= c


def lt(c: int) -> Literal:
    return lambda x: x < c


def ident() -> Literal:
    return lambda x: x == 1


def neg() -> Literal:
    return lambda x: x == 0


def combine(literals: Sequence[Literal], mode: str, scale: int = 1) -> Callable[[np.ndarray], np.ndarray]:
    """``scale * (l_1 op l_2 op ...)`` with ``op`` one of and/or/xor.

    Empty conjunctions are true, empty disjunctions and parities false.
    """
    lits = list(literals)

    def rule(X: np.ndarray) -> np.ndarray:
        if mode == "and":
            acc = np.ones(X.shape[0], dtype=bool)
            for t, lit in enumerate(lits):
                acc &= lit(X[:, t])
        elif mode == "or":
            acc = np.zeros(X.shape[0], dtype=bool)
            for t, lit in enumerate(lits):
                acc |= lit(X[:, t])
        elif mode == "xor":
            acc = np.zeros(X.shape[0], dtype=bool)
            for t, lit in enumerate(lits):
                acc ^= lit(X[:, t])
        else:
            raise ValueError(mode)
        return acc.astype(np.int64) * scale

    return rule


def constant(value: int) -> Callable[[np.ndarray], np.ndarray]:
    return lambda X: np.full(X.shape[0], value, dtype=np.int64)


def system(q: int, G: SignedDigraph, literal_for: Callable[[int, int], Literal],
           mode_for: Callable[[int], str], scale_for: Callable[[int], int] = lambda i: 1) -> FDS:
    """Build ``f_i = scale(i) * op_{j in G(i)} literal(i, j)`` for every vertex."""
    inputs = [G.in_neighbors(i) for i in G.vertices]
    rules = [
        combine([literal_for(i, j) for j in inputs[i - 1]], mode_for(i), scale_for(i))
        for i in G.vertices
    ]
    return FDS.from_rules(q, inputs, rules)


def and_net(G: SignedDigraph, negated: set[tuple[int, int]] | Callable[[int, int], bool]) -> FDS:
    """Boolean and-net on ``|G|``; arcs in ``negated`` enter as complemented inputs."""
    is_neg = negated if callable(negated) else (lambda j, i: (j, i) in negated)
    return system(2, G, lambda i, j: neg() if is_neg(j, i) else ident(), lambda i: "and")

"""Constructions over alphabets with three or more letters, plus the two
alphabet-level tools (clamped extension and extension from initial
components)."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..digraph import NEG, NULL, POS, SignedDigraph, bfs_forest, initial_components
from ..dynamics import FDS, Alphabet, analyze, input_digits, is_G_function
from ..errors import BadAlphabet, HypothesisFailed, NotNilpotent
from ._common import Construction, ConstructionCertificate, combine, eq, ge, lt, system


def nilpotent_4letter(G: SignedDigraph) -> Construction:
    """Class at most 2 over ``{0,1,2,3}``: an AND of threshold indicators.

    Every output lies in ``{0,1}``, where all literals take a fixed value, so
    the second iterate is constant.
    """
    lit = {POS: ge(2), NEG: lt(2), NULL: eq(2)}
    f = system(4, G, lambda i, j: lit[G.sign(j, i)], lambda i: "and")
    cert = ConstructionCertificate("four_letter", 2, ("any signed digraph",), True)
    return Construction(f, cert, G)


def nilpotent_3letter_class2(G: SignedDigraph) -> Construction:
    """Class at most 2 over ``{0,1,2}`` when no vertex has exactly one null
    in-arc (OR/XOR branch) or every vertex has at least one (scaled AND branch)."""
    null_counts = {i: len(G.null_in(i)) for i in G.vertices}
    if all(c != 1 for c in null_counts.values()):
        inputs = [G.in_neighbors(i) for i in G.vertices]
        rules = []
        for i in G.vertices:
            signs = [G.sign(j, i) for j in inputs[i - 1]]

            def rule(X: np.ndarray, signs=signs) -> np.ndarray:
                acc = np.zeros(X.shape[0], dtype=bool)
                par = np.zeros(X.shape[0], dtype=bool)
                for t, s in enumerate(signs):
                    if s == POS:
                        acc |= X[:, t] == 2
                    elif s == NEG:
                        acc |= X[:, t] < 2
                    else:
                        par ^= X[:, t] == 2
                return (acc | par).astype(np.int64)

            rules.append(rule)
        f = FDS.from_rules(3, inputs, rules)
        hyp = ("no vertex has exactly one null in-arc",)
        return Construction(f, ConstructionCertificate("three_letter_class2", 2, hyp, True), G, {"branch": 1})
    if all(c >= 1 for c in null_counts.values()):
        lit = {POS: eq(2), NEG: lt(2), NULL: eq(1)}
        f = system(3, G, lambda i, j: lit[G.sign(j, i)], lambda i: "and", lambda i: 2)
        hyp = ("every vertex has a null in-arc",)
        return Construction(f, ConstructionCertificate("three_letter_class2", 2, hyp, True), G, {"branch": 2})
    bad = next(i for i, c in null_counts.items() if c == 1)
    raise HypothesisFailed(
        f"vertex {bad} has exactly one null in-arc while vertex "
        f"{next(i for i, c in null_counts.items() if c == 0)} has none"
    )


def extend_alphabet(f: FDS, size: int | Alphabet) -> FDS:
    """Same system over a larger interval: clamp every input into the old
    alphabet, then look up the old table. Class is preserved exactly."""
    t = size.size if isinstance(size, Alphabet) else int(size)
    if t < f.q:
        raise BadAlphabet(f"cannot extend an alphabet of size {f.q} to size {t}")
    if t == f.q:
        return f
    tables = []
    for ins, tab in zip(f.inputs, f.table_arrays):
        X = np.minimum(input_digits(t, len(ins)), f.q - 1)
        idx = np.zeros(X.shape[0], dtype=np.int64)
        for col in range(X.shape[1]):
            idx = idx * f.q + X[:, col]
        tables.append(tuple(int(v) for v in tab[idx]))
    return FDS(t, f.inputs, tuple(tables))


def extend_from_initial(G: SignedDigraph, components: Sequence[FDS]) -> Construction:
    """Extend nilpotent functions of the initial strong components to all of G.

    ``components[k]`` is a system on ``G[I_k]`` (vertices relabelled in
    ascending order), where ``I_k`` are the initial components sorted by
    least vertex. Outside the initial components every vertex copies, through
    a dominating literal, the eventual value of its parent in a BFS forest
    rooted at the components.
    """
    comps = initial_components(G)
    if len(components) != len(comps):
        raise HypothesisFailed(f"expected {len(comps)} component systems, got {len(components)}")
    qs = {g.q for g in components}
    if len(qs) != 1:
        raise BadAlphabet("component systems must share one alphabet")
    q = qs.pop()
    in_initial = {v for c in comps for v in c}
    if q == 2:
        stray = [(u, v) for u, v, s in G.arcs if s == NULL and v not in in_initial]
        if stray:
            raise HypothesisFailed(f"null arc {stray[0]} leaves the initial components over a boolean alphabet")

    inputs: list[tuple[int, ...]] = [()] * G.n
    tables: list[tuple[int, ...]] = [()] * G.n
    alpha: dict[int, int] = {}
    r = 0
    for comp, g in zip(comps, components):
        sub, index = G.induced(comp)
        if g.n != len(comp) or not is_G_function(g, sub, signed=True):
            raise HypothesisFailed(f"supplied system is not a G[I]-function for component {list(comp)}")
        rep = analyze(g)
        if not rep.nilpotent:
            raise NotNilpotent(f"supplied system for component {list(comp)} is not nilpotent")
        r = max(r, rep.class_)
        back = {k: v for v, k in index.items()}
        for k, v in enumerate(comp, start=1):
            alpha[v] = rep.fixed_point[k - 1]
            inputs[v - 1] = tuple(back[j] for j in g.inputs[k - 1])
            tables[v - 1] = g.tables[k - 1]

    parent, depth, order = bfs_forest(G, in_initial)
    for i in order:
        if i in in_initial:
            continue
        p, s, a = parent[i], G.sign(parent[i], i), alpha[parent[i]]
        low = (s == POS and a == 0) or (s == NEG and a > 0) or (s == NULL and a != 1)
        alpha[i] = 0 if low else 1

    # literals are false at the parent's eventual value in the AND form
    # and true at it in the OR form
    lit = {POS: ge(1), NEG: eq(0), NULL: eq(1)}
    for i in G.vertices:
        if i in in_initial:
            continue
        ins = G.in_neighbors(i)
        rule = combine([lit[G.sign(j, i)] for j in ins], "and" if alpha[i] == 0 else "or")
        X = input_digits(q, len(ins))
        inputs[i - 1] = ins
        tables[i - 1] = tuple(int(v) for v in rule(X))

    f = FDS(q, tuple(inputs), tuple(tables))
    height = max(depth.values())
    cert = ConstructionCertificate(
        "extend_initial",
        max(1, r + height),
        ("initial components admit nilpotent functions", f"alphabet size {q}"),
        True,
    )
    return Construction(f, cert, G, {"alpha": tuple(alpha[i] for i in G.vertices), "rho": depth, "r": r})


def default_component_functions(G: SignedDigraph, q: int, budget: int | None = None) -> list[FDS]:
    """Nilpotent systems for each initial component: the three-letter
    construction (clamped up to ``q``) when ``q >= 3``, the exhaustive search
    otherwise."""
    from .decomposition import nilpotent_3letter
    from ..oracle import admits_nilpotent

    out = []
    for comp in initial_components(G):
        sub, _ = G.induced(comp)
        if q >= 3:
            out.append(extend_alphabet(nilpotent_3letter(sub).fds, q))
        else:
            kwargs = {} if budget is None else {"budget": budget}
            ans = admits_nilpotent(sub, 2, signed=True, **kwargs)
            if ans.witness is None:
                raise HypothesisFailed(f"initial component {list(comp)} admits no boolean nilpotent function")
            out.append(ans.witness)
    return out

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_connected_symmetric, random_fds, random_strong, signed_digraphs
from nilpotent import constructions as C
from nilpotent.digraph import NEG, NULL, POS, SignedDigraph, find_wheel, is_primitive
from nilpotent.dynamics import FDS, analyze, interaction_graph, is_G_function
from nilpotent.errors import BadAlphabet, BadParam, HypothesisFailed, NoPrimitiveSubgraph, NoSuchArcError, NotNilpotent
from nilpotent.oracle import NONE, min_nilpotent_class

NULL_INTO_TWO_CYCLES = SignedDigraph(4, [(1, 2, NULL), (2, 3, POS), (3, 2, POS), (2, 4, POS), (4, 2, POS)])


def check(con: C.Construction) -> int:
    """Engine class of a construction, after checking nilpotency, the bound
    and the graph match the certificate promises."""
    rep = analyze(con.fds)
    assert rep.nilpotent
    assert rep.class_ <= con.bound
    assert is_G_function(con.fds, con.graph, signed=con.certificate.signed_match)
    return rep.class_


# -- four letters ----------------------------------------------------------


def test_four_letter_examples():
    loop = SignedDigraph(1, [(1, 1, POS)])
    con = C.nilpotent_4letter(loop)
    assert con.fds.tables[0] == (0, 0, 1, 1)
    assert check(con) <= 2
    empty = C.nilpotent_4letter(SignedDigraph(2))
    assert check(empty) == 1
    assert check(C.nilpotent_4letter(NULL_INTO_TWO_CYCLES)) <= 2


@given(signed_digraphs(max_n=5))
def test_four_letter_class_two(G):
    con = C.nilpotent_4letter(G)
    assert con.fds.q == 4 and con.bound == 2
    check(con)


# -- class two over three letters -----------------------------------------


def test_three_letter_class2_branches():
    signed = SignedDigraph(3, [(1, 2, POS), (2, 3, NEG), (3, 1, POS), (2, 2, NEG)])
    con = C.nilpotent_3letter_class2(signed)
    assert check(con) <= 2
    looped = SignedDigraph(2, [(1, 1, NULL), (2, 2, NULL), (1, 2, POS), (2, 1, NEG)])
    assert check(C.nilpotent_3letter_class2(looped)) <= 2
    with pytest.raises(HypothesisFailed):
        C.nilpotent_3letter_class2(SignedDigraph(2, [(1, 2, NULL), (2, 1, POS)]))


@given(signed_digraphs(max_n=5))
def test_three_letter_class2_when_hypotheses_hold(G):
    single_null = [i for i in G.vertices if len(G.null_in(i)) == 1]
    any_null = all(G.null_in(i) for i in G.vertices)
    if single_null and not any_null:
        with pytest.raises(HypothesisFailed):
            C.nilpotent_3letter_class2(G)
        return
    check(C.nilpotent_3letter_class2(G))


# -- alphabet extension ----------------------------------------------------


def test_extend_alphabet_examples():
    neg = FDS(2, ((1,),), ((1, 0),))
    assert C.extend_alphabet(neg, 2) == neg
    big = C.extend_alphabet(neg, 3)
    assert big.tables[0] == (1, 0, 0)
    with pytest.raises(BadAlphabet):
        C.extend_alphabet(C.extend_alphabet(neg, 3), 2)


def test_extend_alphabet_keeps_the_class():
    rng = np.random.default_rng(4)
    seen = 0
    while seen < 40:
        f = random_fds(rng, int(rng.integers(1, 5)), int(rng.integers(2, 4)), max_in=2)
        rep = analyze(f)
        if not rep.nilpotent:
            continue
        seen += 1
        for t in (f.q, f.q + 1, f.q + 2):
            g = C.extend_alphabet(f, t)
            other = analyze(g)
            assert other.nilpotent and other.class_ == rep.class_
            assert other.fixed_point == rep.fixed_point


# -- extension from the initial components ---------------------------------


def test_extend_from_initial_examples():
    path = SignedDigraph(3, [(1, 2, POS), (2, 3, NEG)])
    comps = [FDS(3, ((),), ((0,),))]
    con = C.extend_from_initial(path, comps)
    assert check(con) <= 1 + 2
    con = C.extend_from_initial(NULL_INTO_TWO_CYCLES, C.default_component_functions(NULL_INTO_TWO_CYCLES, 3))
    assert con.fds.q == 3
    check(con)
    with pytest.raises(HypothesisFailed):
        C.extend_from_initial(NULL_INTO_TWO_CYCLES, [FDS(2, ((),), ((0,),))])


def test_extend_from_initial_rejects_bad_components():
    path = SignedDigraph(2, [(1, 1, POS), (1, 2, POS)])
    ident = FDS(3, ((1,),), ((0, 1, 2),))
    with pytest.raises(NotNilpotent):
        C.extend_from_initial(path, [ident])
    with pytest.raises(HypothesisFailed):
        C.extend_from_initial(path, [FDS(3, ((),), ((0,),))])
    with pytest.raises(HypothesisFailed):
        C.extend_from_initial(path, [])


@settings(max_examples=60)
@given(signed_digraphs(max_n=6), st.sampled_from([3, 4]))
def test_extend_from_initial_over_three_or_four_letters(G, q):
    con = C.extend_from_initial(G, C.default_component_functions(G, q))
    assert con.fds.q == q
    check(con)


def test_extend_from_initial_boolean_via_components():
    # the looped pair {1, 2} is the only initial component; 3 and 4 hang off it
    G = SignedDigraph(4, [(1, 1, POS), (1, 2, POS), (2, 1, NEG), (2, 3, POS), (3, 4, NEG)])
    con = C.extend_from_initial(G, C.default_component_functions(G, 2))
    assert con.fds.q == 2
    check(con)


# -- boolean and-nets --------------------------------------------------------


def test_primitive_andnet_examples():
    chord = SignedDigraph(4, list(C.double_cycle(2, 3).arc_pairs()) + [(3, 1)])
    con = C.primitive_andnet(chord)
    assert con.bound == 11 and check(con) <= 11
    K2 = C.complete_loops(2)
    assert check(C.primitive_andnet(K2)) <= 3
    with pytest.raises(NoPrimitiveSubgraph):
        C.primitive_andnet(C.cycle(4))


def test_primitive_andnet_checks_a_supplied_subgraph():
    G = SignedDigraph(4, list(C.double_cycle(2, 3).arc_pairs()) + [(3, 1)])
    con = C.primitive_andnet(G, C.double_cycle(2, 3))
    assert not is_G_function(con.fds, G, signed=True)
    check(con)
    with pytest.raises(HypothesisFailed):
        C.primitive_andnet(G, G)
    with pytest.raises(NoPrimitiveSubgraph):
        C.primitive_andnet(G, SignedDigraph(4, [(1, 3), (3, 4), (4, 1)]))


def test_primitive_search_is_complete_on_small_graphs():
    rng = np.random.default_rng(5)
    for _ in range(80):
        G = random_strong(rng, int(rng.integers(2, 5)), 0.35, loops=True)
        arcs = G.arc_pairs()
        exists = any(
            is_primitive(SignedDigraph(G.n, sub))
            for k in range(len(arcs))
            for sub in itertools.combinations(arcs, k)
        )
        if exists:
            check(C.primitive_andnet(G))
        else:
            with pytest.raises(NoPrimitiveSubgraph):
                C.primitive_andnet(G)


@pytest.mark.parametrize("ell,r", [(a, b) for a in range(1, 6) for b in range(1, 6) if (a, b) != (1, 1)])
def test_double_cycle_function(ell, r):
    con = C.double_cycle_function(ell, r)
    lo, hi = min(ell, r), max(ell, r)
    if hi % lo:
        assert con is None
        return
    assert check(con) == 2 * hi - 1


def test_double_cycle_function_bad_parameters():
    with pytest.raises(BadParam):
        C.double_cycle_function(1, 1)
    with pytest.raises(BadParam):
        C.double_cycle_function(0, 3)


@pytest.mark.parametrize("ell,r", [(2, 3), (3, 2), (2, 5), (3, 4), (3, 5), (4, 5)])
def test_double_cycle_non_divisible_has_no_function(ell, r):
    assert min_nilpotent_class(C.double_cycle(ell, r), 2, signed=False).outcome == NONE


def test_gab_andnet():
    G = C.double_cycle(1, 3)
    f = C.gab_andnet(G, 1, 2)
    assert interaction_graph(f).sign(1, 2) == NEG
    assert f.tables[1] == (1, 0)
    assert analyze(C.gab_andnet(C.cycle(2), 1, 2)).nilpotent is False
    with pytest.raises(NoSuchArcError):
        C.gab_andnet(G, 2, 1)


def test_strong_loop_examples():
    assert check(C.strong_loop_nilpotent(C.double_cycle(1, 4))) == 7
    assert check(C.strong_loop_nilpotent(C.complete_loops(2))) <= 3
    with pytest.raises(HypothesisFailed):
        C.strong_loop_nilpotent(C.cycle(4))
    with pytest.raises(HypothesisFailed):
        C.strong_loop_nilpotent(SignedDigraph(2, [(1, 1), (1, 2)]))


def test_strong_loop_on_random_graphs():
    rng = np.random.default_rng(6)
    for _ in range(60):
        G = random_strong(rng, int(rng.integers(2, 9)), 0.25, loops=True)
        if not any(G.has_loop(v) for v in G.vertices):
            continue
        con = C.strong_loop_nilpotent(G)
        assert con.bound == 2 * G.n - 1
        check(con)


def test_strong_wheel_examples():
    W = SignedDigraph(4, list(C.wheel(3).arc_pairs()) + [(2, 1)])
    con = C.strong_wheel_nilpotent(W)
    assert con.bound == 2 * 4 - 3 + 1
    check(con)
    with pytest.raises(HypothesisFailed):
        C.strong_wheel_nilpotent(C.cycle(5))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_wheel_good_arc_family_within_bound(m):
    G = C.wheel_good_arc(m)
    con = C.strong_wheel_nilpotent(G)
    assert con.details["wheel"].m == m
    assert con.details["good_arc"] == (m + 2, m + 3)
    check(con)


def test_strong_wheel_on_random_graphs():
    rng = np.random.default_rng(7)
    for _ in range(60):
        G = random_strong(rng, int(rng.integers(3, 9)), 0.3)
        w = find_wheel(G)
        if w is None:
            continue
        con = C.strong_wheel_nilpotent(G)
        assert con.bound == 2 * G.n - w.m + 1
        check(con)


# -- constant classes ---------------------------------------------------------


def test_universal_class3():
    assert check(C.universal_class3(C.complete(3))) == 3
    assert check(C.universal_class3(C.complete(4))) <= 3
    with pytest.raises(HypothesisFailed):
        C.universal_class3(C.complete(2))
    with pytest.raises(HypothesisFailed):
        C.universal_class3(C.complete_loops(3))
    with pytest.raises(HypothesisFailed):
        C.universal_class3(C.cycle(4))


def test_undirected_class3():
    path = SignedDigraph(3, [(1, 2), (2, 1), (2, 3), (3, 2)])
    assert check(C.undirected_class3(path)) == 3
    con = C.undirected_class3(C.complete(3))
    assert con.details["clique"]
    check(con)
    with pytest.raises(HypothesisFailed):
        C.undirected_class3(C.complete(2))
    with pytest.raises(HypothesisFailed):
        C.undirected_class3(C.cycle(3))
    two = SignedDigraph(4, [(1, 2), (2, 1), (3, 4), (4, 3)])
    with pytest.raises(HypothesisFailed):
        C.undirected_class3(two)


def test_undirected_far_set_is_far_and_covering():
    rng = np.random.default_rng(8)
    for _ in range(40):
        G = random_connected_symmetric(rng, int(rng.integers(3, 11)), 0.2)
        con = C.undirected_class3(G)
        check(con)
        if con.details.get("clique"):
            continue
        I = con.details["I"]
        balls = [C.boolean.closed_two_ball(G, i) for i in I]
        assert set().union(*balls) == set(G.vertices)
        for a, b in itertools.combinations(range(len(I)), 2):
            assert I[b] not in balls[a]


def test_loops_added():
    con = C.loops_added_nilpotent(C.cycle(3))
    assert con.bound == 4 and check(con) <= 4
    con = C.loops_added_nilpotent(C.complete(3))
    assert con.bound == 3 and check(con) <= 3
    hub = SignedDigraph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 1)])
    assert C.loops_added_nilpotent(hub).bound == 3
    with pytest.raises(HypothesisFailed):
        C.loops_added_nilpotent(SignedDigraph(2, [(1, 2)]))
    with pytest.raises(HypothesisFailed):
        C.loops_added_nilpotent(C.complete_loops(2))


def test_loops_added_on_random_graphs():
    rng = np.random.default_rng(9)
    for _ in range(60):
        n = int(rng.integers(1, 9))
        G = SignedDigraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)
                              if u != v and rng.random() < 0.3])
        if any(G.in_degree(v) == 0 for v in G.vertices):
            continue
        check(C.loops_added_nilpotent(G))


def test_xor_class2():
    assert check(C.xor_class2(SignedDigraph(3))) == 1
    assert check(C.xor_class2(C.complete_loops(2))) == 2
    with pytest.raises(HypothesisFailed):
        C.xor_class2(SignedDigraph(1, [(1, 1)]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_complete_loops_class2(n):
    assert check(C.complete_loops_class2(n)) == 2


def test_complete_loops_needs_two_vertices():
    with pytest.raises(BadParam):
        C.complete_loops_class2(1)


# -- families -------------------------------------------------------------------


def test_families():
    assert C.gen_family("cycle", 3) == C.cycle(3)
    G = C.gen_family("tight_full", 1)
    assert G == SignedDigraph(3, [(1, 2, POS), (1, 3, NULL), (2, 1, NULL), (3, 1, NULL)])
    assert C.double_cycle(1, 3) == SignedDigraph(3, [(1, 1), (1, 2), (2, 3), (3, 1)])
    assert C.double_cycle(2, 3).arc_pairs() == [(1, 2), (1, 3), (2, 1), (3, 4), (4, 1)]
    assert C.wheel(3).out_neighbors(1) == (2, 3, 4)
    assert C.tight_full(2).n == 7
    for n in range(1, 12):
        assert C.tight_general(n).n == n
    with pytest.raises(BadParam):
        C.gen_family("nope", 1)
    with pytest.raises(BadParam):
        C.gen_family("cycle")
    with pytest.raises(BadParam):
        C.gen_family("cycle", 0)


@pytest.mark.parametrize("n", range(1, 12))
def test_tight_general_three_letter_within_log_bound(n):
    G = C.tight_general(n)
    con = C.nilpotent_3letter(G)
    check(con)
    assert analyze(con.fds).class_ <= n.bit_length() + 1

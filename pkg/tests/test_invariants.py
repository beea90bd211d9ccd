import random
from fractions import Fraction
from itertools import permutations, product
from math import gcd

import pytest

from decomplab.errors import DomainError, InputError, SizeGuardError
from decomplab.graphs import (Graph, complete_graph, complete_bipartite,
                              cycle_graph, path_graph, disjoint_union)
from decomplab.invariants import (THETA_UNDEFINED, bipartite_invariants,
                                  chromatic_number, cn_tuples,
                                  colouring_invariants, degree_gcd,
                                  proper_colourings, rooted_degeneracy, tau_of)


# -- independent oracles ------------------------------------------------------


def oracle_colourings(g, s):
    """Brute force over all colour assignments."""
    for c in product(range(1, s + 1), repeat=g.n):
        if all(c[u] != c[v] for u, v in g.edges):
            yield c


def oracle_theta(g):
    chi = chromatic_number(g)
    assert chi >= 3
    diffs = set()
    for c in oracle_colourings(g, chi):
        for v in range(g.n):
            if c[v] != chi:
                continue
            n1 = sum(1 for u in g.adj[v] if c[u] == 1)
            n2 = sum(1 for u in g.adj[v] if c[u] == 2)
            diffs.add(n1 - n2)
    nz = [abs(d) for d in diffs if d]
    if not nz:
        return 2
    out = 0
    for d in nz:
        out = gcd(out, d)
    return out


def oracle_rooted_degeneracy(k, roots):
    rest = [v for v in range(k.n) if v not in set(roots)]
    best = None
    for order in permutations(rest):
        placed = set(roots)
        worst = 0
        for v in order:
            worst = max(worst, sum(1 for u in k.adj[v] if u in placed))
            placed.add(v)
        best = worst if best is None else min(best, worst)
    return best if best is not None else 0


def random_bipartite(rng, max_n=14):
    s = rng.randint(1, max_n // 2)
    t = rng.randint(1, max_n - s)
    edges = [(i, s + j) for i in range(s) for j in range(t)
             if rng.random() < rng.uniform(.3, .9)]
    g = Graph(s + t, edges)
    keep = [v for v in range(g.n) if g.degree(v) > 0]
    return g.induced(keep)


# -- degree gcd ---------------------------------------------------------------


def test_degree_gcd_examples():
    assert degree_gcd(cycle_graph(4)) == 2
    assert degree_gcd(complete_bipartite(3, 4)) == 1
    assert degree_gcd(complete_graph(5)) == 4


def test_degree_gcd_isolated_rejected():
    with pytest.raises(InputError):
        degree_gcd(Graph(3, [(0, 1)]))


# -- chromatic number ---------------------------------------------------------


def test_chromatic_basics():
    assert chromatic_number(complete_graph(5)) == 5
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(cycle_graph(6)) == 2
    assert chromatic_number(complete_bipartite(3, 3)) == 2
    assert chromatic_number(Graph(4, [])) == 1
    # wheel on 6 spokes: odd wheel is 4-chromatic
    wheel = Graph(6, [(i, (i % 5) + 1) for i in range(1, 6)] +
                  [(0, i) for i in range(1, 6)])
    assert chromatic_number(wheel) == 4


def test_chromatic_matches_oracle_random():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(3, 7)
        g = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                      if rng.random() < .5])
        chi = chromatic_number(g)
        assert any(True for _ in oracle_colourings(g, chi))
        if chi > 1:
            assert not any(True for _ in oracle_colourings(g, chi - 1))


# -- bipartite invariants -----------------------------------------------------


def test_tau_kst_is_gcd():
    for s in range(1, 6):
        for t in range(s, 6):
            if s + t <= 2:
                continue
            inv = bipartite_invariants(complete_bipartite(s, t))
            assert inv.tau == gcd(s, t)


def test_tau_one_with_edge_outside_c4():
    # a path has edges in no 4-cycle, so tau must be 1
    assert bipartite_invariants(path_graph(3)).tau == 1


def test_c6_invariants():
    inv = bipartite_invariants(cycle_graph(6))
    assert inv.tau_tilde == 6
    assert inv.bridge_edges == []
    assert inv.tau == 1  # no edge of C6 lies in a 4-cycle


def test_c4_tau_two():
    inv = bipartite_invariants(cycle_graph(4))
    assert inv.tau == 2 and inv.degree_gcd == 2 and inv.tau_tilde == 4


def test_non_bipartite_rejected_with_odd_cycle():
    with pytest.raises(DomainError) as exc:
        bipartite_invariants(complete_graph(3))
    assert "odd cycle" in str(exc.value)


def test_fact_divisibility_chain_random():
    # tau | gcd and gcd | tau_tilde on random bipartite graphs
    rng = random.Random(5)
    done = 0
    while done < 40:
        g = random_bipartite(rng)
        if g.e < 2:
            continue
        inv = bipartite_invariants(g)
        assert inv.degree_gcd % inv.tau == 0
        assert inv.tau_tilde % inv.degree_gcd == 0
        done += 1


def test_connected_subset_equivalence_random():
    rng = random.Random(6)
    done = 0
    while done < 25:
        g = random_bipartite(rng, max_n=11)
        if g.e < 2:
            continue
        assert tau_of(g) == tau_of(g, connected_only=True)
        done += 1


def test_subset_guard_fires():
    with pytest.raises(SizeGuardError):
        tau_of(complete_bipartite(14, 14))


# -- colouring invariants -----------------------------------------------------


def test_theta_k5_convention():
    inv = colouring_invariants(complete_graph(5))
    assert inv.theta == 2
    assert oracle_theta(complete_graph(5)) == 2


def test_theta_k4_minus_edge():
    g = complete_graph(4).without_edges([(0, 1)])
    inv = colouring_invariants(g)
    assert inv.theta == 1
    assert oracle_theta(g) == 1


def test_theta_bipartite_undefined():
    assert colouring_invariants(cycle_graph(6)).theta is THETA_UNDEFINED


def test_chi_vx_cliques():
    for r in (4, 5):
        inv = colouring_invariants(complete_graph(r))
        assert inv.chi_vx == Fraction(r - 1)
        # cross-check sigma(K_r, v) = 1 by brute force
        chi = r
        best = None
        for c in oracle_colourings(complete_graph(r), chi):
            if c[0] != chi:
                continue
            n1 = sum(1 for u in range(1, r) if c[u] == 1)
            best = n1 if best is None else min(best, n1)
        assert best == 1


def test_chi_vx_bipartite_zero():
    assert colouring_invariants(cycle_graph(4)).chi_vx == 0


def test_chi_cr():
    # K_r: sigma = 1, chi_cr = (r-1) r/(r-1) = r
    inv = colouring_invariants(complete_graph(4))
    assert inv.chi_cr == Fraction(4)
    assert inv.sigma == 1


def test_theta_relabel_invariant():
    rng = random.Random(9)
    g = Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (3, 5), (1, 4)])
    base = colouring_invariants(g).theta
    for _ in range(5):
        perm = list(range(6))
        rng.shuffle(perm)
        assert colouring_invariants(g.relabel(perm)).theta == base


def test_colouring_guard():
    with pytest.raises(SizeGuardError):
        colouring_invariants(complete_bipartite(11, 11).with_edges([(0, 1)]),
                             guard=20)


# -- CN tuples ----------------------------------------------------------------


def test_cn_k3_s3():
    ts = {t.degrees for t in cn_tuples(complete_graph(3), 3)}
    assert ts == {(1, 1)}


def test_cn_k3_s4():
    ts = {t.degrees for t in cn_tuples(complete_graph(3), 4)}
    assert (1, 1, 0) in ts and (1, 0, 1) in ts and (0, 1, 1) in ts


def test_cn_single_edge():
    ts = {t.degrees for t in cn_tuples(Graph(2, [(0, 1)]), 2)}
    assert ts == {(1,)}


def test_cn_requires_enough_colours():
    with pytest.raises(DomainError):
        cn_tuples(complete_graph(3), 2)


def test_cn_witnesses_valid():
    for t in cn_tuples(complete_graph(4), 5):
        c = t.witness_colouring
        g = complete_graph(4)
        assert all(c[u] != c[v] for u, v in g.edges)
        assert c[t.witness_vertex] == 5


# -- rooted degeneracy --------------------------------------------------------


def test_rooted_degeneracy_examples():
    d, order = rooted_degeneracy(complete_graph(4), set())
    assert d == 3
    star = Graph(6, [(0, i) for i in range(1, 6)])
    d, order = rooted_degeneracy(star, {0})
    assert d == 1 and sorted(order) == [1, 2, 3, 4, 5]


def test_rooted_degeneracy_roots_only():
    g = complete_graph(5)
    assert rooted_degeneracy(g, range(5))[0] == 0


def test_rooted_degeneracy_ordering_witness():
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 4)])
    d, order = rooted_degeneracy(g, {0})
    placed = set([0])
    for v in order:
        assert sum(1 for u in g.adj[v] if u in placed) <= d
        placed.add(v)


def test_rooted_degeneracy_matches_bruteforce():
    rng = random.Random(13)
    for _ in range(15):
        n = rng.randint(2, 7)
        g = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                      if rng.random() < .55])
        roots = {v for v in range(n) if rng.random() < .3}
        assert rooted_degeneracy(g, roots)[0] == oracle_rooted_degeneracy(g, roots)


def test_degree_to_gcd_reduction_graph_has_low_rooted_degeneracy():
    # the glue graph used by the star-switcher reduction for a 3-chromatic
    # pattern: a 3-vertex path, a 3-clique, and edges from the path's ends to
    # the clique's last two vertices; rooted at the path it peels at width 3
    chi = 3
    p = 3  # path vertices 0,1,2
    k = Graph(p + chi, [(0, 1), (1, 2)] +
              [(p + i, p + j) for i in range(chi) for j in range(i + 1, chi)] +
              [(end, p + i) for end in (0, 2) for i in range(1, chi)])
    d, _ = rooted_degeneracy(k, {0, 1, 2})
    assert d <= chi == 3


def test_proper_colourings_complete_graph_count():
    # s colours on K_n: s!/(s-n)! labelled colourings
    got = sum(1 for _ in proper_colourings(complete_graph(3), 4))
    assert got == 4 * 3 * 2

import random
from fractions import Fraction

import pytest

from decomplab.errors import InputError
from decomplab.graphs import (Decomposition, EmbeddedCopy, Graph,
                              complete_graph, complete_bipartite, cycle_graph,
                              path_graph)
from decomplab.solver import (FEASIBLE, INFEASIBLE, SAT, UNSAT_DIVISIBILITY,
                              UNSAT_EXHAUSTED, cover_vertex, exact_decompose,
                              fractional_decompose, greedy_decompose,
                              verify_decomposition)

K3 = complete_graph(3)


def test_kirkman_k7():
    res = exact_decompose(K3, complete_graph(7))
    assert res.status == SAT
    assert len(res.decomposition.copies) == 7
    ok, why = verify_decomposition(res.decomposition)
    assert ok, why


def test_k6_unsat_by_degree():
    res = exact_decompose(K3, complete_graph(6))
    assert res.status == UNSAT_DIVISIBILITY
    assert res.report.degree_residues == {v: 1 for v in range(6)}


def test_c4_decomposes_k44():
    res = exact_decompose(cycle_graph(4), complete_bipartite(4, 4))
    assert res.status == SAT
    assert len(res.decomposition.copies) == 4
    assert verify_decomposition(res.decomposition)[0]


def test_kirkman_oracle_3_to_13():
    for n in range(3, 14):
        res = exact_decompose(K3, complete_graph(n), timeout=300)
        expect_sat = n % 6 in (1, 3)
        assert res.sat == expect_sat, f"n={n}: {res.status}"
        if res.sat:
            assert verify_decomposition(res.decomposition)[0]


def test_unsat_by_exhaustion_distinct_from_divisibility():
    # C5 is 2-regular with 5 edges; host: two 5-cycles sharing no edge shape
    # built to be divisible but not decomposable: C10 has 10 edges, degrees 2
    host = cycle_graph(10)
    res = exact_decompose(cycle_graph(5), host)
    assert res.status == UNSAT_EXHAUSTED


def test_target_edges_subset():
    k4 = complete_graph(4)
    tri = frozenset({(0, 1), (0, 2), (1, 2)})
    res = exact_decompose(K3, k4, target_edges=tri)
    assert res.sat and len(res.decomposition.copies) == 1
    with pytest.raises(InputError):
        exact_decompose(K3, cycle_graph(4), target_edges={(0, 2)})


def test_verify_catches_mutations():
    res = exact_decompose(K3, complete_graph(7))
    dec = res.decomposition
    # deleting one copy leaves an uncovered edge
    broken = Decomposition(dec.host, dec.target_edges, dec.copies[1:])
    ok, why = verify_decomposition(broken)
    assert not ok and "uncovered" in why
    # duplicating one copy double-covers
    doubled = Decomposition(dec.host, dec.target_edges,
                            dec.copies + [dec.copies[0]])
    ok, why = verify_decomposition(doubled)
    assert not ok and "twice" in why


def test_verify_wrong_pattern_and_bad_embedding():
    k4 = complete_graph(4)
    dec = Decomposition(k4, k4.edges, [
        EmbeddedCopy(K3, k4, (0, 1, 2)),
        EmbeddedCopy(path_graph(2), k4, (0, 1, 3)),
    ])
    ok, why = verify_decomposition(dec)
    assert not ok and "different pattern" in why


# -- fractional ----------------------------------------------------------------


def test_fractional_k4_forced_half():
    res = fractional_decompose(K3, complete_graph(4), mode="rational")
    assert res.status == FEASIBLE
    sol = res.solution
    assert len(sol.copies) == 4
    assert all(w == Fraction(1, 2) for w in sol.weights)


def test_fractional_k6_quarter_feasible():
    # fractional relaxation ignores the degree obstruction
    res = fractional_decompose(K3, complete_graph(6), mode="rational")
    assert res.status == FEASIBLE
    sol = res.solution
    # each edge of K6 lies in exactly 4 triangles; the uniform 1/4 vector is
    # feasible, and whatever the solver returned must satisfy the system
    for e in complete_graph(6).edges:
        assert sol.weight_on_edge(e) == 1


def test_fractional_tree_infeasible():
    res = fractional_decompose(K3, path_graph(4), mode="rational")
    assert res.status == INFEASIBLE


def test_fractional_float_mode():
    res = fractional_decompose(K3, complete_graph(4), mode="float")
    assert res.status == FEASIBLE
    for e in complete_graph(4).edges:
        assert abs(res.solution.weight_on_edge(e) - 1) < 1e-7


def test_exact_sat_implies_fractional_feasible():
    rng = random.Random(3)
    found = 0
    while found < 4:
        n = rng.randint(4, 9)
        g = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                      if rng.random() < .7])
        res = exact_decompose(K3, g, timeout=10)
        if res.sat:
            found += 1
            assert fractional_decompose(K3, g).status == FEASIBLE


# -- greedy --------------------------------------------------------------------


def test_greedy_k2_empty_leftover():
    g = complete_graph(6)
    out = greedy_decompose(Graph(2, [(0, 1)]), g)
    assert out.leftover.e == 0
    assert len(out.copies) == g.e


def test_greedy_k3_on_k4():
    out = greedy_decompose(K3, complete_graph(4), seed=5)
    assert len(out.copies) == 1
    assert out.leftover.e == 3
    # leftover must be triangle-free
    from decomplab.embeddings import enumerate_embeddings
    assert enumerate_embeddings(K3, out.leftover, limit=1) == []


def test_greedy_c4_leftover_is_c4_free():
    rng = random.Random(11)
    n = 24
    g = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                  if rng.random() < .8])
    out = greedy_decompose(cycle_graph(4), g, seed=1)
    from decomplab.embeddings import enumerate_embeddings
    assert enumerate_embeddings(cycle_graph(4), out.leftover, limit=1) == []
    # covered + leftover = original
    covered = set()
    for c in out.copies:
        es = c.edge_image()
        assert not (es & covered)
        covered |= es
    assert covered | out.leftover.edges == g.edges


def test_greedy_deterministic_per_seed():
    g = complete_graph(9)
    a = greedy_decompose(K3, g, seed=7)
    b = greedy_decompose(K3, g, seed=7)
    assert [c.image for c in a.copies] == [c.image for c in b.copies]


# -- cover_vertex ----------------------------------------------------------------


def test_cover_vertex_k7():
    res = cover_vertex(K3, complete_graph(7), 0)
    assert res.sat
    dec = res.decomposition
    star = {(0, y) for y in range(1, 7)}
    covered = set()
    for c in dec.copies:
        es = c.edge_image()
        assert not (es & covered)
        covered |= es
    assert star <= covered
    assert len(dec.copies) == 3


def test_cover_vertex_k6_residue():
    res = cover_vertex(K3, complete_graph(6), 0)
    assert res.status == UNSAT_DIVISIBILITY
    assert res.report["residue"] == 1


def test_cover_vertex_star_host():
    path2 = path_graph(2)  # the 2-edge path: centre vertex 1
    star = Graph(5, [(0, i) for i in range(1, 5)])
    res = cover_vertex(path2, star, 0)
    assert res.sat and len(res.decomposition.copies) == 2


def test_cover_vertex_unsat_structure():
    # degree divisible but nothing to cover with: star K_{1,2} and pattern K3
    g = Graph(3, [(0, 1), (0, 2)])
    res = cover_vertex(K3, g, 0)
    assert res.status == UNSAT_EXHAUSTED

from itertools import permutations

import pytest

from decomplab.errors import DegreeError, InputError
from decomplab.embeddings import check_map, enumerate_embeddings
from decomplab.graphs import (Graph, GraphMap, complete_graph,
                              complete_bipartite, cycle_graph)
from decomplab.hamilton import hamilton_cycle, edge_disjoint_hamilton_cycles


def brute_force_embeddings(pattern, host):
    """Independent oracle: scan all injections."""
    out = []
    for img in permutations(range(host.n), pattern.n):
        if all(host.has_edge(img[u], img[v]) for u, v in pattern.edges):
            out.append(img)
    return out


def test_k3_in_k4_labelled_count():
    k3, k4 = complete_graph(3), complete_graph(4)
    oracle = brute_force_embeddings(k3, k4)
    assert len(oracle) == 24
    found = enumerate_embeddings(k3, k4)
    assert len(found) == 24
    assert {c.image for c in found} == set(oracle)
    # 4 copies up to vertex set
    assert len({c.vertex_set() for c in found}) == 4
    assert len(enumerate_embeddings(k3, k4, dedup_by_edges=True)) == 4


def test_single_edge_two_embeddings():
    k2 = Graph(2, [(0, 1)])
    host = Graph(2, [(0, 1)])
    found = enumerate_embeddings(k2, host)
    assert sorted(c.image for c in found) == [(0, 1), (1, 0)]


def test_no_room_is_empty():
    assert enumerate_embeddings(cycle_graph(4), complete_graph(3)) == []


def test_pins_respected_and_identity_found():
    c6 = cycle_graph(6)
    found = enumerate_embeddings(c6, c6, pins={0: 0, 1: 1})
    assert any(c.image == tuple(range(6)) for c in found)
    for c in found:
        assert c.image[0] == 0 and c.image[1] == 1
        assert c.is_valid()


def test_pins_must_be_injective():
    k3 = complete_graph(3)
    with pytest.raises(InputError):
        enumerate_embeddings(k3, complete_graph(4), pins={0: 1, 1: 1})


def test_limit_truncates_deterministically():
    k3, k6 = complete_graph(3), complete_graph(6)
    full = enumerate_embeddings(k3, k6)
    head = enumerate_embeddings(k3, k6, limit=7)
    assert [c.image for c in head] == [c.image for c in full[:7]]


def test_matches_brute_force_on_random_patterns():
    import random
    rng = random.Random(7)
    for _ in range(25):
        pn = rng.randint(2, 4)
        hn = rng.randint(pn, 6)
        pat = Graph(pn, [(i, j) for i in range(pn) for j in range(i + 1, pn)
                         if rng.random() < .6])
        host = Graph(hn, [(i, j) for i in range(hn) for j in range(i + 1, hn)
                          if rng.random() < .6])
        got = {c.image for c in enumerate_embeddings(pat, host)}
        assert got == set(brute_force_embeddings(pat, host))


def test_check_map_modes():
    c6 = cycle_graph(6)
    k2 = Graph(2, [(0, 1)])
    fold = GraphMap(c6, k2, (0, 1, 0, 1, 0, 1))
    assert check_map(fold, "homomorphism")
    assert not check_map(fold, "edge_bijective")
    assert check_map(GraphMap(c6, c6, tuple(range(6))), "isomorphism")
    with pytest.raises(InputError):
        check_map(fold, "nonsense")
    with pytest.raises(InputError):
        GraphMap(c6, k2, (0, 1, 0, 1, 0, 5))


# -- hamilton ---------------------------------------------------------------


def cycle_ok(host, cyc):
    n = host.n
    assert sorted(cyc) == list(range(n))
    return all(host.has_edge(cyc[i], cyc[(i + 1) % n]) for i in range(n))


def test_hamilton_k5():
    assert cycle_ok(complete_graph(5), hamilton_cycle(complete_graph(5)))


def test_hamilton_c4_itself():
    c4 = cycle_graph(4)
    assert cycle_ok(c4, hamilton_cycle(c4))


def test_hamilton_k33_alternates():
    g = complete_bipartite(3, 3)
    # brute-force oracle: some hamilton cycle exists
    from itertools import permutations
    assert any(all(g.has_edge(p[i], p[(i + 1) % 6]) for i in range(6))
               for p in permutations(range(6)))
    cyc = hamilton_cycle(g, seed=3)
    assert cycle_ok(g, cyc)
    sides = [0 if v < 3 else 1 for v in cyc]
    assert all(sides[i] != sides[(i + 1) % 6] for i in range(6))


def test_hamilton_degree_error():
    with pytest.raises(DegreeError):
        hamilton_cycle(Graph(4, [(0, 1), (1, 2), (2, 3)]))


def test_hamilton_removal_drops_degrees_by_two():
    g = complete_graph(8)
    cyc = hamilton_cycle(g, seed=1)
    g2 = g.without_edges([(cyc[i], cyc[(i + 1) % 8]) for i in range(8)])
    assert g2.degrees() == [5] * 8


def test_edge_disjoint_hamilton_cycles():
    # K_11 keeps the Dirac margin through all three removals
    g = complete_graph(11)
    cycles, rest = edge_disjoint_hamilton_cycles(g, 3, seed=2)
    seen = set()
    for cyc in cycles:
        for i in range(11):
            e = tuple(sorted((cyc[i], cyc[(i + 1) % 11])))
            assert e not in seen
            seen.add(e)
    assert rest.degrees() == [4] * 11

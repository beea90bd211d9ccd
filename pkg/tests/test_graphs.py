import pytest

from decomplab.errors import InputError
from decomplab.graphs import (Graph, GraphMap, EmbeddedCopy, complete_graph,
                              complete_bipartite, complete_multipartite,
                              cycle_graph, path_graph, disjoint_union)


def test_basic_counts():
    g = complete_graph(5)
    assert len(g) == 5 and g.e == 10
    assert g.degrees() == [4] * 5
    assert complete_bipartite(3, 4).e == 12
    assert cycle_graph(6).degrees() == [2] * 6
    assert path_graph(2).e == 2 and path_graph(2).n == 3


def test_loops_and_range_rejected():
    with pytest.raises(InputError):
        Graph(2, [(0, 0)])
    with pytest.raises(InputError):
        Graph(2, [(0, 2)])


def test_duplicate_edges_collapse():
    g = Graph(3, [(0, 1), (1, 0)])
    assert g.e == 1


def test_induced_and_minus():
    g = complete_graph(4)
    h = g.induced([0, 1, 3])
    assert h.n == 3 and h.e == 3
    g2 = g.without_edges([(0, 1)])
    assert g2.e == 5 and not g2.has_edge(0, 1)


def test_components_and_bipartition():
    g = disjoint_union(cycle_graph(4), path_graph(1))
    assert len(g.components()) == 2
    a, b = g.bipartition()
    assert all((u in a) != (v in a) for u, v in g.edges)
    assert cycle_graph(5).bipartition() is None
    cyc = cycle_graph(5).odd_cycle()
    assert cyc is not None and len(cyc) % 2 == 1


def test_bridges():
    g = path_graph(3)
    assert g.bridges() == [(0, 1), (1, 2), (2, 3)]
    assert cycle_graph(6).bridges() == []
    # two triangles joined by a bridge
    tri2 = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    assert tri2.bridges() == [(2, 3)]
    assert not tri2.edge_in_cycle(2, 3)
    assert tri2.edge_in_cycle(0, 1)


def test_complete_multipartite():
    g = complete_multipartite([2, 3, 4])
    assert g.n == 9
    assert g.e == 2 * 3 + 2 * 4 + 3 * 4
    comp = g.complement()
    assert sorted(len(c) for c in comp.components()) == [2, 3, 4]


def test_graphmap_modes():
    c6 = cycle_graph(6)
    ident = GraphMap(c6, c6, tuple(range(6)))
    assert ident.is_isomorphism()
    # fold C6 onto a single edge via its 2-colouring
    k2 = Graph(2, [(0, 1)])
    fold = GraphMap(c6, k2, (0, 1, 0, 1, 0, 1))
    assert fold.is_homomorphism()
    assert not fold.is_edge_bijective()


def test_embedded_copy_validity():
    k3 = complete_graph(3)
    k4 = complete_graph(4)
    good = EmbeddedCopy(k3, k4, (0, 1, 2))
    assert good.is_valid()
    assert good.edge_image() == frozenset({(0, 1), (0, 2), (1, 2)})
    assert not EmbeddedCopy(k3, k4, (0, 0, 2)).is_valid()
    c4 = cycle_graph(4)
    assert not EmbeddedCopy(c4, k4, (0, 1, 3, 2)).is_valid() or True
    # C4 image 0-1-3-2 has edges 01,13,32,20 -- all in K4, so valid
    assert EmbeddedCopy(c4, k4, (0, 1, 3, 2)).is_valid()


def test_relabel_roundtrip():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    perm = [2, 0, 3, 1]
    h = g.relabel(perm)
    inv = [0] * 4
    for v, p in enumerate(perm):
        inv[p] = v
    assert h.relabel(inv) == g

import pytest
from hypothesis import given

from conftest import small_graphs
from dyncolor.graph import (
    Graph,
    GraphError,
    edge_key,
    parse_graph,
    serialize_graph,
    subdivision_midpoints,
    two_planar_edge_bound_check,
    two_subdivision,
)


def test_builders():
    c5 = Graph.cycle(5)
    assert c5.num_vertices() == 5 and c5.num_edges() == 5
    assert all(c5.degree(v) == 2 for v in c5.vertices())

    p4 = Graph.path(4)
    assert p4.num_vertices() == 4 and p4.num_edges() == 3
    assert sorted(p4.degree(v) for v in p4.vertices()) == [1, 1, 2, 2]

    k5 = Graph.complete(5)
    assert k5.num_edges() == 10
    assert all(k5.degree(v) == 4 for v in k5.vertices())


def test_no_loops():
    with pytest.raises(GraphError):
        Graph.from_edges([0], [(0, 0)])


def test_edge_key_is_sorted():
    assert edge_key(3, 1) == edge_key(1, 3) == (1, 3)


def test_value_semantics():
    g = Graph.cycle(4)
    g2 = g.add_edge(0, 2)
    assert not g.has_edge(0, 2)
    assert g2.has_edge(0, 2)
    assert g == Graph.cycle(4)
    assert g2.remove_edge(0, 2) == g


def test_remove_vertices():
    g = Graph.complete(4).remove_vertices([3])
    assert g == Graph.complete(3)


def test_neighbors_and_components():
    g = Graph.from_edges(range(5), [(0, 1), (1, 2), (3, 4)])
    assert g.neighbors(1) == frozenset({0, 2})
    assert not g.is_connected()
    comps = sorted(sorted(c) for c in g.connected_components())
    assert comps == [[0, 1, 2], [3, 4]]


def test_two_subdivision_of_triangle_is_c6():
    sub, mapping, mids = two_subdivision(Graph.cycle(3))
    assert sub.is_isomorphic_brute(Graph.cycle(6))
    assert len(mids) == 3
    assert set(mapping) == {0, 1, 2}


def test_two_subdivision_k4():
    g = Graph.complete(4)
    sub, mapping, mids = two_subdivision(g)
    assert sub.num_vertices() == 4 + 6
    assert sub.num_edges() == 12
    assert all(sub.degree(m) == 2 for m in mids)
    assert all(sub.degree(mapping[v]) == g.degree(v) for v in g.vertices())
    # no original edge survives: every adjacency goes through a midpoint
    for u, v in g.edges():
        assert not sub.has_edge(mapping[u], mapping[v])


def test_subdivision_midpoints_matches_numbering():
    g = Graph.complete(4)
    sub, _, mids = two_subdivision(g)
    mid_of = subdivision_midpoints(g)
    assert frozenset(mid_of.values()) == mids
    for (u, v), m in mid_of.items():
        assert sub.has_edge(u, m) and sub.has_edge(m, v)


@given(small_graphs())
def test_two_subdivision_shape(g):
    sub, mapping, mids = two_subdivision(g)
    assert sub.num_vertices() == g.num_vertices() + g.num_edges()
    assert sub.num_edges() == 2 * g.num_edges()
    assert all(sub.degree(m) == 2 for m in mids)
    assert len(set(mapping.values())) == len(mapping)


def test_edge_bound_check():
    assert two_planar_edge_bound_check(Graph.complete(8))  # 28 <= 30
    assert not two_planar_edge_bound_check(Graph.complete(9))  # 36 > 35
    with pytest.raises(GraphError):
        two_planar_edge_bound_check(Graph.path(2))


def test_isomorphism_brute():
    relabeled = Graph.from_edges(range(6), [(5, 3), (3, 1), (1, 0), (0, 2), (2, 4), (4, 5)])
    assert Graph.cycle(6).is_isomorphic_brute(relabeled)
    two_triangles = Graph.from_edges(range(6), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert not Graph.cycle(6).is_isomorphic_brute(two_triangles)


def test_parse_graph():
    g = parse_graph("# a square\nv 0\nv 1\nv 2\nv 3\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n")
    assert g == Graph.cycle(4)
    with pytest.raises(GraphError):
        parse_graph("q 1 2\n")
    with pytest.raises(GraphError):
        parse_graph("e 0 0\n")


@given(small_graphs())
def test_graph_round_trip(g):
    assert parse_graph(serialize_graph(g)) == g

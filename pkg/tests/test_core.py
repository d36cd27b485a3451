from itertools import combinations, permutations

import pytest
from hypothesis import given, settings

from rainbowmatch.core import (
    EdgeColoredGraph,
    GraphError,
    Matching,
    class_size,
    color_class,
    color_degree,
    color_degree_restricted,
    colors_between,
    delete_color,
    delete_edge,
    delete_vertex,
    induced_subgraph,
    is_c4_free,
    is_properly_colored,
    is_rainbow_matching,
    is_star_forest,
    is_triangle_free,
    min_color_degree,
    reduce_to_star_forests,
    star_count,
    total_color_degree,
)

from .conftest import colored_graphs, cycle_pairs, graph, proper_graphs, rainbow


def brute_triangle_free(G):
    return not any(
        G.edge_color(a, b) is not None and G.edge_color(b, c) is not None
        and G.edge_color(a, c) is not None
        for a, b, c in combinations(range(G.n_vertices), 3))


def brute_c4_free(G):
    for quad in combinations(range(G.n_vertices), 4):
        for a, b, c, d in permutations(quad):
            if all(G.edge_color(x, y) is not None for x, y in ((a, b), (b, c), (c, d), (d, a))):
                return False
    return True


class TestConstruction:
    def test_canonical_order(self):
        G = graph(3, (2, 1, 5), (1, 0, 4))
        assert G.edges == ((0, 1, 4), (1, 2, 5))

    @pytest.mark.parametrize('edges', [
        [(0, 0, 1)],
        [(0, 1, 1), (1, 0, 2)],
        [(0, 3, 1)],
        [(0, 1, -1)],
    ])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(GraphError):
            EdgeColoredGraph(3, tuple(edges))

    def test_isolated_vertices_count(self):
        G = graph(5, (0, 1, 0))
        assert G.vertices == (0, 1, 2, 3, 4)

    def test_matching_must_be_disjoint(self):
        with pytest.raises(GraphError):
            Matching(((0, 1, 1), (1, 2, 2)))


class TestColorDegree:
    def test_single_edge(self):
        assert color_degree(graph(2, (0, 1, 7)), 0) == 1

    def test_repeated_color_counted_once(self):
        G = graph(3, (0, 1, 3), (0, 2, 3))
        assert color_degree(G, 0) == 1
        assert color_degree_restricted(G, 0, 3) == 2
        assert color_degree_restricted(G, 0, 5) == 0

    def test_rainbow_triangle(self, rainbow_triangle):
        assert [color_degree(rainbow_triangle, v) for v in range(3)] == [2, 2, 2]
        assert all(color_degree_restricted(rainbow_triangle, v, 1) in (0, 1) for v in range(3))
        assert total_color_degree(rainbow_triangle) == 6
        assert min_color_degree(rainbow_triangle) == 2

    def test_totals(self, mono_triangle):
        assert total_color_degree(graph(5)) == 0
        assert total_color_degree(mono_triangle) == 3

    def test_min_color_degree(self, rainbow_triangle):
        assert min_color_degree(graph(4, *rainbow_triangle.edges)) == 0
        assert min_color_degree(graph(2, (0, 1, 0))) == 1
        with pytest.raises(GraphError):
            min_color_degree(graph(0))

    def test_out_of_range(self):
        G = graph(2, (0, 1, 0))
        for fn in (lambda: color_degree(G, 2), lambda: color_degree_restricted(G, -1, 0),
                   lambda: colors_between(G, {5}, {0})):
            with pytest.raises(GraphError):
                fn()

    def test_colors_between(self, rainbow_triangle):
        assert colors_between(graph(2, (0, 1, 7)), {0}, {1}) == {7}
        assert colors_between(graph(3, (0, 1, 7)), {2}, {0, 1}) == set()
        assert colors_between(rainbow_triangle, {0}, {1, 2}) == {1, 3}


class TestColorClasses:
    def test_class_size(self, mono_triangle, proper_k4):
        assert class_size(mono_triangle, 0) == 3
        assert class_size(mono_triangle, 9) == 0
        assert [class_size(proper_k4, r) for r in (0, 1, 2)] == [2, 2, 2]

    def test_star_count(self):
        assert star_count(graph(3, (0, 1, 4), (0, 2, 4)), 4) == 1
        assert star_count(graph(4, (0, 1, 4), (2, 3, 4)), 4) == 2
        assert star_count(graph(4, (0, 1, 4), (1, 2, 4), (2, 3, 4)), 4) == 1
        assert star_count(graph(4, (0, 1, 4)), 9) == 0
        view = color_class(graph(4, (0, 1, 4), (2, 3, 4)), 4)
        assert (view.size, view.component_count) == (2, 2)

    def test_is_star_forest(self, mono_triangle):
        assert is_star_forest(graph(3, (0, 1, 4), (0, 2, 4)), 4)
        assert not is_star_forest(graph(4, (0, 1, 4), (1, 2, 4), (2, 3, 4)), 4)
        assert not is_star_forest(mono_triangle, 0)


class TestPredicates:
    def test_triangle_free(self):
        assert not is_triangle_free(rainbow(3, cycle_pairs(3)))
        assert is_triangle_free(rainbow(4, cycle_pairs(4)))
        assert is_triangle_free(rainbow(5, cycle_pairs(5)))

    def test_c4_free(self, proper_k4):
        assert not is_c4_free(rainbow(4, cycle_pairs(4)))
        assert not is_c4_free(proper_k4)
        assert is_c4_free(rainbow(5, cycle_pairs(5)))

    def test_properly_colored(self):
        assert not is_properly_colored(graph(3, (0, 1, 1), (1, 2, 1)))
        assert is_properly_colored(graph(3, (0, 1, 1), (1, 2, 2)))
        assert is_properly_colored(graph(0))

    def test_rainbow_matching(self):
        G = graph(4, (0, 1, 1), (2, 3, 1), (1, 2, 2))
        assert is_rainbow_matching(G, Matching())
        assert not is_rainbow_matching(G, [(0, 1, 1), (2, 3, 1)])
        H = graph(4, (0, 1, 1), (2, 3, 2))
        assert is_rainbow_matching(H, [(0, 1, 1), (2, 3, 2)])
        assert not is_rainbow_matching(G, [(0, 1, 1), (1, 2, 2)])
        with pytest.raises(GraphError):
            is_rainbow_matching(H, [(0, 1, 2)])

    @given(colored_graphs(max_n=7))
    def test_triangle_free_matches_brute_force(self, G):
        assert is_triangle_free(G) == brute_triangle_free(G)

    @given(colored_graphs(max_n=6))
    def test_c4_free_matches_brute_force(self, G):
        assert is_c4_free(G) == brute_c4_free(G)


class TestDeletions:
    def test_delete_vertex_keeps_ids(self, rainbow_triangle):
        H = delete_vertex(rainbow_triangle, 0)
        assert H.edges == ((1, 2, 2),)
        assert H.vertices == (1, 2)
        assert H.n_vertices == 3
        assert color_degree(H, 0) == 0

    def test_delete_color(self, mono_triangle):
        assert delete_color(mono_triangle, 0).edges == ()

    def test_delete_edge(self, mono_triangle):
        assert delete_edge(mono_triangle, 2, 1).edges == ((0, 1, 0), (0, 2, 0))
        with pytest.raises(GraphError):
            delete_edge(delete_edge(mono_triangle, 1, 2), 1, 2)

    def test_induced_subgraph(self, rainbow_triangle):
        assert induced_subgraph(rainbow_triangle, {0, 1}).edges == ((0, 1, 1),)
        with pytest.raises(GraphError):
            induced_subgraph(rainbow_triangle, {7})


class TestReduction:
    def test_p4(self):
        G = graph(4, (0, 1, 3), (1, 2, 3), (2, 3, 3))
        H = reduce_to_star_forests(G)
        assert H.edges == ((0, 1, 3), (2, 3, 3))
        assert total_color_degree(G) == total_color_degree(H) == 4

    def test_triangle(self, mono_triangle):
        H = reduce_to_star_forests(mono_triangle)
        assert len(H.edges) == 2
        assert H.edges == ((0, 2, 0), (1, 2, 0))
        assert total_color_degree(H) == 3

    def test_fixed_point(self):
        G = graph(5, (0, 1, 3), (0, 2, 3), (3, 4, 3), (1, 2, 4))
        assert reduce_to_star_forests(G) is G


@settings(max_examples=200)
@given(colored_graphs(max_n=8))
def test_degree_invariants(G):
    n_colors = len(G.colors)
    for v in G.vertices:
        assert color_degree(G, v) <= G.degree(v)
        assert color_degree(G, v) <= n_colors
    assert total_color_degree(G) == sum(color_degree(G, v) for v in G.vertices)
    assert is_properly_colored(G) == all(color_degree(G, v) == G.degree(v) for v in G.vertices)
    for r in G.colors:
        s, size = star_count(G, r), class_size(G, r)
        assert s <= size
        support = {x for u, v, _ in G.color_classes[r] for x in (u, v)}
        assert (s == size) == (len(support) == 2 * size)


@given(proper_graphs())
def test_proper_class_size_bound(G):
    assert is_properly_colored(G)
    for r in G.colors:
        assert class_size(G, r) <= G.n_vertices // 2


@given(colored_graphs(max_n=8))
def test_degree_sums_under_structure(G):
    n = G.n_vertices
    for u, v, _ in G.edges:
        if is_triangle_free(G):
            assert G.degree(u) + G.degree(v) <= n
        if is_c4_free(G):
            assert G.degree(u) + G.degree(v) <= n + 1


@settings(max_examples=200)
@given(colored_graphs(max_n=8, max_colors=3))
def test_reduction_laws(G):
    H = reduce_to_star_forests(G)
    assert set(H.edges) <= set(G.edges)
    assert total_color_degree(H) == total_color_degree(G)
    for v in G.vertices:
        assert color_degree(H, v) == color_degree(G, v)
    assert all(is_star_forest(H, r) for r in H.colors)
    assert reduce_to_star_forests(H) == H


@given(colored_graphs(max_n=7))
def test_deletion_recomputes(G):
    for v in G.vertices:
        H = delete_vertex(G, v)
        fresh = EdgeColoredGraph(G.n_vertices, H.edges)
        assert total_color_degree(H) == total_color_degree(fresh)
        assert v not in H.vertices

import itertools
import random

import pytest
import sympy
from pydantic import ValidationError

from kltsurf.core.errors import GraphError
from kltsurf.schemas.graph import DualGraph
from kltsurf.services import dualgraph
from kltsurf.services.dualgraph import (
    chain,
    chain_minors,
    components,
    degree,
    delta,
    determinant,
    fork,
    intersection_matrix,
    is_chain,
    leading_minors,
    path,
    relabel,
    star,
    validate,
)
from kltsurf.services.verify import enumerate_trees


class TestConstruction:
    def test_edges_are_canonical(self):
        graph = DualGraph(weights=(2, 2, 2), edges=((3, 2), (2, 1)))
        assert graph.edges == ((1, 2), (2, 3))

    def test_self_loop_rejected(self):
        with pytest.raises(ValidationError):
            DualGraph(weights=(2, 2), edges=((1, 1),))

    def test_edge_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            DualGraph(weights=(2, 2), edges=((1, 3),))

    def test_empty_graph_rejected(self):
        with pytest.raises(ValidationError):
            DualGraph(weights=())

    def test_fork_layout(self):
        graph = fork((2, 2), 3, (4, 5))
        assert graph.weights == (2, 2, 3, 4, 5)
        assert graph.edges == ((1, 3), (2, 3), (3, 4), (4, 5))

    def test_star_center_is_last(self, d4_star):
        assert d4_star.edges == ((1, 4), (2, 4), (3, 4))
        assert degree(d4_star, 4) == 3

    def test_label(self, chain32):
        assert chain32.label() == "w=3,2|e=1-2"


class TestValidate:
    def test_single_vertex_weight_two(self):
        report = validate(chain((2,)))
        assert report.valid
        assert report.leading_minors == [2]

    def test_chain_22(self):
        report = validate(chain((2, 2)))
        assert report.valid
        assert report.leading_minors == [2, 3]

    def test_weight_one_invalid(self):
        report = validate(chain((1, 2)))
        assert not report.valid
        assert not report.weights_ok
        assert report.is_tree
        assert report.negative_definite
        assert report.leading_minors == [1, 1]
        assert report.problems == ["vertex 1 has weight 1 < 2"]

    def test_repeated_edge(self):
        report = validate(DualGraph(weights=(2, 2), edges=((1, 2), (1, 2))))
        assert not report.simple_edges
        assert not report.is_tree
        assert not report.negative_definite
        assert report.leading_minors == [2, 0]

    def test_disconnected(self):
        report = validate(DualGraph(weights=(2, 2)))
        assert not report.connected
        assert not report.valid
        assert "graph is disconnected" in report.problems

    def test_cycle(self):
        report = validate(DualGraph(weights=(3, 3, 3), edges=((1, 2), (2, 3), (1, 3))))
        assert report.connected
        assert not report.is_tree
        assert "graph has a cycle" in report.problems

    def test_affine_e8_tilde_is_not_negative_definite(self):
        # arms of length 5, 2 and 1 around vertex 6: affine E8, det 0
        weights = (2,) * 9
        edges = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (6, 9))
        report = validate(DualGraph(weights=weights, edges=edges))
        assert report.is_tree
        assert not report.negative_definite

    def test_e8_is_negative_definite(self):
        weights = (2,) * 8
        edges = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8))
        report = validate(DualGraph(weights=weights, edges=edges))
        assert report.valid
        assert delta(DualGraph(weights=weights, edges=edges)) == 1


class TestPath:
    def test_whole_chain(self, chain222):
        assert path(chain222, 1, 3) == frozenset({1, 2, 3})

    def test_single_vertex(self, chain222):
        assert path(chain222, 2, 2) == frozenset({2})

    def test_through_center(self, d4_star):
        assert path(d4_star, 1, 2) == frozenset({1, 4, 2})

    def test_disconnected_graph_raises(self):
        with pytest.raises(GraphError):
            path(DualGraph(weights=(2, 2)), 1, 2)

    def test_out_of_range_raises(self, chain222):
        with pytest.raises(GraphError):
            path(chain222, 1, 4)


class TestDelta:
    @pytest.mark.parametrize(
        "weights, expected",
        [((3,), 3), ((2, 2, 2), 4), ((3, 2), 5), ((2, 3, 2), 8), ((7, 3), 20)],
    )
    def test_examples(self, weights, expected):
        assert delta(chain(weights)) == expected

    def test_empty_is_one(self, chain32):
        assert delta(chain32, frozenset({1, 2})) == 1

    def test_deleted_out_of_range_raises(self, chain32):
        with pytest.raises(GraphError):
            delta(chain32, frozenset({3}))

    @pytest.mark.parametrize("n", range(1, 51))
    def test_all_two_chain(self, n):
        assert delta(chain((2,) * n)) == n + 1

    def test_forest_is_product_of_components(self, d4_star):
        assert components(d4_star, frozenset({4})) == [
            frozenset({1}),
            frozenset({2}),
            frozenset({3}),
        ]
        assert delta(d4_star, frozenset({4})) == 8
        assert delta(d4_star) == 4

    def test_matches_full_submatrix_on_every_subset(self):
        for graph in enumerate_trees(5, 3):
            for size in range(graph.n + 1):
                for deleted in itertools.combinations(graph.vertices, size):
                    keep = [v for v in graph.vertices if v not in deleted]
                    direct = abs(determinant(intersection_matrix(graph, keep)))
                    assert delta(graph, frozenset(deleted)) == direct

    def test_invariant_under_relabeling(self):
        rng = random.Random(3)
        for graph in enumerate_trees(6, 3):
            permutation = list(graph.vertices)
            rng.shuffle(permutation)
            assert delta(relabel(graph, permutation)) == delta(graph)

    def test_deleting_chain_end_decreases(self):
        for weights in itertools.product(range(2, 5), repeat=4):
            graph = chain(weights)
            assert delta(graph) > delta(graph, frozenset({1})) >= 1

    @pytest.mark.parametrize(
        "graph, expected",
        [
            (star((2, 2, 2, 2), 2), 0),
            (star((2, 2, 2, 2), 1), 16),
            (chain((1, 1)), 0),
            (chain((1, 2, 1)), 0),
            (fork((2, 3), 2, (5, 2)), None),
        ],
    )
    def test_tree_recurrence_outside_negative_definite(self, graph, expected):
        direct = abs(determinant(intersection_matrix(graph)))
        assert delta(graph) == direct
        if expected is not None:
            assert direct == expected

    def test_repeated_edge_falls_back_to_elimination(self):
        graph = DualGraph(weights=(3, 3), edges=((1, 2), (1, 2)))
        assert delta(graph) == 5

    def test_long_chain_never_builds_a_dense_matrix(self, fresh_memo, monkeypatch):
        def dense(*args, **kwargs):
            raise AssertionError("dense intersection matrix built")

        monkeypatch.setattr(dualgraph, "intersection_matrix", dense)
        graph = chain((2,) * 20000)
        assert delta(graph) == 20001
        assert delta(graph, frozenset({10000})) == 10000 * 10001
        assert validate(graph).valid


class TestDeterminant:
    @pytest.mark.parametrize(
        "matrix, expected",
        [
            ([], 1),
            ([[5]], 5),
            ([[0, 1], [1, 0]], -1),
            ([[0, 0], [0, 1]], 0),
            ([[1, 2, 3], [4, 5, 6], [7, 8, 10]], -3),
            ([[0, 2, 1], [0, 1, 1], [3, 1, 1]], 3),
        ],
    )
    def test_values(self, matrix, expected):
        assert determinant(matrix) == expected

    def test_tridiagonal_rows_catch_up(self):
        # rows skipped during elimination are rescaled lazily
        graph = chain([3, 2] * 15)
        matrix = intersection_matrix(graph)
        assert determinant(matrix) == sympy.Matrix(matrix).det()

    def test_leading_minors(self):
        assert leading_minors([[3, -1], [-1, 2]]) == [3, 5]
        assert leading_minors([[0, 1], [1, 0]]) == [0, -1]

    def test_chain_minors_match_elimination(self):
        for weights in itertools.product(range(1, 4), repeat=4):
            negated = [[-x for x in row] for row in intersection_matrix(chain(weights))]
            assert chain_minors(weights) == leading_minors(negated)


class TestChainHelpers:
    def test_is_chain(self, chain222, d4_star):
        assert is_chain(chain222)
        assert is_chain(chain((5,)))
        assert not is_chain(d4_star)

    def test_relabel_requires_permutation(self, chain222):
        with pytest.raises(GraphError):
            relabel(chain222, [1, 1, 2])

    def test_relabel_moves_weights(self, chain32):
        swapped = relabel(chain32, [2, 1])
        assert swapped.weights == (2, 3)
        assert swapped.edges == ((1, 2),)

"""
Test Suite: DAG model
Validation rules, reverse adjacency and the instance generators
"""

import os
import sys

import pytest
from hypothesis import given, settings, strategies as st

src_path = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
sys.path.insert(0, src_path)

from qdag.dag import build_reverse, gen_chain_dominated, gen_layered, gen_random_dag, validate_dag
from qdag.errors import DuplicateEdge, EdgeNotForward, IndexOutOfRange, InvalidParams, SinkOrderViolation

pytestmark = pytest.mark.unit


class TestValidateDag:
    """Structural checks on raw edge lists"""

    def test_smallest_nontrivial_dag(self):
        """Triangle on 3 vertices has one sink and degrees (2, 1, 0)"""
        dag = validate_dag([(1, 2), (1, 3), (2, 3)], 3)
        assert dag.n_hat == 2
        assert list(dag.sinks) == [3]
        assert dag.degrees == (2, 1, 0)
        assert dag.m == 3

    def test_backward_edge_rejected(self):
        """Edges must go from a lower to a higher index"""
        with pytest.raises(EdgeNotForward):
            validate_dag([(2, 1)], 2)

    def test_self_loop_rejected(self):
        """A loop is not forward either"""
        with pytest.raises(EdgeNotForward):
            validate_dag([(1, 1)], 1)

    def test_chain_is_sink_ordered(self):
        """Only the last vertex is a sink"""
        dag = validate_dag([(1, 3), (2, 4), (3, 4)], 4)
        assert dag.degrees == (1, 1, 1, 0)
        assert dag.n_hat == 3

    def test_sink_before_non_sink_rejected(self):
        """Vertex 2 is a sink but vertex 3 after it is not"""
        with pytest.raises(SinkOrderViolation):
            validate_dag([(1, 4), (3, 4)], 4)

    def test_duplicate_edge_rejected(self):
        """Parallel edges are not allowed"""
        with pytest.raises(DuplicateEdge):
            validate_dag([(1, 2), (1, 2)], 2)

    def test_endpoint_out_of_range(self):
        """Endpoints must lie in 1..n"""
        with pytest.raises(IndexOutOfRange):
            validate_dag([(1, 5)], 3)

    def test_zero_vertices_rejected(self):
        """n must be positive"""
        with pytest.raises(InvalidParams):
            validate_dag([], 0)

    def test_edgeless_graph_is_all_sinks(self):
        """No edges means n_hat = 0"""
        dag = validate_dag([], 3)
        assert dag.n_hat == 0
        assert list(dag.sinks) == [1, 2, 3]

    def test_weighted_triples(self):
        """(u, v, w) triples make the graph weighted"""
        dag = validate_dag([(1, 2, -4), (2, 3, 7)], 3)
        assert dag.is_weighted
        assert dag.weight(1, 2) == -4
        assert dag.weight(2, 3) == 7

    def test_unweighted_has_unit_weights(self):
        """Unweighted graphs report w = 1"""
        dag = validate_dag([(1, 2)], 2)
        assert not dag.is_weighted
        assert dag.weight(1, 2) == 1

    def test_mixed_weights_rejected(self):
        """Every edge of a weighted graph needs a weight"""
        with pytest.raises(InvalidParams):
            validate_dag([(1, 2, 3), (2, 3)], 3)

    def test_conflicting_weight_sources_rejected(self):
        """A triple and the weights mapping must agree"""
        with pytest.raises(InvalidParams, match="conflicting weights"):
            validate_dag([(1, 2, 3)], 2, weights={(1, 2): 4})

    def test_agreeing_weight_sources_accepted(self):
        """The same weight given twice is fine"""
        dag = validate_dag([(1, 2, 3)], 2, weights={(1, 2): 3})
        assert dag.weight(1, 2) == 3

    def test_weight_outside_int64_rejected(self):
        """Weights are signed 64-bit"""
        with pytest.raises(InvalidParams):
            validate_dag([(1, 2, 1 << 63)], 2)

    def test_adjacency_keeps_input_order(self):
        """D_i lists keep the order edges were given"""
        dag = validate_dag([(1, 3), (1, 2)], 3)
        assert dag.children(1) == (3, 2)


class TestBuildReverse:
    """D' lists"""

    def test_triangle(self):
        """In-neighbours are ascending"""
        rev = build_reverse(validate_dag([(1, 3), (2, 3), (1, 2)], 3))
        assert rev.sources(1) == ()
        assert rev.sources(2) == (1,)
        assert rev.sources(3) == (1, 2)

    def test_single_vertex(self):
        """Empty graph on one vertex"""
        rev = build_reverse(validate_dag([], 1))
        assert rev.sources(1) == ()

    def test_weights_travel_with_parents(self):
        """parents[i] carries w(j, i)"""
        rev = build_reverse(validate_dag([(1, 2, 3), (1, 3, 1), (2, 3, 5)], 3))
        assert rev.parents[3] == ((1, 1), (2, 5))

    @settings(max_examples=50, deadline=None)
    @given(n=st.integers(1, 12), p=st.floats(0, 1), seed=st.integers(0, 10_000))
    def test_reverse_has_same_edge_set(self, n, p, seed):
        """Reversing preserves the edge multiset"""
        dag = gen_random_dag(n, p, seed=seed)
        rev = build_reverse(dag)
        assert sorted(rev.edges()) == sorted(dag.edges())
        assert sum(rev.in_degree(i) for i in range(1, n + 1)) == dag.m


class TestGenerators:
    """Layered, random and chain-dominated instances"""

    def test_two_layers_width_one(self):
        """Path graph 1 -> 2"""
        dag = gen_layered(2, 1, 1.0)
        assert list(dag.edges()) == [(1, 2)]

    def test_complete_layered(self):
        """Density 1 connects consecutive layers completely"""
        dag = gen_layered(3, 2, 1.0)
        assert dag.m == 8
        assert dag.n_hat == 4

    def test_layered_is_deterministic(self):
        """Same parameters and seed give the same graph"""
        assert gen_layered(4, 5, 0.3, seed=9) == gen_layered(4, 5, 0.3, seed=9)

    def test_layered_weights_in_range(self):
        """Sampled weights respect the range"""
        dag = gen_layered(4, 4, 0.5, weight_range=(-3, 3), seed=1)
        assert all(-3 <= dag.weight(u, v) <= 3 for u, v in dag.edges())

    def test_layered_rejects_bad_density(self):
        """Density outside [0, 1]"""
        with pytest.raises(InvalidParams):
            gen_layered(3, 2, 1.5)

    @settings(max_examples=40, deadline=None)
    @given(layers=st.integers(2, 6), width=st.integers(1, 6), density=st.floats(0, 1), seed=st.integers(0, 999))
    def test_layered_non_sinks_all_have_children(self, layers, width, density, seed):
        """n_hat is every vertex outside the last layer"""
        dag = gen_layered(layers, width, density, seed=seed)
        assert dag.n_hat == (layers - 1) * width

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(1, 15), p=st.floats(0, 1), seed=st.integers(0, 999))
    def test_random_dag_is_valid(self, n, p, seed):
        """Renumbered random graphs pass validation with sinks last"""
        dag = gen_random_dag(n, p, seed=seed)
        assert all(dag.out_degree(i) > 0 for i in range(1, dag.n_hat + 1))
        assert all(dag.out_degree(i) == 0 for i in dag.sinks)

    def test_chain_dominated_skips_are_lighter(self):
        """Every skip edge weighs less than the chain it bypasses"""
        dag = gen_chain_dominated(8, skip_prob=0.8, seed=3)
        for u, v in dag.edges():
            if v > u + 1:
                assert dag.weight(u, v) < 10 * (v - u)

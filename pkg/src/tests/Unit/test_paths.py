"""
Test Suite: Paths
Longest paths, diameter and dependency depth
"""

import os
import sys

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

src_path = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
sys.path.insert(0, src_path)

from qdag.dag import gen_layered, gen_random_dag, validate_dag
from qdag.classical_oracles import to_networkx
from qdag.errors import SourceOutOfRange
from qdag.oracle import GLOBAL_VERTEX, Category
from qdag.paths import (
    dependency_depth,
    diameter_classical,
    diameter_quantum,
    longest_paths_classical,
    longest_paths_quantum,
)
from qdag.qprimitives import Mode, SimConfig
from qdag.values import NEG_INF, POS_INF

pytestmark = pytest.mark.unit

EXACT = SimConfig()


def triangle():
    return validate_dag([(1, 2, 3), (1, 3, 1), (2, 3, 5)], 3)


class TestLongestPaths:
    """Boosted MAX relaxation over D' lists"""

    def test_triangle(self):
        """t = (0, 3, 8)"""
        table, _ = longest_paths_quantum(triangle(), 1, EXACT)
        assert table.t == (0, 3, 8)
        assert longest_paths_classical(triangle(), 1).t == (0, 3, 8)

    def test_source_is_sink(self):
        """Only the source itself is reachable"""
        table, ledger = longest_paths_quantum(triangle(), 3, EXACT)
        assert table.t == (NEG_INF, NEG_INF, 0)
        assert ledger.total_queries == 0

    def test_negative_weights(self):
        """Longest means greatest, even when negative"""
        dag = validate_dag([(1, 2, -4), (2, 3, -4), (1, 3, -5)], 3)
        table, _ = longest_paths_quantum(dag, 1, EXACT)
        assert table[3] == -5

    def test_unreachable_stays_neg_inf(self):
        """Vertices not reachable from s keep -inf"""
        dag = validate_dag([(1, 3, 2), (2, 3, 4)], 3)
        table, _ = longest_paths_quantum(dag, 2, EXACT)
        assert table.formatted() == ["-inf", "0", "4"]

    def test_source_out_of_range(self):
        """s must be a vertex"""
        with pytest.raises(SourceOutOfRange):
            longest_paths_quantum(triangle(), 4, EXACT)

    def test_weight_category(self):
        """Relaxation reads are weight queries"""
        _, ledger = longest_paths_quantum(triangle(), 1, EXACT)
        assert ledger.category(Category.WEIGHT) == ledger.total_queries > 0

    def test_boost_override(self):
        """An explicit k scales the per-vertex cost"""
        _, one = longest_paths_quantum(triangle(), 1, EXACT, boost=1)
        _, three = longest_paths_quantum(triangle(), 1, EXACT, boost=3)
        assert three.total_queries == 3 * one.total_queries

    def test_classical_charges_each_edge(self):
        """The baseline reads every weight once"""
        from qdag.oracle import QueryLedger
        ledger = QueryLedger()
        longest_paths_classical(triangle(), 1, ledger)
        assert ledger.total_queries == 3

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(1, 30), p=st.floats(0, 1), seed=st.integers(0, 10_000), data=st.data())
    def test_exact_matches_classical(self, n, p, seed, data):
        """Every entry agrees on random weighted DAGs"""
        dag = gen_random_dag(n, p, seed=seed, weight_range=(-20, 50))
        s = data.draw(st.integers(1, n))
        table, _ = longest_paths_quantum(dag, s, EXACT, seed=seed)
        assert table == longest_paths_classical(dag, s)

    def test_stochastic_errors_underestimate(self):
        """Wrong entries are never above the truth"""
        dag = gen_layered(5, 4, 0.6, weight_range=(1, 9), seed=3)
        truth = longest_paths_classical(dag, 1)
        config = SimConfig(mode=Mode.STOCHASTIC, extremum_boost=1)
        for seed in range(30):
            table, _ = longest_paths_quantum(dag, 1, config, seed=seed)
            assert all(a <= b for a, b in zip(table.t, truth.t))


class TestDiameter:
    """Boosted MIN rows and a final boosted MAX"""

    def test_path(self):
        """1 -> 2 -> 3 has diameter 2"""
        dag = validate_dag([(1, 2), (2, 3)], 3)
        diam, matrix, _ = diameter_quantum(dag, EXACT)
        assert diam == 2
        assert matrix.rows[0] == (0, 1, 2)
        assert matrix.rows[1] == (POS_INF, 0, 1)
        assert matrix.length(2, 1) == -1
        assert diameter_classical(dag) == 2

    def test_edgeless(self):
        """n_hat = 0 gives 0 and no queries"""
        diam, matrix, ledger = diameter_quantum(validate_dag([], 4), EXACT)
        assert diam == 0
        assert matrix.rows == ()
        assert ledger.total_queries == 0

    def test_complete_layered(self):
        """3 layers of width 2"""
        dag = gen_layered(3, 2, 1.0)
        assert diameter_quantum(dag, EXACT)[0] == 2
        assert diameter_classical(dag) == 2

    def test_disjoint_edges(self):
        """Unreachable pairs are ignored by the final max"""
        dag = validate_dag([(1, 3), (2, 4)], 4)
        diam, _, ledger = diameter_quantum(dag, EXACT)
        assert diam == 1
        assert ledger.per_vertex[GLOBAL_VERTEX] > 0

    def test_workers_do_not_change_results(self):
        """Thread pool and serial runs give the same answer and ledger"""
        dag = gen_random_dag(18, 0.3, seed=4)
        config = SimConfig(mode=Mode.STOCHASTIC, extremum_boost=1)
        serial = diameter_quantum(dag, config, seed=12)
        pooled = diameter_quantum(dag, config.model_copy(update={"workers": 4}), seed=12)
        assert serial[0] == pooled[0]
        assert serial[1] == pooled[1]
        assert serial[2] == pooled[2]

    def test_stochastic_rows_overestimate(self):
        """Noisy MIN rows never undercut the BFS distance and every finite entry is a real path"""
        dag = gen_random_dag(16, 0.35, seed=9)
        shortest = dict(nx.all_pairs_shortest_path_length(to_networkx(dag)))
        longest = {z: longest_paths_classical(dag, z).t for z in range(1, dag.n + 1)}
        longest_overall = max(v for row in longest.values() for v in row if v != NEG_INF)
        config = SimConfig(mode=Mode.STOCHASTIC, extremum_boost=1, final_boost=1)
        for seed in range(40):
            diam, matrix, _ = diameter_quantum(dag, config, seed=seed)
            for z in range(1, dag.n_hat + 1):
                for i in range(1, dag.n + 1):
                    entry = matrix.rows[z - 1][i - 1]
                    if i not in shortest[z]:
                        assert entry == POS_INF
                        continue
                    # a noisy MIN may pick an unreachable parent, which reads as no path
                    if entry == POS_INF:
                        continue
                    assert shortest[z][i] <= entry <= longest[z][i - 1]
            # a noisy row can exceed the true diameter, but never the longest path in the graph
            assert 0 <= diam <= longest_overall

    def test_stochastic_diameter_with_exact_rows(self):
        """With error-free rows a noisy final max can only come out low"""
        dag = gen_random_dag(16, 0.35, seed=9)
        truth = diameter_classical(dag)
        config = SimConfig(mode=Mode.STOCHASTIC, extremum_boost=64, final_boost=1)
        for seed in range(40):
            assert diameter_quantum(dag, config, seed=seed)[0] <= truth

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(1, 25), p=st.floats(0, 1), seed=st.integers(0, 10_000))
    def test_exact_matches_bfs(self, n, p, seed):
        """Exact mode equals BFS from every vertex"""
        dag = gen_random_dag(n, p, seed=seed)
        assert diameter_quantum(dag, EXACT, seed=seed)[0] == diameter_classical(dag)


class TestDependencyDepth:
    """Longest chain of dependencies"""

    def test_path(self):
        """1 -> 2 -> 3 from vertex 1"""
        assert dependency_depth(validate_dag([(1, 2), (2, 3)], 3), 1).q == 2

    def test_sink(self):
        """A sink has depth 0"""
        assert dependency_depth(validate_dag([(1, 2), (2, 3)], 3), 3).q == 0

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(1, 20), p=st.floats(0, 1), seed=st.integers(0, 10_000))
    def test_unit_weight_reduction(self, n, p, seed):
        """Equals the largest finite unit-weight longest path from vertex 1"""
        dag = gen_random_dag(n, p, seed=seed)
        table = longest_paths_classical(dag, 1)
        finite = [v for v in table.t if v != NEG_INF]
        assert dependency_depth(dag, 1).q == max(finite)

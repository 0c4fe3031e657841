"""
Test Suite: Equivalence sweeps
Exact-mode runs against the classical references on large seeded batches
"""

import os
import sys

import numpy as np
import pytest

src_path = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
sys.path.insert(0, src_path)

from qdag.circuits import (
    GateKind,
    all_assignments,
    eval_circuit_classical,
    eval_circuit_quantum,
    gen_random_circuit,
    rewrite_xor,
)
from qdag.classical_oracles import brute_force_diameter, brute_force_paths
from qdag.dag import gen_random_dag
from qdag.paths import diameter_classical, diameter_quantum, longest_paths_classical, longest_paths_quantum
from qdag.qprimitives import SimConfig
from qdag.zhegalkin import compile_to_circuit, eval_truth_table, expected_size, random_polynomial

pytestmark = pytest.mark.system

EXACT = SimConfig()


class TestCircuitEquivalence:
    """Quantum evaluation equals classical evaluation"""

    def test_random_circuits(self):
        """500 mixed AND/OR/NAND circuits with random polarities"""
        rng = np.random.default_rng(2024)
        for seed in range(500):
            n_vars = int(rng.integers(2, 17))
            n_function = int(rng.integers(1, 101 - n_vars))
            circuit = gen_random_circuit(n_function, n_vars, seed=seed)
            assignment = {name: int(rng.integers(2)) for name in circuit.variables}
            bit, _ = eval_circuit_quantum(circuit, assignment, EXACT, seed=seed)
            assert bit == eval_circuit_classical(circuit, assignment)

    def test_rewrite_size_and_semantics(self):
        """Rewritten XOR-AND circuits stay within 3x vertices and 6x edges"""
        for seed in range(150):
            circuit = gen_random_circuit(1 + seed % 12, 2 + seed % 7, seed=seed, xor_prob=0.6,
                                         kinds=(GateKind.AND,))
            rewritten = rewrite_xor(circuit)
            assert rewritten.dag.n_hat <= 3 * circuit.dag.n_hat
            assert rewritten.dag.m <= 6 * circuit.dag.m
            for a in all_assignments(circuit.variables):
                assert eval_circuit_classical(rewritten, a) == eval_circuit_classical(circuit, a)


class TestPolynomialEquivalence:
    """Compiled polynomials equal their truth tables"""

    def test_random_polynomials(self):
        """300 polynomials, up to 12 variables and 20 monomials, every assignment"""
        rng = np.random.default_rng(7)
        for seed in range(300):
            v = int(rng.integers(1, 13))
            k = int(rng.integers(1, min(20, 2 ** v - 1) + 1))
            poly = random_polynomial(v, k, seed=seed)
            circuit = compile_to_circuit(poly, allow_literal=True)
            names = circuit.variables
            for a in all_assignments(names):
                full = {f"x{j}": 0 for j in range(1, v + 1)}
                full.update(a)
                assert eval_circuit_classical(circuit, a) == eval_truth_table(poly, full)

    def test_size_formulas(self):
        """a = 0 and every degree >= 2 give the exact vertex and edge counts"""
        for seed in range(100):
            k = 1 + seed % 20
            poly = random_polynomial(10, k, seed=seed, min_degree=2, constant=0)
            circuit = compile_to_circuit(poly)
            assert (circuit.dag.n_hat, circuit.dag.m) == expected_size(poly)


class TestPathEquivalence:
    """Paths problems against their references"""

    def test_longest_paths(self):
        """300 weighted DAGs up to 200 vertices"""
        rng = np.random.default_rng(11)
        for seed in range(300):
            n = int(rng.integers(1, 201))
            dag = gen_random_dag(n, float(rng.uniform(0.01, 0.2)), seed=seed, weight_range=(-50, 100))
            s = int(rng.integers(1, n + 1))
            table, _ = longest_paths_quantum(dag, s, EXACT, seed=seed)
            assert table == longest_paths_classical(dag, s)

    def test_diameters(self):
        """200 unweighted DAGs up to 50 vertices"""
        rng = np.random.default_rng(12)
        for seed in range(200):
            n = int(rng.integers(1, 51))
            dag = gen_random_dag(n, float(rng.uniform(0.02, 0.4)), seed=seed)
            diam, _, _ = diameter_quantum(dag, EXACT, seed=seed)
            assert diam == diameter_classical(dag)

    def test_references_against_brute_force(self):
        """Classical baselines equal exhaustive enumeration"""
        rng = np.random.default_rng(13)
        for seed in range(200):
            n = int(rng.integers(1, 13))
            dag = gen_random_dag(n, float(rng.uniform(0, 1)), seed=seed, weight_range=(-9, 9))
            s = int(rng.integers(1, n + 1))
            assert longest_paths_classical(dag, s) == brute_force_paths(dag, s)
        for seed in range(100):
            n = int(rng.integers(1, 65))
            dag = gen_random_dag(n, float(rng.uniform(0, 0.3)), seed=seed)
            assert diameter_classical(dag) == brute_force_diameter(dag)

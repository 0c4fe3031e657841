"""Trial runners and benchmark sweeps shared by the CLI and the service.

Trial t (1-based) draws from substream t of the run seed, so a report is a pure
function of (input, config, seed, trials).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from qdag.circuits import CircuitDag, eval_circuit_classical, eval_circuit_quantum, rewrite_xor
from qdag.classical_oracles import classical_dp
from qdag.dag import Dag, build_reverse, gen_chain_dominated, gen_layered
from qdag.dp_engine import Combiner, default_boost, run_dp
from qdag.errors import ConstantPolynomial, FormatError, InvalidParams, InvariantViolation
from qdag.formats import LoadedInput
from qdag.oracle import QueryLedger, RandomStream
from qdag.paths import (
    LongestPathTable,
    dependency_depth,
    diameter_classical,
    diameter_quantum,
    longest_paths_classical,
    longest_paths_quantum,
)
from qdag.qprimitives import SimConfig, boost_rule, final_boost_rule
from qdag.reports import BenchRow, RunReport, binomial_upper, bound_value, predicted_error
from qdag.zhegalkin import compile_to_circuit, eval_truth_table, normalize

logger = logging.getLogger(__name__)

BENCH_PROBLEMS = ("dp", "longest-path", "diameter")
BENCH_WIDTH = 16


@dataclass
class TrialStats:
    trials: int = 0
    correct: int = 0
    queries: List[int] = field(default_factory=list)

    def record(self, ok: bool, ledger: QueryLedger) -> None:
        self.trials += 1
        self.correct += int(ok)
        self.queries.append(ledger.total_queries)

    @property
    def failures(self) -> int:
        return self.trials - self.correct

    @property
    def correct_rate(self) -> float:
        return self.correct / self.trials if self.trials else 1.0

    @property
    def mean_queries(self) -> float:
        return sum(self.queries) / len(self.queries) if self.queries else 0.0

    @property
    def max_queries(self) -> int:
        return max(self.queries, default=0)


def trial_streams(seed: int, trials: int) -> Iterator[RandomStream]:
    if trials < 1:
        raise InvalidParams(f"trials must be >= 1, got {trials}")
    root = RandomStream(seed)
    for t in range(1, trials + 1):
        yield root.substream(t)


def _report(
    problem: str,
    dag: Dag,
    config: SimConfig,
    seed: int,
    stats: TrialStats,
    *,
    result,
    reference,
    predicted: float,
    classical_queries: int,
    compiled: Optional[Dict[str, int]] = None,
) -> RunReport:
    return RunReport(
        problem=problem,
        n=dag.n,
        m=dag.m,
        n_hat=dag.n_hat,
        mode=config.mode.value,
        seed=seed,
        trials=stats.trials,
        result=result,
        reference=reference,
        correct_rate=stats.correct_rate,
        mean_queries=stats.mean_queries,
        max_queries=stats.max_queries,
        bound_value=bound_value(problem, dag.n, dag.m, dag.n_hat),
        predicted_error=predicted if config.stochastic else 0.0,
        error_upper_99=binomial_upper(stats.failures, stats.trials),
        classical_queries=classical_queries,
        compiled=compiled,
    )


def circuit_trials(
    circuit: CircuitDag,
    assignment: Dict[str, int],
    config: SimConfig,
    seed: int = 0,
    trials: int = 1,
    *,
    problem: str = "circuit",
    compiled: Optional[Dict[str, int]] = None,
) -> RunReport:
    """Evaluate a circuit `trials` times and compare each answer with the classical one."""
    reference = eval_circuit_classical(circuit, assignment)
    stats = TrialStats()
    first = None
    for stream in trial_streams(seed, trials):
        bit, ledger = eval_circuit_quantum(circuit, assignment, config, rng=stream)
        first = bit if first is None else first
        stats.record(bit == reference, ledger)

    evaluated = max(circuit.dag.n_hat - circuit.root + 1, 0)
    k = default_boost(Combiner.AND, circuit.dag.n_hat, config)
    logger.info("%s trials=%d correct=%d mean_queries=%.1f", problem, stats.trials, stats.correct, stats.mean_queries)
    return _report(
        problem, circuit.dag, config, seed, stats,
        result=first,
        reference=reference,
        predicted=predicted_error(config.epsilon_base, k, evaluated),
        classical_queries=circuit.dag.m,
        compiled=compiled,
    )


def longest_path_trials(
    dag: Dag,
    source: int,
    config: SimConfig,
    seed: int = 0,
    trials: int = 1,
    *,
    boost: Optional[int] = None,
) -> Tuple[RunReport, LongestPathTable]:
    """Returns the report and the first trial's table."""
    classical_ledger = QueryLedger()
    reference = longest_paths_classical(dag, source, classical_ledger)
    stats = TrialStats()
    first: Optional[LongestPathTable] = None
    for stream in trial_streams(seed, trials):
        table, ledger = longest_paths_quantum(dag, source, config, boost=boost, rng=stream)
        first = first or table
        stats.record(table == reference, ledger)

    k = boost or config.extremum_boost or boost_rule(dag.n)
    rev = build_reverse(dag)
    processed = sum(1 for i in range(source + 1, dag.n + 1) if rev.parents[i])
    report = _report(
        "longest-path", dag, config, seed, stats,
        result=first.formatted(),
        reference=reference.formatted(),
        predicted=predicted_error(config.epsilon_base, k, processed),
        classical_queries=classical_ledger.total_queries,
    )
    return report, first


def diameter_trials(dag: Dag, config: SimConfig, seed: int = 0, trials: int = 1) -> RunReport:
    classical_ledger = QueryLedger()
    reference = diameter_classical(dag, classical_ledger)
    stats = TrialStats()
    first = None
    for stream in trial_streams(seed, trials):
        diam, _, ledger = diameter_quantum(dag, config, rng=stream)
        first = diam if first is None else first
        stats.record(diam == reference, ledger)

    k = config.extremum_boost or boost_rule(dag.n)
    rev = build_reverse(dag)
    rows = sum(1 for z in range(1, dag.n_hat + 1) for i in range(z + 1, dag.n + 1) if rev.parents[i])
    k_final = config.final_boost or final_boost_rule(dag.n)
    predicted = 1.0 - (1.0 - predicted_error(config.epsilon_base, k, rows)) * (1.0 - config.epsilon_base**k_final)
    return _report(
        "diameter", dag, config, seed, stats,
        result=first,
        reference=reference,
        predicted=min(1.0, predicted),
        classical_queries=classical_ledger.total_queries,
    )


def chain_depth_error(
    q: int,
    config: SimConfig,
    seed: int = 0,
    trials: int = 2000,
    skip_prob: float = 0.3,
) -> Tuple[int, int]:
    """Wrong answers at the far end of a chain-dominated DAG of depth q, with k = 2*ceil(log2 q).

    Returns (failures, trials).
    """
    dag = gen_chain_dominated(q, skip_prob=skip_prob, seed=seed)
    depth = dependency_depth(dag, 1).q
    k = boost_rule(depth)
    target = q + 1
    expected = longest_paths_classical(dag, 1)[target]
    failures = 0
    for stream in trial_streams(seed, trials):
        table, _ = longest_paths_quantum(dag, 1, config, boost=k, rng=stream)
        failures += int(table[target] != expected)
    logger.info("chain depth q=%d k=%d failures=%d/%d", depth, k, failures, trials)
    return failures, trials


def instance_seed(seed: int, size: int, index: int) -> int:
    """Seed of instance `index` at `size`; independent of the other sizes in a sweep."""
    return int(np.random.SeedSequence([seed, size, index]).generate_state(1)[0])


def layered_for_size(size: int, density: float, seed: int, weight_range=None) -> Dag:
    """Layered DAG with about `size` non-sink vertices, BENCH_WIDTH wide."""
    if size < 1:
        raise InvalidParams(f"size must be >= 1, got {size}")
    width = min(BENCH_WIDTH, size)
    layers = math.ceil(size / width) + 1
    return gen_layered(layers, width, density, weight_range=weight_range, seed=seed)


def _dp_instance(dag: Dag, combiner: Combiner, seed: int) -> Callable[[int], int]:
    rng = np.random.default_rng(seed)
    if combiner.is_boolean:
        values = rng.integers(0, 2, size=dag.n + 1)
    else:
        values = rng.integers(-1000, 1001, size=dag.n + 1)
    table = [int(v) for v in values]
    return lambda j: table[j]


def dp_trials(dag: Dag, combiner: Combiner, config: SimConfig, seed: int, trials: int) -> Tuple[TrialStats, int]:
    """All non-sinks use `combiner`; returns the stats and the classical query count (m)."""
    sink_eval = _dp_instance(dag, combiner, seed)
    combiners = {i: combiner for i in range(1, dag.n_hat + 1)}
    expected, _ = classical_dp(dag, combiners, sink_eval)
    stats = TrialStats()
    for stream in trial_streams(seed, trials):
        result = run_dp(dag, combiners, sink_eval, config, rng=stream)
        stats.record(result.value == expected, result.ledger)
    return stats, dag.m


def bench(
    problem: str,
    sizes: Sequence[int],
    config: SimConfig,
    *,
    combiner: Combiner = Combiner.OR,
    density: float = 0.5,
    trials: int = 1,
    seed: int = 0,
    instances: int = 1,
) -> List[BenchRow]:
    """One row per generated instance, in (size, instance) order."""
    if problem not in BENCH_PROBLEMS:
        raise InvalidParams(f"unknown bench problem {problem!r}; expected one of {', '.join(BENCH_PROBLEMS)}")
    if not sizes or instances < 1:
        raise InvalidParams("bench needs at least one size and one instance")
    combiner = Combiner(combiner)
    rows: List[BenchRow] = []
    for size in sizes:
        for index in range(instances):
            iseed = instance_seed(seed, size, index)
            if problem == "dp":
                tag = f"dp-{combiner.value.lower()}"
                dag = layered_for_size(size, density, iseed)
                stats, classical = dp_trials(dag, combiner, config, iseed, trials)
                measured = (stats.trials, stats.correct_rate, stats.mean_queries, stats.max_queries)
            else:
                tag = problem
                if problem == "longest-path":
                    dag = layered_for_size(size, density, iseed, weight_range=(-10, 100))
                    report, _ = longest_path_trials(dag, 1, config, iseed, trials)
                else:
                    dag = layered_for_size(size, density, iseed)
                    report = diameter_trials(dag, config, iseed, trials)
                classical = report.classical_queries
                measured = (report.trials, report.correct_rate, report.mean_queries, report.max_queries)
            count, rate, mean, worst = measured
            rows.append(BenchRow(
                problem=tag,
                n=dag.n,
                m=dag.m,
                nhat=dag.n_hat,
                mode=config.mode.value,
                seed=iseed,
                trials=count,
                correct_rate=rate,
                mean_queries=mean,
                max_queries=worst,
                classical_queries=classical,
                bound_value=bound_value(tag, dag.n, dag.m, dag.n_hat),
            ))
            logger.info("bench %s size=%d instance=%d nhat=%d m=%d mean_queries=%.1f",
                        tag, size, index, dag.n_hat, dag.m, mean)
    return rows


def evaluate_input(
    loaded: LoadedInput,
    assignment: Dict[str, int],
    config: SimConfig,
    seed: int = 0,
    trials: int = 1,
) -> RunReport:
    """Evaluate a `.circ` or `.anf` input; polynomials and XOR circuits are compiled first."""
    if loaded.kind == "anf":
        poly = normalize(loaded.value)
        try:
            circuit = compile_to_circuit(poly, allow_literal=True)
        except ConstantPolynomial as e:
            return RunReport(
                problem="anf", n=0, m=0, n_hat=0, mode=config.mode.value, seed=seed, trials=trials,
                result=e.constant, reference=e.constant, correct_rate=1.0, mean_queries=0.0,
                max_queries=0, bound_value=0.0, compiled={"k": 0},
            )
        compiled = {"k": poly.k, "n": circuit.dag.n, "m": circuit.dag.m, "nhat": circuit.dag.n_hat}
        report = circuit_trials(circuit, assignment, config, seed, trials, problem="anf", compiled=compiled)
        reference = eval_truth_table(poly, assignment)
        if reference != report.reference:
            raise InvariantViolation(f"compiled circuit gives {report.reference}, truth table gives {reference}")
        return report
    if loaded.kind != "circuit":
        raise FormatError(f"eval needs a .circ or .anf input, got {loaded.kind}")
    circuit = loaded.value
    compiled = None
    if circuit.has_xor:
        circuit = rewrite_xor(circuit)
        compiled = {"n": circuit.dag.n, "m": circuit.dag.m, "nhat": circuit.dag.n_hat}
    return circuit_trials(circuit, assignment, config, seed, trials, compiled=compiled)

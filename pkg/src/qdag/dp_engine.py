"""Generic quantum DP loop over a topologically indexed DAG.

Vertices are processed strictly from n_hat down to `stop_at`; t[i] is the
boosted primitive applied to the values of D_i. Whatever the primitive returns
is written, so stochastic errors propagate exactly as they would on hardware.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Mapping, Optional, Tuple

from qdag.dag import Dag
from qdag.errors import InvariantViolation, MissingCombiner, TypeMismatch
from qdag.oracle import Accessor, Category, QueryLedger, RandomStream
from qdag.qprimitives import (
    Direction,
    SearchBoosting,
    SimConfig,
    boost_rule,
    boosted_extremum,
    boosted_search,
    extremum_cost,
    search_cost,
)
from qdag.values import Value, is_bit

logger = logging.getLogger(__name__)

SinkEval = Callable[[int], Value]
EdgeTransform = Callable[[int, int, Value], Value]


class Combiner(str, Enum):
    AND = "AND"
    OR = "OR"
    NAND = "NAND"
    MAX = "MAX"
    MIN = "MIN"

    @property
    def is_boolean(self) -> bool:
        return self in (Combiner.AND, Combiner.OR, Combiner.NAND)


# (searched value, result when a witness is found, result when none is found)
_SEARCH_RULES = {
    Combiner.AND: (0, 0, 1),
    Combiner.OR: (1, 1, 0),
    Combiner.NAND: (0, 1, 0),
}


@dataclass
class ValueTable:
    """t[1..n_hat] plus the constant-time sink evaluation t_f beyond n_hat."""

    n_hat: int
    sink_eval: SinkEval
    t: List[Optional[Value]] = field(default_factory=list)

    def __post_init__(self):
        if not self.t:
            self.t = [None] * (self.n_hat + 1)

    def write(self, i: int, value: Value) -> None:
        if self.t[i] is not None:
            raise InvariantViolation(f"t[{i}] written twice")
        self.t[i] = value

    def read(self, j: int) -> Value:
        if j > self.n_hat:
            return self.sink_eval(j)
        value = self.t[j]
        if value is None:
            raise InvariantViolation(f"t[{j}] read before it was computed")
        return value

    def values(self) -> Tuple[Optional[Value], ...]:
        """t[1..n_hat]; None for vertices below the stopping index."""
        return tuple(self.t[1:])


@dataclass(frozen=True)
class DpResult:
    value: Value
    table: ValueTable
    ledger: QueryLedger


def default_boost(combiner: Combiner, n_hat: int, config: SimConfig) -> int:
    override = config.search_boost if combiner.is_boolean else config.extremum_boost
    return override or boost_rule(n_hat)


def primitive_cost(combiner: Combiner, d: int, k: int, config: SimConfig) -> int:
    """Charged cost of one vertex before any verification query."""
    if combiner.is_boolean:
        if config.search_boosting is SearchBoosting.REPETITION:
            return k * search_cost(d, config)
        return search_cost(d, config, k)
    return k * extremum_cost(d, config)


def _child_accessor(
    dag: Dag,
    i: int,
    table: ValueTable,
    combiner: Combiner,
    edge_transform: Optional[EdgeTransform],
) -> Accessor:
    children = dag.children(i)

    def fetch(p: int) -> Value:
        j = children[p - 1]
        value = table.read(j)
        if edge_transform is not None:
            value = edge_transform(i, j, value)
        if combiner.is_boolean and not is_bit(value):
            raise TypeMismatch(f"{combiner.value} at vertex {i} reads non-bit value {value} from vertex {j}")
        return value

    return Accessor(len(children), fetch, Category.VALUE, f"D_{i}")


def process_vertex(
    combiner: Combiner,
    accessor: Accessor,
    k: int,
    config: SimConfig,
    rng: RandomStream,
    ledger: QueryLedger,
) -> Value:
    """Apply the boosted primitive for `combiner` to one vertex's children."""
    if combiner.is_boolean:
        target, on_found, on_none = _SEARCH_RULES[combiner]
        outcome = boosted_search(accessor, lambda v: v == target, k, config, rng, ledger)
        return on_found if outcome.found is not None else on_none
    direction = Direction.MAX if combiner is Combiner.MAX else Direction.MIN
    return boosted_extremum(direction, accessor, k, config, rng, ledger).value


def run_dp(
    dag: Dag,
    combiners: Mapping[int, Combiner],
    sink_eval: SinkEval,
    config: SimConfig,
    seed: int = 0,
    *,
    edge_transform: Optional[EdgeTransform] = None,
    stop_at: int = 1,
    rng: Optional[RandomStream] = None,
) -> DpResult:
    """Quantum DP: for i = n_hat ... stop_at, t[i] <- boosted Q_i(t_f(D_i)).

    Returns t[stop_at] (t[1] by default), the table and the run's ledger.
    """
    rng = rng or RandomStream(seed)
    ledger = QueryLedger()
    table = ValueTable(dag.n_hat, sink_eval)
    if not 1 <= stop_at <= max(dag.n_hat, 1):
        raise InvariantViolation(f"stop index {stop_at} outside 1..{dag.n_hat}")

    for i in range(dag.n_hat, stop_at - 1, -1):
        combiner = combiners.get(i)
        if combiner is None:
            raise MissingCombiner(f"vertex {i} has {dag.out_degree(i)} children but no combiner")
        combiner = Combiner(combiner)
        k = default_boost(combiner, dag.n_hat, config)
        accessor = _child_accessor(dag, i, table, combiner, edge_transform)
        with ledger.vertex(i):
            table.write(i, process_vertex(combiner, accessor, k, config, rng, ledger))
        logger.debug("vertex %d %s d=%d k=%d t=%s cost=%d", i, combiner.value, accessor.size, k,
                     table.t[i], ledger.per_vertex[i])

    value = table.read(stop_at) if dag.n_hat else sink_eval(stop_at)
    return DpResult(value=value, table=table, ledger=ledger)

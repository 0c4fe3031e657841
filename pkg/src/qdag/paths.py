"""Longest paths on weighted DAGs and the diameter of unweighted DAGs.

Both quantum versions walk the reverse adjacency lists D'_i in index order and
apply a boosted extremum per vertex. Vertices without incoming edges skip the
primitive and keep their sentinel at no charge.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from qdag.dag import Dag, ReverseAdjacency, build_reverse
from qdag.errors import SourceOutOfRange
from qdag.oracle import GLOBAL_VERTEX, Accessor, Category, QueryLedger, RandomStream
from qdag.qprimitives import Direction, SimConfig, boost_rule, boosted_extremum, final_boost_rule
from qdag.values import NEG_INF, POS_INF, Value, format_value, saturating_add

logger = logging.getLogger(__name__)

# substream id of the diameter's final maximum; row z uses substream z >= 1
FINAL_MAX_STREAM = 0


@dataclass(frozen=True)
class LongestPathTable:
    source: int
    # t[i - 1] is the longest path length from the source to vertex i
    t: Tuple[Value, ...]

    def __getitem__(self, i: int) -> Value:
        return self.t[i - 1]

    def formatted(self) -> List[str]:
        return [format_value(v) for v in self.t]


@dataclass(frozen=True)
class DistanceMatrix:
    # rows[z - 1][i - 1] = shortest path length from z to i, POS_INF when there is none
    rows: Tuple[Tuple[Value, ...], ...]
    diam: int

    def length(self, z: int, i: int) -> int:
        """len(z, i) with -1 for a missing path."""
        value = self.rows[z - 1][i - 1]
        return -1 if value == POS_INF else int(value)


@dataclass(frozen=True)
class DepthDiagnostic:
    source: int
    q: int


def _check_source(dag: Dag, s: int) -> None:
    if not 1 <= s <= dag.n:
        raise SourceOutOfRange(f"source {s} outside 1..{dag.n}")


def _relaxation_accessor(rev: ReverseAdjacency, i: int, t: List[Value]) -> Accessor:
    parents = rev.parents[i]

    def fetch(p: int) -> Value:
        j, w = parents[p - 1]
        return saturating_add(t[j], w)

    return Accessor(len(parents), fetch, Category.WEIGHT, f"D'_{i}")


def longest_paths_quantum(
    dag: Dag,
    source: int,
    config: SimConfig,
    seed: int = 0,
    *,
    boost: Optional[int] = None,
    rng: Optional[RandomStream] = None,
) -> Tuple[LongestPathTable, QueryLedger]:
    """t[i] = boosted MAX over j in D'_i of t[j] + w(j, i), for i = s+1 ... n.

    `boost` overrides the per-vertex k (default: config.extremum_boost, then 2*ceil(log2 n)).
    """
    _check_source(dag, source)
    rng = rng or RandomStream(seed)
    rev = build_reverse(dag)
    k = boost or config.extremum_boost or boost_rule(dag.n)
    ledger = QueryLedger()

    t: List[Value] = [NEG_INF] * (dag.n + 1)
    t[source] = 0
    for i in range(source + 1, dag.n + 1):
        if not rev.parents[i]:
            continue
        accessor = _relaxation_accessor(rev, i, t)
        with ledger.vertex(i):
            t[i] = boosted_extremum(Direction.MAX, accessor, k, config, rng, ledger).value
        logger.debug("longest path vertex %d d'=%d k=%d t=%s cost=%d", i, accessor.size, k, t[i], ledger.per_vertex[i])

    return LongestPathTable(source=source, t=tuple(t[1:])), ledger


def longest_paths_classical(dag: Dag, source: int, ledger: Optional[QueryLedger] = None) -> LongestPathTable:
    """Forward relaxation in index order, O(n + m); every edge weight read is charged once."""
    _check_source(dag, source)
    ledger = ledger if ledger is not None else QueryLedger()
    best: List[Value] = [NEG_INF] * (dag.n + 1)
    best[source] = 0
    for u in range(1, dag.n + 1):
        for v in dag.children(u):
            ledger.charge(Category.WEIGHT)
            if best[u] == NEG_INF:
                continue
            candidate = best[u] + dag.weight(u, v)
            if candidate > best[v]:
                best[v] = candidate
    return LongestPathTable(source=source, t=tuple(best[1:]))


def _distance_row(
    dag: Dag,
    rev: ReverseAdjacency,
    z: int,
    k: int,
    config: SimConfig,
    rng: RandomStream,
) -> Tuple[List[Value], QueryLedger]:
    ledger = QueryLedger()
    t: List[Value] = [POS_INF] * (dag.n + 1)
    t[z] = 0
    for i in range(z + 1, dag.n + 1):
        parents = rev.sources(i)
        if not parents:
            continue
        accessor = Accessor(len(parents), lambda p, ps=parents: t[ps[p - 1]], Category.VALUE, f"D'_{i}")
        with ledger.vertex(i):
            t[i] = saturating_add(boosted_extremum(Direction.MIN, accessor, k, config, rng, ledger).value, 1)
    return t, ledger


def diameter_quantum(
    dag: Dag,
    config: SimConfig,
    seed: int = 0,
    *,
    rng: Optional[RandomStream] = None,
) -> Tuple[int, DistanceMatrix, QueryLedger]:
    """One boosted-MIN shortest-path pass per non-sink start z, then a boosted MAX over all rows.

    Row z draws from substream z and charges its own ledger, so the result does
    not depend on `config.workers`.
    """
    rng = rng or RandomStream(seed)
    rev = build_reverse(dag)
    k = config.extremum_boost or boost_rule(dag.n)
    starts = list(range(dag.n_hat, 0, -1))

    def run(z: int) -> Tuple[List[Value], QueryLedger]:
        return _distance_row(dag, rev, z, k, config, rng.substream(z))

    if config.workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = dict(zip(starts, pool.map(run, starts)))
    else:
        results = {z: run(z) for z in starts}

    ledger = QueryLedger()
    rows: Dict[int, List[Value]] = {}
    for z in starts:
        rows[z], sub = results[z]
        ledger.merge(sub)
        logger.debug("diameter row z=%d cost=%d", z, sub.total_queries)

    diam = 0
    if starts:
        # {0} plus every t^z[i] with i > z; missing paths count as -inf so the max ignores them
        candidates: List[Value] = [0]
        for z in range(1, dag.n_hat + 1):
            candidates.extend(NEG_INF if v == POS_INF else v for v in rows[z][z + 1:])
        accessor = Accessor(len(candidates), lambda p: candidates[p - 1], Category.VALUE, "diameter")
        k_final = config.final_boost or final_boost_rule(dag.n)
        with ledger.vertex(GLOBAL_VERTEX):
            outcome = boosted_extremum(
                Direction.MAX, accessor, k_final, config, rng.substream(FINAL_MAX_STREAM), ledger
            )
        diam = max(int(outcome.value), 0) if outcome.value != NEG_INF else 0

    matrix = DistanceMatrix(rows=tuple(tuple(rows[z][1:]) for z in range(1, dag.n_hat + 1)), diam=diam)
    logger.debug("diameter n=%d nhat=%d diam=%d queries=%d", dag.n, dag.n_hat, diam, ledger.total_queries)
    return diam, matrix, ledger


def diameter_classical(dag: Dag, ledger: Optional[QueryLedger] = None) -> int:
    """BFS from every non-sink vertex; each adjacency entry read is charged once."""
    ledger = ledger if ledger is not None else QueryLedger()
    diam = 0
    for z in range(1, dag.n_hat + 1):
        dist = {z: 0}
        queue = deque([z])
        while queue:
            u = queue.popleft()
            for v in dag.children(u):
                ledger.charge(Category.ADJACENCY)
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        diam = max(diam, max(dist.values()))
    return diam


def dependency_depth(dag: Dag, a: int) -> DepthDiagnostic:
    """Edge count of the longest path starting at vertex a."""
    _check_source(dag, a)
    depth = [-1] * (dag.n + 1)
    depth[a] = 0
    for u in range(a, dag.n + 1):
        if depth[u] < 0:
            continue
        for v in dag.children(u):
            depth[v] = max(depth[v], depth[u] + 1)
    return DepthDiagnostic(source=a, q=max(depth))

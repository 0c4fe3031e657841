"""Graph data model: topologically indexed DAGs with sinks last.

Vertices are 1-based. Every edge (i, j) satisfies i < j, and the vertices with
out-degree zero occupy the last |L| indices. Graphs failing either property are
rejected, never repaired.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from qdag.errors import (
    DuplicateEdge,
    EdgeNotForward,
    IndexOutOfRange,
    InvalidParams,
    SinkOrderViolation,
)
from qdag.values import INT64_MAX, INT64_MIN

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Dag:
    """Immutable adjacency-list DAG. Build it with validate_dag()."""

    n: int
    m: int
    n_hat: int
    # adjacency[i] is D_i for 1 <= i <= n; adjacency[0] is an unused placeholder
    adjacency: Tuple[Tuple[int, ...], ...]
    weights: Optional[Mapping[Edge, int]] = None

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    @property
    def sinks(self) -> range:
        return range(self.n_hat + 1, self.n + 1)

    def children(self, i: int) -> Tuple[int, ...]:
        return self.adjacency[i]

    def out_degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def weight(self, i: int, j: int) -> int:
        """w(i, j); unweighted graphs have unit weights."""
        if self.weights is None:
            return 1
        return self.weights[(i, j)]

    def edges(self) -> Iterator[Edge]:
        for i in range(1, self.n + 1):
            for j in self.adjacency[i]:
                yield (i, j)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(self.adjacency[i]) for i in range(1, self.n + 1))

    def stats(self) -> Dict[str, int]:
        return {"n": self.n, "m": self.m, "nhat": self.n_hat, "sinks": self.n - self.n_hat}


@dataclass(frozen=True)
class ReverseAdjacency:
    """D'_i lists: for each vertex, its in-neighbours ascending, with edge weights."""

    n: int
    # parents[i] is a tuple of (j, w(j, i)) with j ascending
    parents: Tuple[Tuple[Tuple[int, int], ...], ...]

    def sources(self, i: int) -> Tuple[int, ...]:
        return tuple(j for j, _ in self.parents[i])

    def in_degree(self, i: int) -> int:
        return len(self.parents[i])

    def edges(self) -> Iterator[Edge]:
        for i in range(1, self.n + 1):
            for j, _ in self.parents[i]:
                yield (j, i)


def validate_dag(
    edges: Iterable[Sequence[int]],
    n: int,
    weights: Optional[Mapping[Edge, int]] = None,
) -> Dag:
    """Check the structural assumptions and build a Dag.

    `edges` holds (u, v) pairs or (u, v, w) triples; triples make the graph
    weighted, as does a `weights` mapping. Adjacency lists keep input order.
    """
    if n < 1:
        raise InvalidParams(f"vertex count must be positive, got {n}")

    adjacency: List[List[int]] = [[] for _ in range(n + 1)]
    seen = set()
    collected: Dict[Edge, int] = {}
    weighted = weights is not None

    for raw in edges:
        if len(raw) == 3:
            u, v, w = int(raw[0]), int(raw[1]), int(raw[2])
            weighted = True
            collected[(u, v)] = w
        elif len(raw) == 2:
            u, v = int(raw[0]), int(raw[1])
        else:
            raise InvalidParams(f"edge {tuple(raw)} must be (u, v) or (u, v, w)")

        if not (1 <= u <= n and 1 <= v <= n):
            raise IndexOutOfRange(f"edge ({u},{v}) has an endpoint outside 1..{n}")
        if u >= v:
            raise EdgeNotForward(f"edge ({u},{v}) is not forward (need u < v)")
        if (u, v) in seen:
            raise DuplicateEdge(f"edge ({u},{v}) appears more than once")
        seen.add((u, v))
        adjacency[u].append(v)

    if weights is not None:
        for key, w in weights.items():
            if key not in seen:
                raise InvalidParams(f"weight given for missing edge {key}")
            if key in collected and collected[key] != int(w):
                raise InvalidParams(f"edge {key} has conflicting weights {collected[key]} and {int(w)}")
            collected[key] = int(w)

    if weighted:
        missing = [e for e in seen if e not in collected]
        if missing:
            raise InvalidParams(f"edge {sorted(missing)[0]} has no weight")
        for key, w in collected.items():
            if not INT64_MIN <= w <= INT64_MAX:
                raise InvalidParams(f"weight {w} of edge {key} is outside signed 64-bit range")

    n_hat = 0
    first_sink = None
    for i in range(1, n + 1):
        if adjacency[i]:
            if first_sink is not None:
                raise SinkOrderViolation(
                    f"vertex {first_sink} is a sink but vertex {i} after it has out-degree {len(adjacency[i])}"
                )
            n_hat = i
        elif first_sink is None:
            first_sink = i

    dag = Dag(
        n=n,
        m=len(seen),
        n_hat=n_hat,
        adjacency=tuple(tuple(lst) for lst in adjacency),
        weights=MappingProxyType(dict(collected)) if weighted else None,
    )
    logger.debug("validated dag n=%d m=%d nhat=%d", dag.n, dag.m, dag.n_hat)
    return dag


def build_reverse(dag: Dag) -> ReverseAdjacency:
    parents: List[List[Tuple[int, int]]] = [[] for _ in range(dag.n + 1)]
    # scanning sources in ascending order keeps every D'_i sorted
    for i in range(1, dag.n + 1):
        for j in dag.adjacency[i]:
            parents[j].append((i, dag.weight(i, j)))
    return ReverseAdjacency(n=dag.n, parents=tuple(tuple(p) for p in parents))


def _sample_weight(rng: np.random.Generator, weight_range: Optional[Tuple[int, int]]) -> Optional[int]:
    if weight_range is None:
        return None
    lo, hi = weight_range
    return int(rng.integers(lo, hi + 1))


def _check_weight_range(weight_range: Optional[Tuple[int, int]]) -> None:
    if weight_range is not None and weight_range[0] > weight_range[1]:
        raise InvalidParams(f"weight range {weight_range} is empty")


def gen_layered(
    layers: int,
    width: int,
    density: float,
    weight_range: Optional[Tuple[int, int]] = None,
    seed: int = 0,
) -> Dag:
    """Layered DAG: edges only between consecutive layers, sinks in the last layer.

    Each vertex outside the last layer gets at least one outgoing edge, so
    n_hat == (layers - 1) * width.
    """
    if layers < 2 or width < 1:
        raise InvalidParams(f"need layers >= 2 and width >= 1, got layers={layers}, width={width}")
    if not 0.0 <= density <= 1.0:
        raise InvalidParams(f"density must be in [0, 1], got {density}")
    _check_weight_range(weight_range)

    rng = np.random.default_rng(seed)
    edges: List[Tuple[int, ...]] = []
    for layer in range(layers - 1):
        for c in range(width):
            u = layer * width + c + 1
            next_base = (layer + 1) * width + 1
            targets = [next_base + t for t in range(width) if rng.random() < density]
            if not targets:
                targets = [next_base + int(rng.integers(width))]
            for v in targets:
                w = _sample_weight(rng, weight_range)
                edges.append((u, v) if w is None else (u, v, w))
    return validate_dag(edges, layers * width)


def _renumber_sinks_last(n: int, edges: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """Stable partition: non-sinks keep their order, then sinks keep theirs."""
    has_out = [False] * (n + 1)
    for e in edges:
        has_out[e[0]] = True
    order = [i for i in range(1, n + 1) if has_out[i]] + [i for i in range(1, n + 1) if not has_out[i]]
    new_index = {old: new for new, old in enumerate(order, start=1)}
    return [(new_index[e[0]], new_index[e[1]]) + tuple(e[2:]) for e in edges]


def gen_random_dag(
    n: int,
    edge_prob: float,
    seed: int = 0,
    weight_range: Optional[Tuple[int, int]] = None,
) -> Dag:
    """Random forward DAG on n vertices, renumbered so sinks come last."""
    if n < 1 or not 0.0 <= edge_prob <= 1.0:
        raise InvalidParams(f"need n >= 1 and edge_prob in [0, 1], got n={n}, edge_prob={edge_prob}")
    _check_weight_range(weight_range)
    rng = np.random.default_rng(seed)
    edges: List[Tuple[int, ...]] = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < edge_prob:
                w = _sample_weight(rng, weight_range)
                edges.append((u, v) if w is None else (u, v, w))
    return validate_dag(_renumber_sinks_last(n, edges), n)


def gen_chain_dominated(q: int, skip_prob: float = 0.3, seed: int = 0, chain_weight: int = 10) -> Dag:
    """Weighted chain 1 -> 2 -> ... -> q+1 plus lighter forward skip edges.

    Every skip edge (i, j) weighs less than the chain segment it bypasses, so the
    chain is the unique longest path from vertex 1 and its dependency depth is q.
    """
    if q < 1 or chain_weight < 2:
        raise InvalidParams(f"need q >= 1 and chain_weight >= 2, got q={q}, chain_weight={chain_weight}")
    rng = np.random.default_rng(seed)
    n = q + 1
    edges: List[Tuple[int, ...]] = []
    for u in range(1, n):
        edges.append((u, u + 1, chain_weight))
        for v in range(u + 2, n + 1):
            if rng.random() < skip_prob:
                edges.append((u, v, int(rng.integers(1, chain_weight * (v - u)))))
    return validate_dag(edges, n)

"""Reference answers for tests and reports.

Nothing here touches the primitives or the DP engine, so agreement with the
simulated algorithms is an independent check.
"""

from typing import Callable, Mapping, Optional, Tuple

import networkx as nx

from qdag.dag import Dag
from qdag.errors import MissingCombiner, SourceOutOfRange, TooLarge
from qdag.paths import LongestPathTable
from qdag.values import NEG_INF, Value

MAX_PATH_ENUMERATION = 12
MAX_DIAMETER_SCAN = 64


def to_networkx(dag: Dag) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, dag.n + 1))
    for u, v in dag.edges():
        graph.add_edge(u, v, weight=dag.weight(u, v))
    return graph


def brute_force_paths(dag: Dag, source: int) -> LongestPathTable:
    """Enumerate every simple path out of `source` and keep the heaviest per target."""
    if dag.n > MAX_PATH_ENUMERATION:
        raise TooLarge(f"path enumeration is limited to n <= {MAX_PATH_ENUMERATION}, got n={dag.n}")
    if not 1 <= source <= dag.n:
        raise SourceOutOfRange(f"source {source} outside 1..{dag.n}")
    graph = to_networkx(dag)
    best = {v: NEG_INF for v in graph.nodes}
    best[source] = 0
    for target in graph.nodes:
        if target == source:
            continue
        for path in nx.all_simple_paths(graph, source=source, target=target):
            length = sum(graph[a][b]["weight"] for a, b in zip(path, path[1:]))
            best[target] = max(best[target], length)
    return LongestPathTable(source=source, t=tuple(best[v] for v in range(1, dag.n + 1)))


def brute_force_diameter(dag: Dag) -> int:
    """max over ordered pairs of the BFS distance; 0 when no pair is connected."""
    if dag.n > MAX_DIAMETER_SCAN:
        raise TooLarge(f"all-pairs scan is limited to n <= {MAX_DIAMETER_SCAN}, got n={dag.n}")
    graph = to_networkx(dag)
    diam = 0
    for _, lengths in nx.all_pairs_shortest_path_length(graph):
        diam = max(diam, max(lengths.values()))
    return diam


def classical_dp(
    dag: Dag,
    combiners: Mapping[int, str],
    sink_eval: Callable[[int], Value],
    edge_transform: Optional[Callable[[int, int, Value], Value]] = None,
    stop_at: int = 1,
) -> Tuple[Value, Tuple[Value, ...]]:
    """Deterministic evaluation of the same DP with plain any/all/max/min.

    Returns the value at `stop_at` and the table for vertices stop_at..n_hat.
    """
    t = {}

    def read(i: int, j: int) -> Value:
        value = t[j] if j <= dag.n_hat else sink_eval(j)
        return edge_transform(i, j, value) if edge_transform else value

    for i in range(dag.n_hat, stop_at - 1, -1):
        name = combiners.get(i)
        if name is None:
            raise MissingCombiner(f"vertex {i} has no combiner")
        inputs = [read(i, j) for j in dag.children(i)]
        name = str(getattr(name, "value", name)).upper()
        if name == "AND":
            t[i] = int(all(inputs))
        elif name == "OR":
            t[i] = int(any(inputs))
        elif name == "NAND":
            t[i] = int(not all(inputs))
        elif name == "MAX":
            t[i] = max(inputs)
        elif name == "MIN":
            t[i] = min(inputs)
        else:
            raise MissingCombiner(f"vertex {i} has unknown combiner {name!r}")

    value = t[stop_at] if dag.n_hat else sink_eval(stop_at)
    return value, tuple(t[i] for i in range(stop_at, dag.n_hat + 1))

"""The charged black box.

Everything a simulated quantum subroutine inspects (adjacency entries, stored
DP values, edge weights) goes through an Accessor and is charged to a
QueryLedger. Classical bookkeeping around the subroutines is never charged.
"""

from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from qdag.dag import Dag
from qdag.errors import InvariantViolation, OutOfRange
from qdag.values import Value

# ledger key for charges made outside any vertex (e.g. the diameter's final max)
GLOBAL_VERTEX = 0


class Category(str, Enum):
    ADJACENCY = "adjacency"
    VALUE = "value"
    WEIGHT = "weight"
    VERIFICATION = "verification"


@dataclass(frozen=True)
class LedgerSnapshot:
    total_queries: int
    per_category: Mapping[str, int]
    per_vertex: Mapping[int, int]

    def as_dict(self) -> Dict[str, object]:
        return {
            "total_queries": self.total_queries,
            "per_category": dict(self.per_category),
            "per_vertex": {str(k): v for k, v in sorted(self.per_vertex.items())},
        }


@dataclass
class QueryLedger:
    """Per-run query counters. One ledger belongs to one run."""

    total_queries: int = 0
    per_category: Counter = field(default_factory=Counter)
    per_vertex: Counter = field(default_factory=Counter)
    _vertex: int = GLOBAL_VERTEX

    def charge(self, category: Category, count: int = 1) -> None:
        if count < 0:
            raise InvariantViolation(f"negative charge {count}")
        if count == 0:
            return
        self.total_queries += count
        self.per_category[Category(category).value] += count
        self.per_vertex[self._vertex] += count

    @contextmanager
    def vertex(self, index: int) -> Iterator["QueryLedger"]:
        """Attribute every charge inside the block to vertex `index`."""
        previous, self._vertex = self._vertex, index
        try:
            yield self
        finally:
            self._vertex = previous

    def merge(self, other: "QueryLedger") -> None:
        """Add a sub-ledger's counters to this one."""
        self.total_queries += other.total_queries
        self.per_category.update(other.per_category)
        self.per_vertex.update(other.per_vertex)

    def category(self, category: Category) -> int:
        return self.per_category[Category(category).value]


def snapshot(ledger: QueryLedger) -> LedgerSnapshot:
    per_category = {c.value: ledger.per_category[c.value] for c in Category}
    return LedgerSnapshot(
        total_queries=ledger.total_queries,
        per_category=MappingProxyType(per_category),
        per_vertex=MappingProxyType(dict(ledger.per_vertex)),
    )


@dataclass(frozen=True)
class Accessor:
    """Positions 1..size of some stored data, read through `fetch`."""

    size: int
    fetch: Callable[[int], Value]
    category: Category = Category.VALUE
    label: str = ""

    def __len__(self) -> int:
        return self.size


def table_accessor(values, category: Category = Category.VALUE, label: str = "") -> Accessor:
    """Accessor over an in-memory sequence (position p reads values[p - 1])."""
    frozen = tuple(values)
    return Accessor(len(frozen), lambda p: frozen[p - 1], category, label)


def adjacency_accessor(dag: Dag, i: int) -> Accessor:
    """Accessor over D_i: position p returns the p-th out-neighbour of vertex i."""
    children = dag.children(i)
    return Accessor(len(children), lambda p: children[p - 1], Category.ADJACENCY, f"D_{i}")


def charged_read(
    ledger: QueryLedger,
    accessor: Accessor,
    position: int,
    category: Optional[Category] = None,
) -> Value:
    """One inspection: returns the value at `position` and charges exactly 1 query."""
    if not 1 <= position <= accessor.size:
        raise OutOfRange(f"position {position} outside 1..{accessor.size} of {accessor.label or 'accessor'}")
    ledger.charge(category or accessor.category, 1)
    return accessor.fetch(position)


def charged_scan(ledger: QueryLedger, accessor: Accessor, cost: int) -> List[Value]:
    """All positions of `accessor`, charged as one quantum subroutine of `cost` queries.

    A subroutine with query budget `cost` touches the data in superposition; the
    simulator needs the plain values to draw the subroutine's answer, and charges
    the budget instead of d separate reads.
    """
    ledger.charge(accessor.category, cost)
    return [accessor.fetch(p) for p in range(1, accessor.size + 1)]


class RandomStream:
    """Deterministic random draws on numpy's counter-based Philox generator.

    Streams are identified by (seed, path). Substreams extend the path, so
    distinct stream ids under one seed never share a key sequence.
    """

    def __init__(self, seed: int = 0, path: Tuple[int, ...] = ()):
        if seed < 0 or seed >= 1 << 64:
            raise OutOfRange(f"seed {seed} is not a 64-bit unsigned integer")
        self.seed = seed
        self.path = tuple(path)
        seq = np.random.SeedSequence(entropy=seed, spawn_key=self.path)
        self._gen = np.random.Generator(np.random.Philox(seq))

    def substream(self, stream_id: int) -> "RandomStream":
        return RandomStream(self.seed, self.path + (stream_id,))

    def random(self) -> float:
        return float(self._gen.random())

    def bernoulli(self, p: float) -> bool:
        return self.random() < p

    def index(self, count: int) -> int:
        """Uniform draw from 0..count-1."""
        return int(self._gen.integers(count))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

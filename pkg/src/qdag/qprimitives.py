"""Contract-level quantum subroutines.

Each primitive returns an answer drawn from the subroutine's output
distribution and charges its query cost to the ledger. Costs depend only on
(d, k, cost constants); the random stream only decides which answer comes out.

- Search (Grover/BBHT): one-sided. A returned position is always a witness;
  the only failure is reporting none although a witness exists.
- Extremum (Durr-Hoyer): a wrong MAX is a strict underestimate, a wrong MIN a
  strict overestimate.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from qdag.errors import EmptyDomain, InvalidConfig, InvariantViolation
from qdag.oracle import Accessor, Category, QueryLedger, RandomStream, charged_read, charged_scan
from qdag.values import Value

logger = logging.getLogger(__name__)

Predicate = Callable[[Value], bool]


class Mode(str, Enum):
    EXACT = "exact"
    STOCHASTIC = "stochastic"


class SearchBoosting(str, Enum):
    AMPLIFICATION = "amplification"
    REPETITION = "repetition"


class Direction(str, Enum):
    MAX = "max"
    MIN = "min"


class SimConfig(BaseModel):
    """Simulation settings shared by every algorithm."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: Mode = Mode.EXACT
    epsilon_base: float = Field(0.5, gt=0.0, le=0.5)
    c_search: float = Field(2.0, gt=0.0)
    c_extremum: float = Field(8.0, gt=0.0)
    # None means "use the algorithm's own boost rule"
    search_boost: Optional[int] = Field(None, ge=1)
    extremum_boost: Optional[int] = Field(None, ge=1)
    final_boost: Optional[int] = Field(None, ge=1)
    search_boosting: SearchBoosting = SearchBoosting.AMPLIFICATION
    workers: int = Field(1, ge=1)

    @classmethod
    def build(cls, **kwargs) -> "SimConfig":
        """Construct from loose keyword arguments, reporting problems as InvalidConfig."""
        try:
            return cls(**{k: v for k, v in kwargs.items() if v is not None})
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(p) for p in first.get("loc", ()))
            raise InvalidConfig(f"{field}: {first.get('msg')}") from e

    @property
    def stochastic(self) -> bool:
        return self.mode is Mode.STOCHASTIC


@dataclass(frozen=True)
class SearchOutcome:
    found: Optional[int]
    queries_charged: int


@dataclass(frozen=True)
class ExtremumOutcome:
    arg: int
    value: Value
    queries_charged: int


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def boost_rule(x: int) -> int:
    """k = 2 * ceil(log2 x), at least 1."""
    return max(1, 2 * ceil_log2(x))


def final_boost_rule(n: int) -> int:
    """k = ceil(log2 n), at least 1 (the diameter's final maximum)."""
    return max(1, ceil_log2(n))


def ceil_scaled_sqrt(c: float, x: int) -> int:
    """ceil(c * sqrt(x)) computed exactly, with c read as a rational."""
    cf = Fraction(c).limit_denominator(10**9)
    target = cf * cf * x
    q = math.isqrt(target.numerator // target.denominator)
    while q * q < target:
        q += 1
    return q


def search_cost(d: int, config: SimConfig, k: int = 1) -> int:
    """ceil(c_search * sqrt(k * d)): one search, or one amplitude-amplified search."""
    return ceil_scaled_sqrt(config.c_search, k * d)


def extremum_cost(d: int, config: SimConfig) -> int:
    return ceil_scaled_sqrt(config.c_extremum, d)


def _require_domain(accessor: Accessor) -> int:
    if accessor.size < 1:
        raise EmptyDomain(f"{accessor.label or 'search domain'} is empty")
    return accessor.size


def _witnesses(values: Sequence[Value], predicate: Predicate) -> List[int]:
    return [p for p, v in enumerate(values, start=1) if predicate(v)]


def _draw_witness(witnesses: List[int], miss: float, config: SimConfig, rng: RandomStream) -> Optional[int]:
    if not witnesses:
        return None
    if not config.stochastic:
        return witnesses[0]
    if rng.bernoulli(miss):
        return None
    return witnesses[rng.index(len(witnesses))]


def _verified(
    found: Optional[int],
    cost: int,
    accessor: Accessor,
    predicate: Predicate,
    ledger: QueryLedger,
) -> SearchOutcome:
    if found is None:
        return SearchOutcome(None, cost)
    value = charged_read(ledger, accessor, found, Category.VERIFICATION)
    if not predicate(value):
        raise InvariantViolation(f"search returned non-witness position {found} of {accessor.label}")
    return SearchOutcome(found, cost + 1)


def grover_search(
    accessor: Accessor,
    predicate: Predicate,
    config: SimConfig,
    rng: RandomStream,
    ledger: QueryLedger,
) -> SearchOutcome:
    """Search positions 1..d for a witness of `predicate`; error <= epsilon_base."""
    d = _require_domain(accessor)
    cost = search_cost(d, config)
    values = charged_scan(ledger, accessor, cost)
    found = _draw_witness(_witnesses(values, predicate), config.epsilon_base, config, rng)
    return _verified(found, cost, accessor, predicate, ledger)


def boosted_search_aa(
    accessor: Accessor,
    predicate: Predicate,
    k: int,
    config: SimConfig,
    rng: RandomStream,
    ledger: QueryLedger,
) -> SearchOutcome:
    """Amplitude-amplified search: cost ceil(c*sqrt(k*d)), miss probability epsilon_base**k."""
    d = _require_domain(accessor)
    if k < 1:
        raise InvalidConfig(f"boost count must be >= 1, got {k}")
    cost = search_cost(d, config, k)
    values = charged_scan(ledger, accessor, cost)
    found = _draw_witness(_witnesses(values, predicate), config.epsilon_base**k, config, rng)
    return _verified(found, cost, accessor, predicate, ledger)


def boosted_search_repeat(
    accessor: Accessor,
    predicate: Predicate,
    k: int,
    config: SimConfig,
    rng: RandomStream,
    ledger: QueryLedger,
) -> SearchOutcome:
    """k independent unverified searches, first hit verified once: cost k*ceil(c*sqrt(d))."""
    d = _require_domain(accessor)
    if k < 1:
        raise InvalidConfig(f"boost count must be >= 1, got {k}")
    cost = k * search_cost(d, config)
    values = charged_scan(ledger, accessor, cost)
    witnesses = _witnesses(values, predicate)
    found = None
    for _ in range(k):
        found = _draw_witness(witnesses, config.epsilon_base, config, rng)
        if found is not None:
            break
    return _verified(found, cost, accessor, predicate, ledger)


def boosted_search(
    accessor: Accessor,
    predicate: Predicate,
    k: int,
    config: SimConfig,
    rng: RandomStream,
    ledger: QueryLedger,
) -> SearchOutcome:
    if config.search_boosting is SearchBoosting.REPETITION:
        return boosted_search_repeat(accessor, predicate, k, config, rng, ledger)
    return boosted_search_aa(accessor, predicate, k, config, rng, ledger)


def _best(direction: Direction, values: Sequence[Value], positions: Sequence[int]) -> Tuple[int, Value]:
    """Extremum over `positions`, ties to the smallest index."""
    arg = positions[0]
    best = values[arg - 1]
    for p in positions[1:]:
        v = values[p - 1]
        if (v > best) if direction is Direction.MAX else (v < best):
            arg, best = p, v
    return arg, best


def _dh_once(direction: Direction, values: Sequence[Value], config: SimConfig, rng: RandomStream) -> Tuple[int, Value]:
    positions = range(1, len(values) + 1)
    arg, best = _best(direction, values, positions)
    if not config.stochastic or not rng.bernoulli(config.epsilon_base):
        return arg, best
    rest = [p for p in positions if values[p - 1] != best]
    if not rest:
        return arg, best
    return _best(direction, values, rest)


def dh_extremum(
    direction: Direction,
    accessor: Accessor,
    config: SimConfig,
    rng: RandomStream,
    ledger: QueryLedger,
) -> ExtremumOutcome:
    """Durr-Hoyer maximum/minimum: cost ceil(c_extremum*sqrt(d)), error <= epsilon_base."""
    d = _require_domain(accessor)
    cost = extremum_cost(d, config)
    values = charged_scan(ledger, accessor, cost)
    arg, value = _dh_once(direction, values, config, rng)
    return ExtremumOutcome(arg, value, cost)


def boosted_extremum(
    direction: Direction,
    accessor: Accessor,
    k: int,
    config: SimConfig,
    rng: RandomStream,
    ledger: QueryLedger,
) -> ExtremumOutcome:
    """k Durr-Hoyer runs combined classically by MAX/MIN: cost k*ceil(c*sqrt(d))."""
    d = _require_domain(accessor)
    if k < 1:
        raise InvalidConfig(f"boost count must be >= 1, got {k}")
    cost = k * extremum_cost(d, config)
    values = charged_scan(ledger, accessor, cost)
    results = [_dh_once(direction, values, config, rng) for _ in range(k)]
    # combining the k answers is classical bookkeeping and is not charged
    best_arg, best_value = results[0]
    for arg, value in results[1:]:
        better = value > best_value if direction is Direction.MAX else value < best_value
        if better or (value == best_value and arg < best_arg):
            best_arg, best_value = arg, value
    return ExtremumOutcome(best_arg, best_value, cost)

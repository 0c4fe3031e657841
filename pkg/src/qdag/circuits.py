"""Boolean circuit DAGs: AND / OR / NAND / XOR gates over shared variable sinks.

Edges carry a polarity bit: 1 passes the child's value, 0 negates it
(x^1 = x, x^0 = NOT x). The root has no parents; `output_negated` flips the
final answer, which is how a Zhegalkin constant a = 1 is expressed.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from qdag.dag import Dag, Edge, validate_dag
from qdag.dp_engine import Combiner, run_dp
from qdag.errors import (
    ConflictingAssignment,
    FanoutOne,
    InvalidParams,
    MissingPolarity,
    MissingVariable,
    NonBinaryXor,
    RootHasParent,
    VarWithChildren,
    XorPresent,
)
from qdag.oracle import QueryLedger, RandomStream
from qdag.qprimitives import SimConfig

logger = logging.getLogger(__name__)

Assignment = Mapping[str, int]


class GateKind(str, Enum):
    AND = "AND"
    OR = "OR"
    NAND = "NAND"
    XOR = "XOR"
    VAR = "VAR"


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    name: Optional[str] = None


@dataclass(frozen=True)
class RawCircuit:
    """Unvalidated circuit description, as read from a file or built in code."""

    n: int
    gates: Mapping[int, Gate]
    # (u, v, polarity); a polarity of None means the label was missing
    edges: Sequence[Tuple[int, int, Optional[int]]]
    root: int = 1
    output_negated: bool = False


@dataclass(frozen=True)
class CircuitDag:
    dag: Dag
    # gates[i] for 1 <= i <= n; gates[0] is None
    gates: Tuple[Optional[Gate], ...]
    polarity: Mapping[Edge, int]
    root: int
    output_negated: bool

    def kind(self, i: int) -> GateKind:
        return self.gates[i].kind

    @property
    def function_vertices(self) -> int:
        return self.dag.n_hat

    @property
    def has_xor(self) -> bool:
        return any(g is not None and g.kind is GateKind.XOR for g in self.gates)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.gates[1:] if g.kind is GateKind.VAR)

    def stats(self) -> Dict[str, int]:
        return {
            "n": self.dag.n,
            "m": self.dag.m,
            "nhat": self.dag.n_hat,
            "variables": len(self.variables),
            "root": self.root,
        }


def validate_circuit(raw: RawCircuit) -> CircuitDag:
    """Check the circuit-model rules on top of the DAG rules."""
    for u, v, pol in raw.edges:
        if pol not in (0, 1):
            raise MissingPolarity(f"edge ({u},{v}) has polarity {pol!r}; expected 0 or 1")
    dag = validate_dag([(u, v) for u, v, _ in raw.edges], raw.n)

    gates: List[Optional[Gate]] = [None]
    names = set()
    for i in range(1, raw.n + 1):
        gate = raw.gates.get(i)
        if gate is None:
            raise InvalidParams(f"vertex {i} has no gate")
        d = dag.out_degree(i)
        if gate.kind is GateKind.VAR:
            if d > 0:
                raise VarWithChildren(f"variable vertex {i} ({gate.name}) has {d} children")
            if not gate.name:
                raise InvalidParams(f"variable vertex {i} has no name")
            if gate.name in names:
                raise InvalidParams(f"variable {gate.name} labels more than one vertex")
            names.add(gate.name)
        elif gate.kind is GateKind.XOR:
            if d != 2:
                raise NonBinaryXor(f"XOR vertex {i} has {d} children; only binary XOR is supported")
        elif d < 2:
            raise FanoutOne(f"{gate.kind.value} vertex {i} has {d} children; function vertices need at least 2")
        gates.append(gate)

    s = raw.root
    if not 1 <= s <= raw.n:
        raise InvalidParams(f"root {s} outside 1..{raw.n}")
    parents = [u for u, v, _ in raw.edges if v == s]
    if parents:
        raise RootHasParent(f"root {s} has an incoming edge from {parents[0]}")
    if dag.n_hat > 0 and s > dag.n_hat:
        raise InvalidParams(f"root {s} is a variable but the circuit has {dag.n_hat} function vertices")

    return CircuitDag(
        dag=dag,
        gates=tuple(gates),
        polarity=MappingProxyType({(u, v): int(p) for u, v, p in raw.edges}),
        root=s,
        output_negated=bool(raw.output_negated),
    )


def parse_assignment(items: Iterable[str]) -> Dict[str, int]:
    """`["x1=1", "x2=0,x3=1"]` -> {"x1": 1, "x2": 0, "x3": 1}."""
    result: Dict[str, int] = {}
    for item in items:
        for part in filter(None, (p.strip() for p in item.split(","))):
            name, sep, bit = part.partition("=")
            name, bit = name.strip(), bit.strip()
            if not sep or not name or bit not in ("0", "1"):
                raise InvalidParams(f"assignment {part!r} must look like name=0 or name=1")
            if name in result and result[name] != int(bit):
                raise ConflictingAssignment(f"variable {name} assigned both {result[name]} and {bit}")
            result[name] = int(bit)
    return result


def _resolve(circuit: CircuitDag, assignment: Assignment) -> Dict[str, int]:
    values = {}
    for name in circuit.variables:
        if name not in assignment:
            raise MissingVariable(f"no value for variable {name}")
        bit = assignment[name]
        if bit not in (0, 1):
            raise InvalidParams(f"variable {name} must be 0 or 1, got {bit!r}")
        values[name] = int(bit)
    return values


def _literal(value: int, polarity: int) -> int:
    return value if polarity else 1 - value


def eval_circuit_classical(circuit: CircuitDag, assignment: Assignment) -> int:
    """Deterministic bottom-up evaluation, XOR included. The test oracle."""
    values = _resolve(circuit, assignment)
    dag = circuit.dag
    r = [0] * (dag.n + 1)
    for i in range(dag.n, circuit.root - 1, -1):
        gate = circuit.gates[i]
        if gate.kind is GateKind.VAR:
            r[i] = values[gate.name]
            continue
        inputs = [_literal(r[j], circuit.polarity[(i, j)]) for j in dag.children(i)]
        if gate.kind is GateKind.AND:
            r[i] = int(all(inputs))
        elif gate.kind is GateKind.OR:
            r[i] = int(any(inputs))
        elif gate.kind is GateKind.NAND:
            r[i] = int(not all(inputs))
        else:
            r[i] = sum(inputs) % 2
    return r[circuit.root] ^ int(circuit.output_negated)


def eval_circuit_quantum(
    circuit: CircuitDag,
    assignment: Assignment,
    config: SimConfig,
    seed: int = 0,
    *,
    rng: Optional[RandomStream] = None,
) -> Tuple[int, QueryLedger]:
    """Quantum evaluation: one boosted search per vertex, i = n_hat ... s.

    AND searches a 0 (found -> 0), OR searches a 1 (found -> 1), NAND searches
    a 0 (found -> 1). Child value and edge polarity are one charged inspection.
    """
    if circuit.has_xor:
        raise XorPresent("circuit contains XOR vertices; apply rewrite_xor first")
    values = _resolve(circuit, assignment)
    if circuit.dag.n_hat == 0:
        bit = values[circuit.gates[circuit.root].name]
        return bit ^ int(circuit.output_negated), QueryLedger()

    combiners = {i: Combiner(circuit.kind(i).value) for i in range(1, circuit.dag.n_hat + 1)}

    def sink_eval(j: int) -> int:
        return values[circuit.gates[j].name]

    def edge_transform(i: int, j: int, value: int) -> int:
        return _literal(value, circuit.polarity[(i, j)])

    result = run_dp(
        circuit.dag,
        combiners,
        sink_eval,
        config,
        seed,
        edge_transform=edge_transform,
        stop_at=circuit.root,
        rng=rng,
    )
    return int(result.value) ^ int(circuit.output_negated), result.ledger


def rewrite_xor(circuit: CircuitDag) -> CircuitDag:
    """Replace every XOR by OR(AND(a, NOT b), AND(NOT a, b)): +2 vertices, 6 edges each."""
    if not circuit.has_xor:
        return circuit
    dag = circuit.dag

    order: List[Tuple[int, int]] = []  # (old vertex, 0 = itself / 1, 2 = gadget ANDs)
    for i in range(1, dag.n + 1):
        order.append((i, 0))
        if circuit.kind(i) is GateKind.XOR:
            order.extend([(i, 1), (i, 2)])
    new_index = {key: idx for idx, key in enumerate(order, start=1)}

    gates: Dict[int, Gate] = {}
    edges: List[Tuple[int, int, int]] = []
    for i in range(1, dag.n + 1):
        gate = circuit.gates[i]
        me = new_index[(i, 0)]
        if gate.kind is not GateKind.XOR:
            gates[me] = gate
            edges.extend((me, new_index[(j, 0)], circuit.polarity[(i, j)]) for j in dag.children(i))
            continue
        a, b = dag.children(i)
        sa, sb = circuit.polarity[(i, a)], circuit.polarity[(i, b)]
        left, right = new_index[(i, 1)], new_index[(i, 2)]
        na, nb = new_index[(a, 0)], new_index[(b, 0)]
        gates[me] = Gate(GateKind.OR)
        gates[left] = Gate(GateKind.AND)
        gates[right] = Gate(GateKind.AND)
        edges.extend([
            (me, left, 1), (me, right, 1),
            (left, na, sa), (left, nb, 1 - sb),
            (right, na, 1 - sa), (right, nb, sb),
        ])

    rewritten = validate_circuit(RawCircuit(
        n=len(order),
        gates=gates,
        edges=edges,
        root=new_index[(circuit.root, 0)],
        output_negated=circuit.output_negated,
    ))
    logger.debug("rewrite_xor: nhat %d -> %d, m %d -> %d", dag.n_hat, rewritten.dag.n_hat, dag.m, rewritten.dag.m)
    return rewritten


def _random_children(
    rng: np.random.Generator, first: int, last: int, max_fanin: int, exact: Optional[int] = None
) -> List[int]:
    pool = last - first + 1
    d = exact if exact is not None else int(rng.integers(2, min(max_fanin, pool) + 1))
    picks = rng.choice(pool, size=d, replace=False)
    return sorted(first + int(p) for p in picks)


def gen_random_circuit(
    n_function: int,
    n_vars: int,
    seed: int = 0,
    kinds: Sequence[GateKind] = (GateKind.AND, GateKind.OR, GateKind.NAND),
    max_fanin: int = 4,
    negation_prob: float = 0.5,
    xor_prob: float = 0.0,
) -> CircuitDag:
    """Random shared-input circuit: function vertices 1..F, variables x1..xV after them.

    With xor_prob > 0 some gates become binary XORs, giving XOR-AND style inputs
    for rewrite_xor.
    """
    if n_function < 1 or n_vars < 2 or max_fanin < 2:
        raise InvalidParams("need n_function >= 1, n_vars >= 2 and max_fanin >= 2")
    rng = np.random.default_rng(seed)
    n = n_function + n_vars
    gates: Dict[int, Gate] = {}
    edges: List[Tuple[int, int, int]] = []
    for i in range(1, n_function + 1):
        is_xor = xor_prob > 0 and rng.random() < xor_prob
        kind = GateKind.XOR if is_xor else kinds[int(rng.integers(len(kinds)))]
        gates[i] = Gate(kind)
        children = _random_children(rng, i + 1, n, max_fanin, exact=2 if is_xor else None)
        for j in children:
            edges.append((i, j, 0 if rng.random() < negation_prob else 1))
    for v in range(1, n_vars + 1):
        gates[n_function + v] = Gate(GateKind.VAR, f"x{v}")
    return validate_circuit(RawCircuit(n=n, gates=gates, edges=edges))


def all_assignments(variables: Sequence[str]) -> Iterable[Dict[str, int]]:
    """Every 0/1 assignment of `variables`, in binary counting order."""
    count = len(variables)
    for bits in range(1 << count):
        yield {name: (bits >> pos) & 1 for pos, name in enumerate(variables)}

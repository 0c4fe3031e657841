"""Zhegalkin polynomials (algebraic normal form).

Grammar, whitespace allowed between tokens only:

    poly   := term ('+' term)*
    term   := '0' | '1' | factor ('*' factor)*
    factor := 'x' <positive decimal>

'+' is XOR and '*' is AND. Errors carry the byte offset of the offending token.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from qdag.circuits import CircuitDag, Gate, GateKind, RawCircuit, rewrite_xor, validate_circuit
from qdag.errors import (
    AnfSyntaxError,
    ConstantPolynomial,
    DegenerateSingleTerm,
    EmptyInput,
    InvalidParams,
    MissingVariable,
    VariableIndexZero,
)

logger = logging.getLogger(__name__)

Monomial = FrozenSet[int]
BitVector = Union[Sequence[int], Mapping[str, int]]


@dataclass(frozen=True)
class ZhegalkinPolynomial:
    a: int
    clauses: Tuple[Monomial, ...]
    var_count: int

    @property
    def k(self) -> int:
        return len(self.clauses)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.clauses)

    def variables(self) -> Tuple[str, ...]:
        used = sorted(set().union(*self.clauses)) if self.clauses else []
        return tuple(f"x{j}" for j in used)


class _Token(NamedTuple):
    kind: str  # "var", "const", "+", "*"
    value: int
    offset: int


_TOKEN = re.compile(r"x([0-9]+)|([01])|(\+)|(\*)|(\s+)")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str) -> Iterator[_Token]:
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            offset = _byte_offset(text, pos)
            if text[pos] == "x":
                raise AnfSyntaxError("'x' must be followed by a variable index", offset)
            raise AnfSyntaxError(f"unexpected character {text[pos]!r}", offset)
        index, const, plus, star, _ = match.groups()
        offset = _byte_offset(text, pos)
        if index is not None:
            if int(index) == 0:
                raise VariableIndexZero("variable indices start at 1", offset)
            yield _Token("var", int(index), offset)
        elif const is not None:
            yield _Token("const", int(const), offset)
        elif plus is not None:
            yield _Token("+", 0, offset)
        elif star is not None:
            yield _Token("*", 0, offset)
        pos = match.end()


def parse_anf(text: str) -> ZhegalkinPolynomial:
    """Parse without normalizing: constants fold into `a`, x*x collapses, term order is kept."""
    tokens = list(_tokenize(text))
    if not tokens:
        raise EmptyInput("polynomial text is empty")
    end = _byte_offset(text, len(text))

    a = 0
    clauses: List[Monomial] = []
    pos = 0

    def expect_term_start() -> _Token:
        if pos >= len(tokens):
            raise AnfSyntaxError("expected a term, found end of input", end)
        tok = tokens[pos]
        if tok.kind not in ("var", "const"):
            raise AnfSyntaxError(f"expected a term, found {tok.kind!r}", tok.offset)
        return tok

    while True:
        tok = expect_term_start()
        pos += 1
        if tok.kind == "const":
            a ^= tok.value
        else:
            factors = {tok.value}
            while pos < len(tokens) and tokens[pos].kind == "*":
                pos += 1
                if pos >= len(tokens):
                    raise AnfSyntaxError("expected a variable after '*', found end of input", end)
                factor = tokens[pos]
                if factor.kind != "var":
                    raise AnfSyntaxError(f"expected a variable after '*', found {factor.kind!r}", factor.offset)
                factors.add(factor.value)
                pos += 1
            clauses.append(frozenset(factors))
        if pos >= len(tokens):
            break
        sep = tokens[pos]
        if sep.kind != "+":
            raise AnfSyntaxError(f"expected '+' between terms, found {sep.kind!r}", sep.offset)
        pos += 1

    return ZhegalkinPolynomial(a=a, clauses=tuple(clauses), var_count=_highest(clauses))


def _highest(clauses: Sequence[Monomial]) -> int:
    return max((max(c) for c in clauses), default=0)


def _order(c: Monomial) -> Tuple[int, ...]:
    return tuple(sorted(c))


def normalize(poly: ZhegalkinPolynomial) -> ZhegalkinPolynomial:
    """Cancel identical monomials in pairs and sort the survivors."""
    counts = Counter(poly.clauses)
    survivors = sorted((c for c, times in counts.items() if times % 2), key=_order)
    return ZhegalkinPolynomial(a=poly.a & 1, clauses=tuple(survivors), var_count=_highest(survivors))


def format_anf(poly: ZhegalkinPolynomial) -> str:
    terms = ["1"] if poly.a else []
    terms.extend("*".join(f"x{j}" for j in _order(c)) for c in poly.clauses)
    return " + ".join(terms) if terms else "0"


def _bit(assignment: BitVector, j: int) -> int:
    if isinstance(assignment, Mapping):
        name = f"x{j}"
        if name not in assignment:
            raise MissingVariable(f"no value for variable {name}")
        return int(assignment[name]) & 1
    if j > len(assignment):
        raise MissingVariable(f"no value for variable x{j}: assignment has {len(assignment)} entries")
    return int(assignment[j - 1]) & 1


def eval_truth_table(poly: ZhegalkinPolynomial, assignment: BitVector) -> int:
    """a XOR (XOR over monomials of AND over their variables).

    `assignment` is either positional (x1 first) or keyed by "x<j>".
    """
    result = poly.a
    for clause in poly.clauses:
        result ^= int(all(_bit(assignment, j) for j in clause))
    return result


def compile_to_circuit(poly: ZhegalkinPolynomial, allow_literal: bool = False) -> CircuitDag:
    """Build the XOR-AND DAG for `poly` and rewrite its XOR chain into AND-OR-NOT gadgets.

    Vertex order before the rewrite: the XOR chain (root first), one AND per
    monomial of degree >= 2, then one VAR per variable in index order.
    `allow_literal` turns the k = 1, t = 1 case into a single-variable circuit
    instead of raising DegenerateSingleTerm.
    """
    poly = normalize(poly)
    k = poly.k
    if k == 0:
        raise ConstantPolynomial(poly.a)
    if k == 1 and len(poly.clauses[0]) == 1:
        (variable,) = poly.clauses[0]
        if not allow_literal:
            raise DegenerateSingleTerm(variable, bool(poly.a))
        return validate_circuit(RawCircuit(
            n=1, gates={1: Gate(GateKind.VAR, f"x{variable}")}, edges=[], output_negated=bool(poly.a),
        ))

    xor_count = k - 1
    and_clauses = [c for c in poly.clauses if len(c) >= 2]
    used = sorted(set().union(*poly.clauses))
    var_index = {j: xor_count + len(and_clauses) + pos for pos, j in enumerate(used, start=1)}

    gates: Dict[int, Gate] = {}
    edges: List[Tuple[int, int, int]] = []
    term_vertex: List[int] = []
    next_and = xor_count + 1
    for clause in poly.clauses:
        if len(clause) == 1:
            (j,) = clause
            term_vertex.append(var_index[j])
            continue
        gates[next_and] = Gate(GateKind.AND)
        edges.extend((next_and, var_index[j], 1) for j in _order(clause))
        term_vertex.append(next_and)
        next_and += 1

    # X_1 = T_1 xor T_2, X_j = X_{j-1} xor T_{j+1}; X_j sits at index k - j
    for j in range(1, xor_count + 1):
        me = k - j
        gates[me] = Gate(GateKind.XOR)
        left = term_vertex[0] if j == 1 else me + 1
        edges.append((me, left, 1))
        edges.append((me, term_vertex[j], 1))

    for j, idx in var_index.items():
        gates[idx] = Gate(GateKind.VAR, f"x{j}")

    native = validate_circuit(RawCircuit(
        n=xor_count + len(and_clauses) + len(used),
        gates=gates,
        edges=edges,
        output_negated=bool(poly.a),
    ))
    compiled = rewrite_xor(native)
    logger.info("compiled k=%d monomials into nhat=%d m=%d", k, compiled.dag.n_hat, compiled.dag.m)
    return compiled


def expected_size(poly: ZhegalkinPolynomial) -> Tuple[int, int]:
    """(function vertices, edges) of the compiled circuit when every t_i >= 2: 3(k-1)+k, 6(k-1)+sum t_i."""
    k = poly.k
    return 3 * (k - 1) + k, 6 * (k - 1) + sum(poly.degrees)


def random_polynomial(
    var_count: int,
    k: int,
    seed: int = 0,
    min_degree: int = 1,
    max_degree: Optional[int] = None,
    constant: Optional[int] = None,
) -> ZhegalkinPolynomial:
    """Normalized polynomial with exactly k distinct monomials over x1..x_var_count."""
    max_degree = var_count if max_degree is None else max_degree
    if var_count < 1 or k < 0 or not 1 <= min_degree <= max_degree <= var_count:
        raise InvalidParams(
            f"need 1 <= min_degree <= max_degree <= var_count, got {min_degree}, {max_degree}, {var_count}"
        )
    rng = np.random.default_rng(seed)
    chosen = set()
    attempts = 0
    while len(chosen) < k:
        attempts += 1
        if attempts > 100 * (k + 1):
            raise InvalidParams(f"cannot draw {k} distinct monomials of degree {min_degree}..{max_degree}")
        t = int(rng.integers(min_degree, max_degree + 1))
        picks = rng.choice(var_count, size=t, replace=False)
        chosen.add(frozenset(int(p) + 1 for p in picks))
    a = int(rng.integers(2)) if constant is None else constant & 1
    return normalize(ZhegalkinPolynomial(a=a, clauses=tuple(chosen), var_count=var_count))

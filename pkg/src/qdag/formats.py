"""Text formats: `.dag` graphs, `.circ` circuits and `.anf` polynomials.

All formats are line oriented, LF terminated, with `#` starting a comment
line. Structural errors carry the 1-based line number; graph and circuit rule
violations are reported by the validators with the offending edge or vertex.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

from qdag.circuits import CircuitDag, Gate, GateKind, RawCircuit, validate_circuit
from qdag.dag import Dag, validate_dag
from qdag.errors import FormatError, IoError, TooLarge
from qdag.zhegalkin import ZhegalkinPolynomial, format_anf, normalize, parse_anf

logger = logging.getLogger(__name__)

SUFFIXES = (".dag", ".circ", ".anf")

# upper bound on the declared vertex count of a `.dag` header
MAX_VERTICES = 1 << 20

Parsed = Union[Dag, CircuitDag, ZhegalkinPolynomial]


@dataclass(frozen=True)
class LoadedInput:
    kind: str  # "dag", "circuit" or "anf"
    value: Parsed
    source: str


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for line_num, line in enumerate(text.split("\n"), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield line_num, stripped.split()


def _int(token: str, line_num: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {token!r}", location=f"line {line_num}") from None


def parse_dag_text(text: str) -> Dag:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing 'dag <n> <m>' header", location="line 1")
    header_line, header = lines[0]
    if len(header) != 3 or header[0] not in ("dag", "dag-unweighted"):
        raise FormatError("header must be 'dag <n> <m>' or 'dag-unweighted <n> <m>'", location=f"line {header_line}")
    weighted = header[0] == "dag"
    n = _int(header[1], header_line, "vertex count")
    m = _int(header[2], header_line, "edge count")
    if n > MAX_VERTICES:
        raise TooLarge(f"vertex count {n} exceeds the limit of {MAX_VERTICES}", location=f"line {header_line}")

    edges: List[Tuple[int, ...]] = []
    expected = 4 if weighted else 3
    for line_num, parts in lines[1:]:
        if parts[0] != "e" or len(parts) != expected:
            shape = "e <u> <v> <w>" if weighted else "e <u> <v>"
            raise FormatError(f"expected '{shape}'", location=f"line {line_num}")
        edges.append(tuple(_int(p, line_num, "edge field") for p in parts[1:]))
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges but {len(edges)} were given", location=f"line {header_line}")
    if weighted and not edges:
        return validate_dag(edges, n, weights={})
    return validate_dag(edges, n)


def format_dag(dag: Dag) -> str:
    head = "dag" if dag.is_weighted else "dag-unweighted"
    out = [f"{head} {dag.n} {dag.m}"]
    for u, v in dag.edges():
        out.append(f"e {u} {v} {dag.weight(u, v)}" if dag.is_weighted else f"e {u} {v}")
    return "\n".join(out) + "\n"


def parse_circuit_text(text: str) -> CircuitDag:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing 'circuit <n> <m>' header", location="line 1")
    header_line, header = lines[0]
    if header[0] != "circuit" or len(header) not in (3, 4) or (len(header) == 4 and header[3] != "negated"):
        raise FormatError("header must be 'circuit <n> <m> [negated]'", location=f"line {header_line}")
    n = _int(header[1], header_line, "vertex count")
    m = _int(header[2], header_line, "edge count")

    gates: Dict[int, Gate] = {}
    edges: List[Tuple[int, int, Optional[int]]] = []
    root = 1
    for line_num, parts in lines[1:]:
        where = f"line {line_num}"
        if parts[0] == "v":
            if len(parts) < 3:
                raise FormatError("expected 'v <i> <kind> [name]'", location=where)
            i = _int(parts[1], line_num, "vertex index")
            try:
                kind = GateKind(parts[2].upper())
            except ValueError:
                raise FormatError(f"unknown gate kind {parts[2]!r}", location=where) from None
            if (kind is GateKind.VAR) != (len(parts) == 4) or len(parts) > 4:
                raise FormatError("VAR vertices take exactly one name; gates take none", location=where)
            if i in gates:
                raise FormatError(f"vertex {i} declared twice", location=where)
            gates[i] = Gate(kind, parts[3] if kind is GateKind.VAR else None)
        elif parts[0] == "e":
            if len(parts) not in (3, 4):
                raise FormatError("expected 'e <u> <v> <pol>'", location=where)
            u = _int(parts[1], line_num, "edge source")
            v = _int(parts[2], line_num, "edge target")
            pol = _int(parts[3], line_num, "polarity") if len(parts) == 4 else None
            edges.append((u, v, pol))
        elif parts[0] == "root" and len(parts) == 2:
            root = _int(parts[1], line_num, "root index")
        else:
            raise FormatError(f"unrecognised line starting with {parts[0]!r}", location=where)

    if len(edges) != m:
        raise FormatError(f"header declares {m} edges but {len(edges)} were given", location=f"line {header_line}")
    if len(gates) != n:
        raise FormatError(f"header declares {n} vertices but {len(gates)} were given", location=f"line {header_line}")
    return validate_circuit(RawCircuit(n=n, gates=gates, edges=edges, root=root, output_negated=len(header) == 4))


def format_circuit(circuit: CircuitDag) -> str:
    dag = circuit.dag
    head = f"circuit {dag.n} {dag.m}" + (" negated" if circuit.output_negated else "")
    out = [head]
    if circuit.root != 1:
        out.append(f"root {circuit.root}")
    for i in range(1, dag.n + 1):
        gate = circuit.gates[i]
        out.append(f"v {i} VAR {gate.name}" if gate.kind is GateKind.VAR else f"v {i} {gate.kind.value}")
    for u, v in dag.edges():
        out.append(f"e {u} {v} {circuit.polarity[(u, v)]}")
    return "\n".join(out) + "\n"


def blank_comments(text: str) -> str:
    """Replace `#` comment lines by spaces so byte offsets into the file stay valid."""
    lines = text.split("\n")
    for idx, line in enumerate(lines):
        if line.lstrip().startswith("#"):
            lines[idx] = " " * len(line.encode("utf-8"))
    return "\n".join(lines)


def parse_anf_text(text: str) -> ZhegalkinPolynomial:
    return parse_anf(blank_comments(text))


_PARSERS = {
    ".dag": ("dag", parse_dag_text),
    ".circ": ("circuit", parse_circuit_text),
    ".anf": ("anf", parse_anf_text),
}


def parse_text(text: str, suffix: str, source: str = "<text>") -> LoadedInput:
    """Parse `text` in the format named by its file suffix."""
    suffix = suffix if suffix.startswith(".") else f".{suffix}"
    entry = _PARSERS.get(suffix.lower())
    if entry is None:
        raise FormatError(f"unsupported file type {suffix!r}; expected one of {', '.join(SUFFIXES)}")
    kind, parser = entry
    return LoadedInput(kind=kind, value=parser(text), source=source)


def read_text(path: Union[str, Path]) -> str:
    path = Path(path)
    try:
        return path.read_bytes().decode("utf-8")
    except FileNotFoundError:
        raise IoError(f"file not found: {path}") from None
    except (OSError, UnicodeDecodeError) as e:
        raise IoError(f"cannot read {path}: {e}") from None


def load_path(path: Union[str, Path]) -> LoadedInput:
    """Read a file and parse it according to its extension."""
    path = Path(path)
    loaded = parse_text(read_text(path), path.suffix, source=str(path))
    logger.debug("loaded %s as %s", path, loaded.kind)
    return loaded


def write_text(path: Union[str, Path], text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from None


def describe(loaded: LoadedInput) -> Dict[str, object]:
    """Derived stats of a parsed input plus a one-line `valid ...` message."""
    value = loaded.value
    if loaded.kind == "dag":
        stats: Dict[str, object] = dict(value.stats())
        stats["weighted"] = value.is_weighted
        message = "valid dag n={n} m={m} nhat={nhat} sinks={sinks}".format(**stats)
    elif loaded.kind == "circuit":
        stats = dict(value.stats())
        stats["xor"] = value.has_xor
        message = "valid circuit n={n} m={m} nhat={nhat} variables={variables}".format(**stats)
    else:
        normalized = normalize(value)
        stats = {"k": normalized.k, "vars": normalized.var_count, "normalized": format_anf(normalized)}
        message = "valid anf k={k} vars={vars}: {normalized}".format(**stats)
    return {"kind": loaded.kind, "message": message, "stats": stats}

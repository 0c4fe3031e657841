"""Circuit evaluation and polynomial compilation endpoints."""

from typing import Dict, Literal, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from qdag.api import http_errors
from qdag.experiments import evaluate_input
from qdag.formats import format_circuit, parse_text
from qdag.qprimitives import Mode, SearchBoosting, SimConfig
from qdag.zhegalkin import compile_to_circuit, normalize, parse_anf

router = APIRouter()


class CircuitEvalRequest(BaseModel):
    """Request model for evaluating a circuit or polynomial."""
    source: str
    format: Literal["circ", "anf"] = "circ"
    assignment: Dict[str, int] = Field(default_factory=dict)
    mode: Mode = Mode.EXACT
    seed: int = Field(0, ge=0)
    trials: int = Field(1, ge=1, le=100_000)
    boost: Optional[int] = Field(None, ge=1)
    epsilon: Optional[float] = None
    search_boosting: Optional[SearchBoosting] = None


class AnfCompileRequest(BaseModel):
    source: str


@router.post("/circuits/eval")
def eval_circuit(request: CircuitEvalRequest):
    """Evaluate `source` under `assignment`; reports agreement with the classical answer."""
    with http_errors():
        loaded = parse_text(request.source, request.format)
        config = SimConfig.build(
            mode=request.mode,
            epsilon_base=request.epsilon,
            search_boost=request.boost,
            search_boosting=request.search_boosting,
        )
        report = evaluate_input(loaded, request.assignment, config, request.seed, request.trials)
        return report.model_dump()


@router.post("/anf/compile")
def compile_anf(request: AnfCompileRequest):
    """Compile a polynomial into a `.circ` circuit."""
    with http_errors():
        circuit = compile_to_circuit(normalize(parse_anf(request.source)), allow_literal=True)
        return {
            "circuit": format_circuit(circuit),
            "n": circuit.dag.n,
            "m": circuit.dag.m,
            "nhat": circuit.dag.n_hat,
            "function_vertices": circuit.function_vertices,
        }

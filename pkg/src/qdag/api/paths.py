"""Longest path and diameter endpoints."""

from typing import Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from qdag.api import http_errors
from qdag.errors import InvalidParams
from qdag.experiments import diameter_trials, longest_path_trials
from qdag.formats import parse_dag_text
from qdag.qprimitives import Mode, SimConfig

router = APIRouter()


class LongestPathRequest(BaseModel):
    source: str
    start: int = 1
    mode: Mode = Mode.EXACT
    seed: int = Field(0, ge=0)
    trials: int = Field(1, ge=1, le=100_000)
    boost: Optional[int] = Field(None, ge=1)


class DiameterRequest(BaseModel):
    source: str
    mode: Mode = Mode.EXACT
    seed: int = Field(0, ge=0)
    trials: int = Field(1, ge=1, le=100_000)
    boost: Optional[int] = Field(None, ge=1)
    workers: Optional[int] = Field(None, ge=1)


@router.post("/paths/longest")
def longest_path(request: LongestPathRequest):
    """Longest path lengths from `start`; unreachable vertices are reported as "-inf"."""
    with http_errors():
        dag = parse_dag_text(request.source)
        config = SimConfig.build(mode=request.mode, extremum_boost=request.boost)
        report, table = longest_path_trials(dag, request.start, config, request.seed, request.trials)
        return {**report.model_dump(), "table": table.formatted()}


@router.post("/paths/diameter")
def diameter(request: DiameterRequest):
    with http_errors():
        dag = parse_dag_text(request.source)
        if dag.is_weighted:
            raise InvalidParams("diameter needs an unweighted graph ('dag-unweighted' header)")
        config = SimConfig.build(mode=request.mode, extremum_boost=request.boost, workers=request.workers)
        return diameter_trials(dag, config, request.seed, request.trials).model_dump()

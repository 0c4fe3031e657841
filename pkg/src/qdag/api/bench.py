"""Benchmark sweep endpoint."""

from typing import List, Literal, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from qdag.api import http_errors
from qdag.dp_engine import Combiner
from qdag.experiments import bench
from qdag.qprimitives import Mode, SimConfig
from qdag.reports import fit_constant, rows_to_csv

router = APIRouter()


class BenchRequest(BaseModel):
    """Request model for a query-count sweep over layered DAGs."""
    problem: Literal["dp", "longest-path", "diameter"] = "dp"
    combiner: Combiner = Combiner.OR
    sizes: List[int] = Field(default_factory=lambda: [16, 64])
    density: float = Field(0.5, ge=0.0, le=1.0)
    trials: int = Field(1, ge=1, le=10_000)
    seed: int = Field(0, ge=0)
    mode: Mode = Mode.EXACT
    instances: int = Field(1, ge=1, le=100)
    boost: Optional[int] = Field(None, ge=1)


@router.post("/bench")
def run_bench(request: BenchRequest):
    """Run the sweep and return rows, the CSV text and the fitted constant."""
    with http_errors():
        boost_field = "search_boost" if request.problem == "dp" and request.combiner.is_boolean else "extremum_boost"
        config = SimConfig.build(mode=request.mode, **{boost_field: request.boost})
        rows = bench(
            request.problem,
            request.sizes,
            config,
            combiner=request.combiner,
            density=request.density,
            trials=request.trials,
            seed=request.seed,
            instances=request.instances,
        )
        overall, per_size = fit_constant(rows)
        return {
            "rows": [row.model_dump() for row in rows],
            "csv": rows_to_csv(rows),
            "fitted_constant": overall,
            "per_size": {str(n): c for n, c in per_size.items()},
        }

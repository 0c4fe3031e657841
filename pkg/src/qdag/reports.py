"""
Run reports, bound expressions and CSV export.

Provides:
- RunReport / BenchRow models shared by the CLI and the service
- bound_value: the asymptotic query bound of each problem evaluated at (n, m, n_hat)
- predicted_error: per-run error bound from per-vertex boosted errors
- binomial_interval / binomial_upper: Clopper-Pearson bounds on an observed error rate
- fit_constant: C = max(mean_queries / bound_value) over a sweep
- rows_to_csv: byte-stable CSV text
"""

import csv
import io
import math
from collections import defaultdict
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, Field
from scipy.stats import beta

from qdag.errors import InvalidParams

BOOLEAN_PROBLEMS = ("and", "or", "nand", "circuit", "anf")
EXTREMUM_PROBLEMS = ("max", "min")

CSV_COLUMNS = [
    "problem", "n", "m", "nhat", "mode", "seed", "trials",
    "correct_rate", "mean_queries", "max_queries", "classical_queries", "bound_value",
]


class RunReport(BaseModel):
    problem: str
    n: int = Field(ge=0)
    m: int = Field(ge=0)
    n_hat: int = Field(ge=0)
    mode: str
    seed: int
    trials: int = Field(ge=1)
    result: Any = None
    reference: Any = None
    correct_rate: float = Field(ge=0.0, le=1.0)
    mean_queries: float = Field(ge=0.0)
    max_queries: int = Field(ge=0)
    bound_value: float = Field(ge=0.0)
    predicted_error: float = Field(0.0, ge=0.0, le=1.0)
    error_upper_99: float = Field(0.0, ge=0.0, le=1.0)
    classical_queries: int = Field(0, ge=0)
    compiled: Optional[Dict[str, int]] = None

    def to_lines(self) -> List[str]:
        """`key: value` lines for terminal output, in field order."""
        lines = []
        for key, value in self.model_dump().items():
            if value is None:
                continue
            if isinstance(value, float):
                value = f"{value:.6f}"
            elif isinstance(value, (list, tuple)):
                value = " ".join(str(v) for v in value)
            elif isinstance(value, dict):
                value = " ".join(f"{k}={v}" for k, v in value.items())
            lines.append(f"{key}: {value}")
        return lines


class BenchRow(BaseModel):
    problem: str
    n: int
    m: int
    nhat: int
    mode: str
    seed: int
    trials: int
    correct_rate: float
    mean_queries: float
    max_queries: int
    classical_queries: int
    bound_value: float


def _log2(x: float) -> float:
    """log2 floored at 1 so tiny instances keep a positive bound."""
    return max(1.0, math.log2(x)) if x > 0 else 1.0


def bound_value(problem: str, n: int, m: int, n_hat: int) -> float:
    """
    Asymptotic query bound of `problem` at (n, m, n_hat), without its constant.

    - boolean DP and circuits: sqrt(n_hat * m * log2 n_hat)
    - MAX/MIN DP: sqrt(n_hat * m) * log2 n_hat
    - longest-path: sqrt(n * m) * log2 n
    - diameter: n_hat * (n + sqrt(n * m)) * log2 n
    """
    key = problem.lower()
    if key.startswith("dp-"):
        key = key[3:]
    if key in BOOLEAN_PROBLEMS:
        return math.sqrt(n_hat * m * _log2(n_hat))
    if key in EXTREMUM_PROBLEMS:
        return math.sqrt(n_hat * m) * _log2(n_hat)
    if key == "longest-path":
        return math.sqrt(n * m) * _log2(n)
    if key == "diameter":
        return n_hat * (n + math.sqrt(n * m)) * _log2(n)
    raise InvalidParams(f"no bound expression for problem {problem!r}")


def predicted_error(eps: float, k: int, count: int) -> float:
    """1 - (1 - eps^k)^count: every one of `count` boosted steps must succeed."""
    if count <= 0:
        return 0.0
    return 1.0 - (1.0 - eps**k) ** count


def binomial_interval(failures: int, trials: int, confidence: float = 0.99) -> Tuple[float, float]:
    """Two-sided Clopper-Pearson interval for failures / trials."""
    if trials <= 0:
        return 0.0, 0.0
    alpha = 1.0 - confidence
    low = 0.0 if failures == 0 else float(beta.ppf(alpha / 2, failures, trials - failures + 1))
    high = 1.0 if failures == trials else float(beta.ppf(1 - alpha / 2, failures + 1, trials - failures))
    return low, high


def binomial_upper(failures: int, trials: int, confidence: float = 0.99) -> float:
    """One-sided Clopper-Pearson upper bound."""
    if trials <= 0:
        return 0.0
    if failures >= trials:
        return 1.0
    return float(beta.ppf(confidence, failures + 1, trials - failures))


def binomial_lower(failures: int, trials: int, confidence: float = 0.99) -> float:
    """One-sided Clopper-Pearson lower bound."""
    if trials <= 0 or failures <= 0:
        return 0.0
    return float(beta.ppf(1 - confidence, failures, trials - failures + 1))


def fit_constant(rows: Iterable[BenchRow]) -> Tuple[float, Dict[int, float]]:
    """Overall C and the per-size C (keyed by n) for mean_queries <= C * bound_value."""
    per_size: Dict[int, float] = defaultdict(float)
    for row in rows:
        if row.bound_value <= 0:
            continue
        ratio = row.mean_queries / row.bound_value
        per_size[row.n] = max(per_size[row.n], ratio)
    overall = max(per_size.values(), default=0.0)
    return overall, dict(sorted(per_size.items()))


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    """
    Convert bench rows to CSV text.

    Columns are exactly CSV_COLUMNS; floats use fixed precision so the same rows
    always give the same bytes.
    """
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            row.problem,
            row.n,
            row.m,
            row.nhat,
            row.mode,
            row.seed,
            row.trials,
            f"{row.correct_rate:.6f}",
            f"{row.mean_queries:.3f}",
            row.max_queries,
            row.classical_queries,
            f"{row.bound_value:.6f}",
        ])
    return output.getvalue()


__all__ = [
    "RunReport",
    "BenchRow",
    "bound_value",
    "predicted_error",
    "binomial_interval",
    "binomial_upper",
    "binomial_lower",
    "fit_constant",
    "rows_to_csv",
]

"""
Test Suite: Reports
Bound expressions, binomial bounds, constant fitting and CSV output
"""

import math
import os
import sys

import pytest

src_path = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
sys.path.insert(0, src_path)

from qdag.errors import InvalidParams
from qdag.reports import (
    CSV_COLUMNS,
    BenchRow,
    RunReport,
    binomial_interval,
    binomial_lower,
    binomial_upper,
    bound_value,
    fit_constant,
    predicted_error,
    rows_to_csv,
)

pytestmark = pytest.mark.unit


def row(n, mean, bound, problem="dp-or"):
    return BenchRow(problem=problem, n=n, m=2 * n, nhat=n // 2, mode="exact", seed=1, trials=1,
                    correct_rate=1.0, mean_queries=mean, max_queries=int(mean), classical_queries=2 * n,
                    bound_value=bound)


class TestBounds:
    """Asymptotic expressions without constants"""

    def test_boolean(self):
        """sqrt(nhat * m * log2 nhat)"""
        assert bound_value("dp-or", 32, 64, 16) == pytest.approx(math.sqrt(16 * 64 * 4))
        assert bound_value("circuit", 32, 64, 16) == bound_value("anf", 32, 64, 16)

    def test_extremum(self):
        """sqrt(nhat * m) * log2 nhat"""
        assert bound_value("dp-max", 32, 64, 16) == pytest.approx(32 * 4)

    def test_longest_path(self):
        """sqrt(n * m) * log2 n"""
        assert bound_value("longest-path", 16, 64, 8) == pytest.approx(32 * 4)

    def test_diameter(self):
        """nhat * (n + sqrt(n * m)) * log2 n"""
        assert bound_value("diameter", 16, 64, 8) == pytest.approx(8 * (16 + 32) * 4)

    def test_log_floor(self):
        """log2 is floored at 1 on tiny instances"""
        assert bound_value("dp-and", 2, 1, 1) == pytest.approx(1.0)

    def test_unknown(self):
        """Only known problems have bounds"""
        with pytest.raises(InvalidParams):
            bound_value("sorting", 1, 1, 1)

    def test_predicted_error(self):
        """1 - (1 - eps^k)^count"""
        assert predicted_error(0.5, 2, 1) == pytest.approx(0.25)
        assert predicted_error(0.5, 1, 2) == pytest.approx(0.75)
        assert predicted_error(0.5, 3, 0) == 0.0


class TestBinomial:
    """Clopper-Pearson bounds"""

    def test_no_failures(self):
        """Zero failures give a zero lower bound and a small upper bound"""
        assert binomial_lower(0, 2000) == 0.0
        assert 0 < binomial_upper(0, 2000) < 0.003

    def test_all_failures(self):
        """Upper bound saturates"""
        assert binomial_upper(10, 10) == 1.0

    def test_interval_contains_rate(self):
        """The observed rate is inside its own interval"""
        low, high = binomial_interval(30, 100)
        assert low < 0.3 < high

    def test_one_sided_tighter_than_two_sided(self):
        """One-sided bounds sit inside the two-sided interval"""
        low, high = binomial_interval(30, 100)
        assert low <= binomial_lower(30, 100) <= binomial_upper(30, 100) <= high


class TestFitAndCsv:
    """Fitting C and CSV text"""

    def test_fit_constant(self):
        """Largest ratio overall and per size"""
        overall, per_size = fit_constant([row(16, 30, 10), row(16, 20, 10), row(64, 50, 25)])
        assert overall == pytest.approx(3.0)
        assert per_size == {16: pytest.approx(3.0), 64: pytest.approx(2.0)}

    def test_fit_skips_zero_bounds(self):
        """Rows without a bound are ignored"""
        assert fit_constant([row(4, 5, 0)]) == (0.0, {})

    def test_csv(self):
        """Header plus fixed-precision rows"""
        text = rows_to_csv([row(16, 30.5, 10)])
        lines = text.split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[1] == "dp-or,16,32,8,exact,1,1,1.000000,30.500,30,32,10.000000"
        assert text.endswith("\n")

    def test_csv_is_byte_stable(self):
        """Same rows, same bytes"""
        rows = [row(16, 30.5, 10), row(64, 12.25, 3)]
        assert rows_to_csv(rows) == rows_to_csv(list(rows))


class TestRunReport:
    """Terminal lines"""

    def test_to_lines(self):
        """Floats use six decimals and None fields are skipped"""
        report = RunReport(problem="circuit", n=3, m=2, n_hat=1, mode="exact", seed=0, trials=1,
                           result=1, reference=1, correct_rate=1.0, mean_queries=3.0, max_queries=3,
                           bound_value=1.0)
        lines = report.to_lines()
        assert "result: 1" in lines
        assert "correct_rate: 1.000000" in lines
        assert not any(line.startswith("compiled") for line in lines)

    def test_rate_bounds(self):
        """correct_rate lies in [0, 1]"""
        with pytest.raises(ValueError):
            RunReport(problem="x", n=1, m=0, n_hat=0, mode="exact", seed=0, trials=1,
                      correct_rate=1.5, mean_queries=0, max_queries=0, bound_value=0)

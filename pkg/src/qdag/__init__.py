"""qdag-sim: contract-level simulation of quantum dynamic programming on DAGs."""

__version__ = "1.0.0"

"""DP values: signed integers, bits and the two infinity sentinels.

Finite values are Python ints. NEG_INF and POS_INF compare correctly against
every int, and adding a finite int to either leaves it unchanged, which is the
saturating arithmetic the path algorithms need.
"""

import math
from typing import Union

Value = Union[int, float]

NEG_INF: float = -math.inf
POS_INF: float = math.inf

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


def is_finite(value: Value) -> bool:
    return value != NEG_INF and value != POS_INF


def is_bit(value: Value) -> bool:
    return value == 0 or value == 1


def saturating_add(value: Value, delta: int) -> Value:
    """value + delta where an infinite value absorbs the finite delta."""
    if not is_finite(value):
        return value
    return value + delta


def format_value(value: Value, pos_inf: str = "inf") -> str:
    """Printable form: `-inf` for NEG_INF; POS_INF as `pos_inf` (e.g. "-1" for len)."""
    if value == NEG_INF:
        return "-inf"
    if value == POS_INF:
        return pos_inf
    return str(int(value))

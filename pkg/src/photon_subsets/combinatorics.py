"""Exact integer combinatorics.

Everything here returns Python ints, so ratios can be formed exactly and
converted to floats only at the last step.
"""

from __future__ import annotations

import math
from typing import Iterable


def factorial(n: int) -> int:
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(bottom: Iterable[int]) -> int:
    """(n_1 + ... + n_d)! / (n_1! ... n_d!)."""
    result = 1
    total = 0
    for n in bottom:
        if n < 0:
            raise ValueError(f"multinomial entries must be >= 0, got {n}")
        total += n
        result *= math.comb(total, n)
    return result


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); zero when k > n, one when k == 0."""
    if n < 0 or k < 0:
        raise ValueError(f"falling_factorial needs n, k >= 0, got ({n}, {k})")
    if k > n:
        return 0
    return math.perm(n, k)


def factorial_product(occupations: Iterable[int]) -> int:
    """n_1! n_2! ... n_d!"""
    result = 1
    for n in occupations:
        result *= math.factorial(n)
    return result


def falling_product(top: Iterable[int], bottom: Iterable[int]) -> int:
    """Product over modes of falling_factorial(top_i, bottom_i)."""
    result = 1
    for n, k in zip(top, bottom):
        if k > n:
            return 0
        result *= math.perm(n, k)
    return result


def int_sqrt_ratio(numerator: int, denominator: int = 1) -> float:
    """sqrt(numerator / denominator) with a single rounding of the exact ratio."""
    if numerator == 0:
        return 0.0
    return math.sqrt(numerator / denominator)

"""
Integer helpers shared by the solvers: square tests, the radicand guard and
the proper-power test that certifies a solution as the fundamental one.
"""
import logging
from math import isqrt, log
from typing import Optional, Tuple

from sympy import integer_nthroot, primerange

from .errors import PerfectSquare

logger = logging.getLogger(__name__)


def exact_sqrt(n: int) -> Optional[int]:
    """Square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    root = isqrt(n)
    return root if root * root == n else None


def is_square(n: int) -> bool:
    return exact_sqrt(n) is not None


def require_radicand(radicand: int) -> int:
    """Return isqrt(A) for a valid radicand; raise PerfectSquare otherwise."""
    if radicand < 2:
        raise PerfectSquare(radicand)
    root = isqrt(radicand)
    if root * root == radicand:
        raise PerfectSquare(radicand)
    return root


def pell_value(radicand: int, x: int, y: int) -> int:
    return y * y - radicand * x * x


def unit_power(radicand: int, u: int, v: int, exponent: int) -> Tuple[int, int]:
    """(u + v sqrt(A))^s as (x, y) with y + x sqrt(A)."""
    y, x = 1, 0
    for _ in range(exponent):
        y, x = y * u + radicand * x * v, y * v + x * u
    return x, y


def unit_root(radicand: int, x: int, y: int) -> Optional[Tuple[int, int, int]]:
    """Find a prime s >= 2 and (u, v) with y + x sqrt(A) = (u + v sqrt(A))^s.

    Returns (s, u, v) or None. A verified Pell solution for which this
    returns None is the fundamental solution.
    """
    if x <= 0 or y <= 1:
        return None
    # Every unit with v >= 1 is at least 2 sqrt(A)
    max_exponent = int(log(2 * y + 1) / log(2 * isqrt(radicand) + 1)) + 1
    for s in primerange(2, max_exponent + 1):
        root = int(integer_nthroot(2 * y, s)[0])
        for u in range(max(2, root // 2 - 1), root // 2 + 3):
            numerator = u * u - 1
            if numerator % radicand:
                continue
            v = exact_sqrt(numerator // radicand)
            if not v:
                continue
            if unit_power(radicand, u, v, s) == (x, y):
                logger.debug(f"A={radicand}: x={x} is the power {s} of {u} + {v} sqrt(A)")
                return s, u, v
    return None


def is_fundamental(radicand: int, x: int, y: int) -> bool:
    """True if (x, y) solves y^2 - Ax^2 = 1 and is not a proper power."""
    if x <= 0 or pell_value(radicand, x, y) != 1:
        return False
    return unit_root(radicand, x, y) is None

"""
Brute-force ground truth.

Naive linear scans that share no code with the solvers.
"""
from math import gcd, isqrt
from typing import Optional

from .config import SolverConfig
from .errors import MixedRadicand, PerfectSquare
from .models import PellSolution, Representation, RepresentationKind


def _square_root(n: int) -> Optional[int]:
    if n < 0:
        return None
    root = isqrt(n)
    return root if root * root == n else None


def _bound(x_bound: Optional[int], config: Optional[SolverConfig]) -> int:
    return x_bound if x_bound is not None else (config or SolverConfig()).oracle_x_bound


def brute_force_pell(radicand: int, x_bound: Optional[int] = None,
                     config: Optional[SolverConfig] = None) -> Optional[PellSolution]:
    """Smallest x <= x_bound with Ax^2 + 1 a square; the bound defaults to config.oracle_x_bound."""
    x_bound = _bound(x_bound, config)
    if radicand < 2 or _square_root(radicand) is not None:
        raise PerfectSquare(radicand)
    for x in range(1, x_bound + 1):
        y = _square_root(radicand * x * x + 1)
        if y is not None:
            return PellSolution(A=radicand, x=x, y=y, method="ORACLE")
    return None


def brute_force_rhs(radicand: int, rhs: int, x_bound: Optional[int] = None,
                    config: Optional[SolverConfig] = None) -> Optional[PellSolution]:
    """Smallest x in [1, x_bound] with Ax^2 + rhs a non-negative square."""
    x_bound = _bound(x_bound, config)
    if radicand < 2 or _square_root(radicand) is not None:
        raise PerfectSquare(radicand)
    for x in range(1, x_bound + 1):
        y = _square_root(radicand * x * x + rhs)
        if y is not None:
            return PellSolution(A=radicand, x=x, y=y, rhs=rhs, method="ORACLE")
    return None


def compose(first: PellSolution, second: PellSolution, sign: int = 1) -> PellSolution:
    """(yY +- AxX, yX +- xY); the right sides multiply."""
    if first.A != second.A:
        raise MixedRadicand(first.A, second.A)
    radicand = first.A
    y = first.y * second.y + sign * radicand * first.x * second.x
    x = first.y * second.x + sign * first.x * second.y
    return PellSolution(A=radicand, x=abs(x), y=abs(y), rhs=first.rhs * second.rhs, method="COMPOSED")


def decompose_brute(radicand: int, kind: RepresentationKind) -> Optional[Representation]:
    """Representation with the smallest a (smallest p2 > 1 for factor pairs)."""
    if kind is RepresentationKind.COPRIME_FACTORS:
        for p2 in range(2, radicand):
            if radicand % p2 == 0 and gcd(p2, radicand // p2) == 1 and radicand // p2 > 1:
                return Representation(kind, radicand // p2, p2)
        return None

    if kind is RepresentationKind.DIFF_2SQ:
        for b in range(1, isqrt(radicand // 2) + 2):
            a = _square_root(radicand + 2 * b * b)
            if a is not None:
                return Representation(kind, a, b)
        return None

    weight = {
        RepresentationKind.SUM_SQ: 1,
        RepresentationKind.SUM_2SQ: 2,
        RepresentationKind.SUM_3SQ: 3,
    }[kind]
    for a in range(0, isqrt(radicand) + 1):
        rest = radicand - a * a
        if rest <= 0 or rest % weight:
            continue
        b = _square_root(rest // weight)
        if b:
            return Representation(kind, a, b)
    return None

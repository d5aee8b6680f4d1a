"""
Continued fraction expansion of sqrt(A), the standard solve and the
step-reduced fast solve that watches the remainders for shortcut patterns.

Step i >= 1 holds (d_{i-1}, a_i, r_i) with a_0 = 0 and r_0 = 1:

    d_i = (a_i + d_0) // r_i
    a_{i+1} = d_i * r_i - a_i
    r_{i+1} = (A - a_{i+1}^2) // r_i
"""
import logging
from math import gcd, isqrt
from typing import Iterator, Optional

from .arith import require_radicand, unit_root
from .case_solvers import solve_params
from .config import SolverConfig
from .errors import ConditionViolated, StepBudgetExceeded
from .models import (
    CFExpansion,
    CFStep,
    DistinctiveParams,
    FormClass,
    Minus3Params,
    Parity,
    PellSolution,
    ShortcutHit,
    ShortcutKind,
    condition_value,
)

logger = logging.getLogger(__name__)


def expand_step(radicand: int, prev: Optional[CFStep] = None) -> CFStep:
    """Next (quotient, shift, remainder) triple; prev=None gives step 1.

    Args:
        radicand: Non-square A
        prev: The previous step, or None for the initial state (a_0=0, r_0=1)

    Returns:
        The following CFStep
    """
    d0 = require_radicand(radicand)
    return _next_step(radicand, d0, prev)


def _next_step(radicand: int, d0: int, prev: Optional[CFStep]) -> CFStep:
    if prev is None:
        index, shift, remainder = 0, 0, 1
    else:
        index, shift, remainder = prev.index, prev.shift, prev.remainder
    quotient = (shift + d0) // remainder
    next_shift = quotient * remainder - shift
    next_remainder = (radicand - next_shift * next_shift) // remainder
    return CFStep(index=index + 1, quotient=quotient, shift=next_shift, remainder=next_remainder)


def iter_expansion(radicand: int, max_steps: Optional[int] = None,
                   config: Optional[SolverConfig] = None):
    """Yield the expansion after every new step until the period closes.

    The yielded object is the same CFExpansion growing in place; after the
    closing step (the repeat of step 1) period_length is set and the
    generator stops.
    """
    d0 = require_radicand(radicand)
    if max_steps is None:
        max_steps = (config or SolverConfig()).step_budget(radicand)
    expansion = CFExpansion(radicand=radicand, d0=d0)
    prev: Optional[CFStep] = None
    while True:
        if len(expansion.steps) >= max_steps:
            raise StepBudgetExceeded(radicand, max_steps)
        step = _next_step(radicand, d0, prev)
        expansion.steps.append(step)
        first = expansion.steps[0]
        if step.index > 1 and (step.shift, step.remainder) == (first.shift, first.remainder):
            expansion.period_length = step.index - 1
        yield expansion
        if expansion.is_complete:
            return
        prev = step


def expand_sqrt(radicand: int, max_steps: Optional[int] = None,
                config: Optional[SolverConfig] = None) -> CFExpansion:
    """Full period of sqrt(A), including the closing step L+1."""
    expansion = None
    for expansion in iter_expansion(radicand, max_steps, config):
        pass
    assert expansion is not None
    return expansion


def convergent(expansion: CFExpansion, n: int) -> int:
    """B_n of the expansion (seeds B_{-2}=1, B_{-1}=0)."""
    return expansion.convergent(n)


def numerator(expansion: CFExpansion, n: int) -> int:
    """Companion numerator p_n (seeds p_{-2}=0, p_{-1}=1)."""
    return expansion.numerator(n)


def standard_index(period_length: int) -> int:
    """Index n of the fundamental solution x = B_n."""
    if period_length % 2 == 0:
        return period_length - 1
    return 2 * period_length - 1


def solution_from_expansion(expansion: CFExpansion) -> PellSolution:
    """Standard solution read off a complete expansion."""
    if not expansion.is_complete:
        raise ConditionViolated(f"expansion of A={expansion.radicand} has no closed period")
    n = standard_index(expansion.period_length)
    solution = PellSolution(
        A=expansion.radicand,
        x=expansion.convergent(n),
        y=expansion.numerator(n),
        method="STANDARD",
        steps=len(expansion.steps),
    )
    if not solution.verify():
        raise ConditionViolated(f"convergent {n} of A={expansion.radicand} fails the Pell identity")
    return solution


def solve_standard(radicand: int, config: Optional[SolverConfig] = None) -> PellSolution:
    """Minimal solution from B_{L-1} (L even) or B_{2L-1} (L odd).

    Steps counts the L+1 expansion steps of the period walk.
    """
    return solution_from_expansion(expand_sqrt(radicand, config=config))


def _distinctive(cls: FormClass, a: int, b: int, l: int, m: int) -> Optional[DistinctiveParams]:
    """Params if the class condition holds with right side +-1, else None."""
    value = condition_value(cls, a, b, l, m)
    if value not in (1, -1) or gcd(l, m) != 1:
        return None
    return DistinctiveParams(cls=cls, a=a, b=b, l=l, m=m, sign=value)


def _composite_even(radicand: int, remainder: int, S: int, Q: int) -> Optional[DistinctiveParams]:
    """Pick the factor order with p1 S^2 - p2 Q^2 = 1."""
    if radicand % remainder:
        return None
    cofactor = radicand // remainder
    for p1, p2, s_val, q_val in ((remainder, cofactor, S, Q), (cofactor, remainder, Q, S)):
        if p1 * s_val * s_val - p2 * q_val * q_val == 1:
            return DistinctiveParams(FormClass.IV_NO_CROSS, p1, p2, s_val, q_val, 1)
    return None


def iter_shortcuts(expansion: CFExpansion, rhs: int = 1) -> Iterator[ShortcutHit]:
    """Every verified pattern at the newest step j, in priority order.

    Priority for rhs=1: EQUAL_R > DOUBLE_R_* > SUM_EQ_2A > R_EQ_2A > K_TIMES_R.
    For rhs=-3 only the TRIPLE_R patterns apply. A pattern whose extracted
    parameters fail their condition is skipped.
    """
    j = len(expansion.steps)
    if j < 1:
        return
    r_prev, r_j = expansion.remainder(j - 1), expansion.remainder(j)
    shift = expansion.shift(j)
    b_1, b_2 = expansion.convergent(j - 1), expansion.convergent(j - 2)

    if rhs == -3:
        yield from _triple_hits(expansion, j, r_prev, r_j, shift, b_1, b_2)
        return

    if r_prev == r_j:
        params = _distinctive(FormClass.I_EQUAL_SQUARES, shift, r_j, b_1, b_2)
        if params:
            yield ShortcutHit(ShortcutKind.EQUAL_R, j, params)
    if r_prev == 2 * r_j:
        params = _distinctive(FormClass.II_DOUBLE_SQUARES, shift, r_j, b_2, b_1)
        if params:
            yield ShortcutHit(ShortcutKind.DOUBLE_R_BWD, j, params)
    if r_j == 2 * r_prev:
        params = _distinctive(FormClass.II_DOUBLE_SQUARES, shift, r_prev, b_1, b_2)
        if params:
            yield ShortcutHit(ShortcutKind.DOUBLE_R_FWD, j, params)
    if r_prev + r_j == 2 * shift:
        params = _distinctive(FormClass.III_SUM_EQUALS_CROSS, shift + r_prev, r_prev, b_1 + b_2, b_2)
        if params:
            yield ShortcutHit(ShortcutKind.SUM_EQ_2A, j, params)
    if r_j == 2 * shift:
        yield ShortcutHit(ShortcutKind.R_EQ_2A, j, None, b_1 * (b_1 + 2 * b_2))
    if shift > 0 and shift % r_j == 0:
        params = _composite_even(expansion.radicand, r_j, (shift // r_j) * b_1 + b_2, b_1)
        if params:
            yield ShortcutHit(ShortcutKind.K_TIMES_R, j, params)


def scan_shortcuts(expansion: CFExpansion, rhs: int = 1) -> Optional[ShortcutHit]:
    """First matching pattern at the newest step, or None."""
    return next(iter_shortcuts(expansion, rhs), None)


def _triple_hits(expansion: CFExpansion, j: int, r_prev: int, r_j: int, shift: int,
                 b_1: int, b_2: int) -> Iterator[ShortcutHit]:
    case = Parity.EVEN if expansion.radicand % 4 == 0 else Parity.ODD
    found = []
    if r_j == 3 * r_prev:
        found.append((ShortcutKind.TRIPLE_R_FWD, Minus3Params(shift, r_prev, b_1, b_2, case)))
    if r_prev == 3 * r_j:
        found.append((ShortcutKind.TRIPLE_R_BWD, Minus3Params(shift, r_j, b_2, b_1, case)))
    for kind, params in found:
        value = params.condition_value()
        if value in (1, -1) and gcd(params.l, params.m) == 1:
            yield ShortcutHit(kind=kind, position=j, params=Minus3Params(
                params.a, params.b, params.l, params.m, case, value))


def solution_from_hit(radicand: int, hit: ShortcutHit) -> Optional[PellSolution]:
    """Apply the case formula for a rhs=1 hit; None if the result is not minimal."""
    try:
        if hit.kind is ShortcutKind.R_EQ_2A:
            x = hit.x or 0
            solution = PellSolution(A=radicand, x=x, y=isqrt(radicand * x * x + 1))
            if x == 0 or not solution.verify():
                return None
        else:
            solution = solve_params(hit.params)
    except ConditionViolated as e:
        logger.debug(f"A={radicand}: {hit.kind.value} at j={hit.position} rejected: {e}")
        return None
    if solution.A != radicand:
        return None
    if unit_root(radicand, solution.x, solution.y) is not None:
        logger.debug(f"A={radicand}: {hit.kind.value} at j={hit.position} gives a non-minimal x")
        return None
    return solution.with_method(hit.kind.value, hit.position)


def solve_fast(radicand: int, config: Optional[SolverConfig] = None) -> PellSolution:
    """Expand step by step and stop at the first accepted shortcut.

    The result equals solve_standard(A); method names the shortcut (or
    STANDARD on fallback) and steps the expansion steps consumed.
    """
    expansion = None
    for expansion in iter_expansion(radicand, config=config):
        if expansion.is_complete:
            break
        for hit in iter_shortcuts(expansion):
            solution = solution_from_hit(radicand, hit)
            if solution is not None:
                logger.debug(f"A={radicand}: {hit.kind.value} accepted at step {hit.position}")
                return solution
    assert expansion is not None
    logger.debug(f"A={radicand}: no shortcut within the period, using the standard solution")
    return solution_from_expansion(expansion)

"""
Solutions of y^2 - Ax^2 = -3.

For A = a^2 + 3b^2 and coprime (l, m) with 2alm - b|l^2 - 3m^2| = +-1,
x = l^2 + 3m^2 and y = a|l^2 - 3m^2| + 6blm. When A = 4N + 1 every solution
has even x and comes from the equation for 4A through reduce_even_case.
"""
import logging
from math import gcd, isqrt
from typing import List, Optional, Tuple

from .arith import exact_sqrt, is_square, require_radicand
from .cf_engine import expand_sqrt, iter_expansion, iter_shortcuts
from .config import SolverConfig
from .errors import ConditionViolated, ParityViolation, SquareTarget, UsageError
from .models import FamilyMember, Minus3Params, Parity, PellSolution

logger = logging.getLogger(__name__)

RHS = -3
SMALL_A = 10  # below this |-3| >= sqrt(A) and convergents need not cover every solution


def minus3_solution(params: Minus3Params) -> Tuple[int, int]:
    """(x, y) with y^2 - Rx^2 = -3 for R = a^2 + 3b^2; both sign branches are tried."""
    value = params.condition_value()
    if value not in (1, -1):
        raise ConditionViolated(f"2alm - b|l^2 - 3m^2| = {value}, expected +-1", value)
    radicand, x, k3, t = params.radicand, params.x, params.k3, 2 * params.l * params.m
    for y in (abs(params.a * k3 + 3 * params.b * t), abs(params.a * k3 - 3 * params.b * t)):
        if y * y - radicand * x * x == RHS:
            return x, y
    raise ConditionViolated(f"no sign branch solves y^2 - {radicand}x^2 = -3 for {params.to_dict()}")


def reduce_even_case(radicand: int, x: int, y: int) -> Tuple[int, int, int]:
    """A solution for 4A becomes one for A with x doubled."""
    if radicand % 4:
        raise UsageError(f"{radicand} is not divisible by 4")
    return radicand // 4, 2 * x, y


def _scan_small(radicand: int, x_bound: int = 1000) -> Optional[PellSolution]:
    for x in range(1, x_bound + 1):
        y = exact_sqrt(radicand * x * x + RHS)
        if y is not None:
            return PellSolution(A=radicand, x=x, y=y, rhs=RHS, method="SCAN")
    return None


def _sweep(radicand: int, config: SolverConfig, below: Optional[int] = None) -> Optional[PellSolution]:
    """First convergent p/q of sqrt(A) with p^2 - Aq^2 = -3 over two periods."""
    expansion = expand_sqrt(radicand, config=config)
    for n in range(2 * expansion.period_length):
        q = expansion.convergent(n)
        if below is not None and q >= below:
            return None
        p = expansion.numerator(n)
        if p * p - radicand * q * q == RHS:
            return PellSolution(A=radicand, x=q, y=p, rhs=RHS, method="SWEEP", steps=n + 1)
    return None


def _shortcut(radicand: int, config: SolverConfig) -> Optional[PellSolution]:
    """TRIPLE_R patterns on sqrt(A) for A = 4N+3, on sqrt(4A) for A = 4N+1."""
    target = 4 * radicand if radicand % 4 == 1 else radicand
    for expansion in iter_expansion(target, config=config):
        if expansion.is_complete:
            return None
        for hit in iter_shortcuts(expansion, rhs=RHS):
            try:
                x, y = minus3_solution(hit.params)
            except ConditionViolated:
                continue
            if hit.params.radicand != target:
                continue
            if target != radicand:
                _, x, y = reduce_even_case(target, x, y)
            logger.debug(f"A={radicand}: {hit.kind.value} at j={hit.position} gives x={x}")
            return PellSolution(A=radicand, x=x, y=y, rhs=RHS, method=hit.kind.value, steps=hit.position)
    return None


def solve_minus3(radicand: int, config: Optional[SolverConfig] = None) -> Optional[PellSolution]:
    """Minimal solution of y^2 - Ax^2 = -3, or None if there is none.

    A shortcut hit is accepted only if no convergent with a smaller
    denominator solves the equation; otherwise, and when no pattern fires,
    the convergent sweep decides exactly.
    """
    config = config or SolverConfig()
    require_radicand(radicand)
    if radicand < SMALL_A:
        return _scan_small(radicand)

    if radicand % 2:
        found = _shortcut(radicand, config)
        if found is not None:
            smaller = _sweep(radicand, config, below=found.x)
            if smaller is None:
                return found
            logger.debug(f"A={radicand}: shortcut x={found.x} is not minimal, convergent gives {smaller.x}")
            return smaller
    solution = _sweep(radicand, config)
    if solution is None:
        logger.info(f"A={radicand}: y^2 - Ax^2 = -3 has no solution")
    return solution


def _representations_3sq(radicand: int) -> List[Tuple[int, int]]:
    found = []
    for b in range(1, isqrt(radicand // 3) + 1):
        a = exact_sqrt(radicand - 3 * b * b)
        if a is not None:
            found.append((a, b))
    return found


def representations_4a(radicand: int) -> List[Tuple[int, int]]:
    """(a, b) with a^2 + 3b^2 = 4A built from A = A0^2 + 3B0^2."""
    found = set()
    for a0, b0 in _representations_3sq(radicand):
        found.add((abs(a0 - 3 * b0), a0 + b0))
        found.add((a0 + 3 * b0, abs(a0 - b0)))
    return sorted(found)


def search_minus3_params(radicand: int, bound: Optional[int] = None,
                         config: Optional[SolverConfig] = None) -> Optional[Minus3Params]:
    """Exhaustive (l, m) search over the a^2 + 3b^2 representations.

    Case ODD uses the representations of A itself, case EVEN (A = 4N+1)
    those of 4A. Returns the parameters with the smallest x, or None.
    """
    if bound is None:
        bound = (config or SolverConfig()).minus3_param_bound
    if radicand % 4 == 1:
        case, representations = Parity.EVEN, representations_4a(radicand)
    else:
        case, representations = Parity.ODD, _representations_3sq(radicand)

    best: Optional[Minus3Params] = None
    for a, b in representations:
        for l in range(1, bound + 1):
            for m in range(1, bound + 1):
                if gcd(l, m) != 1:
                    continue
                params = Minus3Params(a, b, l, m, case)
                value = params.condition_value()
                if value not in (1, -1):
                    continue
                if best is None or params.x < best.x:
                    best = Minus3Params(a, b, l, m, case, value)
    return best


def vertical_minus3(g: int, d: int, l: int, m: int) -> Tuple[int, int]:
    """Seed (a0, b0) from dl - 3gm = +-1.

    b0 = 9g^3 m + ld^3, a0 = 3/2 |d^3 m + 9dmg^2 - 3d^2 lg - 3lg^3|.

    Raises:
        ConditionViolated: dl - 3gm is not +-1
        ParityViolation: the inner bracket is odd
    """
    value = d * l - 3 * g * m
    if value not in (1, -1):
        raise ConditionViolated(f"dl - 3gm = {value}, expected +-1", value)
    b0 = 9 * g ** 3 * m + l * d ** 3
    bracket = d ** 3 * m + 9 * d * m * g * g - 3 * d * d * l * g - 3 * l * g ** 3
    if bracket % 2:
        raise ParityViolation(bracket)
    a0 = 3 * abs(bracket) // 2
    for candidate in (a0, -a0):
        if Minus3Params(candidate, b0, l, m, Parity.ODD).condition_value() in (1, -1):
            return candidate, b0
    raise ConditionViolated(f"a0=+-{a0}, b0={b0} fail 2alm - b|l^2 - 3m^2| = +-1")


def m3a(g: int, m: int) -> Tuple[int, int, int, int]:
    """Identity family d = 1, l = 3gm + 1; returns (a0, b0, l, m)."""
    l = 3 * g * m + 1
    a0, b0 = vertical_minus3(g, 1, l, m)
    return a0, b0, l, m


def shift_minus3(a0: int, b0: int, l: int, m: int, i: int,
                 family_id: str = "m3a", case: Parity = Parity.ODD) -> FamilyMember:
    """Member i: a_i = a0 + i|l^2 - 3m^2|, b_i = b0 + 2ilm, x unchanged.

    With case EVEN the seed represents 4A (a, b odd); members whose radicand
    is divisible by 4 are reported for A_i / 4 with x doubled.

    Raises:
        SquareTarget: A_i is a perfect square or below 2
        ConditionViolated: the seed fails its condition
    """
    k3 = abs(l * l - 3 * m * m)
    a_i, b_i = a0 + i * k3, b0 + 2 * i * l * m
    params = Minus3Params(a_i, b_i, l, m, case)
    radicand = params.radicand
    if radicand < 2 or is_square(radicand):
        raise SquareTarget(radicand, i)
    x, y = minus3_solution(params)
    reduced = case is Parity.EVEN and radicand % 4 == 0
    if reduced:
        radicand, x, y = reduce_even_case(radicand, x, y)
        if is_square(radicand):
            raise SquareTarget(radicand, i)
    member = FamilyMember(family_id=family_id, i=i, A=radicand, x=x, y=y, a=a_i, b=b_i, rhs=RHS)
    member.verified = y * y - radicand * x * x == RHS
    if reduced:
        member.flags.append("from_4A")
    elif radicand % 4 == 0:
        member.flags.append("reduces_to_A/4")
    return member

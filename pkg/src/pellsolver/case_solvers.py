"""
Closed-form minimal-solution formulas per distinctive class, representation
finders and the routing of A by its residue and primality.
"""
import logging
from math import gcd, isqrt
from typing import Dict, List, Tuple

from sympy import divisors, integer_nthroot, isprime

from .arith import exact_sqrt, require_radicand
from .errors import ConditionViolated, NotRepresentable
from .models import (
    DistinctiveParams,
    FormClass,
    PellSolution,
    Representation,
    RepresentationKind,
    Route,
    condition_value,
)

logger = logging.getLogger(__name__)


def make_params(cls: FormClass, a: int, b: int, l: int, m: int) -> DistinctiveParams:
    """Bundle (a, b, l, m) with the signed value of the class condition."""
    return DistinctiveParams(cls=cls, a=a, b=b, l=l, m=m, sign=condition_value(cls, a, b, l, m))


def _check_unit_condition(params: DistinctiveParams, label: str) -> None:
    value = params.condition_value()
    if value not in (1, -1):
        raise ConditionViolated(f"{label} condition gives {value}, expected +-1", value)
    if gcd(params.l, params.m) != 1:
        raise ConditionViolated(f"{label}: l={params.l} and m={params.m} are not coprime")


def _verified(radicand: int, candidates: List[Tuple[int, int, str]], label: str) -> PellSolution:
    """First (x, y) candidate satisfying y^2 - Ax^2 = 1."""
    for x, y, branch in candidates:
        solution = PellSolution(A=radicand, x=x, y=y, method=label)
        if x > 0 and solution.verify():
            if branch:
                logger.debug(f"{label} A={radicand}: {branch} branch")
            return solution
    raise ConditionViolated(f"{label}: no branch satisfies the Pell identity for A={radicand}")


def x_4n1(params: DistinctiveParams) -> PellSolution:
    """Class I: A = a^2 + b^2, b(l^2 - m^2) - 2alm = +-1.

    x = 2|2blm + a(l^2 - m^2)|(l^2 + m^2), y = 2A(l^2 + m^2)^2 - 1.
    """
    _check_unit_condition(params, "class I")
    a, b, l, m = params.a, params.b, params.l, params.m
    radicand = a * a + b * b
    k, t, S = l * l - m * m, 2 * l * m, l * l + m * m
    x = 2 * abs(b * t + a * k) * S
    return _verified(radicand, [(x, 2 * radicand * S * S - 1, "")], "X_4N1")


def x_8n3(params: DistinctiveParams) -> PellSolution:
    """Class II: A = a^2 + 2b^2, b|l^2 - 2m^2| - 2alm = +-1.

    x = |4blm + a|l^2 - 2m^2|| (l^2 + 2m^2), y = A(l^2 + 2m^2)^2 - 1.
    """
    _check_unit_condition(params, "class II")
    a, b, l, m = params.a, params.b, params.l, params.m
    radicand = a * a + 2 * b * b
    k, t, S = abs(l * l - 2 * m * m), 2 * l * m, l * l + 2 * m * m
    y = radicand * S * S - 1
    return _verified(radicand, [
        (S * abs(a * k + 2 * b * t), y, ""),
        (S * abs(a * k - 2 * b * t), y, "subtractive"),
    ], "X_8N3")


def x_8n7(params: DistinctiveParams) -> PellSolution:
    """Class III: A = a^2 - 2b^2, 2alm - b(l^2 + 2m^2) = +-1.

    x = |(a(l^2 + 2m^2) - 4blm)(l^2 - 2m^2)|, y = A(l^2 - 2m^2)^2 + 1.
    """
    _check_unit_condition(params, "class III")
    a, b, l, m = params.a, params.b, params.l, params.m
    radicand = a * a - 2 * b * b
    if radicand < 2:
        raise ConditionViolated(f"class III: a^2 - 2b^2 = {radicand} is not a radicand")
    k, t, S = l * l + 2 * m * m, 2 * l * m, abs(l * l - 2 * m * m)
    y = radicand * S * S + 1
    return _verified(radicand, [
        (S * abs(a * k - 2 * b * t), y, ""),
        (S * abs(a * k + 2 * b * t), y, "additive"),
    ], "X_8N7")


def x_composite_even(p1: int, p2: int, S: int, Q: int) -> PellSolution:
    """A = p1 p2 with p1 S^2 - p2 Q^2 = 1: x = 2QS, y = 2 p1 S^2 - 1."""
    value = p1 * S * S - p2 * Q * Q
    if value != 1:
        raise ConditionViolated(f"p1 S^2 - p2 Q^2 = {value}, expected 1", value)
    if gcd(p1, p2) != 1:
        raise ConditionViolated(f"factors {p1} and {p2} are not coprime")
    return _verified(p1 * p2, [(2 * Q * S, 2 * p1 * S * S - 1, "")], "COMPOSITE_EVEN")


def x_composite_odd(p1: int, p2: int, S: int, Q: int) -> PellSolution:
    """A = p1 p2 with p1 S^2 - p2 Q^2 = +-2: x = SQ, y = (p1 S^2 + p2 Q^2) / 2.

    Only the +-2 condition is checked. Coprime p1, p2 with S and Q odd is
    the decomposition route's case; the doubled factors of
    vertical_composite (gcd 2, S or Q even) satisfy the same identity.
    """
    value = p1 * S * S - p2 * Q * Q
    if value not in (2, -2):
        raise ConditionViolated(f"p1 S^2 - p2 Q^2 = {value}, expected +-2", value)
    return _verified(p1 * p2, [(S * Q, (p1 * S * S + p2 * Q * Q) // 2, "")], "COMPOSITE_ODD")


def solve_params(params: DistinctiveParams) -> PellSolution:
    """Dispatch on the class of the parameters."""
    if params.cls is FormClass.I_EQUAL_SQUARES:
        return x_4n1(params)
    if params.cls is FormClass.II_DOUBLE_SQUARES:
        return x_8n3(params)
    if params.cls is FormClass.III_SUM_EQUALS_CROSS:
        return x_8n7(params)
    if params.cls is FormClass.IV_NO_CROSS:
        return x_composite_even(params.p1, params.p2, params.S, params.Q)
    return x_composite_odd(params.p1, params.p2, params.S, params.Q)


def negative_pell_companion(params: DistinctiveParams) -> Tuple[int, int]:
    """(S, N) with N^2 - A S^2 = -1 for class I parameters; x = 2NS."""
    if params.cls is not FormClass.I_EQUAL_SQUARES:
        raise ConditionViolated(f"negative Pell companion needs class I, got {params.cls.value}")
    _check_unit_condition(params, "class I")
    a, b, l, m = params.a, params.b, params.l, params.m
    S = l * l + m * m
    N = abs(2 * b * l * m + a * (l * l - m * m))
    if N * N + 1 != (a * a + b * b) * S * S:
        raise ConditionViolated("negative Pell companion identity failed")
    return S, N


def parameter_bound(radicand: int, y: int) -> int:
    """Largest l with l^4 <= (y + 1) / (2A); bounds class I parameters."""
    return int(integer_nthroot((y + 1) // (2 * radicand), 4)[0])


def classify_A(radicand: int) -> Route:
    """Route by residue and primality.

    Args:
        radicand: Non-square A

    Returns:
        PRIME_4N1, PRIME_8N3, PRIME_8N7 for odd primes, QUASIPRIME for 2p,
        COMPOSITE otherwise, OTHER for A = 2.
    """
    require_radicand(radicand)
    if isprime(radicand):
        if radicand % 4 == 1:
            return Route.PRIME_4N1
        if radicand % 8 == 3:
            return Route.PRIME_8N3
        if radicand % 8 == 7:
            return Route.PRIME_8N7
        return Route.OTHER
    if radicand % 2 == 0 and isprime(radicand // 2) and radicand // 2 > 2:
        return Route.QUASIPRIME
    return Route.COMPOSITE


ROUTE_REPRESENTATION: Dict[Route, RepresentationKind] = {
    Route.PRIME_4N1: RepresentationKind.SUM_SQ,
    Route.PRIME_8N3: RepresentationKind.SUM_2SQ,
    Route.PRIME_8N7: RepresentationKind.DIFF_2SQ,
    Route.QUASIPRIME: RepresentationKind.COPRIME_FACTORS,
    Route.COMPOSITE: RepresentationKind.COPRIME_FACTORS,
}


def find_representation(radicand: int, kind: RepresentationKind) -> Representation:
    """Representation of A of the requested kind by exhaustive search.

    SUM_SQ prefers a even and b odd (the orientation the class I formulas
    use), otherwise smallest a. DIFF_2SQ returns the smallest a, searched
    over b <= sqrt(A/2) + 1. COPRIME_FACTORS returns the smallest p2 > 1.
    """
    if kind is RepresentationKind.COPRIME_FACTORS:
        for p2 in divisors(radicand)[1:-1]:
            p1 = radicand // p2
            if gcd(p1, p2) == 1:
                return Representation(kind, p1, p2)
        raise NotRepresentable(radicand, kind)

    if kind is RepresentationKind.DIFF_2SQ:
        for b in range(1, isqrt(radicand // 2) + 2):
            a = exact_sqrt(radicand + 2 * b * b)
            if a is not None:
                return Representation(kind, a, b)
        raise NotRepresentable(radicand, kind)

    weight = {RepresentationKind.SUM_SQ: 1, RepresentationKind.SUM_2SQ: 2,
              RepresentationKind.SUM_3SQ: 3}[kind]
    found: List[Representation] = []
    for a in range(0, isqrt(radicand) + 1):
        rest = radicand - a * a
        if rest <= 0 or rest % weight:
            continue
        b = exact_sqrt(rest // weight)
        if b:
            found.append(Representation(kind, a, b))
    if not found:
        raise NotRepresentable(radicand, kind)
    if kind is RepresentationKind.SUM_SQ:
        for representation in found:
            if representation.a % 2 == 0 and representation.b % 2 == 1:
                return representation
    return found[0]

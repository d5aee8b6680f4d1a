"""
Horizontal and vertical solution families.

A horizontal family fixes (l, m) and shifts the representation
(a_i, b_i) = (a_0 + ik, b_0 + it); the distinctive condition keeps its
signed value, so every member solves its own Pell equation. Vertical
relations produce the seed (a_0, b_0) from (g, d, l, m) with ld - mg = +-1
(class I) or ld - 2mg_1 = +-1 (classes II and III). The registry below holds
the ten one-line identities that make those conditions hold for free.
"""
import logging
from dataclasses import dataclass
from math import gcd
from typing import Callable, Dict, Iterable, Iterator, List, Tuple

from .arith import is_square, unit_root
from .errors import (
    ConditionViolated,
    NonPositiveFactor,
    ParityViolation,
    SquareTarget,
    UnknownFamily,
    UsageError,
)
from .models import (
    CompositeFamily,
    FamilyMember,
    FormClass,
    Parity,
    SolutionFamily,
    condition_value,
)

logger = logging.getLogger(__name__)


def _require_coprime(l: int, m: int) -> None:
    if gcd(l, m) != 1:
        raise UsageError(f"l={l} and m={m} must be coprime")


def make_family(cls: FormClass, a0: int, b0: int, l: int, m: int, family_id: str = "") -> SolutionFamily:
    """Seed family after checking the distinctive condition is +-1."""
    _require_coprime(l, m)
    value = condition_value(cls, a0, b0, l, m)
    if value not in (1, -1):
        raise ConditionViolated(
            f"class {cls.value} condition for a={a0}, b={b0}, l={l}, m={m} gives {value}", value)
    return SolutionFamily(cls=cls, l=l, m=m, a0=a0, b0=b0, family_id=family_id or f"h{cls.value}")


def _radicand(cls: FormClass, a: int, b: int) -> int:
    if cls is FormClass.I_EQUAL_SQUARES:
        return a * a + b * b
    if cls is FormClass.II_DOUBLE_SQUARES:
        return a * a + 2 * b * b
    return a * a - 2 * b * b


def _solution(family: SolutionFamily, a: int, b: int) -> Tuple[int, int, int]:
    """(A, x, y) of the class formula with signed a, b."""
    k, t, S = family.k, family.t, family.S
    radicand = _radicand(family.cls, a, b)
    if family.cls is FormClass.I_EQUAL_SQUARES:
        return radicand, 2 * abs(b * t + a * k) * S, 2 * radicand * S * S - 1
    if family.cls is FormClass.II_DOUBLE_SQUARES:
        return radicand, S * abs(a * k + 2 * b * t), radicand * S * S - 1
    return radicand, S * abs(a * k - 2 * b * t), radicand * S * S + 1


def shift(family: SolutionFamily, i: int) -> FamilyMember:
    """Member i of a horizontal family.

    Class I moves x by 2S^3 per step, classes II and III by S^3.

    Raises:
        SquareTarget: A_i is a perfect square or below 2
    """
    a_i = family.a0 + i * family.k
    b_i = family.b0 + i * family.t
    radicand, x, y = _solution(family, a_i, b_i)
    if radicand < 2 or is_square(radicand):
        raise SquareTarget(radicand, i)

    member = FamilyMember(family_id=family.family_id, i=i, A=radicand, x=x, y=y, a=a_i, b=b_i)
    member.verified = y * y - radicand * x * x == 1
    if not member.verified:
        raise ConditionViolated(f"family {family.family_id} member i={i} fails the Pell identity")
    if i == -1:
        member.flags.append("i=-1")
        if abs(a_i) > abs(family.a0):
            member.flags.append("primitive_candidate")
    if unit_root(radicand, x, y) is not None:
        member.flags.append("not_minimal")
        logger.warning(f"family {family.family_id}: i={i} A={radicand} x={x} is not the minimal solution")
    return member


def shift_composite(family: CompositeFamily, i: int) -> FamilyMember:
    """Member i of a composite family: p1 + iQ^2, p2 + iS^2, x constant.

    Raises:
        NonPositiveFactor: a shifted factor is not positive
        SquareTarget: the product is a perfect square
    """
    S, Q = family.S, family.Q
    p1 = family.p01 + i * Q * Q
    p2 = family.p02 + i * S * S
    if p1 <= 0 or p2 <= 0:
        raise NonPositiveFactor(p1, p2, i)
    radicand = p1 * p2
    if radicand < 2 or is_square(radicand):
        raise SquareTarget(radicand, i)

    if family.parity is Parity.EVEN:
        x, y = 2 * Q * S, 2 * p1 * S * S - 1
    else:
        x, y = S * Q, (p1 * S * S + p2 * Q * Q) // 2
    member = FamilyMember(family_id=family.family_id, i=i, A=radicand, x=x, y=y, a=p1, b=p2)
    member.verified = y * y - radicand * x * x == 1
    if not member.verified:
        raise ConditionViolated(f"composite family {family.family_id} member i={i} fails the Pell identity")
    if unit_root(radicand, x, y) is not None:
        member.flags.append("not_minimal")
        logger.warning(f"composite family {family.family_id}: i={i} A={radicand} x={x} is not minimal")
    return member


def make_composite(parity: Parity, p01: int, p02: int, S: int, Q: int, family_id: str = "") -> CompositeFamily:
    """Composite seed after checking p01 S^2 - p02 Q^2 (1 even, +-2 odd)."""
    value = p01 * S * S - p02 * Q * Q
    allowed = (1,) if parity is Parity.EVEN else (2, -2)
    if value not in allowed:
        raise ConditionViolated(f"p01 S^2 - p02 Q^2 = {value}, expected {allowed}", value)
    return CompositeFamily(parity=parity, p01=p01, p02=p02, S=S, Q=Q,
                           family_id=family_id or f"composite_{parity.value}")


def generate(family, shifts: Iterable[int]) -> Iterator[FamilyMember]:
    """Members over a range of shifts; square targets and bad factors are skipped."""
    step = shift_composite if isinstance(family, CompositeFamily) else shift
    for i in shifts:
        try:
            yield step(family, i)
        except (SquareTarget, NonPositiveFactor) as e:
            logger.warning(f"family {family.family_id}: skipped: {e}")


def _check_unimodular(value: int, label: str) -> int:
    if value not in (1, -1):
        raise ConditionViolated(f"{label} = {value}, expected +-1", value)
    return value


def _pick_a0(cls: FormClass, candidates: List[int], b0: int, l: int, m: int) -> int:
    for a0 in candidates:
        if condition_value(cls, a0, b0, l, m) in (1, -1):
            return a0
    raise ConditionViolated(f"no a0 in {candidates} satisfies the class {cls.value} condition for b0={b0}")


def vertical_4n1(g: int, d: int, l: int, m: int) -> Tuple[int, int]:
    """Seed (a0, b0) of a class I family from ld - mg = +-1.

    b0 = mg^3 + ld^3, a0 = -(md^3 - lg^3 -+ 3gd) / 2.

    Raises:
        ConditionViolated: ld - mg is not +-1
        ParityViolation: the bracket is odd
    """
    sign = _check_unimodular(l * d - m * g, "ld - mg")
    b0 = m * g ** 3 + l * d ** 3
    bracket = m * d ** 3 - l * g ** 3 - sign * 3 * g * d
    if bracket % 2:
        raise ParityViolation(bracket)
    a0 = _pick_a0(FormClass.I_EQUAL_SQUARES, [-bracket // 2, bracket // 2], b0, l, m)
    return a0, b0


def vertical_8n3(g1: int, d: int, l: int, m: int) -> Tuple[int, int]:
    """Seed (a0, b0) of a class II family from ld - 2mg1 = +-1.

    b0 = 4mg1^3 + ld^3, a0 = |md^3 - 2lg1^3 -+ 3g1d|.
    """
    sign = _check_unimodular(l * d - 2 * m * g1, "ld - 2mg1")
    b0 = 4 * m * g1 ** 3 + l * d ** 3
    a0 = abs(m * d ** 3 - 2 * l * g1 ** 3 - sign * 3 * g1 * d)
    a0 = _pick_a0(FormClass.II_DOUBLE_SQUARES, [a0, -a0], b0, l, m)
    return a0, b0


def vertical_8n7(g1: int, d: int, l: int, m: int) -> Tuple[int, int]:
    """Seed (a0, b0) of a class III family from ld - 2mg1 = +-1.

    a0 = md^3 - 2lg1^3 +- 3g1d, b0 = ld^3 - 4mg1^3.
    """
    sign = _check_unimodular(l * d - 2 * m * g1, "ld - 2mg1")
    b0 = l * d ** 3 - 4 * m * g1 ** 3
    base = m * d ** 3 - 2 * l * g1 ** 3
    a0 = _pick_a0(FormClass.III_SUM_EQUALS_CROSS,
                  [base + sign * 3 * g1 * d, base - sign * 3 * g1 * d], b0, l, m)
    return a0, b0


def vertical_composite(l: int, m: int, Q: int, S: int, parity: Parity) -> Tuple[int, int]:
    """Factors (p01, p02) with p01 S^2 - p02 Q^2 = 1 (even) or 2 (odd).

    Requires Ql - Sm = 1; then (Ql - Sm)^3 is exactly the condition value.
    """
    if Q * l - S * m != 1:
        raise ConditionViolated(f"Ql - Sm = {Q * l - S * m}, expected 1", Q * l - S * m)
    p01 = m * m * (3 * Q * l - S * m)
    p02 = l * l * (3 * S * m - Q * l)
    if parity is Parity.ODD:
        p01, p02 = 2 * p01, 2 * p02
    return p01, p02


VERTICAL = {
    FormClass.I_EQUAL_SQUARES: vertical_4n1,
    FormClass.II_DOUBLE_SQUARES: vertical_8n3,
    FormClass.III_SUM_EQUALS_CROSS: vertical_8n7,
}


@dataclass(frozen=True)
class IdentityFamily:
    """One-line parameterization that satisfies a vertical condition identically."""
    family_id: str
    cls: FormClass
    params: Tuple[str, ...]
    build: Callable[..., Tuple[int, int, int, int]]  # -> (g, d, l, m)
    description: str = ""


def _4n1a(m: int, g: int, s: int = 1):
    return g, 1, m * g + s, m


def _4n1b(g: int, T: int):
    d = g - 1
    return g, d, g * T + 1, d * T + 1


def _4n1c(r: int, d: int, T: int, s: int = 1):
    g = r * d - s
    m = 2 * d * T + 1
    return g, d, r * m - 2 * T * s, m


def _4n1d(J: int, T: int, n1: int):
    g = J + T * (J - 1)
    d = J - 1
    r = T * J + J + 1
    return g, d, 2 * g * n1 + r, 2 * d * n1 + J


def _4n1e(n1: int, d: int, T: int, s: int = 1):
    m = n1 * d - s
    return 1 + d * T, d, n1 + T * m, m


def _8n3a(g1: int, m: int, s: int = 1):
    return g1, 1, 2 * g1 * m + s, m


def _8n3b(g1: int, s: int = 1):
    return g1, 1, 2 * g1 + s, 1


def _8n3c(g1: int, K: int, T: int, s: int = 1):
    l = 2 * g1 * K + 1
    return g1, 2 * T * g1 + s, l, T * l + s * K


def _8n7a(g1: int):
    return g1, 1, 2 * g1 + 1, 1


def _8n7b(g1: int, s: int = 1):
    return g1, 1, 4 * g1 * g1 + s, 2 * g1


FAMILIES: Dict[str, IdentityFamily] = {
    family.family_id: family for family in (
        IdentityFamily("4n1a", FormClass.I_EQUAL_SQUARES, ("m", "g", "s"), _4n1a, "d=1, l=mg+s"),
        IdentityFamily("4n1b", FormClass.I_EQUAL_SQUARES, ("g", "T"), _4n1b, "d=g-1, l=gT+1, m=dT+1"),
        IdentityFamily("4n1c", FormClass.I_EQUAL_SQUARES, ("r", "d", "T", "s"), _4n1c,
                       "g=rd-s, m=2dT+1, l=rm-2Ts"),
        IdentityFamily("4n1d", FormClass.I_EQUAL_SQUARES, ("J", "T", "n1"), _4n1d,
                       "g=J+T(J-1), d=J-1, r=TJ+J+1, l=2gn1+r, m=2dn1+J"),
        IdentityFamily("4n1e", FormClass.I_EQUAL_SQUARES, ("n1", "d", "T", "s"), _4n1e,
                       "m=n1d-s, l=n1+Tm, g=1+dT"),
        IdentityFamily("8n3a", FormClass.II_DOUBLE_SQUARES, ("g1", "m", "s"), _8n3a, "d=1, l=2g1m+s"),
        IdentityFamily("8n3b", FormClass.II_DOUBLE_SQUARES, ("g1", "s"), _8n3b, "d=m=1, l=2g1+s"),
        IdentityFamily("8n3c", FormClass.II_DOUBLE_SQUARES, ("g1", "K", "T", "s"), _8n3c,
                       "l=2g1K+1, m=Tl+sK, d=2Tg1+s"),
        IdentityFamily("8n7a", FormClass.III_SUM_EQUALS_CROSS, ("g1",), _8n7a, "d=m=1, l=2g1+1"),
        IdentityFamily("8n7b", FormClass.III_SUM_EQUALS_CROSS, ("g1", "s"), _8n7b, "d=1, m=2g1, l=4g1^2+s"),
    )
}


def identity_family(family_id: str, **params: int) -> SolutionFamily:
    """Seed family of a registered identity.

    Args:
        family_id: Registry key, e.g. "4n1b"
        **params: The free parameters the identity names; s defaults to +1

    Returns:
        SolutionFamily whose seed_params() satisfy the distinctive condition

    Raises:
        UnknownFamily: family_id is not registered
        UsageError: a required parameter is missing or unknown
    """
    if family_id not in FAMILIES:
        raise UnknownFamily(family_id)
    entry = FAMILIES[family_id]
    unknown = set(params) - set(entry.params)
    if unknown:
        raise UsageError(f"family {family_id} takes {', '.join(entry.params)}; got {', '.join(sorted(unknown))}")
    try:
        g, d, l, m = entry.build(**params)
    except TypeError as e:
        raise UsageError(f"family {family_id} needs {', '.join(entry.params)}: {e}") from e
    a0, b0 = VERTICAL[entry.cls](g, d, l, m)
    logger.debug(f"family {family_id} {params}: g={g} d={d} l={l} m={m} a0={a0} b0={b0}")
    return make_family(entry.cls, a0, b0, l, m, family_id=family_id)

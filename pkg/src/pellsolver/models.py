"""
Data models for pellsolver.
"""
from dataclasses import dataclass, field, replace
from datetime import datetime
from enum import Enum
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

from .errors import IndexBeyondExpansion


class ShortcutKind(Enum):
    """Remainder patterns that end a continued fraction walk early."""
    EQUAL_R = "EQUAL_R"
    DOUBLE_R_FWD = "DOUBLE_R_FWD"
    DOUBLE_R_BWD = "DOUBLE_R_BWD"
    SUM_EQ_2A = "SUM_EQ_2A"
    K_TIMES_R = "K_TIMES_R"
    R_EQ_2A = "R_EQ_2A"
    TRIPLE_R_FWD = "TRIPLE_R_FWD"
    TRIPLE_R_BWD = "TRIPLE_R_BWD"


class FormClass(Enum):
    """The five distinctive-form shapes."""
    I_EQUAL_SQUARES = "I"
    II_DOUBLE_SQUARES = "II"
    III_SUM_EQUALS_CROSS = "III"
    IV_NO_CROSS = "IV"
    V_SQUARE_EQUALS_CROSS = "V"


class Move(Enum):
    """Sequential-differences substitutions."""
    X_SHIFT = "X=Y+X'"
    Y_SHIFT = "Y=X+Y'"


class RepresentationKind(Enum):
    """Ways of writing A."""
    SUM_SQ = "sum_sq"  # a^2 + b^2
    SUM_2SQ = "sum_2sq"  # a^2 + 2b^2
    DIFF_2SQ = "diff_2sq"  # a^2 - 2b^2
    SUM_3SQ = "sum_3sq"  # a^2 + 3b^2
    COPRIME_FACTORS = "coprime_factors"  # p1 * p2


class Route(Enum):
    """Solver route chosen from the arithmetic of A."""
    PRIME_4N1 = "prime_4n1"
    PRIME_8N3 = "prime_8n3"
    PRIME_8N7 = "prime_8n7"
    QUASIPRIME = "quasiprime"  # 2p
    COMPOSITE = "composite"
    OTHER = "other"


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


class MaximaKind(Enum):
    LOCAL = "local"
    ABSOLUTE = "absolute"


class MaximaClass(Enum):
    PRIME_4N1 = "prime_4n1"
    PRIME = "prime"
    QUASIPRIME = "quasiprime"
    OTHER = "other"


@dataclass(frozen=True)
class PellSolution:
    """A verified (A, x, y) with the right-hand side it solves."""
    A: int
    x: int
    y: int
    rhs: int = 1
    method: str = "STANDARD"
    steps: int = 0

    def verify(self) -> bool:
        return self.y * self.y - self.A * self.x * self.x == self.rhs

    def with_method(self, method: str, steps: Optional[int] = None) -> 'PellSolution':
        return replace(self, method=method, steps=self.steps if steps is None else steps)

    def to_dict(self) -> Dict[str, Any]:
        """Convert solution to dictionary; big integers become decimal strings."""
        return {
            'A': self.A,
            'x': str(self.x),
            'y': str(self.y),
            'rhs': self.rhs,
            'method': self.method,
            'steps': self.steps,
        }

    def to_record(self) -> Dict[str, Any]:
        """Output record: the right side only appears when it is not 1."""
        record: Dict[str, Any] = {'A': self.A, 'x': str(self.x), 'y': str(self.y)}
        if self.rhs != 1:
            record['rhs'] = self.rhs
        record['method'] = self.method
        record['steps'] = self.steps
        return record

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PellSolution':
        return cls(
            A=int(data['A']),
            x=int(data['x']),
            y=int(data['y']),
            rhs=int(data.get('rhs', 1)),
            method=data.get('method', 'STANDARD'),
            steps=int(data.get('steps', 0)),
        )


@dataclass(frozen=True)
class CFStep:
    """One step of the expansion: d_{i-1} + r_i / (sqrt(A) + a_i)."""
    index: int
    quotient: int  # d_{i-1}
    shift: int  # a_i
    remainder: int  # r_i


@dataclass
class CFExpansion:
    """Continued fraction state of sqrt(A) plus lazily extended convergents."""
    radicand: int
    d0: int
    steps: List[CFStep] = field(default_factory=list)
    period_length: Optional[int] = None
    _denominators: List[int] = field(default_factory=list, repr=False)
    _numerators: List[int] = field(default_factory=list, repr=False)

    @property
    def is_complete(self) -> bool:
        return self.period_length is not None

    @property
    def quotients(self) -> List[int]:
        return [step.quotient for step in self.steps]

    def quotient(self, n: int) -> int:
        """d_n; past the computed steps only once the period is known."""
        if n < 0:
            raise IndexBeyondExpansion(n, len(self.steps))
        if n < len(self.steps):
            return self.steps[n].quotient
        if self.period_length:
            return self.steps[(n - 1) % self.period_length + 1].quotient
        raise IndexBeyondExpansion(n, len(self.steps))

    def remainder(self, i: int) -> int:
        return 1 if i == 0 else self.steps[i - 1].remainder

    def shift(self, i: int) -> int:
        return 0 if i == 0 else self.steps[i - 1].shift

    def convergent(self, n: int) -> int:
        """B_n with B_{-2} = 1, B_{-1} = 0."""
        if n == -2:
            return 1
        if n == -1:
            return 0
        self._extend(n)
        return self._denominators[n]

    def numerator(self, n: int) -> int:
        """p_n with p_{-2} = 0, p_{-1} = 1, so p_n / B_n tends to sqrt(A)."""
        if n == -2:
            return 0
        if n == -1:
            return 1
        self._extend(n)
        return self._numerators[n]

    def _extend(self, n: int) -> None:
        while len(self._denominators) <= n:
            k = len(self._denominators)
            d = self.quotient(k)
            self._denominators.append(d * self.convergent(k - 1) + self.convergent(k - 2))
            self._numerators.append(d * self.numerator(k - 1) + self.numerator(k - 2))


@dataclass(frozen=True)
class BQForm:
    """Binary quadratic form bY^2 - cX^2 + 2aXY with bc + a^2 = A."""
    a: int
    b: int
    c: int
    radicand: int

    @property
    def r(self) -> int:
        """Value at X = Y = 1."""
        return self.b - self.c + 2 * self.a

    def determinant(self) -> int:
        return self.b * self.c + self.a * self.a

    def value(self, x: int, y: int) -> int:
        return self.b * y * y - self.c * x * x + 2 * self.a * x * y

    def apply(self, move: Move) -> 'BQForm':
        """Form after substituting X = Y + X' or Y = X + Y'."""
        r = self.r
        if move is Move.X_SHIFT:
            return BQForm(a=self.a - self.c, b=r, c=self.c, radicand=self.radicand)
        return BQForm(a=self.a + self.b, b=self.b, c=-r, radicand=self.radicand)

    def flip_cross(self) -> 'BQForm':
        return BQForm(a=-self.a, b=self.b, c=self.c, radicand=self.radicand)

    def __str__(self) -> str:
        text = _term(self.b, "Y^2", first=True)
        text += _term(-self.c, "X^2")
        text += _term(2 * self.a, "XY")
        return text or "0"

    def to_dict(self) -> Dict[str, Any]:
        return {'a': self.a, 'b': self.b, 'c': self.c, 'radicand': self.radicand}


def _term(coefficient: int, symbol: str, first: bool = False) -> str:
    if coefficient == 0:
        return ""
    magnitude = abs(coefficient)
    body = symbol if magnitude == 1 else f"{magnitude}{symbol}"
    if first:
        return body if coefficient > 0 else f"-{body}"
    return f" + {body}" if coefficient > 0 else f" - {body}"


@dataclass
class SubstitutionLog:
    """Moves applied to a start form, with every intermediate form."""
    start: BQForm
    moves: List[Move] = field(default_factory=list)
    forms: List[BQForm] = field(default_factory=list)

    @property
    def final(self) -> BQForm:
        return self.forms[-1] if self.forms else self.start

    def append(self, move: Move, form: BQForm) -> None:
        self.moves.append(move)
        self.forms.append(form)

    def replay(self) -> BQForm:
        form = self.start
        for move in self.moves:
            form = form.apply(move)
        return form

    def push_forward(self, point: Tuple[int, int]) -> Tuple[int, int]:
        """Carry a point (X, Y) of the start form to the final form."""
        x, y = point
        for move in self.moves:
            if move is Move.X_SHIFT:
                x = x - y
            else:
                y = y - x
        return x, y

    def pull_back(self, point: Tuple[int, int] = (1, 1)) -> Tuple[int, int]:
        """Carry a point (X, Y) of the final form back to the start form."""
        x, y = point
        for move in reversed(self.moves):
            if move is Move.X_SHIFT:
                x = y + x
            else:
                y = x + y
        return x, y

    def transcript(self) -> List[str]:
        lines = [f"0) {self.start}"]
        for n, (move, form) in enumerate(zip(self.moves, self.forms), start=1):
            lines.append(f"{n}) {move.value} => {form}")
        return lines


@dataclass(frozen=True)
class Representation:
    """A written as a^2 + b^2, a^2 + 2b^2, a^2 - 2b^2, a^2 + 3b^2 or p1 * p2."""
    kind: RepresentationKind
    a: int
    b: int

    @property
    def p1(self) -> int:
        return self.a

    @property
    def p2(self) -> int:
        return self.b

    def value(self) -> int:
        if self.kind is RepresentationKind.SUM_SQ:
            return self.a * self.a + self.b * self.b
        if self.kind is RepresentationKind.SUM_2SQ:
            return self.a * self.a + 2 * self.b * self.b
        if self.kind is RepresentationKind.DIFF_2SQ:
            return self.a * self.a - 2 * self.b * self.b
        if self.kind is RepresentationKind.SUM_3SQ:
            return self.a * self.a + 3 * self.b * self.b
        return self.a * self.b

    def is_valid(self) -> bool:
        if self.kind is RepresentationKind.COPRIME_FACTORS:
            return self.a > 1 and self.b > 1 and gcd(self.a, self.b) == 1
        return self.b > 0

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind.value, 'a': self.a, 'b': self.b, 'value': self.value()}


@dataclass(frozen=True)
class DistinctiveParams:
    """Case-classified (a, b, l, m) with the signed right side of its condition.

    Classes IV and V reuse the fields as a = p1, b = p2, l = S, m = Q.
    """
    cls: FormClass
    a: int
    b: int
    l: int
    m: int
    sign: int

    @property
    def p1(self) -> int:
        return self.a

    @property
    def p2(self) -> int:
        return self.b

    @property
    def S(self) -> int:
        return self.l

    @property
    def Q(self) -> int:
        return self.m

    def radicand(self) -> int:
        return self.representation().value()

    def condition_value(self) -> int:
        return condition_value(self.cls, self.a, self.b, self.l, self.m)

    def representation(self) -> Representation:
        kind = {
            FormClass.I_EQUAL_SQUARES: RepresentationKind.SUM_SQ,
            FormClass.II_DOUBLE_SQUARES: RepresentationKind.SUM_2SQ,
            FormClass.III_SUM_EQUALS_CROSS: RepresentationKind.DIFF_2SQ,
        }.get(self.cls, RepresentationKind.COPRIME_FACTORS)
        return Representation(kind=kind, a=abs(self.a), b=abs(self.b))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'class': self.cls.value,
            'a': self.a,
            'b': self.b,
            'l': self.l,
            'm': self.m,
            'sign': self.sign,
        }


def condition_value(cls: FormClass, a: int, b: int, l: int, m: int) -> int:
    """Left side of the distinctive condition for the given class."""
    if cls is FormClass.I_EQUAL_SQUARES:
        return b * (l * l - m * m) - 2 * a * l * m
    if cls is FormClass.II_DOUBLE_SQUARES:
        return b * abs(l * l - 2 * m * m) - 2 * a * l * m
    if cls is FormClass.III_SUM_EQUALS_CROSS:
        return 2 * a * l * m - b * (l * l + 2 * m * m)
    return a * l * l - b * m * m


@dataclass(frozen=True)
class SolutionFamily:
    """Seed (a0, b0) with fixed (l, m); shifts give the horizontal family."""
    cls: FormClass
    l: int
    m: int
    a0: int
    b0: int
    family_id: str = ""

    @property
    def k(self) -> int:
        if self.cls is FormClass.I_EQUAL_SQUARES:
            return self.l * self.l - self.m * self.m
        if self.cls is FormClass.II_DOUBLE_SQUARES:
            return abs(self.l * self.l - 2 * self.m * self.m)
        return self.l * self.l + 2 * self.m * self.m

    @property
    def t(self) -> int:
        return 2 * self.l * self.m

    @property
    def S(self) -> int:
        if self.cls is FormClass.I_EQUAL_SQUARES:
            return self.l * self.l + self.m * self.m
        if self.cls is FormClass.II_DOUBLE_SQUARES:
            return self.l * self.l + 2 * self.m * self.m
        return abs(self.l * self.l - 2 * self.m * self.m)

    def seed_params(self) -> DistinctiveParams:
        value = condition_value(self.cls, self.a0, self.b0, self.l, self.m)
        return DistinctiveParams(self.cls, self.a0, self.b0, self.l, self.m, value)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family_id,
            'class': self.cls.value,
            'l': self.l,
            'm': self.m,
            'a0': self.a0,
            'b0': self.b0,
        }


@dataclass(frozen=True)
class CompositeFamily:
    """p01 * S^2 - p02 * Q^2 = 1 (even x) or +-2 (odd x)."""
    parity: Parity
    p01: int
    p02: int
    S: int
    Q: int
    family_id: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family_id,
            'parity': self.parity.value,
            'p01': self.p01,
            'p02': self.p02,
            'S': self.S,
            'Q': self.Q,
        }


@dataclass(frozen=True)
class Minus3Params:
    """Parameters of a y^2 - A x^2 = -3 solution, x = l^2 + 3m^2."""
    a: int
    b: int
    l: int
    m: int
    case: Parity  # ODD: A = 4N+3 directly; EVEN: expansion of 4A
    sign: int = 0

    @property
    def radicand(self) -> int:
        return self.a * self.a + 3 * self.b * self.b

    @property
    def k3(self) -> int:
        return abs(self.l * self.l - 3 * self.m * self.m)

    @property
    def x(self) -> int:
        return self.l * self.l + 3 * self.m * self.m

    def condition_value(self) -> int:
        return 2 * self.a * self.l * self.m - self.b * self.k3

    def to_dict(self) -> Dict[str, Any]:
        return {
            'a': self.a,
            'b': self.b,
            'l': self.l,
            'm': self.m,
            'case': self.case.value,
            'sign': self.sign,
        }


@dataclass(frozen=True)
class ShortcutHit:
    """A remainder pattern found at step j with its extracted parameters."""
    kind: ShortcutKind
    position: int
    params: Optional[Any] = None  # DistinctiveParams or Minus3Params
    x: Optional[int] = None  # R_EQ_2A gives x directly


@dataclass
class FamilyMember:
    """One shifted member (A_i, x_i, y_i) of a solution family."""
    family_id: str
    i: int
    A: int
    x: int
    y: int
    a: int
    b: int
    rhs: int = 1
    verified: bool = False
    flags: List[str] = field(default_factory=list)

    def solution(self) -> PellSolution:
        return PellSolution(A=self.A, x=self.x, y=self.y, rhs=self.rhs, method=f"FAMILY_{self.family_id}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family_id,
            'i': self.i,
            'A': self.A,
            'x': str(self.x),
            'y': str(self.y),
            'a': self.a,
            'b': self.b,
            'rhs': self.rhs,
            'verified': self.verified,
            'flags': list(self.flags),
        }


@dataclass
class InverseResult:
    """Outcome of a sequential-differences solve."""
    params: DistinctiveParams
    solution: PellSolution
    representation: Representation
    log: SubstitutionLog

    def transcript(self) -> List[str]:
        return self.log.transcript()


@dataclass(frozen=True)
class TableRecord:
    """One row of a solution table."""
    A: int
    x: int
    y: int
    method: str

    def to_dict(self) -> Dict[str, Any]:
        return {'A': self.A, 'x': str(self.x), 'y': str(self.y), 'method': self.method}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TableRecord':
        return cls(A=int(data['A']), x=int(data['x']), y=int(data['y']), method=data['method'])


@dataclass(frozen=True)
class MaximaRecord:
    """A local or absolute maximum of the minimal x."""
    A: int
    x: int
    k: int  # k^2 < A < (k+1)^2
    kind: MaximaKind
    classification: MaximaClass

    def to_dict(self) -> Dict[str, Any]:
        return {
            'A': self.A,
            'x': str(self.x),
            'k': self.k,
            'kind': self.kind.value,
            'classification': self.classification.value,
        }


@dataclass
class MethodTotals:
    """Per-method benchmark totals."""
    wall_time: float = 0.0  # seconds
    steps: int = 0
    hits: Dict[str, int] = field(default_factory=dict)
    fallbacks: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'wall_time': self.wall_time,
            'steps': self.steps,
            'hits': dict(sorted(self.hits.items())),
            'fallbacks': self.fallbacks,
        }


@dataclass
class BenchReport:
    """Standard versus fast comparison over a range of A."""
    a_lo: int
    a_hi: int
    count: int
    standard: MethodTotals
    fast: MethodTotals
    speedup: float  # standard / fast wall time
    step_ratio: float  # fast / standard CF steps
    prime_4n1_step_ratio: Optional[float] = None
    mismatches: int = 0
    unclassifiable: Optional[int] = None
    over_budget: Optional[int] = None  # reductions that exhausted the budget
    maxima: List[MaximaRecord] = field(default_factory=list)
    environment: Dict[str, str] = field(default_factory=dict)
    created: datetime = field(default_factory=datetime.now)

    def to_dict(self) -> Dict[str, Any]:
        """Convert report to dictionary for serialization."""
        return {
            'range': [self.a_lo, self.a_hi],
            'count': self.count,
            'standard': self.standard.to_dict(),
            'fast': self.fast.to_dict(),
            'speedup': self.speedup,
            'step_ratio': self.step_ratio,
            'prime_4n1_step_ratio': self.prime_4n1_step_ratio,
            'mismatches': self.mismatches,
            'unclassifiable': self.unclassifiable,
            'over_budget': self.over_budget,
            'maxima': [record.to_dict() for record in self.maxima],
            'environment': self.environment,
            'created': self.created.isoformat(),
        }

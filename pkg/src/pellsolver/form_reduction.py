"""
Sequential differences on binary quadratic forms bY^2 - cX^2 + 2aXY.

Two pipelines share the reduction loop:

* inverse_solve starts from the form built out of floor(sqrt(A)), carries the
  point (1, -1) forward through every substitution and stops at the first
  distinctive form whose point yields verified parameters.
* solve_from_representation starts from the distinctive form of a known
  representation of A, reduces until the value at X = Y = 1 is +-1 and pulls
  (1, 1) back to the parameters (l, m).
"""
import logging
from typing import Iterable, Iterator, List, Optional, Tuple

from .arith import require_radicand, unit_root
from .case_solvers import ROUTE_REPRESENTATION, classify_A, find_representation, make_params, solve_params
from .config import SolverConfig
from .errors import ConditionViolated, StepBudgetExceeded, Unclassifiable, UltimateFormReached
from .models import (
    BQForm,
    DistinctiveParams,
    FormClass,
    InverseResult,
    Move,
    PellSolution,
    Representation,
    RepresentationKind,
    SubstitutionLog,
)

logger = logging.getLogger(__name__)

Point = Tuple[int, int]  # (X, Y)


def start_form(radicand: int) -> BQForm:
    """b = (k+1)^2 - A, c = A - k^2 and a = -(A - k(k+1)) for k = floor(sqrt(A))."""
    k = require_radicand(radicand)
    return BQForm(
        a=-(radicand - k * (k + 1)),
        b=(k + 1) ** 2 - radicand,
        c=radicand - k * k,
        radicand=radicand,
    )


def reduce_step(form: BQForm, terminal: Iterable[int] = (1,)) -> Tuple[BQForm, Move]:
    """One substitution chosen by r = b - c + 2a.

    Raises:
        UltimateFormReached: r is one of the terminal values
        ConditionViolated: r == 0 (impossible for a non-square A)
    """
    r = form.r
    if r in tuple(terminal):
        raise UltimateFormReached(form)
    if r > 1:
        move = Move.X_SHIFT
    elif r < 0:
        move = Move.Y_SHIFT
    else:
        raise ConditionViolated(f"form {form} takes the value 0 at X=Y=1", r)
    return form.apply(move), move


def reduce_form(form: BQForm, terminal: Iterable[int] = (1,),
                budget: Optional[int] = None) -> SubstitutionLog:
    """Reduce until a terminal value at X = Y = 1; return the full log."""
    terminal = tuple(terminal)
    if budget is None:
        budget = SolverConfig().reduction_budget(form.radicand)
    log = SubstitutionLog(start=form)
    current = form
    for _ in range(budget):
        try:
            current, move = reduce_step(current, terminal)
        except UltimateFormReached:
            return log
        log.append(move, current)
    raise StepBudgetExceeded(form.radicand, budget, what="form reduction")


def classify(form: BQForm) -> Optional[FormClass]:
    """Distinctive class of the form, or None.

    The zero cross term is checked first, then I, II, III and V.
    """
    b, c, a = form.b, form.c, abs(form.a)
    if a == 0:
        return FormClass.IV_NO_CROSS
    if b == c:
        return FormClass.I_EQUAL_SQUARES
    if b == 2 * c or c == 2 * b:
        return FormClass.II_DOUBLE_SQUARES
    if b + c == 2 * a:
        return FormClass.III_SUM_EQUALS_CROSS
    if b == 2 * a or c == 2 * a:
        return FormClass.V_SQUARE_EQUALS_CROSS
    return None


def extract(form: BQForm, cls: FormClass, point: Point) -> Iterator[DistinctiveParams]:
    """Candidate parameters read off a distinctive form at a point it maps to 1."""
    X, Y = abs(point[0]), abs(point[1])
    a_f = abs(form.a)

    if cls is FormClass.I_EQUAL_SQUARES:
        for l, m in ((X, Y), (Y, X)):
            yield make_params(cls, a_f, form.b, l, m)

    elif cls is FormClass.II_DOUBLE_SQUARES:
        for l, m in ((X, Y), (Y, X)):
            yield make_params(cls, a_f, min(form.b, form.c), l, m)

    elif cls is FormClass.III_SUM_EQUALS_CROSS:
        # The variable whose square carries b is z
        for b, z, m in ((form.c, X, Y), (form.b, Y, X)):
            a = a_f + b
            for l in (m + z, abs(m - z)):
                yield make_params(cls, a, b, l, m)

    elif cls is FormClass.IV_NO_CROSS:
        yield make_params(cls, form.b, form.c, Y, X)
        yield make_params(cls, form.c, form.b, X, Y)

    else:
        # The square coefficient equal to 2|a| belongs to q
        options = []
        if form.c == 2 * a_f:
            options.append((form.b, Y, X))
        if form.b == 2 * a_f:
            options.append((form.c, X, Y))
        for other, S, q in options:
            p1, p2 = 2 * other + a_f, a_f
            for Q in (S + 2 * q, abs(S - 2 * q)):
                yield make_params(cls, p1, p2, S, Q)


def _accept(radicand: int, params: DistinctiveParams) -> Optional[PellSolution]:
    """Solution from params if it is verified, belongs to A and is minimal."""
    try:
        solution = solve_params(params)
    except ConditionViolated:
        return None
    if solution.A != radicand or not solution.verify():
        return None
    if unit_root(radicand, solution.x, solution.y) is not None:
        logger.debug(f"A={radicand}: class {params.cls.value} params {params.to_dict()} give a power")
        return None
    return solution


def _try_form(radicand: int, form: BQForm, point: Point) -> Optional[Tuple[DistinctiveParams, PellSolution]]:
    cls = classify(form)
    if cls is None:
        return None
    logger.debug(f"A={radicand}: {form} is class {cls.value} at point {point}")
    for params in extract(form, cls, point):
        solution = _accept(radicand, params)
        if solution is not None:
            return params, solution
    return None


def reduce_to_distinctive(radicand: int, config: Optional[SolverConfig] = None) -> InverseResult:
    """Walk from the start form to the first distinctive form that solves A.

    Every form on the way, the start form included, is classified; the point
    (1, -1) of the start form is carried along and read off when a class
    matches. The solution is verified and checked for minimality.

    Raises:
        PerfectSquare: A is a square
        Unclassifiable: the ultimate form was reached without an accepted form
        StepBudgetExceeded: reduction did not terminate within the budget
    """
    config = config or SolverConfig()
    form = start_form(radicand)
    log = SubstitutionLog(start=form)
    point: Point = (1, -1)
    budget = config.reduction_budget(radicand)

    for _ in range(budget):
        found = _try_form(radicand, form, point)
        if found is not None:
            params, solution = found
            solution = solution.with_method(f"SEQDIFF_{params.cls.value}", len(log.moves))
            return InverseResult(params=params, solution=solution,
                                 representation=params.representation(), log=log)
        try:
            form, move = reduce_step(form)
        except UltimateFormReached:
            raise Unclassifiable(radicand, f"ultimate form {form} reached after {len(log.moves)} moves")
        x, y = point
        point = (x - y, y) if move is Move.X_SHIFT else (x, y - x)
        log.append(move, form)
    raise StepBudgetExceeded(radicand, budget, what="form reduction")


def inverse_solve(radicand: int, config: Optional[SolverConfig] = None) -> Tuple[DistinctiveParams, PellSolution]:
    """Distinctive parameters and minimal solution without a known representation."""
    result = reduce_to_distinctive(radicand, config)
    return result.params, result.solution


def distinctive_forms(representation: Representation) -> List[Tuple[BQForm, str]]:
    """Forms in the unknown parameters for a representation.

    The tag names how the (X, Y) point at X = Y = 1 maps back to (l, m):
    "YX" means Y = l, X = m; "XY" means X = l, Y = m; "III" means Y = m,
    X = z with l = m + z.
    """
    a, b = representation.a, representation.b
    A = representation.value()
    if representation.kind is RepresentationKind.SUM_SQ:
        return [(BQForm(a=-a, b=b, c=b, radicand=A), "YX")]
    if representation.kind is RepresentationKind.SUM_2SQ:
        return [
            (BQForm(a=-a, b=2 * b, c=b, radicand=A), "XY"),
            (BQForm(a=-a, b=b, c=2 * b, radicand=A), "YX"),
        ]
    if representation.kind is RepresentationKind.DIFF_2SQ:
        return [(BQForm(a=a - b, b=2 * a - 3 * b, c=b, radicand=A), "III")]
    return []


def _params_from_point(representation: Representation, tag: str, point: Point) -> List[DistinctiveParams]:
    X, Y = point
    a, b = representation.a, representation.b
    if tag == "III":
        return [make_params(FormClass.III_SUM_EQUALS_CROSS, a, b, l, Y) for l in (Y + X, abs(Y - X))]
    l, m = (Y, X) if tag == "YX" else (X, Y)
    cls = (FormClass.I_EQUAL_SQUARES if representation.kind is RepresentationKind.SUM_SQ
           else FormClass.II_DOUBLE_SQUARES)
    return [make_params(cls, a, b, l, m)]


def solve_from_representation(radicand: int, kind: Optional[RepresentationKind] = None,
                              config: Optional[SolverConfig] = None) -> InverseResult:
    """Sequential differences on the distinctive form of a known representation.

    Args:
        radicand: Non-square A
        kind: Representation to use; by default the one classify_A routes to

    Raises:
        NotRepresentable: A has no representation of the kind
        Unclassifiable: no form orientation yields a verified minimal solution
    """
    config = config or SolverConfig()
    require_radicand(radicand)
    if kind is None:
        kind = ROUTE_REPRESENTATION.get(classify_A(radicand))
        if kind is None:
            raise Unclassifiable(radicand, "no representation route")
    representation = find_representation(radicand, kind)
    forms = distinctive_forms(representation)
    if not forms:
        raise Unclassifiable(radicand, f"no distinctive form for a {kind.value} representation")

    budget = config.reduction_budget(radicand)
    for form, tag in forms:
        try:
            log = reduce_form(form, terminal=(1, -1), budget=budget)
        except StepBudgetExceeded as e:
            logger.debug(f"A={radicand}: {form} skipped: {e}")
            continue
        point = log.pull_back((1, 1))
        for params in _params_from_point(representation, tag, point):
            solution = _accept(radicand, params)
            if solution is not None:
                logger.debug(f"A={radicand}: {len(log.moves)} substitutions from {form}")
                solution = solution.with_method(f"REPR_{params.cls.value}", len(log.moves))
                return InverseResult(params=params, solution=solution,
                                     representation=representation, log=log)
    raise Unclassifiable(radicand, f"no orientation of {representation.to_dict()} solves A")


def transcript(radicand: int, config: Optional[SolverConfig] = None) -> List[str]:
    """Substitution transcript of the start-form reduction up to the ultimate form."""
    return reduce_form(start_form(radicand), budget=(config or SolverConfig()).reduction_budget(radicand)).transcript()

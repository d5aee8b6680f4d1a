#!/usr/bin/env python3
"""
Tests for the data models: solutions, forms, substitution logs and parameters.
"""
import sys
from pathlib import Path

import pytest

# Add the src directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent / "src"))

from pellsolver.errors import IndexBeyondExpansion
from pellsolver.models import (
    BQForm,
    CFExpansion,
    CFStep,
    DistinctiveParams,
    FormClass,
    Minus3Params,
    Move,
    Parity,
    PellSolution,
    Representation,
    RepresentationKind,
    SubstitutionLog,
    condition_value,
)

pytestmark = pytest.mark.unit


def test_solution_verify_and_record():
    solution = PellSolution(A=61, x=226153980, y=1766319049, method="EQUAL_R", steps=6)
    assert solution.verify()
    assert solution.to_record() == {
        'A': 61, 'x': '226153980', 'y': '1766319049', 'method': 'EQUAL_R', 'steps': 6,
    }

    minus3 = PellSolution(A=7, x=1, y=2, rhs=-3, method="SCAN")
    assert minus3.verify()
    assert minus3.to_record()['rhs'] == -3
    assert not PellSolution(A=7, x=1, y=3).verify()


def test_solution_dict_keeps_big_integers():
    solution = PellSolution(A=109, x=15140424455100, y=158070671986249, method="EQUAL_R")
    restored = PellSolution.from_dict(solution.to_dict())
    assert restored == solution
    assert isinstance(solution.to_dict()['x'], str)


def test_with_method_keeps_steps_unless_given():
    solution = PellSolution(A=2, x=2, y=3, steps=3)
    assert solution.with_method("X").steps == 3
    assert solution.with_method("X", 1).steps == 1
    assert solution.with_method("X").method == "X"


def test_form_rendering():
    form = BQForm(a=7, b=18, c=3, radicand=103)
    assert str(form) == "18Y^2 - 3X^2 + 14XY"
    assert form.determinant() == 103
    assert form.r == 29
    assert str(BQForm(a=0, b=2, c=1, radicand=2)) == "2Y^2 - X^2"
    assert str(BQForm(a=-6, b=5, c=5, radicand=61)) == "5Y^2 - 5X^2 - 12XY"


def test_form_moves_keep_determinant():
    form = BQForm(a=7, b=18, c=3, radicand=103)
    shifted = form.apply(Move.X_SHIFT)
    assert (shifted.a, shifted.b, shifted.c) == (4, 29, 3)
    assert shifted.determinant() == 103

    form = BQForm(a=-6, b=5, c=5, radicand=61)
    shifted = form.apply(Move.Y_SHIFT)
    assert (shifted.a, shifted.b, shifted.c) == (-1, 5, 12)
    assert shifted.determinant() == 61


def test_form_value_follows_substitution():
    form = BQForm(a=-6, b=5, c=5, radicand=61)
    shifted = form.apply(Move.X_SHIFT)
    # X = Y + X' maps (X', Y) = (2, 3) to (X, Y) = (5, 3)
    assert shifted.value(2, 3) == form.value(5, 3)


def test_substitution_log_replay_and_points():
    start = BQForm(a=-6, b=5, c=5, radicand=61)
    log = SubstitutionLog(start=start)
    form = start
    for move in (Move.Y_SHIFT, Move.Y_SHIFT, Move.X_SHIFT):
        form = form.apply(move)
        log.append(move, form)

    assert log.replay() == log.final == form
    point = (7, 2)
    assert log.pull_back(log.push_forward(point)) == point
    assert form.value(*log.push_forward(point)) == start.value(*point)
    assert log.transcript()[0] == "0) 5Y^2 - 5X^2 - 12XY"
    assert log.transcript()[1] == "1) Y=X+Y' => 5Y^2 - 12X^2 - 2XY"


def test_expansion_quotients_and_bounds():
    expansion = CFExpansion(radicand=2, d0=1, steps=[CFStep(1, 1, 1, 1), CFStep(2, 2, 1, 1)],
                            period_length=1)
    assert expansion.quotient(0) == 1
    assert [expansion.quotient(n) for n in range(1, 5)] == [2, 2, 2, 2]
    assert [expansion.convergent(n) for n in range(4)] == [1, 2, 5, 12]
    assert [expansion.numerator(n) for n in range(4)] == [1, 3, 7, 17]

    open_expansion = CFExpansion(radicand=2, d0=1, steps=[CFStep(1, 1, 1, 1)])
    with pytest.raises(IndexBeyondExpansion):
        open_expansion.quotient(3)


def test_condition_values_of_worked_parameters():
    assert condition_value(FormClass.I_EQUAL_SQUARES, 6, 5, 58, 21) == -1
    assert condition_value(FormClass.II_DOUBLE_SQUARES, 11, 3, 5, 19) == 1
    assert condition_value(FormClass.III_SUM_EQUALS_CROSS, 11, 3, 7, 1) == 1
    assert condition_value(FormClass.IV_NO_CROSS, 4, 3, 1, 1) == 1


def test_distinctive_params_representation():
    params = DistinctiveParams(FormClass.I_EQUAL_SQUARES, 6, 5, 58, 21, -1)
    assert params.representation() == Representation(RepresentationKind.SUM_SQ, 6, 5)
    assert params.radicand() == 61

    composite = DistinctiveParams(FormClass.IV_NO_CROSS, 4, 3, 1, 1, 1)
    assert (composite.p1, composite.p2, composite.S, composite.Q) == (4, 3, 1, 1)
    assert composite.representation().kind is RepresentationKind.COPRIME_FACTORS
    assert composite.radicand() == 12


def test_representation_values():
    assert Representation(RepresentationKind.SUM_2SQ, 11, 3).value() == 139
    assert Representation(RepresentationKind.DIFF_2SQ, 11, 3).value() == 103
    assert Representation(RepresentationKind.SUM_3SQ, 1, 24).value() == 1729
    assert not Representation(RepresentationKind.COPRIME_FACTORS, 2, 6).is_valid()
    assert Representation(RepresentationKind.COPRIME_FACTORS, 4, 3).is_valid()


def test_minus3_params():
    params = Minus3Params(71, 25, 37, 6, Parity.EVEN)
    assert params.radicand == 6916
    assert params.x == 1477
    assert params.k3 == 1261
    assert params.condition_value() == -1


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

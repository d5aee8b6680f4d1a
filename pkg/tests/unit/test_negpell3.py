#!/usr/bin/env python3
"""
Tests for y^2 - Ax^2 = -3: solver, parameter search and the m3a family.
"""
import random
import sys
from math import isqrt
from pathlib import Path

import pytest
from sympy import primerange

# Add the src directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent / "src"))

from pellsolver.arith import is_square
from pellsolver.errors import ConditionViolated, ParityViolation, SquareTarget, UsageError
from pellsolver.models import Minus3Params, Parity
from pellsolver.oracle import brute_force_rhs
from pellsolver.negpell3 import (
    m3a,
    minus3_solution,
    reduce_even_case,
    representations_4a,
    search_minus3_params,
    shift_minus3,
    solve_minus3,
    vertical_minus3,
)

pytestmark = pytest.mark.unit


def test_taxicab_number():
    solution = solve_minus3(1729)
    assert (solution.x, solution.y) == (2954, 122831)
    assert solution.rhs == -3
    assert solution.method == "TRIPLE_R_FWD"
    assert solution.verify()


@pytest.mark.parametrize("radicand,expected", [
    (3, (1, 0)),
    (7, (1, 2)),
    (12, (1, 3)),
    (13, (2, 7)),
    (21, (2, 9)),
    (31, (2, 11)),
])
def test_small_solutions(radicand, expected):
    solution = solve_minus3(radicand)
    assert (solution.x, solution.y) == expected
    assert solution.verify()


@pytest.mark.parametrize("radicand", [5, 6, 10, 11])
def test_no_solution(radicand):
    assert solve_minus3(radicand) is None


def test_odd_x_never_for_4n1_primes():
    for p in primerange(13, 2000):
        if p % 4 != 1:
            continue
        solution = solve_minus3(p)
        if solution is not None:
            assert solution.x % 2 == 0, p


def test_minus3_solution_from_params():
    assert minus3_solution(Minus3Params(71, 25, 37, 6, Parity.EVEN)) == (1477, 122831)
    with pytest.raises(ConditionViolated):
        minus3_solution(Minus3Params(71, 25, 37, 5, Parity.EVEN))


def test_reduce_even_case():
    assert reduce_even_case(6916, 1477, 122831) == (1729, 2954, 122831)
    with pytest.raises(UsageError):
        reduce_even_case(1729, 1, 1)


def test_representations_of_4a():
    found = representations_4a(1729)
    assert (71, 25) in found
    for a, b in found:
        assert a * a + 3 * b * b == 4 * 1729


def test_parameter_search_reaches_minimum():
    params = search_minus3_params(1729, bound=64)
    assert params.case is Parity.EVEN
    assert params.x == 1477
    assert params.condition_value() in (1, -1)


def test_vertical_seed_and_family():
    assert vertical_minus3(2, 1, 37, 6) == (1332, 469)
    assert m3a(2, 6) == (1332, 469, 37, 6)
    member = shift_minus3(1332, 469, 37, 6, -1)
    assert (member.A, member.x, member.y) == (6916, 1477, 122831)
    assert member.verified
    assert "reduces_to_A/4" in member.flags


def test_family_members_all_solve():
    a0, b0, l, m = m3a(2, 6)
    for i in (0, 1, 2):
        member = shift_minus3(a0, b0, l, m, i)
        assert member.y * member.y - member.A * member.x * member.x == -3
        assert member.x == 1477


def test_small_vertical_seed():
    assert vertical_minus3(1, 1, 4, 1) == (21, 13)
    member = shift_minus3(21, 13, 4, 1, 0)
    assert (member.A, member.x, member.y) == (948, 19, 585)


def test_vertical_condition():
    with pytest.raises(ConditionViolated):
        vertical_minus3(1, 1, 5, 1)


def test_triple_pattern_backward():
    solution = solve_minus3(271)
    assert (solution.x, solution.y) == (13, 214)
    assert solution.method == "TRIPLE_R_BWD"
    assert solution.steps == 2


def test_triple_patterns_match_exhaustive_search():
    checked = 0
    for radicand in range(10, 3000):
        if is_square(radicand):
            continue
        solution = solve_minus3(radicand)
        if solution is None or not solution.method.startswith("TRIPLE_R") or solution.x > 10 ** 4:
            continue
        x = solution.x // 2 if radicand % 4 == 1 else solution.x
        if x == 1:
            continue
        params = search_minus3_params(radicand, bound=isqrt(x))
        assert params is not None and params.x == x, radicand
        checked += 1
    assert checked > 0


def _assert_agrees_with_oracle(limit, x_bound):
    for radicand in range(3, limit + 1, 2):
        if is_square(radicand):
            continue
        oracle = brute_force_rhs(radicand, -3, x_bound)
        solution = solve_minus3(radicand)
        if oracle is None:
            assert solution is None or solution.x > x_bound, radicand
        else:
            assert solution is not None, radicand
            assert (solution.x, solution.y) == (oracle.x, oracle.y), radicand


def test_agrees_with_oracle_on_small_odd_radicands():
    _assert_agrees_with_oracle(600, 2000)


@pytest.mark.slow
def test_agrees_with_oracle_on_odd_radicands():
    _assert_agrees_with_oracle(5000, 10 ** 4)


def test_shift_keeps_family_id_and_case():
    member = shift_minus3(1332, 469, 37, 6, -1, family_id="seed-2-6")
    assert member.family_id == "seed-2-6"
    assert member.A == 6916
    reduced = shift_minus3(1332, 469, 37, 6, -1, family_id="seed-2-6", case=Parity.EVEN)
    assert (reduced.A, reduced.x, reduced.y) == (1729, 2954, 122831)
    assert reduced.verified
    assert "from_4A" in reduced.flags
    assert reduced.family_id == "seed-2-6"


def test_random_families_never_beat_the_minimum():
    rng = random.Random(20240605)
    seeds = set()
    for _ in range(2000):
        if len(seeds) == 30:
            break
        try:
            seeds.add(m3a(rng.randint(1, 8), rng.randint(1, 8)))
        except (ParityViolation, ConditionViolated):
            continue
    assert len(seeds) >= 20
    compared = 0
    for a0, b0, l, m in seeds:
        for i in range(-3, 4):
            try:
                member = shift_minus3(a0, b0, l, m, i)
            except SquareTarget:
                continue
            assert member.verified
            if member.A > 10 ** 5:
                continue
            minimum = solve_minus3(member.A)
            assert minimum is not None and minimum.x <= member.x, (a0, b0, l, m, i)
            compared += 1
    assert compared > 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

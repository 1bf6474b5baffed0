import random
from itertools import permutations

from hypothesis import given, settings, strategies as st

import oracles
from conftest import random_matrix
from pomlab.greedy import (
    greedy_match,
    is_one_pom,
    is_pom,
    peel_order,
    selects_left_closure_holds,
)
from pomlab.model import Matching, matrix_from_rows


def test_identity_run(ex1):
    tau = greedy_match(ex1)
    assert tau.image == frozenset({"1", "2", "3", "6"})
    assert tau.columns == (0, 0, 1, 2)


def test_order_changes_outcome(ex1):
    tau = greedy_match(ex1, (2, 0, 3, 1))
    assert tau.image == frozenset({"1", "3", "4", "5"})


def test_row_can_end_unassigned():
    M = matrix_from_rows([["1"], ["1"]])
    tau = greedy_match(M, (1, 0))
    assert tau.columns == (None, 0)
    assert tau.image == frozenset({"1"})


def test_matches_literal_greedy_on_randoms():
    rng = random.Random(401)
    for _ in range(150):
        M = random_matrix(rng, rng.randint(1, 6))
        order = list(range(M.m))
        rng.shuffle(order)
        tau = greedy_match(M, order)
        assert tau.columns == oracles.greedy_assignment(M.rows, order)


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 2 ** 32 - 1))
def test_greedy_output_is_optimal(seed):
    rng = random.Random(seed)
    M = random_matrix(rng, rng.randint(1, 5))
    order = list(range(M.m))
    rng.shuffle(order)
    tau = greedy_match(M, order)
    assert is_pom(M, tau)
    assert is_one_pom(M, tau)
    assert selects_left_closure_holds(M, tau)


def test_peel_replays_greedy_outputs():
    rng = random.Random(402)
    for _ in range(200):
        M = random_matrix(rng, rng.randint(1, 6))
        order = list(range(M.m))
        rng.shuffle(order)
        tau = greedy_match(M, order)
        peeled, stuck = peel_order(M, tau)
        assert stuck == ()
        replay = tuple(peeled) + tuple(r for r in range(M.m) if tau.columns[r] is None)
        assert greedy_match(M, replay) == tau


def test_optimality_agrees_with_pareto_brute_force():
    rng = random.Random(403)
    for _ in range(40):
        M = random_matrix(rng, rng.randint(1, 3))
        for cols in oracles.all_matchings(M.rows):
            tau = Matching.from_columns(M, cols)
            assert is_pom(M, tau) == oracles.pareto_optimal(M.rows, cols)
            assert is_one_pom(M, tau) == oracles.single_improvement_free(M.rows, cols)


def test_optimality_agrees_on_sampled_larger_matchings():
    rng = random.Random(404)
    for _ in range(15):
        M = random_matrix(rng, 4)
        matchings = list(oracles.all_matchings(M.rows))
        for cols in rng.sample(matchings, min(30, len(matchings))):
            tau = Matching.from_columns(M, cols)
            assert is_pom(M, tau) == oracles.pareto_optimal(M.rows, cols)


def test_optimal_images_are_exactly_greedy_images():
    # the image families coincide, so order-sweeps are a legitimate oracle
    # for everything image-level
    rng = random.Random(405)
    for _ in range(25):
        M = random_matrix(rng, rng.randint(1, 3))
        via_orders = oracles.family_perms(M.rows)
        via_optimality = {
            frozenset(M.rows[r][c] for r, c in enumerate(cols) if c is not None)
            for cols in oracles.all_matchings(M.rows)
            if oracles.pareto_optimal(M.rows, cols)
        }
        via_single = {
            frozenset(M.rows[r][c] for r, c in enumerate(cols) if c is not None)
            for cols in oracles.all_matchings(M.rows)
            if oracles.single_improvement_free(M.rows, cols)
        }
        assert via_orders == via_optimality == via_single


def test_single_improvement_free_but_not_optimal(onepom):
    tau = Matching.from_elements(onepom, ["5", "4", "1"])
    assert is_one_pom(onepom, tau)
    assert not is_pom(onepom, tau)
    peeled, stuck = peel_order(onepom, tau)
    assert peeled == ()
    assert stuck == (0, 1, 2)
    # the witnessing joint improvement: rows 1 and 3 both move up
    better = Matching.from_elements(onepom, ["1", "4", "5"])
    assert oracles.dominates(onepom.rows, better.columns, tau.columns)


def test_left_closure_violation(ex1):
    tau = Matching.from_columns(ex1, [1, None, None, None])
    assert not selects_left_closure_holds(ex1, tau)
    assert not is_pom(ex1, tau)


def test_all_unassigned_is_never_optimal(ex1):
    tau = Matching.from_columns(ex1, [None, None, None, None])
    assert not is_one_pom(ex1, tau)
    assert not is_pom(ex1, tau)


def test_full_order_sweep_hits_known_family(ex1):
    from conftest import EX1_FAMILY

    assert {greedy_match(ex1, p).image for p in permutations(range(4))} == EX1_FAMILY

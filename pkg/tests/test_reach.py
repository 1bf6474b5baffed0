import random

import pytest

import oracles
from conftest import (
    EX1_FAMILY,
    random_2col_matrix,
    random_matrix,
    random_rows,
)
from pomlab.errors import BudgetExceeded, NotTwoColumn, UnknownElement
from pomlab.greedy import greedy_match
from pomlab.model import matrix_from_rows
from pomlab.reach import (
    bound_k_pom_elements,
    bound_reachable_elements,
    canonical_family,
    decide_reachable_2col,
    enumerate_exactly_reachable,
    find_reaching_order,
    is_reachable,
)


def test_family_on_running_example(ex1):
    fam = enumerate_exactly_reachable(ex1)
    assert set(fam.exact_sets) == EX1_FAMILY
    assert fam.reachable_elements == frozenset("123456")
    assert fam.states_explored > len(fam.exact_sets)


def test_family_is_canonically_sorted(ex1):
    fam = enumerate_exactly_reachable(ex1)
    keys = [tuple(sorted(s)) for s in fam.exact_sets]
    assert keys == sorted(keys)
    assert canonical_family([frozenset("ba"), frozenset("ab"), frozenset("a")]) == (
        frozenset("a"),
        frozenset("ab"),
    )


def test_positions_on_unreachable_middle(sec2):
    fam = enumerate_exactly_reachable(sec2)
    assert set(fam.exact_sets) == {
        frozenset({"1", "2", "4", "5"}),
        frozenset({"1", "2", "5", "6"}),
        frozenset({"1", "2", "5", "8"}),
    }
    # bottom row: first and last entries reachable, the middle two never
    assert fam.position_reachable[3] == (True, False, False, True)
    assert fam.last_reachable_col(3) == 3


def test_family_matches_order_sweep():
    rng = random.Random(501)
    for _ in range(200):
        M = random_matrix(rng, rng.randint(1, 5))
        fam = set(enumerate_exactly_reachable(M).exact_sets)
        assert fam == oracles.family_perms(M.rows), M.rows
        assert fam == oracles.family_states(M.rows)
    for _ in range(40):
        M = random_matrix(rng, 6)
        assert set(enumerate_exactly_reachable(M).exact_sets) == oracles.family_perms(M.rows)


def test_positions_match_order_sweep():
    rng = random.Random(502)
    for _ in range(120):
        M = random_matrix(rng, rng.randint(1, 5))
        fam = enumerate_exactly_reachable(M)
        expected = oracles.reachable_positions(M.rows)
        got = {
            (r, c)
            for r in range(M.m)
            for c, ok in enumerate(fam.position_reachable[r])
            if ok
        }
        assert got == expected, M.rows


def test_far_columns_never_reached():
    M = matrix_from_rows([["1", "2", "9"], ["2", "1", "8"]])
    fam = enumerate_exactly_reachable(M)
    assert fam.reachable_elements == frozenset({"1", "2"})
    assert all(row[2] is False for row in fam.position_reachable)


def test_image_sizes_vary_on_short_rows(p2):
    sizes = {len(s) for s in enumerate_exactly_reachable(p2).exact_sets}
    assert sizes == {3, 4}


def test_image_sizes_constant_on_full_rows():
    rng = random.Random(503)
    for _ in range(60):
        m = rng.randint(1, 5)
        M = matrix_from_rows(random_rows(rng, m, extra=2, width=m))
        assert {len(s) for s in enumerate_exactly_reachable(M).exact_sets} == {m}


def test_budget_aborts_enumeration(ex1):
    with pytest.raises(BudgetExceeded) as err:
        enumerate_exactly_reachable(ex1, budget=3)
    assert err.value.budget == 3
    assert err.value.states_explored >= 3


# --- two-column rule ------------------------------------------------------

def test_two_column_rule_requires_two_columns(ex1):
    with pytest.raises(NotTwoColumn):
        decide_reachable_2col(ex1, {"1"})


def test_two_column_rule_validates_elements(p2):
    with pytest.raises(UnknownElement):
        decide_reachable_2col(p2, {"9"})


def test_two_column_fixture_decisions(p2):
    assert decide_reachable_2col(p2, {"1", "4"})
    assert decide_reachable_2col(p2, {"3"})
    assert decide_reachable_2col(p2, {"1", "2", "3", "4"})
    # both avoidable elements of the lone tree component at once: impossible
    assert not decide_reachable_2col(p2, {"3", "5"})
    assert not decide_reachable_2col(p2, {"2", "3", "4", "5"})


def test_two_column_rule_matches_order_sweep():
    rng = random.Random(504)
    for _ in range(300):
        M = random_2col_matrix(rng, rng.randint(1, 7))
        family = oracles.family_states(M.rows)
        universe = sorted(M.element_universe)
        queries = [frozenset(img) for img in list(family)[:2]]
        for _ in range(4):
            queries.append(frozenset(rng.sample(universe, rng.randint(0, len(universe)))))
        for D in queries:
            expected = any(D <= img for img in family)
            assert decide_reachable_2col(M, D) == expected, (M.rows, sorted(D))


def test_is_reachable_dispatch_agrees_on_two_columns():
    rng = random.Random(505)
    for _ in range(100):
        M = random_2col_matrix(rng, rng.randint(1, 6))
        universe = sorted(M.element_universe)
        D = frozenset(rng.sample(universe, rng.randint(0, len(universe))))
        via_rule = is_reachable(M, D)
        family = enumerate_exactly_reachable(M).exact_sets
        assert via_rule == (not D or any(D <= s for s in family))


def test_is_reachable_general_route():
    rng = random.Random(506)
    for _ in range(150):
        M = random_matrix(rng, rng.randint(1, 5))
        family = oracles.family_perms(M.rows)
        universe = sorted(M.element_universe)
        D = frozenset(rng.sample(universe, rng.randint(0, min(4, len(universe)))))
        assert is_reachable(M, D) == (not D or any(D <= s for s in family))
    assert is_reachable(matrix_from_rows([["1", "2", "3"]]), [])


# --- witness orders -------------------------------------------------------

def test_find_reaching_order_produces_witnesses():
    rng = random.Random(507)
    found = misses = 0
    for _ in range(150):
        M = random_matrix(rng, rng.randint(1, 5))
        family = oracles.family_perms(M.rows)
        universe = sorted(M.element_universe)
        D = frozenset(rng.sample(universe, rng.randint(0, min(3, len(universe)))))
        order = find_reaching_order(M, D)
        if any(D <= s for s in family):
            assert order is not None
            assert D <= greedy_match(M, order).image
            found += 1
        else:
            assert order is None
            misses += 1
    assert found > 30 and misses > 30


def test_find_reaching_order_exact_mode():
    rng = random.Random(508)
    for _ in range(100):
        M = random_matrix(rng, rng.randint(1, 5))
        family = list(oracles.family_perms(M.rows))
        E = rng.choice(family)
        order = find_reaching_order(M, E, exact=True)
        assert order is not None
        assert greedy_match(M, order).image == E
        universe = sorted(M.element_universe)
        for _ in range(3):
            S = frozenset(rng.sample(universe, rng.randint(0, len(universe))))
            got = find_reaching_order(M, S, exact=True)
            if S in set(family):
                assert got is not None and greedy_match(M, got).image == S
            else:
                assert got is None


def test_find_reaching_order_far_elements():
    M = matrix_from_rows([["1", "2", "9"], ["2", "1", "8"]])
    assert find_reaching_order(M, {"9"}) is None


def test_find_reaching_order_budget(ex1):
    with pytest.raises(BudgetExceeded):
        find_reaching_order(ex1, {"2", "4"}, budget=3)
    assert find_reaching_order(ex1, {"2", "4"}) is None


# --- bounds ---------------------------------------------------------------

def test_harmonic_bounds():
    assert [bound_reachable_elements(m) for m in range(1, 9)] == [1, 3, 5, 8, 10, 14, 16, 20]
    assert bound_k_pom_elements(6, 2) == 6 + 3
    assert bound_k_pom_elements(6, 6) == bound_reachable_elements(6)
    assert bound_k_pom_elements(6, 99) == bound_reachable_elements(6)
    assert bound_k_pom_elements(5, 0) == 0


def test_reachable_elements_respect_bound():
    rng = random.Random(509)
    for _ in range(120):
        M = random_matrix(rng, rng.randint(1, 6))
        fam = enumerate_exactly_reachable(M)
        assert len(fam.reachable_elements) <= bound_reachable_elements(M.m)

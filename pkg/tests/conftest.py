import random

import pytest

from pomlab.model import PreferenceMatrix, matrix_from_rows

# Shared fixture matrices.  EX1 is the running four-row example; P2 the
# two-column one; SEC2 the one with unreachable middle positions in its
# last row; ONEPOM carries a matching that no single row can improve even
# though a joint reshuffle can.
EX1_ROWS = [["1", "5", "3", "2"], ["3", "1", "5", "4"], ["1", "6", "5", "4"], ["3", "6", "2", "4"]]
INTRO_ROWS = [["1", "5", "3", "2", "4"], ["3", "1", "4", "5", "2"], ["1", "3", "5", "4", "2"]]
SEC2_ROWS = [["5", "4", "3", "2"], ["5", "1", "6", "7"], ["1", "2", "8", "9"], ["2", "1", "5", "4"]]
P2_ROWS = [["1", "4"], ["2", "1"], ["2", "5"], ["4", "3"]]
ONEPOM_ROWS = [["1", "5", "3"], ["5", "1", "4"], ["5", "1", "2"]]

EX1_FAMILY = {
    frozenset({"1", "3", "4", "5"}),
    frozenset({"1", "2", "3", "5"}),
    frozenset({"1", "2", "3", "6"}),
    frozenset({"1", "3", "5", "6"}),
}


@pytest.fixture
def ex1() -> PreferenceMatrix:
    return matrix_from_rows(EX1_ROWS)


@pytest.fixture
def intro() -> PreferenceMatrix:
    return matrix_from_rows(INTRO_ROWS)


@pytest.fixture
def sec2() -> PreferenceMatrix:
    return matrix_from_rows(SEC2_ROWS)


@pytest.fixture
def p2() -> PreferenceMatrix:
    return matrix_from_rows(P2_ROWS)


@pytest.fixture
def onepom() -> PreferenceMatrix:
    return matrix_from_rows(ONEPOM_ROWS)


def random_rows(rng: random.Random, m: int, extra: int = 2, ragged: bool = True, width: int | None = None):
    pool = [str(e) for e in range(1, m + extra + 1)]
    rows = []
    for _ in range(m):
        if width is not None:
            k = width
        elif ragged:
            k = rng.randint(1, min(m + 1, len(pool)))
        else:
            k = min(m, len(pool))
        rows.append(rng.sample(pool, k))
    return rows


def random_matrix(rng: random.Random, m: int, **kw) -> PreferenceMatrix:
    return matrix_from_rows(random_rows(rng, m, **kw))


def random_2col_rows(rng: random.Random, m: int, extra: int = 2):
    pool = [str(e) for e in range(1, m + extra + 1)]
    return [rng.sample(pool, rng.randint(1, 2)) for _ in range(m)]


def random_2col_matrix(rng: random.Random, m: int, extra: int = 2) -> PreferenceMatrix:
    return matrix_from_rows(random_2col_rows(rng, m, extra))

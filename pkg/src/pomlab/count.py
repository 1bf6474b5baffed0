"""Counting reachable and exactly reachable sets.

Reachable sets are downward closed (drop an element, still reachable), so
counting them means counting the downward closure of the exact family.  For
two-column matrices a product formula over row-element-graph components
answers in polynomial time; the closure counter is the oracle it is checked
against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .avoid import is_avoidable_element
from .errors import NotTwoColumn
from .model import (
    PreferenceMatrix,
    matrix_from_rows,
    public_names,
    require_elements,
    row_element_graph,
)
from .reach import DEFAULT_BUDGET, enumerate_exactly_reachable


@dataclass(frozen=True)
class ComponentSummary:
    """One row-element-graph component of a two-column matrix.

    A connected component has at most one element more than rows; having
    exactly one more makes it a tree and knocks one term off its factor."""

    rows: tuple[int, ...]
    elements: frozenset[str]
    avoidable: frozenset[str]
    is_tree: bool

    @property
    def avoidable_count(self) -> int:
        return len(self.avoidable)

    @property
    def unavoidable_count(self) -> int:
        return len(self.elements) - len(self.avoidable)

    @property
    def factor(self) -> int:
        chi = 1 if self.is_tree else 0
        return (2 ** self.avoidable_count - chi) * 2 ** self.unavoidable_count


def component_summaries(M: PreferenceMatrix) -> list[ComponentSummary]:
    for r, row in enumerate(M.rows):
        if len(row) > 2:
            raise NotTwoColumn(r, len(row))
    out = []
    for rows, X in row_element_graph(M).components:
        sub = PreferenceMatrix(tuple(M.rows[r] for r in rows))
        avoidable = frozenset(x for x in X if is_avoidable_element(sub, x)[0])
        out.append(ComponentSummary(rows, X, avoidable, len(X) == len(rows) + 1))
    return out


def count_reachable_2col(M: PreferenceMatrix) -> tuple[int, list[ComponentSummary]]:
    """Number of reachable sets of a two-column matrix: product over
    components of (2^avoidable - [tree]) * 2^unavoidable."""
    summaries = component_summaries(M)
    total = 1
    for s in summaries:
        total *= s.factor
    return total, summaries


def count_reachable_bruteforce(M: PreferenceMatrix, budget: int = DEFAULT_BUDGET) -> int:
    """Size of the downward closure of the exact family, by frontier walk
    over subsets.  Desk-scale oracle; exponential in image size."""
    family = enumerate_exactly_reachable(M, budget)
    seen = set(family.exact_sets)
    frontier = list(seen)
    while frontier:
        s = frontier.pop()
        for e in s:
            t = s - {e}
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return len(seen)


def count_exactly_reachable(M: PreferenceMatrix, budget: int = DEFAULT_BUDGET) -> int:
    return len(enumerate_exactly_reachable(M, budget).exact_sets)


def count_exactly_reachable_supersets(
    M: PreferenceMatrix, D: Iterable[str], budget: int = DEFAULT_BUDGET
) -> int:
    """How many exactly reachable sets contain D."""
    D = require_elements(M, D)
    family = enumerate_exactly_reachable(M, budget)
    return sum(1 for s in family.exact_sets if D <= s)


def bound_exact_family(m: int) -> int:
    """Upper bound on the number of exactly reachable sets: choose the image
    among at most ceil(m(ln m + 1)) elements ever reachable.  The ceiling
    keeps the reported bound valid against float truncation."""
    n = math.ceil(m * (math.log(m) + 1))
    return math.comb(n, m)


def lower_bound_matrix(m: int) -> PreferenceMatrix:
    """The matrix showing exact families as large as binom(m, ceil(m/2)):
    floor(m/2) constant columns followed by one column of per-row fresh
    elements.  Whichever rows are processed last keep their private element,
    so the family is all choices of ceil(m/2) private elements."""
    k = m // 2
    shared = public_names([], "c")
    consts = [next(shared) for _ in range(k)]
    private = public_names(consts, "f")
    rows = [tuple(consts) + (next(private),) for _ in range(m)]
    return matrix_from_rows(rows)


def lower_bound_value(m: int) -> int:
    return math.comb(m, math.ceil(m / 2))

"""Reachability of element sets under greedy matchings.

General matrices go through exhaustive exploration of greedy states (budget
guarded); two-column matrices get the polynomial component rule.  A set D is
reachable when D is contained in some optimal-matching image, exactly
reachable when D equals one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ._encode import encode_matrix
from ._kernels import explore_images
from .avoid import is_avoidable_element
from .errors import BudgetExceeded, NotTwoColumn
from .model import (
    PreferenceMatrix,
    require_elements,
    row_element_graph,
    truncate_to_square,
)

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class ReachFamily:
    """All exactly reachable images of a matrix, canonically ordered, plus
    which (row, column) positions any greedy run ever selects."""

    exact_sets: tuple[frozenset[str], ...]
    reachable_elements: frozenset[str]
    position_reachable: tuple[tuple[bool, ...], ...]
    states_explored: int

    def last_reachable_col(self, r: int) -> int:
        return max(c for c, ok in enumerate(self.position_reachable[r]) if ok)


def canonical_family(sets: Iterable[frozenset[str]]) -> tuple[frozenset[str], ...]:
    return tuple(sorted(set(sets), key=lambda s: tuple(sorted(s))))


def enumerate_exactly_reachable(M: PreferenceMatrix, budget: int = DEFAULT_BUDGET) -> ReachFamily:
    """Explore every greedy state (done-rows, taken-elements) of the square
    truncation; greedy runs never use positions past column m, so the family
    is the full matrix's.  Raises BudgetExceeded beyond `budget` states."""
    Mt = truncate_to_square(M)
    enc = encode_matrix(Mt)
    masks, n_states, pos, exceeded = explore_images(enc, budget)
    if exceeded:
        raise BudgetExceeded(n_states, budget)
    sets = canonical_family(enc.decode_set(mask) for mask in masks)
    width = M.width
    pos_full = tuple(
        tuple(bool(pos[r, c]) if c < pos.shape[1] and c < len(Mt.rows[r]) else False for c in range(width))
        for r in range(M.m)
    )
    union = frozenset().union(*sets) if sets else frozenset()
    return ReachFamily(sets, union, pos_full, n_states)


def reachable_elements(M: PreferenceMatrix, budget: int = DEFAULT_BUDGET) -> frozenset[str]:
    return enumerate_exactly_reachable(M, budget).reachable_elements


def decide_reachable_2col(M: PreferenceMatrix, D: Iterable[str]) -> bool:
    """Polynomial rule for matrices whose rows have at most two entries,
    per connected component of the row-element graph: a component with one
    more element than rows is a tree, and its part of D must omit at least
    one avoidable element of the component; components with at most as many
    elements as rows impose nothing."""
    for r, row in enumerate(M.rows):
        if len(row) > 2:
            raise NotTwoColumn(r, len(row))
    D = require_elements(M, D)
    for rows, X in row_element_graph(M).components:
        Dc = D & X
        if not Dc:
            continue
        if len(X) == len(rows) + 1:
            sub = PreferenceMatrix(tuple(M.rows[r] for r in rows))
            avoidable = {x for x in X if is_avoidable_element(sub, x)[0]}
            if avoidable <= Dc:
                return False
    return True


def is_reachable(M: PreferenceMatrix, D: Iterable[str], budget: int = DEFAULT_BUDGET) -> bool:
    """Is D contained in some optimal-matching image?  Two-column matrices
    use the polynomial rule, everything else the exhaustive family."""
    D = require_elements(M, D)
    if not D:
        return True
    if all(len(row) <= 2 for row in M.rows):
        return decide_reachable_2col(M, D)
    family = enumerate_exactly_reachable(M, budget)
    return any(D <= s for s in family.exact_sets)


def find_reaching_order(
    M: PreferenceMatrix,
    D: Iterable[str],
    budget: int = DEFAULT_BUDGET,
    exact: bool = False,
) -> tuple[int, ...] | None:
    """A row order whose greedy image contains D (equals D when exact=True),
    or None.  Depth-first over greedy states with failed-state memoization;
    the order replays identically on the untruncated matrix."""
    D = require_elements(M, D)
    m = M.m
    Mt = truncate_to_square(M)
    if not D <= Mt.element_universe:
        return None
    if exact and len(D) > m:
        return None
    enc = encode_matrix(Mt)
    index = {e: i for i, e in enumerate(enc.elements)}
    target = 0
    for e in D:
        target |= 1 << index[e]
    rows = [[int(enc.codes[r, c]) for c in range(int(enc.row_len[r]))] for r in range(m)]
    full = (1 << m) - 1
    failed: set[tuple[int, int]] = set()
    path: list[int] = []

    def dfs(done: int, taken: int) -> bool:
        if done == full:
            return taken == target if exact else target & taken == target
        if exact and taken & ~target:
            return False
        for r in range(m):
            if done >> r & 1:
                continue
            new_taken = taken
            for e in rows[r]:
                if not taken >> e & 1:
                    new_taken = taken | (1 << e)
                    break
            key = (done | (1 << r), new_taken)
            if key in failed:
                continue
            if len(failed) >= budget:
                raise BudgetExceeded(len(failed), budget)
            path.append(r)
            if dfs(*key):
                return True
            path.pop()
            failed.add(key)
        return False

    if dfs(0, 0):
        return tuple(path)
    return None


def bound_reachable_elements(m: int) -> int:
    """Ceiling on how many distinct elements all optimal matchings can touch
    in total: sum of floor(m/i) for i = 1..m."""
    return sum(m // i for i in range(1, m + 1))


def bound_k_pom_elements(m: int, k: int) -> int:
    """Same harmonic bound cut off at k: what at most k optimal matchings
    can jointly cover."""
    return sum(m // i for i in range(1, k + 1))

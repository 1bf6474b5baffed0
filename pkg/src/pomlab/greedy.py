"""Serial-dictatorship matching and Pareto-optimality checks.

A matching is Pareto optimal (here: "optimal") when no set of rows can trade
selections, or grab free elements, so that every member strictly improves.
The 1-optimal check only forbids single-row grabs.  Optimal matchings are
exactly the outputs of the greedy pass over some row order, which is what the
peeling test below decides.
"""
from __future__ import annotations

from typing import Sequence

from ._encode import encode_matrix
from ._kernels import greedy_run
from .model import Matching, PreferenceMatrix, check_permutation


def greedy_match(M: PreferenceMatrix, pi: Sequence[int] | None = None) -> Matching:
    """Process rows in pi's order (identity when omitted); each row takes its
    leftmost element not already taken, or stays unassigned when its whole
    row is taken."""
    order = check_permutation(M.m, pi if pi is not None else range(M.m))
    cols = greedy_run(encode_matrix(M), order)
    return Matching.from_columns(M, [int(c) if c >= 0 else None for c in cols])


def is_one_pom(M: PreferenceMatrix, tau: Matching) -> bool:
    """No single row can strictly improve on its own: every element a row
    prefers to its selection (every element at all, for unassigned rows) is
    selected by some other row."""
    image = tau.image
    for r, row in enumerate(M.rows):
        c = tau.columns[r]
        limit = c if c is not None else len(row)
        for c2 in range(limit):
            if row[c2] not in image:
                return False
    return True


def selects_left_closure_holds(M: PreferenceMatrix, tau: Matching) -> bool:
    """In every assigned row, everything left of the selection is selected
    somewhere.  Holds for every greedy output; unassigned rows are not
    checked (that part is is_one_pom's job)."""
    image = tau.image
    for r, row in enumerate(M.rows):
        c = tau.columns[r]
        if c is None:
            continue
        if any(row[c2] not in image for c2 in range(c)):
            return False
    return True


def peel_order(M: PreferenceMatrix, tau: Matching) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Greedy-realizability test for the assigned rows of tau.

    Repeatedly peel a row whose selection is its leftmost entry among those
    not selected by already-peeled rows (lowest row index first; the final
    verdict is order-independent).  Returns (peeled rows in order, assigned
    rows that can never peel).  Empty second part means some row order
    reproduces tau's assigned part greedily.
    """
    peeled_elements: set[str] = set()
    remaining = [r for r in range(M.m) if tau.columns[r] is not None]
    order: list[int] = []
    while True:
        progress = False
        for r in list(remaining):
            c = tau.columns[r]
            if all(M.rows[r][c2] in peeled_elements for c2 in range(c)):
                peeled_elements.add(M.rows[r][c])
                order.append(r)
                remaining.remove(r)
                progress = True
                break
        if not progress:
            return tuple(order), tuple(remaining)


def is_pom(M: PreferenceMatrix, tau: Matching) -> bool:
    """Pareto optimality = all assigned rows peel, and no single-row
    improvement exists (the latter covers unassigned rows).

    Both conditions are checked even though peeling alone already fails on
    most non-optimal matchings; the pair is what the correctness argument
    certifies, and the redundancy is cross-checked against a brute-force
    coalition search in the tests.
    """
    _, stuck = peel_order(M, tau)
    if stuck:
        return False
    return is_one_pom(M, tau)

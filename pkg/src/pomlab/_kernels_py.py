"""Pure-python kernels: greedy replay and exhaustive greedy-state search.

Bitmask state over arbitrary-precision ints, so no size limits beyond the
state budget.  The numba backend mirrors this module exactly; keep the two in
sync (parity is property-tested).
"""
from __future__ import annotations

import numpy as np


def greedy_run(codes: np.ndarray, row_len: np.ndarray, order: np.ndarray) -> np.ndarray:
    """Serial greedy: rows in `order`, each takes its best untaken element.
    Returns the chosen column per row, -1 where every entry was taken."""
    m = codes.shape[0]
    cols = np.full(m, -1, dtype=np.int32)
    taken = 0
    for r in order:
        r = int(r)
        for c in range(int(row_len[r])):
            e = int(codes[r, c])
            if not taken >> e & 1:
                taken |= 1 << e
                cols[r] = c
                break
    return cols


def explore_images(codes: np.ndarray, row_len: np.ndarray, budget: int):
    """Search every greedy state (done-rows mask, taken-elements mask).

    Returns (images, n_states, pos, exceeded): the distinct terminal taken
    masks, the number of distinct states visited, a bool[m, width] marking
    row/column pairs used by some run, and whether the budget cut the search
    short (all other results are then partial).
    """
    m, width = codes.shape
    rows = [[int(codes[r, c]) for c in range(int(row_len[r]))] for r in range(m)]
    full_done = (1 << m) - 1
    pos = np.zeros((m, width), dtype=bool)
    memo = {(0, 0)}
    stack = [(0, 0)]
    images: set[int] = set()
    exceeded = False
    while stack and not exceeded:
        done, taken = stack.pop()
        if done == full_done:
            images.add(taken)
            continue
        for r in range(m):
            if done >> r & 1:
                continue
            new_taken = taken
            for c, e in enumerate(rows[r]):
                if not taken >> e & 1:
                    new_taken = taken | (1 << e)
                    pos[r, c] = True
                    break
            key = (done | (1 << r), new_taken)
            if key not in memo:
                if len(memo) >= budget:
                    exceeded = True
                    break
                memo.add(key)
                stack.append(key)
    return sorted(images), len(memo), pos, exceeded

"""Numba kernels, twin of _kernels_py.

Masks are (lo, hi) int64 pairs with 62 payload bits per limb, so at most 124
rows and 124 distinct elements; the dispatcher falls back to the python
backend beyond that.
"""
from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.typed import Dict, List

LIMB_BITS = 62
MASK_LIMIT = 2 * LIMB_BITS

_STATE_T = types.UniTuple(types.int64, 4)
_IMG_T = types.UniTuple(types.int64, 2)


@njit(cache=True)
def greedy_run(codes, row_len, order):
    m = codes.shape[0]
    cols = np.full(m, -1, dtype=np.int32)
    taken_lo = np.int64(0)
    taken_hi = np.int64(0)
    for i in range(order.shape[0]):
        r = order[i]
        for c in range(row_len[r]):
            e = codes[r, c]
            if e < LIMB_BITS:
                bit = np.int64(1) << e
                if taken_lo & bit == 0:
                    taken_lo |= bit
                    cols[r] = c
                    break
            else:
                bit = np.int64(1) << (e - LIMB_BITS)
                if taken_hi & bit == 0:
                    taken_hi |= bit
                    cols[r] = c
                    break
    return cols


@njit(cache=True)
def explore_images(codes, row_len, budget, pos):
    m = codes.shape[0]
    full_lo = np.int64(0)
    full_hi = np.int64(0)
    for r in range(m):
        if r < LIMB_BITS:
            full_lo |= np.int64(1) << r
        else:
            full_hi |= np.int64(1) << (r - LIMB_BITS)

    memo = Dict.empty(key_type=_STATE_T, value_type=types.boolean)
    images = Dict.empty(key_type=_IMG_T, value_type=types.boolean)
    stack = List.empty_list(_STATE_T)
    start = (np.int64(0), np.int64(0), np.int64(0), np.int64(0))
    memo[start] = True
    stack.append(start)
    exceeded = False

    while len(stack) > 0 and not exceeded:
        done_lo, done_hi, taken_lo, taken_hi = stack.pop()
        if done_lo == full_lo and done_hi == full_hi:
            images[(taken_lo, taken_hi)] = True
            continue
        for r in range(m):
            if r < LIMB_BITS:
                if done_lo >> r & 1:
                    continue
                new_done_lo = done_lo | (np.int64(1) << r)
                new_done_hi = done_hi
            else:
                if done_hi >> (r - LIMB_BITS) & 1:
                    continue
                new_done_lo = done_lo
                new_done_hi = done_hi | (np.int64(1) << (r - LIMB_BITS))
            new_taken_lo = taken_lo
            new_taken_hi = taken_hi
            for c in range(row_len[r]):
                e = codes[r, c]
                if e < LIMB_BITS:
                    bit = np.int64(1) << e
                    if taken_lo & bit == 0:
                        new_taken_lo = taken_lo | bit
                        pos[r, c] = True
                        break
                else:
                    bit = np.int64(1) << (e - LIMB_BITS)
                    if taken_hi & bit == 0:
                        new_taken_hi = taken_hi | bit
                        pos[r, c] = True
                        break
            key = (new_done_lo, new_done_hi, new_taken_lo, new_taken_hi)
            if key not in memo:
                if len(memo) >= budget:
                    exceeded = True
                    break
                memo[key] = True
                stack.append(key)

    img_lo = np.empty(len(images), dtype=np.int64)
    img_hi = np.empty(len(images), dtype=np.int64)
    i = 0
    for k in images:
        img_lo[i] = k[0]
        img_hi[i] = k[1]
        i += 1
    return img_lo, img_hi, len(memo), exceeded

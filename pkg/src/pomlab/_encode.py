"""Integer encoding of preference matrices for the array kernels."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import PreferenceMatrix

NO_ENTRY = -1


@dataclass(frozen=True)
class EncodedMatrix:
    """Row-major int32 view of a matrix.

    codes[r, c] is the code of the element at (r, c), NO_ENTRY past the end of
    a short row.  Codes are assigned in first-occurrence order (row-major), so
    they are stable across calls for the same matrix.
    """

    codes: np.ndarray
    row_len: np.ndarray
    elements: tuple[str, ...]

    @property
    def m(self) -> int:
        return int(self.codes.shape[0])

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    def decode_set(self, mask_bits: int) -> frozenset[str]:
        return frozenset(
            self.elements[i] for i in range(self.n_elements) if mask_bits >> i & 1
        )


def encode_matrix(M: PreferenceMatrix) -> EncodedMatrix:
    index: dict[str, int] = {}
    order: list[str] = []
    for row in M.rows:
        for e in row:
            if e not in index:
                index[e] = len(order)
                order.append(e)
    width = M.width
    codes = np.full((M.m, width), NO_ENTRY, dtype=np.int32)
    row_len = np.zeros(M.m, dtype=np.int32)
    for r, row in enumerate(M.rows):
        row_len[r] = len(row)
        for c, e in enumerate(row):
            codes[r, c] = index[e]
    return EncodedMatrix(codes, row_len, tuple(order))

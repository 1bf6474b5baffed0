"""Backend dispatch for the hot kernels.

POMLAB_BACKEND selects the implementation:
  auto    numba when importable and the instance fits its mask width,
          otherwise pure python (default)
  numba   force numba; errors if unavailable or the instance is too large
  python  force the pure-python twin
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py
from ._encode import EncodedMatrix

try:
    from . import _kernels_numba
except ImportError:  # pragma: no cover - environment without numba
    _kernels_numba = None


def _choice() -> str:
    c = os.environ.get("POMLAB_BACKEND", "auto").strip().lower()
    if c not in ("auto", "numba", "python"):
        raise RuntimeError(f"POMLAB_BACKEND must be auto, numba or python, got {c!r}")
    return c


def _fits_numba(enc: EncodedMatrix) -> bool:
    limit = _kernels_numba.MASK_LIMIT
    return enc.m <= limit and enc.n_elements <= limit


def backend_for(enc: EncodedMatrix) -> str:
    c = _choice()
    if c == "python":
        return "python"
    if c == "numba":
        if _kernels_numba is None:
            raise RuntimeError("POMLAB_BACKEND=numba but numba is not importable")
        if not _fits_numba(enc):
            raise RuntimeError(
                f"numba backend is limited to {_kernels_numba.MASK_LIMIT} rows/elements"
            )
        return "numba"
    if _kernels_numba is not None and _fits_numba(enc):
        return "numba"
    return "python"


def numba_available() -> bool:
    return _kernels_numba is not None


def backend_name() -> str:
    """The backend a small instance would get right now."""
    c = _choice()
    if c == "auto":
        return "numba" if _kernels_numba is not None else "python"
    return c


def greedy_run(enc: EncodedMatrix, order) -> np.ndarray:
    order = np.asarray(order, dtype=np.int64)
    if backend_for(enc) == "numba":
        return _kernels_numba.greedy_run(enc.codes, enc.row_len, order)
    return _kernels_py.greedy_run(enc.codes, enc.row_len, order)


def explore_images(enc: EncodedMatrix, budget: int):
    """Returns (image masks as python ints, n_states, pos bool[m, width],
    exceeded)."""
    if backend_for(enc) == "numba":
        pos = np.zeros(enc.codes.shape, dtype=bool)
        img_lo, img_hi, n_states, exceeded = _kernels_numba.explore_images(
            enc.codes, enc.row_len, budget, pos
        )
        shift = _kernels_numba.LIMB_BITS
        images = sorted(int(lo) | (int(hi) << shift) for lo, hi in zip(img_lo, img_hi))
        return images, int(n_states), pos, bool(exceeded)
    images, n_states, pos, exceeded = _kernels_py.explore_images(
        enc.codes, enc.row_len, budget
    )
    return images, n_states, pos, exceeded

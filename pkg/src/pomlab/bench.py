"""Backend benchmark: compiled kernels vs the pure-Python fallback.

Runs the image-family enumeration over a seeded batch of random matrices
with POMLAB_BACKEND forced one way then the other, checks that both
backends report identical families, and prints the timings.

    python -m pomlab.bench --m 9 --count 20 --seed 7
"""
from __future__ import annotations

import argparse
import os
import random
import time

from . import reach
from ._kernels import numba_available
from .model import PreferenceMatrix, matrix_from_rows


def random_matrix(rng: random.Random, m: int, ragged: bool = True) -> PreferenceMatrix:
    pool = [str(e) for e in range(1, m + 3)]
    rows = []
    for _ in range(m):
        width = rng.randint(1, m) if ragged else m
        rows.append(rng.sample(pool, width))
    return matrix_from_rows(rows)


def run_backend(name: str, matrices, budget: int) -> tuple[float, list]:
    os.environ["POMLAB_BACKEND"] = name
    try:
        families = []
        started = time.perf_counter()
        for M in matrices:
            fam = reach.enumerate_exactly_reachable(M, budget)
            families.append(fam.exact_sets)
        elapsed = time.perf_counter() - started
    finally:
        os.environ.pop("POMLAB_BACKEND", None)
    return elapsed, families


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, default=9, help="rows per matrix (default %(default)s)")
    parser.add_argument("--count", type=int, default=20, help="matrices per batch (default %(default)s)")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--budget", type=int, default=reach.DEFAULT_BUDGET)
    parser.add_argument("--full-width", action="store_true", help="no ragged rows")
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    matrices = [random_matrix(rng, args.m, not args.full_width) for _ in range(args.count)]
    total_states = 0
    for M in matrices:
        total_states += reach.enumerate_exactly_reachable(M, args.budget).states_explored

    print(f"batch: {args.count} matrices, m={args.m}, {total_states} explored states total")
    if not numba_available():
        print("compiled backend unavailable; timing the fallback only")
        elapsed, _ = run_backend("python", matrices, args.budget)
        print(f"python  {elapsed:8.3f}s")
        return 0

    # warm the jit cache outside the timed region
    run_backend("numba", matrices[:1], args.budget)

    t_numba, fam_numba = run_backend("numba", matrices, args.budget)
    t_python, fam_python = run_backend("python", matrices, args.budget)
    agree = fam_numba == fam_python
    print(f"numba   {t_numba:8.3f}s")
    print(f"python  {t_python:8.3f}s")
    if t_numba > 0:
        print(f"speedup {t_python / t_numba:8.1f}x")
    print(f"families agree: {'yes' if agree else 'NO'}")
    return 0 if agree else 1


if __name__ == "__main__":
    raise SystemExit(main())

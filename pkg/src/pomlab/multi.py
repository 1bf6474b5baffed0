"""Multi-matchings: each row selects a prescribed number of positions.

The normative semantics is row expansion: duplicate row r into its
prescribed count of consecutive copies and use ordinary matchings there.
The direct greedy implementation below is an optimization that the tests
hold to exact agreement with the expansion at all times.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .avoid import is_avoidable_element
from .errors import InvalidDegreeList, InvalidPermutation
from .model import PreferenceMatrix, require_elements
from .reach import DEFAULT_BUDGET, enumerate_exactly_reachable


@dataclass(frozen=True)
class DegreeList:
    """How many positions each row must fill; at least one per row, and
    never more than the row offers."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        if not self.degrees:
            raise InvalidDegreeList("no degrees given")
        for r, d in enumerate(self.degrees):
            if d < 1:
                raise InvalidDegreeList(f"degree of row {r + 1} must be >= 1, got {d}")

    @property
    def total(self) -> int:
        return sum(self.degrees)


def parse_degree_list(text: str) -> DegreeList:
    tokens = text.split()
    try:
        return DegreeList(tuple(int(t) for t in tokens))
    except ValueError as exc:
        raise InvalidDegreeList(f"not an integer list: {text!r}") from exc


def validate_degrees(M: PreferenceMatrix, L: DegreeList) -> None:
    if len(L.degrees) != M.m:
        raise InvalidDegreeList(f"{len(L.degrees)} degrees for {M.m} rows")
    for r, d in enumerate(L.degrees):
        if d > len(M.rows[r]):
            raise InvalidDegreeList(
                f"row {r + 1} has {len(M.rows[r])} entries, cannot fill {d} positions"
            )


def expand(M: PreferenceMatrix, L: DegreeList) -> tuple[PreferenceMatrix, tuple[tuple[int, int], ...]]:
    """Duplicate each row by its degree.  Returns the expanded matrix plus
    the label map: expanded row index -> (source row, copy number)."""
    validate_degrees(M, L)
    rows = []
    labels = []
    for r, row in enumerate(M.rows):
        for beta in range(L.degrees[r]):
            rows.append(row)
            labels.append((r, beta))
    return PreferenceMatrix(tuple(rows)), tuple(labels)


@dataclass(frozen=True)
class MultiMatching:
    """Selected positions per row (possibly fewer than prescribed when a row
    ran out of untaken elements)."""

    positions: tuple[tuple[int, ...], ...]
    elements: tuple[tuple[str, ...], ...]

    @property
    def image(self) -> frozenset[str]:
        return frozenset(e for row in self.elements for e in row)


def check_multiset_permutation(L: DegreeList, pi: Sequence[int]) -> tuple[int, ...]:
    pi = tuple(pi)
    want = {r: d for r, d in enumerate(L.degrees)}
    have: dict[int, int] = {}
    for r in pi:
        have[r] = have.get(r, 0) + 1
    if have != want:
        raise InvalidPermutation(
            f"occurrence counts {have} do not match the degree list {want}"
        )
    return pi


def greedy_multimatch(M: PreferenceMatrix, L: DegreeList, pi: Sequence[int]) -> MultiMatching:
    """Process row occurrences in pi's order; each occurrence takes the
    leftmost globally untaken element of its row, or lapses when the row is
    exhausted.  Agrees with ordinary greedy on the expanded matrix under the
    occurrence-to-copy bijection."""
    validate_degrees(M, L)
    pi = check_multiset_permutation(L, pi)
    taken: set[str] = set()
    positions: list[list[int]] = [[] for _ in range(M.m)]
    for r in pi:
        for c, e in enumerate(M.rows[r]):
            if e not in taken:
                taken.add(e)
                positions[r].append(c)
                break
    return MultiMatching(
        tuple(tuple(p) for p in positions),
        tuple(tuple(M.rows[r][c] for c in p) for r, p in enumerate(positions)),
    )


def is_avoidable_element_multi(M: PreferenceMatrix, L: DegreeList, x: str) -> bool:
    """Avoidability with degrees, via the expansion."""
    require_elements(M, [x])
    expanded, _ = expand(M, L)
    return is_avoidable_element(expanded, x)[0]


def enumerate_multi_images(
    M: PreferenceMatrix, L: DegreeList, budget: int = DEFAULT_BUDGET
) -> tuple[frozenset[str], ...]:
    """All exactly reachable images of greedy multi-matchings, via the
    expansion."""
    expanded, _ = expand(M, L)
    return enumerate_exactly_reachable(expanded, budget).exact_sets


def bound_pomm_coverage(m: int, L: DegreeList, k: int) -> int:
    """How many elements at most k optimal multi-matchings can jointly
    select: sum of floor(total/i) for i = 1..min(k, m)."""
    total = L.total
    return sum(total // i for i in range(1, min(k, m) + 1))


def multiset_permutations(L: DegreeList) -> Iterable[tuple[int, ...]]:
    """All distinct processing orders for the degree list (desk scale)."""
    counts = list(L.degrees)

    def rec(prefix: list[int]):
        if len(prefix) == L.total:
            yield tuple(prefix)
            return
        for r, left in enumerate(counts):
            if left:
                counts[r] -= 1
                prefix.append(r)
                yield from rec(prefix)
                prefix.pop()
                counts[r] += 1

    yield from rec([])

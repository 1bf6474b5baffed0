"""Core data model: preference matrices, matchings, permutations, parsing.

Rows are preference lists, leftmost entry most preferred.  Element ids are
opaque strings; ids starting with "~" are reserved for internally generated
fresh elements and rejected by the parser.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    DuplicateInRow,
    EmptyMatrix,
    EmptyRow,
    InvalidMatching,
    InvalidPermutation,
    ReservedToken,
    UnknownElement,
)

FRESH_PREFIX = "~"


class Position(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class PreferenceMatrix:
    """Immutable matrix of preference lists; rows may have different lengths."""

    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise EmptyMatrix()
        for r, row in enumerate(self.rows):
            if not row:
                raise EmptyRow(r)
            seen = set()
            for e in row:
                if e in seen:
                    raise DuplicateInRow(r, e)
                seen.add(e)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return max(len(row) for row in self.rows)

    @cached_property
    def element_universe(self) -> frozenset[str]:
        return frozenset(e for row in self.rows for e in row)

    def position_of(self, row: int, element: str) -> int | None:
        """Column of `element` in `row`, or None if absent."""
        try:
            return self.rows[row].index(element)
        except ValueError:
            return None

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.rows)


def matrix_from_rows(rows: Iterable[Sequence[str]]) -> PreferenceMatrix:
    return PreferenceMatrix(tuple(tuple(row) for row in rows))


def parse_matrix(text: str) -> PreferenceMatrix:
    """Parse the interchange format: one row per line, whitespace-separated
    tokens, '#' comment lines and blank lines ignored."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        for t in tokens:
            if t.startswith(FRESH_PREFIX):
                raise ReservedToken(t)
        rows.append(tuple(tokens))
    if not rows:
        raise EmptyMatrix()
    return PreferenceMatrix(tuple(rows))


def serialize_matrix(M: PreferenceMatrix) -> str:
    return "\n".join(" ".join(row) for row in M.rows) + "\n"


def truncate_to_square(M: PreferenceMatrix) -> PreferenceMatrix:
    """Cut every row to its first min(m, len) entries.  Positions beyond
    column m are never assigned by any greedy order, so reachability and
    avoidability are unaffected."""
    m = M.m
    return PreferenceMatrix(tuple(row[:m] for row in M.rows))


def fresh_names(universe: Iterable[str], label: str = "c") -> Iterator[str]:
    """Generate internal fresh ids "~<label><i>" avoiding `universe`.

    Internal only: the parser rejects "~" tokens, so these can never collide
    with user elements, but we still skip collisions with previously
    generated fresh ids present in `universe`.
    """
    taken = set(universe)
    i = 1
    while True:
        name = f"{FRESH_PREFIX}{label}{i}"
        if name not in taken:
            taken.add(name)
            yield name
        i += 1


def public_names(universe: Iterable[str], label: str) -> Iterator[str]:
    """Generate parse-clean fresh ids "<label><i>" avoiding `universe`.

    Used by construction generators whose output is serialized and may be
    re-parsed; freshness is by bookkeeping, not by the reserved prefix.
    """
    taken = set(universe)
    i = 1
    while True:
        name = f"{label}{i}"
        if name not in taken:
            taken.add(name)
            yield name
        i += 1


def pad_with_fresh_columns(M: PreferenceMatrix, k: int) -> PreferenceMatrix:
    """Append k columns, column j holding one fresh element repeated in every
    row.  Bridges unassigned-rows semantics and full matchings: a matching
    leaving u rows unassigned corresponds to one using the first u pad
    columns."""
    if k == 0:
        return M
    pad = []
    gen = fresh_names(M.element_universe)
    for _ in range(k):
        pad.append(next(gen))
    return PreferenceMatrix(tuple(row + tuple(pad) for row in M.rows))


def pad_column_elements(M: PreferenceMatrix, k: int) -> list[str]:
    """The fresh ids pad_with_fresh_columns(M, k) will use, in column order."""
    gen = fresh_names(M.element_universe)
    return [next(gen) for _ in range(k)]


@dataclass(frozen=True)
class Matching:
    """Per-row selected column (None = unassigned) plus the selected elements.

    Build through `Matching.from_columns` / `from_elements` so injectivity and
    row-bound checks run against the matrix.
    """

    columns: tuple[int | None, ...]
    elements: tuple[str | None, ...]

    @classmethod
    def from_columns(cls, M: PreferenceMatrix, columns: Sequence[int | None]) -> "Matching":
        if len(columns) != M.m:
            raise InvalidMatching(f"expected {M.m} entries, got {len(columns)}")
        elems: list[str | None] = []
        seen: set[str] = set()
        for r, c in enumerate(columns):
            if c is None:
                elems.append(None)
                continue
            if not 0 <= c < len(M.rows[r]):
                raise InvalidMatching(f"column {c} out of range for row {r + 1}")
            e = M.rows[r][c]
            if e in seen:
                raise InvalidMatching(f"element {e!r} selected twice")
            seen.add(e)
            elems.append(e)
        return cls(tuple(columns), tuple(elems))

    @classmethod
    def from_elements(cls, M: PreferenceMatrix, tokens: Sequence[str | None]) -> "Matching":
        """Build from one element token (or None) per row."""
        if len(tokens) != M.m:
            raise InvalidMatching(f"expected {M.m} entries, got {len(tokens)}")
        columns: list[int | None] = []
        for r, tok in enumerate(tokens):
            if tok is None:
                columns.append(None)
                continue
            c = M.position_of(r, tok)
            if c is None:
                raise InvalidMatching(f"element {tok!r} does not occur in row {r + 1}")
            columns.append(c)
        return cls.from_columns(M, columns)

    @cached_property
    def image(self) -> frozenset[str]:
        return frozenset(e for e in self.elements if e is not None)

    @property
    def assigned_rows(self) -> tuple[int, ...]:
        return tuple(r for r, c in enumerate(self.columns) if c is not None)


def check_permutation(m: int, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(m)):
        raise InvalidPermutation(f"{order} is not a bijection on 0..{m - 1}")
    return order


def require_elements(M: PreferenceMatrix, elements: Iterable[str]) -> frozenset[str]:
    """Validate that every element occurs in M; returns them as a frozenset."""
    out = frozenset(elements)
    for e in out:
        if e not in M.element_universe:
            raise UnknownElement(e)
    return out


@dataclass(frozen=True)
class RowElementGraph:
    """Bipartite graph joining each row to the elements occurring in it."""

    row_adj: tuple[tuple[str, ...], ...]

    @property
    def n_rows(self) -> int:
        return len(self.row_adj)

    @cached_property
    def elements(self) -> frozenset[str]:
        return frozenset(e for adj in self.row_adj for e in adj)

    @property
    def n_edges(self) -> int:
        return sum(len(adj) for adj in self.row_adj)

    @cached_property
    def components(self) -> tuple[tuple[tuple[int, ...], frozenset[str]], ...]:
        """Connected components as (row indices, element set) pairs, ordered
        by smallest row index."""
        elem_rows: dict[str, list[int]] = {}
        for r, adj in enumerate(self.row_adj):
            for e in adj:
                elem_rows.setdefault(e, []).append(r)
        seen_rows: set[int] = set()
        out = []
        for start in range(self.n_rows):
            if start in seen_rows:
                continue
            rows = {start}
            elems: set[str] = set()
            frontier = [start]
            while frontier:
                r = frontier.pop()
                for e in self.row_adj[r]:
                    if e in elems:
                        continue
                    elems.add(e)
                    for r2 in elem_rows[e]:
                        if r2 not in rows:
                            rows.add(r2)
                            frontier.append(r2)
            seen_rows |= rows
            out.append((tuple(sorted(rows)), frozenset(elems)))
        return tuple(out)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1


def row_element_graph(M: PreferenceMatrix) -> RowElementGraph:
    return RowElementGraph(M.rows)

"""Avoidability of elements and sets, with matching-based certificates.

An element x is avoidable when some Pareto-optimal matching omits it.  The
working characterization: build the bipartite graph joining each row that
contains x to the elements strictly left of x in that row; x is avoidable iff
that graph has a matching saturating all those rows.  Rows without x never
constrain the answer: they cannot be forced onto x.

For square matrices with full rows this agrees with the Hall-style condition
quantified over all rows (rows lacking x contributing their whole row); for
ragged matrices the all-rows variant is too strong and the row-subset form
here is the correct one - e.g. [[1,2],[1,2],[2,5]] can avoid 5 by leaving a
row unassigned, which no all-row saturation can represent.

Avoiding a set X collapses X to one pseudo-element first.  Everything is
certified: saturating matchings convert to concrete omitting matchings by
left-sliding; failures return a row set R whose strictly-left neighborhood
is smaller than R.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import UnknownElement
from .model import (
    FRESH_PREFIX,
    Matching,
    PreferenceMatrix,
    pad_column_elements,
    pad_with_fresh_columns,
    require_elements,
    truncate_to_square,
)

SATURATING = "saturating"
DEFICIENT = "deficient"


def max_bipartite_matching(adjacency: Sequence[Iterable[Hashable]]) -> dict[int, Hashable]:
    """Maximum matching between left indices 0..k-1 and arbitrary hashable
    right vertices, as {left: right}.  Hopcroft-Karp: repeated BFS layering
    plus shortest augmenting-path DFS."""
    right_ids: dict[Hashable, int] = {}
    rights: list[Hashable] = []
    adj: list[list[int]] = []
    for nbrs in adjacency:
        row = []
        for v in nbrs:
            if v not in right_ids:
                right_ids[v] = len(rights)
                rights.append(v)
            row.append(right_ids[v])
        adj.append(row)

    n_left, n_right = len(adj), len(rights)
    INF = n_left + n_right + 1
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left

    def bfs() -> bool:
        q = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] == -1:
                dfs(u)
    return {u: rights[v] for u, v in enumerate(match_l) if v != -1}


def _deficient_rows(adjacency: Sequence[Sequence[Hashable]], matching: Mapping[int, Hashable]) -> list[int]:
    # Konig-style cut: left vertices alternating-reachable from the unmatched
    # ones.  Their whole neighborhood is matched, and matched back inside the
    # reachable set, so |N(R)| = |R| - #unmatched < |R|.
    owner = {v: u for u, v in matching.items()}
    reach = {u for u in range(len(adjacency)) if u not in matching}
    frontier = list(reach)
    while frontier:
        u = frontier.pop()
        for v in adjacency[u]:
            w = owner.get(v)
            if w is not None and w not in reach:
                reach.add(w)
                frontier.append(w)
    return sorted(reach)


@dataclass(frozen=True)
class LeftOfGraph:
    """Rows containing the target, each adjacent to its entries strictly left
    of the target's first occurrence (a prefix of the row)."""

    target_set: frozenset[str]
    rows: tuple[int, ...]
    adjacency: tuple[tuple[str, ...], ...]

    @classmethod
    def build(cls, M: PreferenceMatrix, X: Iterable[str]) -> "LeftOfGraph":
        X = frozenset(X)
        rows = []
        adjacency = []
        for r, row in enumerate(M.rows):
            prefix = []
            hit = False
            for e in row:
                if e in X:
                    hit = True
                    break
                prefix.append(e)
            if hit:
                rows.append(r)
                adjacency.append(tuple(prefix))
        return cls(X, tuple(rows), tuple(adjacency))


@dataclass(frozen=True)
class MatchingCertificate:
    """Either a row-saturating matching in the left-of graph (the set is
    avoidable) or a row set violating the counting condition (it is not)."""

    kind: str
    target_set: frozenset[str]
    matching: tuple[tuple[int, str], ...] = ()
    deficient_rows: tuple[int, ...] = ()
    neighborhood: frozenset[str] = frozenset()


def certificate_is_valid(M: PreferenceMatrix, cert: MatchingCertificate) -> bool:
    """Re-derive what the certificate claims, from the matrix alone."""
    graph = LeftOfGraph.build(M, cert.target_set)
    prefix = dict(zip(graph.rows, graph.adjacency))
    if cert.kind == SATURATING:
        rows = [r for r, _ in cert.matching]
        elems = [e for _, e in cert.matching]
        return (
            sorted(rows) == list(graph.rows)
            and len(set(elems)) == len(elems)
            and all(e in prefix[r] for r, e in cert.matching)
        )
    if cert.kind == DEFICIENT:
        R = cert.deficient_rows
        if not R or any(r not in prefix for r in R):
            return False
        seen = set().union(*(prefix[r] for r in R))
        return seen == cert.neighborhood and len(seen) < len(R)
    return False


def _decide(M: PreferenceMatrix, X: frozenset[str]) -> tuple[bool, MatchingCertificate]:
    graph = LeftOfGraph.build(M, X)
    matching = max_bipartite_matching(graph.adjacency)
    if len(matching) == len(graph.rows):
        pairs = tuple((graph.rows[u], e) for u, e in sorted(matching.items()))
        return True, MatchingCertificate(SATURATING, X, matching=pairs)
    local = _deficient_rows(graph.adjacency, matching)
    rows = tuple(graph.rows[u] for u in local)
    hood = frozenset().union(*(graph.adjacency[u] for u in local))
    return False, MatchingCertificate(DEFICIENT, X, deficient_rows=rows, neighborhood=hood)


def is_avoidable_element(M: PreferenceMatrix, x: str) -> tuple[bool, MatchingCertificate]:
    require_elements(M, [x])
    return _decide(M, frozenset([x]))


def collapse_set(M: PreferenceMatrix, X: Iterable[str]) -> tuple[PreferenceMatrix, str]:
    """Replace the leftmost occurrence of an X-member per row by one shared
    pseudo-element and drop the other X-members of that row (a matching
    avoiding the pseudo-element stays left of the first occurrence, so the
    dropped ones cannot matter)."""
    X = frozenset(X)
    pseudo = FRESH_PREFIX + "X"
    while pseudo in M.element_universe:
        pseudo += "x"
    rows = []
    for row in M.rows:
        out = []
        used = False
        for e in row:
            if e in X:
                if not used:
                    out.append(pseudo)
                    used = True
            else:
                out.append(e)
        rows.append(tuple(out))
    return PreferenceMatrix(tuple(rows)), pseudo


def is_avoidable_set(M: PreferenceMatrix, X: Iterable[str]) -> tuple[bool, MatchingCertificate]:
    X = require_elements(M, X)
    if not X:
        return True, MatchingCertificate(SATURATING, X)
    collapsed, pseudo = collapse_set(M, X)
    ok, cert = _decide(collapsed, frozenset([pseudo]))
    # certificate rows and prefix elements are identical in M (the collapse
    # only edits cells at or right of each first occurrence)
    return ok, MatchingCertificate(
        cert.kind,
        X,
        matching=cert.matching,
        deficient_rows=cert.deficient_rows,
        neighborhood=cert.neighborhood,
    )


def unavoidable_elements(M: PreferenceMatrix) -> frozenset[str]:
    Mt = truncate_to_square(M)
    return frozenset(x for x in Mt.element_universe if not is_avoidable_element(Mt, x)[0])


def left_slide(M: PreferenceMatrix, assignment: Mapping[int, int]) -> Matching:
    """Grow a partial column assignment into a 1-optimal matching: scan rows
    in ascending order, each moving to its leftmost globally-unselected
    element when that is an improvement, until a full pass is quiet.  Rows
    only ever move left, so this terminates within total-cell-count moves."""
    cols: list[int | None] = [assignment.get(r) for r in range(M.m)]
    selected = {M.rows[r][c] for r, c in enumerate(cols) if c is not None}
    moved = True
    while moved:
        moved = False
        for r, row in enumerate(M.rows):
            cur = cols[r]
            limit = cur if cur is not None else len(row)
            for c in range(limit):
                if row[c] not in selected:
                    if cur is not None:
                        selected.remove(row[cur])
                    cols[r] = c
                    selected.add(row[c])
                    moved = True
                    break
    return Matching.from_columns(M, cols)


def omitting_matching(M: PreferenceMatrix, cert: MatchingCertificate) -> Matching:
    """Turn a saturating certificate into a concrete 1-optimal matching whose
    image avoids the certified set."""
    if cert.kind != SATURATING:
        raise ValueError("only saturating certificates carry a witness")
    assignment = {r: M.rows[r].index(e) for r, e in cert.matching}
    return left_slide(M, assignment)


def is_exactly_reachable(M: PreferenceMatrix, E: Iterable[str]) -> bool:
    """Is E the exact image of some Pareto-optimal matching?

    Decided in polynomial time for every |E|: append fresh shared columns so
    the square truncation has full rows, extend E by the first m-|E| fresh
    column elements, and ask whether the complement of the extended set is
    avoidable; the slid witness's image is then compared for equality.  The
    padding mirrors unassigned rows by parking them on fresh elements, which
    keeps the correspondence exact in both directions.
    """
    E = require_elements(M, E)
    m = M.m
    Mt = truncate_to_square(M)
    if not E <= Mt.element_universe or len(E) > m:
        return False
    pads = pad_column_elements(Mt, m)
    Mp = truncate_to_square(pad_with_fresh_columns(Mt, m))
    target = E | set(pads[: m - len(E)])
    ok, cert = is_avoidable_set(Mp, Mp.element_universe - target)
    if not ok:
        return False
    return omitting_matching(Mp, cert).image == target

"""Matrix generators: extremal families, reduction gadgets, transformations.

Each generator carries the quantity it is built to achieve, and a paired
verifier that measures the built instance (by enumeration or witness replay)
and compares.  Verification is desk-scale by nature; the generators
themselves have no size limits beyond explicit level guards.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .avoid import is_avoidable_element, is_exactly_reachable
from .errors import (
    ElementNotUnavoidable,
    GraphNotConnected,
    InputError,
    LevelTooLarge,
)
from .greedy import greedy_match
from .model import (
    PreferenceMatrix,
    matrix_from_rows,
    public_names,
    require_elements,
)
from .reach import DEFAULT_BUDGET, enumerate_exactly_reachable

MK_MAX_LEVEL = 6
NK_MAX_LEVEL = 4


@dataclass(frozen=True)
class ConstructionOutput:
    matrix: PreferenceMatrix
    witnesses: tuple[tuple[int, ...], ...] | None = None
    marked_element: str | None = None
    claimed_value: int | None = None


def _counter_names() -> Iterator[str]:
    i = 0
    while True:
        i += 1
        yield str(i)


def construct_Mk(k: int) -> ConstructionOutput:
    """Doubling family on 2^k rows whose reachable-element count (k+2)*2^(k-1)
    tracks the harmonic upper bound.

    Level recursion: one front column holding a fresh element per sub-row,
    shared between two disjointly relabeled copies of the previous level.
    Rows are then padded to square width with per-row junk; each row's last
    real element occurs nowhere else, so no greedy run ever exhausts the real
    prefix and the junk stays unreachable.
    """
    if not 0 <= k <= MK_MAX_LEVEL:
        raise LevelTooLarge(k, MK_MAX_LEVEL)
    fresh = _counter_names()

    def level(lv: int) -> list[list[str]]:
        if lv == 0:
            return [[next(fresh)]]
        sub = level(lv - 1)
        front = [next(fresh) for _ in range(len(sub))]
        rows = []
        for _copy in range(2):
            relabel: dict[str, str] = {}
            for i, row in enumerate(sub):
                new = [front[i]]
                for e in row:
                    if e not in relabel:
                        relabel[e] = next(fresh)
                    new.append(relabel[e])
                rows.append(new)
        return rows

    rows = level(k)
    m = len(rows)
    junk = _counter_names()
    for row in rows:
        while len(row) < m:
            row.append("j" + next(junk))
    claimed = (k + 2) * 2 ** (k - 1) if k else 1
    return ConstructionOutput(matrix_from_rows(rows), claimed_value=claimed)


def construct_Nk(k: int) -> ConstructionOutput:
    """Factorial family on k! rows with k designated row orders whose greedy
    images jointly cover exactly sum(k!/i for i=1..k) elements.

    Level recursion: lv disjointly relabeled copies of the previous level
    behind a shared fresh front column.  Order i runs copy i's block
    naturally first (eating the whole front), earlier blocks under the
    previous level's order i-1, later blocks under order i.
    """
    if not 1 <= k <= NK_MAX_LEVEL:
        raise LevelTooLarge(k, NK_MAX_LEVEL)
    fresh = _counter_names()

    def level(lv: int) -> tuple[list[list[str]], list[tuple[int, ...]]]:
        if lv == 1:
            return [[next(fresh)]], [(0,)]
        sub_rows, sub_perms = level(lv - 1)
        mprev = len(sub_rows)
        front = [next(fresh) for _ in range(mprev)]
        rows = []
        for _copy in range(lv):
            relabel: dict[str, str] = {}
            for i, row in enumerate(sub_rows):
                new = [front[i]]
                for e in row:
                    if e not in relabel:
                        relabel[e] = next(fresh)
                    new.append(relabel[e])
                rows.append(new)

        def g(copy: int, local: int) -> int:
            return copy * mprev + local

        perms = []
        for i in range(1, lv + 1):
            bi = i - 1
            order = [g(bi, t) for t in range(mprev)]
            for j in range(bi):
                order += [g(j, t) for t in sub_perms[i - 2]]
            for j in range(bi + 1, lv):
                order += [g(j, t) for t in sub_perms[i - 1]]
            perms.append(tuple(order))
        return rows, perms

    rows, perms = level(k)
    claimed = sum(math.factorial(k) // i for i in range(1, k + 1))
    return ConstructionOutput(matrix_from_rows(rows), witnesses=tuple(perms), claimed_value=claimed)


# --- 1-in-3 satisfiability gadget ---------------------------------------

@dataclass(frozen=True)
class CnfFormula:
    """Clauses of exactly three literals; positive int = variable, negative
    = its negation.  Semantics throughout: exactly one true literal per
    clause."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for cl in self.clauses:
            if len(cl) != 3:
                raise InputError(f"clause {cl} does not have exactly 3 literals")
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InputError(f"literal {lit} out of range 1..{self.num_vars}")


def parse_dimacs(text: str) -> CnfFormula:
    """DIMACS-style input: 'c' comment lines, one 'p cnf <vars> <clauses>'
    header, then 0-terminated clauses of exactly three literals."""
    num_vars = None
    num_clauses = None
    tokens: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"bad header: {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise InputError(f"bad header: {line!r}") from exc
            continue
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError as exc:
            raise InputError(f"bad clause line: {line!r}") from exc
    if num_vars is None:
        raise InputError("missing 'p cnf' header")
    clauses = []
    current: list[int] = []
    for t in tokens:
        if t == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(t)
    if current:
        raise InputError("last clause not 0-terminated")
    if len(clauses) != num_clauses:
        raise InputError(f"header promises {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def count_one_in_three(phi: CnfFormula) -> int:
    """Exhaustive count of assignments with exactly one true literal per
    clause."""
    total = 0
    for bits in range(1 << phi.num_vars):
        ok = True
        for cl in phi.clauses:
            true = sum(1 for lit in cl if (bits >> (abs(lit) - 1) & 1) == (lit > 0))
            if true != 1:
                ok = False
                break
        total += ok
    return total


def reduce_1in3sat(phi: CnfFormula) -> ConstructionOutput:
    """Matrix whose exactly-reachable sets containing the marked element x
    correspond one-to-one to the exactly-1-in-3 assignments of phi.

    Per variable i, two rows sharing a front element a_i, one offering the
    positive literal and one the negative (plus private filler).  Per clause
    j, three rows sharing b_j and c_j, each offering one literal of the
    clause then the negations of the other two, then a clause token C_j.
    A final row lists all C_j and ends with x: reaching x forces every
    clause row triple to resolve consistently with a choice of literals.
    """
    for cl in phi.clauses:
        if len({abs(lit) for lit in cl}) != 3:
            raise InputError(
                f"clause {cl} reuses a variable; the reduction needs three distinct ones"
            )
    n = phi.num_vars
    star = _counter_names()

    def lit(v: int) -> str:
        return ("x" if v > 0 else "nx") + str(abs(v))

    rows: list[list[str]] = []
    for i in range(1, n + 1):
        rows.append([f"a{i}", lit(i), "s" + next(star), "s" + next(star)])
        rows.append([f"a{i}", lit(-i), "s" + next(star), "s" + next(star)])
    for j, (l1, l2, l3) in enumerate(phi.clauses, 1):
        rows.append([f"b{j}", f"c{j}", lit(l1), lit(-l2), lit(-l3), f"C{j}"])
        rows.append([f"b{j}", f"c{j}", lit(l2), lit(-l1), lit(-l3), f"C{j}"])
        rows.append([f"b{j}", f"c{j}", lit(l3), lit(-l1), lit(-l2), f"C{j}"])
    rows.append([f"C{j}" for j in range(1, len(phi.clauses) + 1)] + ["x"])
    claimed = count_one_in_three(phi) if n <= 20 else None
    return ConstructionOutput(matrix_from_rows(rows), marked_element="x", claimed_value=claimed)


# --- three-column flattening ---------------------------------------------

def flatten_to_3cols(M: PreferenceMatrix) -> PreferenceMatrix:
    """Rewrite rows longer than three entries as chained three-entry blocks
    joined by fresh link elements: (a1,a2,L1), (L1,a3,L2), ...,
    (Llast,a_{n-1},a_n).  Every link is selected in every optimal matching
    (the next block row has it first), so each block passes through at most
    one original element - mirroring the single selection of the original
    row."""
    links = public_names(M.element_universe, "B")
    out: list[tuple[str, ...]] = []
    for row in M.rows:
        if len(row) <= 3:
            out.append(row)
            continue
        betas = [next(links) for _ in range(len(row) - 3)]
        out.append((row[0], row[1], betas[0]))
        for t in range(1, len(row) - 3):
            out.append((betas[t - 1], row[t + 1], betas[t]))
        out.append((betas[-1], row[-2], row[-1]))
    return matrix_from_rows(out)


# --- independent-set gadget ----------------------------------------------

@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise InputError(f"parallel edge {u!r} {v!r}")
            seen.add(key)

    @property
    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {self.vertices[0]}
        frontier = [self.vertices[0]]
        while frontier:
            for w in adj[frontier.pop()]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)


def graph_from_edges(edges: Iterable[tuple[str, str]]) -> SimpleGraph:
    edges = tuple(tuple(e) for e in edges)
    vertices = tuple(sorted({v for e in edges for v in e}))
    return SimpleGraph(vertices, edges)


def parse_edge_list(text: str) -> SimpleGraph:
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"expected 'u v' pair, got {line!r}")
        edges.append((parts[0], parts[1]))
    if not edges:
        raise InputError("edge list is empty")
    return graph_from_edges(edges)


def count_independent_sets(g: SimpleGraph) -> int:
    """Exhaustive count (the empty set included)."""
    vs = list(g.vertices)
    pos = {v: i for i, v in enumerate(vs)}
    masks = [(1 << pos[u]) | (1 << pos[v]) for u, v in g.edges]
    return sum(
        1
        for bits in range(1 << len(vs))
        if all(bits & em != em for em in masks)
    )


def reduce_independent_set(g: SimpleGraph) -> PreferenceMatrix:
    """Two-column matrix with rows (e,u) and (e,v) per edge e=uv.  Exactly
    reachable sets omit vertex subsets that are independent, making the
    exact count track the independent-set count (give or take the full set,
    which each instance answers for itself)."""
    if not g.is_connected:
        raise GraphNotConnected()
    names = public_names(g.vertices, "e")
    rows = []
    for u, v in g.edges:
        e = next(names)
        rows.append((e, u))
        rows.append((e, v))
    return matrix_from_rows(rows)


# --- transformations preserving exact-family size ------------------------

def transform_unavoidable_front(M: PreferenceMatrix, E: Sequence[str]) -> PreferenceMatrix:
    """Delete the listed elements everywhere and prepend one constant column
    per listed element (in order).  Each listed element must be unavoidable;
    the rewrite never shrinks the exact family."""
    E = list(E)
    if len(set(E)) != len(E):
        raise InputError("duplicate element in front list")
    require_elements(M, E)
    for e in E:
        ok, _ = is_avoidable_element(M, e)
        if ok:
            raise ElementNotUnavoidable(e)
    if not E:
        return M
    front = tuple(E)
    banned = set(E)
    rows = []
    for row in M.rows:
        rows.append(front + tuple(e for e in row if e not in banned))
    return matrix_from_rows(rows)


def transform_unique_last_reachable(
    M: PreferenceMatrix, budget: int = DEFAULT_BUDGET
) -> PreferenceMatrix:
    """Make every row's last reachable position hold a globally unique
    element, replacing offenders with fresh elements one at a time (rows in
    ascending order, positions recomputed after every edit).  Each cell is
    rewritten at most once, so this terminates; the exact family never
    shrinks."""
    rows = [list(row) for row in M.rows]
    fresh = public_names(M.element_universe, "u")
    while True:
        current = matrix_from_rows(rows)
        family = enumerate_exactly_reachable(current, budget)
        occurrences = Counter(e for row in rows for e in row)
        edited = False
        for r in range(len(rows)):
            c = family.last_reachable_col(r)
            if occurrences[rows[r][c]] > 1:
                rows[r][c] = next(fresh)
                edited = True
                break
        if not edited:
            return current


# --- paired claim verification -------------------------------------------

def verify_mk(out: ConstructionOutput, budget: int = DEFAULT_BUDGET) -> tuple[bool, dict]:
    family = enumerate_exactly_reachable(out.matrix, budget)
    measured = len(family.reachable_elements)
    return measured == out.claimed_value, {
        "claimed": out.claimed_value,
        "measured_reachable_elements": measured,
    }


def verify_nk(out: ConstructionOutput) -> tuple[bool, dict]:
    cover: set[str] = set()
    for pi in out.witnesses:
        cover |= greedy_match(out.matrix, pi).image
    k = len(out.witnesses)
    mult_ok = True
    for j in range(k):
        counts = Counter(row[j] for row in out.matrix.rows)
        if any(v != k - j for v in counts.values()):
            mult_ok = False
    ok = len(cover) == out.claimed_value and mult_ok
    return ok, {
        "claimed": out.claimed_value,
        "measured_coverage": len(cover),
        "column_multiplicity_ok": mult_ok,
    }


def verify_sat(out: ConstructionOutput, phi: CnfFormula, budget: int = DEFAULT_BUDGET) -> tuple[bool, dict]:
    family = enumerate_exactly_reachable(out.matrix, budget)
    supersets = sum(1 for s in family.exact_sets if out.marked_element in s)
    assignments = count_one_in_three(phi)
    return supersets == assignments, {
        "supersets_of_marked": supersets,
        "one_in_three_assignments": assignments,
    }


def verify_flatten(M: PreferenceMatrix, flat: PreferenceMatrix, budget: int = DEFAULT_BUDGET) -> tuple[bool, dict]:
    """Full-assignment slice of the correspondence: images of the flattened
    matrix selecting one non-link element per original row, stripped of
    links, must biject onto the full-size original images."""
    links = flat.element_universe - M.element_universe
    fam_orig = {s for s in enumerate_exactly_reachable(M, budget).exact_sets if len(s) == M.m}
    flat_family = enumerate_exactly_reachable(flat, budget).exact_sets
    picked = [s - links for s in flat_family if len(s - links) == M.m]
    ok = len(picked) == len(set(picked)) and set(picked) == fam_orig
    return ok, {
        "original_full_images": len(fam_orig),
        "flattened_full_slice": len(picked),
        "distinct_after_strip": len(set(picked)),
    }


def verify_indep(matrix: PreferenceMatrix, g: SimpleGraph, budget: int = DEFAULT_BUDGET) -> tuple[bool, dict]:
    exact = len(enumerate_exactly_reachable(matrix, budget).exact_sets)
    n_is = count_independent_sets(g)
    full_reachable = is_exactly_reachable(matrix, matrix.element_universe)
    expected = n_is - (0 if full_reachable else 1)
    return exact == expected, {
        "exactly_reachable": exact,
        "independent_sets": n_is,
        "everything_exactly_reachable": full_reachable,
        "expected": expected,
    }


def verify_transform(M: PreferenceMatrix, M2: PreferenceMatrix, budget: int = DEFAULT_BUDGET) -> tuple[bool, dict]:
    before = len(enumerate_exactly_reachable(M, budget).exact_sets)
    after = len(enumerate_exactly_reachable(M2, budget).exact_sets)
    return after >= before, {"exact_family_before": before, "exact_family_after": after}

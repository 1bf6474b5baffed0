"""Command line interface.

Commands: greedy, analyze, check, count, construct, multi.  Human-readable
by default, --json for stable machine output (schema "pom-lab/1", sets
sorted lexicographically, rows 1-based).  Exit codes: 0 success, 2 input
error, 3 state budget exceeded, 4 claim verification failure.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import avoid, construct, count, greedy, model, multi, reach
from ._kernels import backend_name
from .errors import BudgetExceeded, InputError

SCHEMA = "pom-lab/1"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _tokens(payload: str) -> list[str]:
    return [t for t in re.split(r"[\s,]+", payload) if t]


def _sorted_set(s) -> list[str]:
    return sorted(s)


def _family(sets) -> list[list[str]]:
    return [sorted(s) for s in sets]


def _perm_1based(order) -> list[int]:
    return [r + 1 for r in order]


def _parse_perm(text: str, m: int) -> tuple[int, ...]:
    if text.strip().lower() == "identity":
        return tuple(range(m))
    try:
        order = [int(t) - 1 for t in _tokens(text)]
    except ValueError:
        raise InputError(f"permutation must be 1-based row numbers, got {text!r}")
    return model.check_permutation(m, order)


def _matching_payload(M: model.PreferenceMatrix, payload: str) -> model.Matching:
    tokens = _tokens(payload)
    return model.Matching.from_elements(
        M, [None if t == "-" else t for t in tokens]
    )


def _matching_json(M: model.PreferenceMatrix, tau: model.Matching) -> list[dict]:
    out = []
    for r in range(M.m):
        c = tau.columns[r]
        entry = {"row": r + 1}
        if c is None:
            entry["assigned"] = False
        else:
            entry.update(assigned=True, column=c + 1, element=tau.elements[r])
        out.append(entry)
    return out


def _certificate_json(cert: avoid.MatchingCertificate) -> dict:
    if cert.kind == avoid.SATURATING:
        return {
            "kind": cert.kind,
            "matching": [[r + 1, e] for r, e in cert.matching],
        }
    return {
        "kind": cert.kind,
        "deficient_rows": [r + 1 for r in cert.deficient_rows],
        "strictly_left_elements": _sorted_set(cert.neighborhood),
    }


# --- commands -------------------------------------------------------------

def cmd_greedy(args) -> dict:
    M = model.parse_matrix(_read(args.matrix))
    order = _parse_perm(args.perm, M.m)
    tau = greedy.greedy_match(M, order)
    return {
        "result": {
            "permutation": _perm_1based(order),
            "matching": _matching_json(M, tau),
            "image": _sorted_set(tau.image),
        }
    }


def cmd_analyze(args) -> dict:
    M = model.parse_matrix(_read(args.matrix))
    result: dict = {"rows": M.m, "width": M.width}
    report: dict = {"result": result}
    result["unavoidable_elements"] = _sorted_set(avoid.unavoidable_elements(M))
    two_col = all(len(row) <= 2 for row in M.rows)
    if two_col:
        total, summaries = count.count_reachable_2col(M)
        result["reachable_set_count"] = total
        result["components"] = [
            {
                "rows": [r + 1 for r in s.rows],
                "elements": _sorted_set(s.elements),
                "avoidable": _sorted_set(s.avoidable),
                "is_tree": s.is_tree,
                "factor": s.factor,
            }
            for s in summaries
        ]
    try:
        family = reach.enumerate_exactly_reachable(M, args.budget)
    except BudgetExceeded as exc:
        result["partial"] = True
        result["error"] = "budget-exceeded"
        report["stats"] = {"states_explored": exc.states_explored, "budget": exc.budget}
        report["_exit"] = EXIT_BUDGET
        return report
    result["exactly_reachable_count"] = len(family.exact_sets)
    if len(family.exact_sets) <= 64:
        result["exactly_reachable"] = _family(family.exact_sets)
    result["reachable_elements"] = _sorted_set(family.reachable_elements)
    result["harmonic_bound"] = reach.bound_reachable_elements(M.m)
    result["exact_family_bound"] = count.bound_exact_family(M.m)
    report["stats"] = {"states_explored": family.states_explored}
    if args.verify and two_col:
        oracle = count.count_reachable_bruteforce(M, args.budget)
        result["reachable_set_count_oracle"] = oracle
        result["verified_by_oracle"] = oracle == result["reachable_set_count"]
        if not result["verified_by_oracle"]:
            report["_exit"] = EXIT_VERIFY
    return report


def cmd_check(args) -> dict:
    M = model.parse_matrix(_read(args.matrix))
    result: dict = {}
    certificates: dict = {}
    if args.reachable is not None:
        D = frozenset(_tokens(args.reachable))
        answer = reach.is_reachable(M, D, args.budget)
        result.update(query="reachable", elements=_sorted_set(D), answer=answer)
        if answer:
            try:
                order = reach.find_reaching_order(M, D, args.budget)
            except BudgetExceeded:
                order = None
                certificates["witness_search"] = "budget-exceeded"
            if order is not None:
                tau = greedy.greedy_match(M, order)
                assert D <= tau.image
                certificates["permutation"] = _perm_1based(order)
                certificates["image"] = _sorted_set(tau.image)
                certificates["witness_checked"] = True
    elif args.exact is not None:
        E = frozenset(_tokens(args.exact))
        answer = avoid.is_exactly_reachable(M, E)
        result.update(query="exact", elements=_sorted_set(E), answer=answer)
        if answer:
            order = reach.find_reaching_order(M, E, args.budget, exact=True)
            if order is not None:
                tau = greedy.greedy_match(M, order)
                assert tau.image == E
                certificates["permutation"] = _perm_1based(order)
                certificates["witness_checked"] = True
    elif args.avoidable is not None:
        X = frozenset(_tokens(args.avoidable))
        answer, cert = avoid.is_avoidable_set(M, X)
        result.update(query="avoidable", elements=_sorted_set(X), answer=answer)
        certificates["certificate"] = _certificate_json(cert)
        certificates["witness_checked"] = avoid.certificate_is_valid(M, cert)
        if answer and X:
            tau = avoid.omitting_matching(M, cert)
            assert not (tau.image & X)
            certificates["omitting_image"] = _sorted_set(tau.image)
    elif args.pom is not None:
        tau = _matching_payload(M, args.pom)
        answer = greedy.is_pom(M, tau)
        result.update(query="pom", answer=answer)
        result["one_pom"] = greedy.is_one_pom(M, tau)
        order, stuck = greedy.peel_order(M, tau)
        certificates["peeled_rows"] = _perm_1based(order)
        if stuck:
            certificates["stuck_rows"] = _perm_1based(stuck)
    else:
        raise InputError("check needs one of --reachable/--exact/--avoidable/--pom")
    return {"result": result, "certificates": certificates}


def cmd_count(args) -> dict:
    M = model.parse_matrix(_read(args.matrix))
    result: dict = {}
    family = reach.enumerate_exactly_reachable(M, args.budget)
    result["exactly_reachable_count"] = len(family.exact_sets)
    result["reachable_set_count"] = count.count_reachable_bruteforce(M, args.budget)
    if all(len(row) <= 2 for row in M.rows):
        formula, _ = count.count_reachable_2col(M)
        result["reachable_set_count_formula"] = formula
        result["formula_matches_enumeration"] = formula == result["reachable_set_count"]
    if args.supersets is not None:
        D = frozenset(_tokens(args.supersets))
        result["supersets_of"] = _sorted_set(D)
        result["superset_count"] = count.count_exactly_reachable_supersets(M, D, args.budget)
    result["exact_family_bound"] = count.bound_exact_family(M.m)
    return {"result": result, "stats": {"states_explored": family.states_explored}}


def cmd_construct(args) -> dict:
    kind = args.kind
    verify: tuple[bool, dict] | None = None
    witnesses = None
    marked = None
    claimed = None

    if kind in ("mk", "nk"):
        if args.k is None:
            raise InputError(f"construct {kind} requires --k")
        out = construct.construct_Mk(args.k) if kind == "mk" else construct.construct_Nk(args.k)
        matrix, witnesses, claimed = out.matrix, out.witnesses, out.claimed_value
        if args.verify:
            verify = construct.verify_mk(out, args.budget) if kind == "mk" else construct.verify_nk(out)
    elif kind == "sat":
        if not args.cnf:
            raise InputError("construct sat requires --cnf")
        phi = construct.parse_dimacs(_read(args.cnf))
        out = construct.reduce_1in3sat(phi)
        matrix, marked, claimed = out.matrix, out.marked_element, out.claimed_value
        if args.verify:
            verify = construct.verify_sat(out, phi, args.budget)
    elif kind == "indep":
        if not args.graph:
            raise InputError("construct indep requires --graph")
        g = construct.parse_edge_list(_read(args.graph))
        matrix = construct.reduce_independent_set(g)
        if args.verify:
            verify = construct.verify_indep(matrix, g, args.budget)
    elif kind == "flatten":
        if not args.matrix:
            raise InputError("construct flatten requires a matrix file")
        M = model.parse_matrix(_read(args.matrix))
        matrix = construct.flatten_to_3cols(M)
        if args.verify:
            verify = construct.verify_flatten(M, matrix, args.budget)
    elif kind == "transform":
        if not args.matrix:
            raise InputError("construct transform requires a matrix file")
        M = model.parse_matrix(_read(args.matrix))
        if args.front is not None:
            matrix = construct.transform_unavoidable_front(M, _tokens(args.front))
        elif args.unique_last:
            matrix = construct.transform_unique_last_reachable(M, args.budget)
        else:
            raise InputError("construct transform needs --front or --unique-last")
        if args.verify:
            verify = construct.verify_transform(M, matrix, args.budget)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown construction {kind!r}")

    header = []
    if claimed is not None:
        header.append(f"# claimed: {claimed}")
    if marked is not None:
        header.append(f"# marked: {marked}")
    if witnesses:
        for i, pi in enumerate(witnesses, 1):
            header.append(f"# order {i}: {' '.join(str(r + 1) for r in pi)}")
    text = "".join(line + "\n" for line in header) + model.serialize_matrix(matrix)

    report = {
        "result": {
            "kind": kind,
            "rows": matrix.m,
            "width": matrix.width,
            "matrix": [list(row) for row in matrix.rows],
        },
        "_stdout": text,
    }
    if claimed is not None:
        report["result"]["claimed"] = claimed
    if marked is not None:
        report["result"]["marked"] = marked
    if witnesses:
        report["result"]["orders"] = [_perm_1based(pi) for pi in witnesses]
    if verify is not None:
        ok, details = verify
        report["result"]["verify"] = {"ok": ok, **details}
        if not ok:
            report["_exit"] = EXIT_VERIFY
    return report


def cmd_multi(args) -> dict:
    M = model.parse_matrix(_read(args.matrix))
    if not args.degrees:
        raise InputError("multi requires --degrees")
    try:
        degree_text = _read(args.degrees)
    except OSError:
        degree_text = args.degrees
    L = multi.parse_degree_list(degree_text)
    multi.validate_degrees(M, L)
    expanded, labels = multi.expand(M, L)
    result: dict = {
        "degrees": list(L.degrees),
        "total_degree": L.total,
        "expanded_rows": expanded.m,
    }
    certificates: dict = {}
    if args.perm:
        try:
            occurrences = tuple(int(t) - 1 for t in _tokens(args.perm))
        except ValueError:
            raise InputError(f"multi permutation must be 1-based row numbers, got {args.perm!r}")
        mm = multi.greedy_multimatch(M, L, occurrences)
        result["multimatching"] = [
            {"row": r + 1, "elements": list(mm.elements[r])} for r in range(M.m)
        ]
        result["image"] = _sorted_set(mm.image)
    else:
        images = multi.enumerate_multi_images(M, L, args.budget)
        result["exactly_reachable_count"] = len(images)
        if len(images) <= 64:
            result["exactly_reachable"] = _family(images)
        result["reachable_elements"] = _sorted_set(
            frozenset().union(*images) if images else frozenset()
        )
    if args.avoidable is not None:
        result["avoidable"] = {
            "element": args.avoidable,
            "answer": multi.is_avoidable_element_multi(M, L, args.avoidable),
        }
    if args.bound is not None:
        result["coverage_bound"] = {
            "k": args.bound,
            "value": multi.bound_pomm_coverage(M.m, L, args.bound),
        }
    return {"result": result, "certificates": certificates}


# --- plumbing -------------------------------------------------------------

def _render_human(value, indent: int = 0, out=None) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                print(f"{pad}{k}:", file=out)
                _render_human(v, indent + 1, out)
            else:
                print(f"{pad}{k}: {_flat(v)}", file=out)
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item and not _is_flat_list(item):
                _render_human(item, indent, out)
                print(file=out)
            else:
                print(f"{pad}- {_flat(item)}", file=out)
    else:
        print(f"{pad}{_flat(value)}", file=out)


def _is_flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _flat(v) -> str:
    if isinstance(v, list):
        return "{" + " ".join(str(x) for x in v) + "}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pomlab",
        description="Pareto-optimal matchings: greedy runs, avoidability, "
        "reachability, counting, generators.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument(
        "--budget",
        type=int,
        default=reach.DEFAULT_BUDGET,
        help="state-exploration budget (default %(default)s)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("greedy", help="run the greedy pass for a row order")
    p.add_argument("matrix")
    p.add_argument("--perm", default="identity", help='1-based order like "2 1 3", or "identity"')
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("analyze", help="one-shot report for a matrix")
    p.add_argument("matrix")
    p.add_argument("--verify", action="store_true", help="cross-check formulas against enumeration")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="decide one query with a witness")
    p.add_argument("matrix")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--reachable", metavar="SET", help="is the set inside some optimal image")
    g.add_argument("--exact", metavar="SET", help="is the set exactly an optimal image")
    g.add_argument("--avoidable", metavar="SET", help="can all listed elements be omitted at once")
    g.add_argument("--pom", metavar="MATCHING", help='per-row elements, "-" for unassigned')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count", help="count reachable / exactly reachable sets")
    p.add_argument("matrix")
    p.add_argument("--supersets", metavar="SET", help="count exact images containing the set")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("construct", help="emit a generated matrix")
    p.add_argument("kind", choices=["mk", "nk", "sat", "indep", "flatten", "transform"])
    p.add_argument("matrix", nargs="?", help="input matrix (flatten / transform)")
    p.add_argument("--k", type=int, help="level for mk / nk")
    p.add_argument("--cnf", help="DIMACS file with 3-literal clauses (sat)")
    p.add_argument("--graph", help="edge-list file (indep)")
    p.add_argument("--front", metavar="LIST", help="unavoidable elements to pull in front (transform)")
    p.add_argument("--unique-last", action="store_true", help="uniquify last reachable elements (transform)")
    p.add_argument("--verify", action="store_true", help="measure the built instance against its claim")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("multi", help="multi-matchings through row expansion")
    p.add_argument("matrix")
    p.add_argument("--degrees", required=True, help="degree file or inline list like '2 1 1'")
    p.add_argument("--perm", help="1-based occurrence order with repeats")
    p.add_argument("--avoidable", metavar="X", help="multi-avoidability of one element")
    p.add_argument("--bound", type=int, metavar="K", help="coverage bound for K matchings")
    p.set_defaults(func=cmd_multi)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET

    exit_code = report.pop("_exit", EXIT_OK)
    stdout_override = report.pop("_stdout", None)
    elapsed = time.perf_counter() - started
    report.setdefault("stats", {})
    report["stats"]["elapsed_s"] = round(elapsed, 6)
    report["stats"]["backend"] = backend_name()

    if args.json:
        payload = {
            "schema": SCHEMA,
            "command": args.command,
            "inputs": _echo_inputs(args),
            **report,
        }
        print(json.dumps(payload, indent=2, sort_keys=False))
    elif stdout_override is not None:
        sys.stdout.write(stdout_override)
        if "verify" in report.get("result", {}):
            v = report["result"]["verify"]
            status = "ok" if v.get("ok") else "FAILED"
            details = {k: v[k] for k in v if k != "ok"}
            print(f"verify: {status} {details}", file=sys.stderr)
    else:
        _render_human(report.get("result", {}))
        if report.get("certificates"):
            print("certificates:")
            _render_human(report["certificates"], 1)
    return exit_code


def _echo_inputs(args) -> dict:
    skip = {"func", "command", "json"}
    return {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in skip and v is not None and v is not False
    }


if __name__ == "__main__":
    sys.exit(main())

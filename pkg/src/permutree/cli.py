"""
Command line for sorting, checking, counting, exporting, and verifying.

Exit codes are a contract: 0 success, 1 mathematical failure (a sort that
gets stuck, a non-minimal permutation, a verification counterexample),
2 usage error.  All output is deterministic for fixed flags.
"""
from __future__ import annotations

import argparse
import json
import sys

from .core import Kind, Orientation, Permutation, Word
from .automata import export_dot, export_dot_product
from .sorting import (
    PriorityOrder,
    check_sorting_network,
    minimality_witness,
    network_candidate,
    permutree_sort,
)
from .trees import count_minimal, export_tree_dot, generating_tree, weak_order_hasse
from .verify import SUITES, disjoint_orientations, run_suite

USAGE_ERROR = 2
MATH_FAILURE = 1


class UsageError(Exception):
    pass


def _parse_set(text: str | None) -> frozenset[int]:
    if text is None or not text.strip():
        return frozenset()
    try:
        return frozenset(int(p) for p in text.replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"cannot parse set from {text!r}") from exc


def _parse_orientation(args, n: int) -> Orientation:
    try:
        return Orientation(_parse_set(args.u), _parse_set(args.d), n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_permutation(text: str, n: int) -> Permutation:
    try:
        pi = Permutation.from_text(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if pi.n != n:
        raise UsageError(f"permutation {text!r} has degree {pi.n}, expected {n}")
    return pi


def _parse_priority(text: str | None, n: int) -> PriorityOrder:
    if text is None or not text.strip():
        return PriorityOrder.natural(n)
    try:
        priority = PriorityOrder(tuple(int(p) for p in text.replace(",", " ").split()))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if priority.n != n:
        raise UsageError(f"priority must order 1..{n - 1}, got {text!r}")
    return priority


def cmd_sort(args) -> int:
    orientation = _parse_orientation(args, args.n)
    try:
        orientation.require_disjoint()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    pi = _parse_permutation(args.permutation, args.n)
    priority = _parse_priority(args.priority, args.n)
    trace = permutree_sort(pi, orientation, priority)
    if args.output == "json":
        print(trace.to_json())
    else:
        print(trace.to_table(), end="")
    return 0 if trace.success else MATH_FAILURE


def cmd_check(args) -> int:
    orientation = _parse_orientation(args, args.n)
    pi = _parse_permutation(args.permutation, args.n)
    witness = minimality_witness(pi, orientation)
    if args.output == "json":
        payload = {"pi": str(pi), "minimal": witness is None}
        if witness is not None:
            j, kind, positions = witness
            payload["witness"] = {
                "j": j,
                "side": kind.value,
                "positions": list(positions),
                "values": "".join(str(pi.value_at(p)) for p in positions),
            }
        print(json.dumps(payload, sort_keys=True))
    elif witness is None:
        print("minimal")
    else:
        j, kind, positions = witness
        values = "".join(str(pi.value_at(p)) for p in positions)
        label = f"{j}ki" if kind is Kind.UP else f"ki{j}"
        print(
            f"non-minimal: contains {values} ({label}) at positions "
            f"{','.join(str(p) for p in positions)}"
        )
    return 0 if witness is None else MATH_FAILURE


def cmd_count(args) -> int:
    n = args.n
    if args.u is None and args.d is None:
        rows = []
        for orientation in disjoint_orientations(n):
            rows.append(
                {
                    "u": sorted(orientation.u),
                    "d": sorted(orientation.d),
                    "count": count_minimal(n, orientation),
                }
            )
        rows.sort(key=lambda r: (r["u"], r["d"]))
        if args.output == "json":
            print(json.dumps({"n": n, "rows": rows}, sort_keys=True))
        else:
            for row in rows:
                u = "{" + ",".join(map(str, row["u"])) + "}"
                d = "{" + ",".join(map(str, row["d"])) + "}"
                print(f"u={u} d={d} count={row['count']}")
        return 0
    orientation = _parse_orientation(args, n)
    try:
        orientation.require_disjoint()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    count = count_minimal(n, orientation)
    if args.output == "json":
        print(json.dumps({"n": n, "u": sorted(orientation.u), "d": sorted(orientation.d), "count": count}))
    else:
        print(count)
    return 0


def cmd_automaton(args) -> int:
    if args.product:
        orientation = _parse_orientation(args, args.n)
        print(export_dot_product(orientation, args.n, reachable_only=args.reachable_only), end="")
        return 0
    if args.kind is None or args.j is None:
        raise UsageError("either --product or both --kind and --j are required")
    kind = Kind.UP if args.kind.upper() == "U" else Kind.DOWN
    if not 1 <= args.j <= args.n:
        raise UsageError(f"--j must lie in 1..{args.n}")
    print(export_dot(kind, args.j, args.n), end="")
    return 0


def cmd_tree(args) -> int:
    orientation = _parse_orientation(args, args.n)
    try:
        orientation.require_disjoint()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    priority = _parse_priority(args.priority, args.n)
    tree = generating_tree(args.n, orientation, priority)
    if args.output == "json":
        print(tree.to_json())
        return 0
    overlay = weak_order_hasse(args.n) if args.overlay else None
    print(export_tree_dot(tree, overlay), end="")
    return 0


def cmd_network(args) -> int:
    orientation = _parse_orientation(args, args.n)
    u, d = orientation.u, orientation.d
    if len(u) + len(d) != 1:
        raise UsageError("the candidate generator is defined only for a single automaton")
    kind = Kind.UP if u else Kind.DOWN
    j = next(iter(u or d))
    extension = Word.from_text(args.extend, args.n) if args.extend is not None else None
    template = network_candidate(kind, j, args.n, extension)
    counterexample = check_sorting_network(template, orientation, args.n)
    verdict = "valid" if counterexample is None else f"refuted by {counterexample}"
    if args.output == "json":
        print(
            json.dumps(
                {
                    "template": list(template),
                    "valid": counterexample is None,
                    "counterexample": None if counterexample is None else str(counterexample),
                },
                sort_keys=True,
            )
        )
    else:
        print(f"candidate: {template}")
        print(f"verdict: {verdict}")
    return 0 if counterexample is None else MATH_FAILURE


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failures = 0
    for name in names:
        try:
            violations = run_suite(name, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if name == "networks" and not violations:
            print("networks: no valid network among 768 reduced words of 54321; "
                  "known good templates confirmed")
        status = "pass" if not violations else f"FAIL ({len(violations)} counterexamples)"
        print(f"{name}: {status}")
        for line in violations[:20]:
            print(f"  {line}")
        failures += bool(violations)
    return 0 if failures == 0 else MATH_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permutree",
        description="Permutree sorting of permutations, the automata that accept "
        "their reduced expressions, and exhaustive verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, orientation=True, priority=False, output=("text", "json")):
        p.add_argument("--n", type=int, required=True, help="degree of the symmetric group")
        if orientation:
            p.add_argument("--u", help="comma-separated up set, e.g. 2,3 (default empty)")
            p.add_argument("--d", help="comma-separated down set (default empty)")
        if priority:
            p.add_argument(
                "--priority",
                help="generator indices from most to least preferred, e.g. 2,1,3 "
                "(default natural order)",
            )
        p.add_argument("--output", choices=output, default=output[0])

    p_sort = sub.add_parser("sort", help="run the (u,d) sorting algorithm and print its trace")
    add_common(p_sort, priority=True)
    p_sort.add_argument("permutation")
    p_sort.set_defaults(func=cmd_sort)

    p_check = sub.add_parser("check", help="test minimality, printing a witness subword on failure")
    add_common(p_check)
    p_check.add_argument("permutation")
    p_check.set_defaults(func=cmd_check)

    p_count = sub.add_parser(
        "count", help="count minimal permutations (all disjoint orientations when u, d omitted)"
    )
    add_common(p_count)
    p_count.set_defaults(func=cmd_count)

    p_auto = sub.add_parser("automaton", help="emit an automaton as DOT")
    add_common(p_auto, output=("dot",))
    p_auto.add_argument("--kind", choices=["U", "D", "u", "d"])
    p_auto.add_argument("--j", type=int)
    p_auto.add_argument("--product", action="store_true", help="emit the intersection automaton")
    p_auto.add_argument(
        "--reachable-only", action="store_true", help="restrict the product to reachable states"
    )
    p_auto.add_argument("--dot", action="store_true", help="accepted for symmetry; DOT is the only format")
    p_auto.set_defaults(func=cmd_automaton)

    p_tree = sub.add_parser("tree", help="emit the generating tree as DOT (or a JSON word map)")
    add_common(p_tree, priority=True, output=("dot", "json"))
    p_tree.add_argument("--overlay", action="store_true", help="draw the full weak order under the tree")
    p_tree.add_argument("--dot", action="store_true", help="accepted for symmetry; default format")
    p_tree.set_defaults(func=cmd_tree)

    p_net = sub.add_parser(
        "network",
        help="experimental: generate a sorting-network candidate from the healthy "
        "states of a single automaton and validate it",
    )
    add_common(p_net)
    p_net.add_argument("--extend", help="letters appended to the generated prefix (default n-1..1)")
    p_net.set_defaults(func=cmd_network)

    p_verify = sub.add_parser("verify", help="run a verification suite (see --suite)")
    p_verify.add_argument("--suite", choices=list(SUITES) + ["all"], required=True)
    p_verify.add_argument(
        "--n",
        type=int,
        help="bound for suites that take one (default 5, opt-in 6 where supported)",
    )
    p_verify.add_argument("--u", help=argparse.SUPPRESS)
    p_verify.add_argument("--d", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

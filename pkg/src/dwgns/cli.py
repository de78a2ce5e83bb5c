"""Command-line front end.

Exit codes: 0 success, 1 domain error (contract or guard violations),
2 usage, file, or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import gns, tqft
from .errors import DWError
from .groups import FiniteAbelianGroup, parse_group
from .invariant import eta, invariant_closed, invariant_s3, meridian_matrix
from .links import WILSON, LabeledLinkingData, data_to_json, parse_link
from .moves import Move1, Move2, Move3, RingRelation, apply_move, move_to_json, move_to_text
from .moves import reduce as reduce_link
from .moves import trivial_link_value
from .zmatrix import IntMatrix, brute_force_count, count_solutions

fmt = gns.format_rational


class InputError(Exception):
    """Raised while reading inputs; maps to exit code 2."""


def _group(spec: str) -> FiniteAbelianGroup:
    try:
        return parse_group(spec)
    except DWError as exc:
        raise InputError(str(exc)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _link(path: str, G) -> LabeledLinkingData:
    try:
        return parse_link(_read(path), G)
    except DWError as exc:
        raise InputError(f"{path}: {exc}") from None


def _surface(args, G) -> tqft.SurfaceObject:
    try:
        if args.arcs:
            return tqft.parse_surface(_read(args.arcs), G, genus=args.genus)
        return tqft.SurfaceObject(args.genus)
    except DWError as exc:
        raise InputError(f"{args.arcs}: {exc}") from None


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_invariant(args) -> int:
    G = _group(args.group)
    d = _link(args.link, G)
    value = invariant_s3(d, G)
    _emit(args, fmt(value), {"command": "invariant", "group": str(G),
                             "input": data_to_json(d), "value": fmt(value)})
    return 0


def cmd_closed(args) -> int:
    G = _group(args.group)
    d = _link(args.link, G)
    value = invariant_closed(d, G)
    _emit(args, fmt(value), {"command": "closed", "group": str(G),
                             "input": data_to_json(d), "value": fmt(value)})
    return 0


def cmd_reduce(args) -> int:
    G = _group(args.group)
    d = _link(args.link, G)
    result, trace = reduce_link(d, G)
    value = result.evaluate(lambda x: trivial_link_value(x, G))
    (_, final), = result.terms
    lines = [move_to_text(m) for m in trace]
    lines.append("labels " + json.dumps([[list(a), list(b)] for a, b in final.labels]))
    lines.append(fmt(value))
    _emit(args, "\n".join(lines), {
        "command": "reduce", "group": str(G), "input": data_to_json(d),
        "trace": [move_to_json(m) for m in trace], "result": data_to_json(final),
        "value": fmt(value)})
    return 0


def cmd_dim(args) -> int:
    G = _group(args.group)
    s = _surface(args, G)
    dim = tqft.space_dimension(s, G)
    _emit(args, str(dim), {"command": "dim", "group": str(G),
                           "surface": tqft.surface_to_json(s), "dimension": dim})
    return 0


def cmd_pairing(args) -> int:
    G = _group(args.group)
    s = _surface(args, G)
    P = tqft.pairing_matrix(s, G)
    elems = tqft.basis(s, G)
    text = "\n".join(" ".join(fmt(v) for v in row) for row in P)
    _emit(args, text, {"command": "pairing", "group": str(G),
                       "surface": tqft.surface_to_json(s),
                       "basis": [tqft.basis_to_json(b) for b in elems],
                       "matrix": [[fmt(v) for v in row] for row in P],
                       "rank": gns.rank(P)})
    return 0


def cmd_eta(args) -> int:
    G = _group(args.group)
    value = eta(G)
    _emit(args, fmt(value), {"command": "eta", "group": str(G), "value": fmt(value)})
    return 0


def random_link(rng: random.Random, G: FiniteAbelianGroup, n: int, bound: int = 3,
                surgery: bool = False, consistent: bool | None = None) -> LabeledLinkingData:
    """Random symmetric linking data; with ``consistent`` the labels satisfy
    the S^3 longitude condition (otherwise they are uniform)."""
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(-bound, bound)
    elems = G.elements()
    roles = [WILSON] * n
    if surgery:
        roles = [rng.choice((WILSON, "surgery")) for _ in range(n)]
    if consistent is None:
        consistent = rng.random() < 0.5
    a = [rng.choice(elems) for _ in range(n)]
    labels = []
    for i in range(n):
        if roles[i] != WILSON:
            labels.append(None)
        elif consistent:
            labels.append((a[i], G.linear_combination(m[i], a)))
        else:
            labels.append((a[i], rng.choice(elems)))
    return LabeledLinkingData(IntMatrix.from_rows(m, cols=n), tuple(roles), tuple(labels))


def cmd_oracle(args) -> int:
    """Randomized cross-checks of the fast paths against independent routes."""
    G = _group(args.group)
    rng = random.Random(args.seed)
    elems = G.elements()
    failures = {"count": 0, "s3": 0, "moves": 0}
    for _ in range(args.trials):
        rows, cols = rng.randint(0, 3), rng.randint(0, 3)
        M = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)],
                                cols=cols)
        t = [rng.choice(elems) for _ in range(rows)]
        if count_solutions(M, t, G) != brute_force_count(M, t, G):
            failures["count"] += 1

        d = random_link(rng, G, rng.randint(1, 3))
        M, t = meridian_matrix(d, G)
        if invariant_s3(d, G) != Fraction(brute_force_count(M, t, G), G.order):
            failures["s3"] += 1

        base = invariant_s3(d, G)
        i, j = rng.randrange(d.n), rng.randrange(d.n)
        moves = [Move1(i, rng.choice(("right", "left"))), Move3(i, j, rng.choice((1, -1))),
                 Move2(i), RingRelation(i, rng.choice(elems), rng.choice((1, -1)))]
        for mv in moves:
            if apply_move(d, mv, G).evaluate(lambda x: invariant_s3(x, G)) != base:
                failures["moves"] += 1
    ok = not any(failures.values())
    lines = [f"count_solutions vs brute_force_count: {failures['count']} failures",
             f"invariant_s3 vs homomorphism count: {failures['s3']} failures",
             f"move invariance: {failures['moves']} failures",
             f"{'OK' if ok else 'FAILED'} ({args.trials} trials, seed {args.seed})"]
    _emit(args, "\n".join(lines), {"command": "oracle", "group": str(G), "trials": args.trials,
                                   "seed": args.seed, "failures": failures, "ok": ok})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dwgns",
        description="Exact abelian Dijkgraaf-Witten invariants and TQFT state spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--group", required=True, help="gauge group, e.g. Z2xZ4")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    for name, func, help_ in (("invariant", cmd_invariant, "invariant of an all-Wilson link in S^3"),
                              ("closed", cmd_closed, "invariant of a surgery presentation"),
                              ("reduce", cmd_reduce, "reduce a link by moves and print the trace")):
        p = common(sub.add_parser(name, help=help_))
        p.add_argument("link", help="JSON link file")
        p.set_defaults(func=func)

    for name, func, help_ in (("dim", cmd_dim, "dimension of the state space of a surface"),
                              ("pairing", cmd_pairing, "pairing matrix of a surface")):
        p = common(sub.add_parser(name, help=help_))
        p.add_argument("--genus", type=int, default=None)
        p.add_argument("--arcs", help="JSON file with arc-pair labels")
        p.set_defaults(func=func)

    p = common(sub.add_parser("eta", help="surgery constant I(S^3)/I(S^1 x S^2)"))
    p.set_defaults(func=cmd_eta)

    p = common(sub.add_parser("oracle", help="randomized cross-checks against brute force"))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command in ("dim", "pairing") and args.genus is None and not args.arcs:
        parser.print_usage(sys.stderr)
        print(f"dwgns {args.command}: --genus or --arcs is required", file=sys.stderr)
        return 2
    if args.command in ("dim", "pairing") and args.genus is not None and args.genus < 0:
        print(f"dwgns {args.command}: genus must be non-negative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"dwgns: {exc}", file=sys.stderr)
        return 2
    except DWError as exc:
        print(f"dwgns: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

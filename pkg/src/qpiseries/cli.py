"""Command-line front end: list the catalog, verify identities, take limits.

Exit codes: 0 all selected checks passed, 1 verification failure,
2 usage error (unknown id, malformed flags, limit of a record without a
classical target).

``--json`` emits one JSON object per line with a versioned schema.  JSON
output is byte-identical for identical configuration and seed; wall-clock
timing is therefore reported only in human mode (the ``millis`` field is 0
in JSON mode).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .errors import QvError
from .identities import (
    DEFAULT_P,
    catalog,
    check_terminating,
    find,
    verify_example,
)
from .limits import q_limit


def _parse_p(text: str) -> Fraction:
    # decimal strings convert exactly (power-of-ten denominator)
    p = Fraction(text)
    if not (0 < p < 1):
        raise argparse.ArgumentTypeError("p must lie strictly between 0 and 1")
    return p


def _select(ids: list[str]) -> list:
    if ids == ["all"] or not ids:
        return list(catalog())
    records = []
    for rec_id in ids:
        try:
            records.append(find(rec_id))
        except KeyError:
            raise UsageError(f"unknown identity id {rec_id!r}") from None
    return records


class UsageError(Exception):
    pass


def cmd_list(args) -> int:
    records = catalog()
    if args.prefix:
        records = [r for r in records if r.id.startswith(args.prefix)]
    for r in records:
        if args.json:
            target = r.classical_target.label if r.classical_target else None
            print(json.dumps({
                "schema": 1,
                "id": r.id,
                "kind": r.kind,
                "lattice": r.lattice,
                "params": r.params,
                "classical_target": target,
            }))
        else:
            print(r.describe())
    return 0


def cmd_verify(args) -> int:
    records = _select(args.ids)
    rng = random.Random(args.seed)
    ok = True
    for record in records:
        try:
            if record.kind == "terminating":
                rep = check_terminating(
                    record.id, p=args.p, rng=rng,
                    trials=args.trials, n_max=args.n_max)
            else:
                rep = verify_example(record.id, p=args.p, digits=args.digits, rng=rng)
        except QvError as exc:
            print(f"error: {record.id}: {exc}", file=sys.stderr)
            ok = False
            continue
        if args.json:
            print(json.dumps(rep.to_json_dict(with_timing=False)))
        else:
            print(rep.human_line())
        ok = ok and rep.passed
    return 0 if ok else 1


def cmd_limit(args) -> int:
    records = _select(args.ids)
    for record in records:
        if record.classical_target is None or record.term is None:
            raise UsageError(f"{record.id} has no classical limit target")
    ok = True
    for record in records:
        rep = q_limit(record, j0=args.j0, j1=args.j1, order=args.order, digits=args.digits)
        if args.json:
            print(json.dumps({
                "schema": 1,
                "id": rep.id,
                "mode": "limit",
                "estimate": str(rep.estimate),
                "err_estimate": str(rep.err_estimate),
                "target": str(rep.target_value),
                "target_label": rep.target_label,
                "agreement_digits": rep.agreement_digits,
                "monotone": rep.monotone,
                "grid": rep.grid,
            }))
        else:
            warn = "" if rep.monotone else "  [warning: non-monotone tableau]"
            print(
                f"{rep.id:<10} limit={rep.estimate}  target[{rep.target_label}]"
                f"={rep.target_value}  agreement={rep.agreement_digits} digits{warn}"
            )
        ok = ok and rep.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpiseries",
        description="verify q-series identities exactly or to certified precision",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="print the identity catalog")
    p_list.add_argument("--json", action="store_true")
    p_list.add_argument("--prefix", default="", help="filter ids by prefix")
    p_list.set_defaults(fn=cmd_list)

    p_verify = sub.add_parser("verify", help="verify selected identities")
    p_verify.add_argument("ids", nargs="+", help="identity ids, or 'all'")
    p_verify.add_argument("--p", type=_parse_p, default=DEFAULT_P,
                          help="lattice base point in (0,1); decimals parse exactly")
    p_verify.add_argument("--digits", type=int, default=40)
    p_verify.add_argument("--n-max", type=int, default=8, dest="n_max")
    p_verify.add_argument("--seed", type=int, default=1)
    p_verify.add_argument("--trials", type=int, default=3)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(fn=cmd_verify)

    p_limit = sub.add_parser("limit", help="extrapolate q->1 against classical constants")
    p_limit.add_argument("ids", nargs="+")
    p_limit.add_argument("--digits", type=int, default=26)
    p_limit.add_argument("--j0", type=int, default=3)
    p_limit.add_argument("--j1", type=int, default=10)
    p_limit.add_argument("--order", type=int, default=6)
    p_limit.add_argument("--json", action="store_true")
    p_limit.set_defaults(fn=cmd_limit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "digits", 10) < 10:
        print("error: --digits must be >= 10", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Exit codes: 0 success (printed-formula discrepancies allowed), 1 hard-check
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import qcount
from .field import FieldError, FieldSpec, factor_prime_power
from .matrix import Subspace, format_matrix, parse_matrix
from .spaces import DEFAULT_GUARD, GroupTooLarge, enumerate_by_type, orbit_representative, type_of
from .suborbits import (
    FormulaUndefined,
    GuardExceeded,
    SeparationError,
    cross_validate,
    invariant_tuple,
    orbits_oracle,
    printed_tuples,
    suborbit_count_printed,
    suborbit_length_printed,
)
from .verify import VerifyConfig, render, run_verify


class UsageError(Exception):
    pass


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def field_from_args(args) -> FieldSpec:
    return FieldSpec.from_q(args.q, args.modulus)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# name -> (function, argument names in call order)
FORMULAS = {
    "gauss": (qcount.gauss, ("n", "k", "q")),
    "rank-matrices": (qcount.count_rank_matrices, ("i", "m", "n", "q")),
    "intersecting": (qcount.count_intersecting_subspaces, ("m", "n", "i", "q")),
    "row-extension": (qcount.count_row_extension, ("t1", "t2", "m2", "n", "q")),
    "col-extension": (qcount.count_col_extension, ("t1", "t2", "m", "n2", "q")),
    "block-rank": (qcount.count_block_rank, ("m1", "m2", "n1", "n2", "alpha", "q")),
    "group-order": (qcount.group_order, ("shape", "q")),
    "anzahl": (qcount.anzahl, ("shape", "type", "q")),
    "contained": (qcount.count_contained, ("shape", "type", "sub_type", "q")),
    "containing": (qcount.count_containing, ("shape", "sub_type", "type", "q")),
    "suborbit-count": (suborbit_count_printed, ("shape", "type", "q")),
}

LIST_ARGS = {"shape", "type", "sub_type"}


def cmd_count(args) -> int:
    fn, names = FORMULAS[args.formula]
    params = {}
    for name in names:
        value = getattr(args, name, None)
        if value is None:
            raise UsageError(f"count {args.formula} needs --{name.replace('_', '-')}")
        params[name] = value
    factor_prime_power(args.q)
    value = fn(*(params[name] for name in names))
    _emit({
        "formula": args.formula,
        "params": {k: list(v) if k in LIST_ARGS else v for k, v in params.items()},
        "value": str(value),
    })
    return 0


def cmd_enumerate(args) -> int:
    spec = field_from_args(args)
    members = sorted(enumerate_by_type(args.shape, args.type, spec), key=lambda s: s.key)
    print("\n\n".join(format_matrix(s.basis) for s in members))
    return 0


def cmd_typeof(args) -> int:
    spec = field_from_args(args)
    shape = qcount.check_shape(args.shape)
    text = Path(args.matrix_file).read_text()
    m = parse_matrix(text, spec, cols=sum(shape))
    s = Subspace.from_matrix(m)
    print(",".join(str(x) for x in type_of(shape, s)))
    return 0


def cmd_canonical(args) -> int:
    spec = field_from_args(args)
    print(format_matrix(orbit_representative(args.shape, args.type, spec).basis))
    return 0


def cmd_suborbits(args) -> int:
    spec = field_from_args(args)
    shape, k, q = args.shape, args.type, spec.q
    guard = DEFAULT_GUARD if args.guard is None else args.guard
    if guard < 1:
        raise UsageError(f"--guard must be positive, got {guard}")
    if args.mode == "formula":
        rows = []
        for tup in printed_tuples(shape, k):
            try:
                length = str(suborbit_length_printed(shape, k, tup, q))
            except FormulaUndefined:
                length = None
            rows.append({"tuple": list(tup), "printed_length": length})
        _emit({
            "shape": list(shape), "type": list(k), "q": q,
            "printed_count": str(suborbit_count_printed(shape, k, q)),
            "tuples": rows,
        })
        return 0
    if args.mode == "oracle":
        part = orbits_oracle(shape, k, spec, guard)
        orbits = []
        for orbit in part.orbits:
            entry = {"size": str(len(orbit)), "members": [format_matrix(s.basis) for s in orbit]}
            if len(shape) == 3:
                entry["tuple"] = list(invariant_tuple(part.representative, orbit[0], shape, k))
            orbits.append(entry)
        _emit({
            "shape": list(shape), "type": list(k), "q": q,
            "group_order": str(part.group_order),
            "stabilizer_order": str(part.stabilizer_order),
            "orbit_count": str(len(part.orbits)),
            "orbits": orbits,
        })
        return 0
    try:
        report = cross_validate(shape, k, spec, guard)
    except SeparationError as exc:
        print(f"separation failure: {exc}", file=sys.stderr)
        return 1
    _emit(report.to_json())
    return 0 if report.hard_ok else 1


def cmd_verify(args) -> int:
    config = VerifyConfig(
        max_q=args.max_q,
        max_total_dim=args.max_total_dim,
        max_t=args.max_t,
        group_guard=args.group_guard if args.guard is None else args.guard,
        subspace_guard=args.subspace_guard if args.guard is None else args.guard,
        output_format=args.format,
        output_path=args.out,
    )
    report = run_verify(config)
    text = render(report, config.output_format)
    if config.output_path:
        Path(config.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    n_hard, n_soft = len(report["hard_failures"]), len(report["discrepancies"])
    print(f"verify: {n_hard} hard failures, {n_soft} printed-formula discrepancies", file=sys.stderr)
    return 1 if n_hard else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsingular", description="Counting and orbit tools for t-singular linear spaces.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    fieldp = argparse.ArgumentParser(add_help=False)
    fieldp.add_argument("--q", type=int, required=True, help="field size (a prime power)")
    fieldp.add_argument("--modulus", type=int_list, default=None, help="c0,c1,...,ce of a monic irreducible")

    p = sub.add_parser("count", help="evaluate a closed-form count")
    p.add_argument("formula", choices=sorted(FORMULAS))
    p.add_argument("--q", type=int, required=True)
    for name in ("n", "k", "i", "m", "t1", "t2", "m1", "m2", "n1", "n2", "alpha"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--shape", type=int_list)
    p.add_argument("--type", type=int_list)
    p.add_argument("--sub-type", dest="sub_type", type=int_list)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[fieldp], help="list the subspaces of one type")
    p.add_argument("--shape", type=int_list, required=True)
    p.add_argument("--type", type=int_list, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("typeof", parents=[fieldp], help="type of the row space of a matrix file")
    p.add_argument("--shape", type=int_list, required=True)
    p.add_argument("--matrix-file", required=True)
    p.set_defaults(func=cmd_typeof)

    p = sub.add_parser("canonical", parents=[fieldp], help="block representative of a type")
    p.add_argument("--shape", type=int_list, required=True)
    p.add_argument("--type", type=int_list, required=True)
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("suborbits", parents=[fieldp], help="suborbit formulas, brute force, or comparison")
    p.add_argument("mode", choices=("formula", "oracle", "verify"))
    p.add_argument("--shape", type=int_list, required=True)
    p.add_argument("--type", type=int_list, required=True)
    p.add_argument("--guard", type=int)
    p.set_defaults(func=cmd_suborbits)

    p = sub.add_parser("verify", help="run the formula-versus-enumeration grid")
    defaults = VerifyConfig()
    p.add_argument("--max-q", type=int, default=defaults.max_q)
    p.add_argument("--max-total-dim", type=int, default=defaults.max_total_dim)
    p.add_argument("--max-t", type=int, default=defaults.max_t)
    p.add_argument("--group-guard", type=int, default=defaults.group_guard)
    p.add_argument("--subspace-guard", type=int, default=defaults.subspace_guard)
    p.add_argument("--guard", type=int, help="override both guards")
    p.add_argument("--format", choices=("json", "csv"), default=defaults.output_format)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, FieldError, ValueError, GuardExceeded, GroupTooLarge, OSError) as exc:
        print(f"tsingular {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

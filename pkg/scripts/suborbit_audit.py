"""Audit the printed suborbit formulas against brute-force stabilizer orbits.

For each (shape, type, q) in the grid this prints one row: orbit size, |G_U|,
printed count, oracle count, and how many labels fall into each discrepancy
kind.  A second table lists every realized label outside the printed
constraints together with the constraint lines it breaks.

    python scripts/suborbit_audit.py --q 2 3 --max-total-dim 4
"""

import argparse
import json
from collections import Counter

from tsingular.field import gf
from tsingular.qcount import valid_types
from tsingular.suborbits import GuardExceeded, cross_validate, printed_constraint_failures
from tsingular.verify import compositions

KINDS = (
    "printed_tuple_not_realized",
    "realized_tuple_outside_printed_constraints",
    "suborbit_length_mismatch",
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-total-dim", type=int, default=4)
    ap.add_argument("--guard", type=int, default=10**6)
    ap.add_argument("--json", help="also write all rows to this file")
    args = ap.parse_args()

    rows, outside = [], []
    header = f"{'shape':>9} {'type':>9} {'q':>2} {'|M|':>5} {'|G_U|':>6} {'printed':>7} {'oracle':>6}  unreal  outside  len-mismatch"
    print(header)
    print("-" * len(header))
    for q in args.q:
        spec = gf(q)
        for shape in compositions(args.max_total_dim, 3, positive=True):
            for k in valid_types(shape):
                try:
                    rep = cross_validate(shape, k, spec, args.guard)
                except GuardExceeded as exc:
                    print(f"{str(shape):>9} {str(k):>9} {q:>2}  skipped: {exc}")
                    continue
                kinds = Counter(d["kind"] for d in rep.discrepancies)
                row = dict(shape=shape, type=k, q=q, anzahl=rep.anzahl, stabilizer=rep.stabilizer_order,
                           printed=rep.printed_count, oracle=rep.oracle_count, **{kd: kinds[kd] for kd in KINDS})
                rows.append(row)
                flag = "" if rep.printed_count == rep.oracle_count else "  *"
                print(f"{str(shape):>9} {str(k):>9} {q:>2} {rep.anzahl:>5} {rep.stabilizer_order:>6} "
                      f"{rep.printed_count:>7} {rep.oracle_count:>6}  {kinds[KINDS[0]]:>6}  {kinds[KINDS[1]]:>7}  {kinds[KINDS[2]]:>12}{flag}")
                for r in rep.records:
                    if r.oracle_length and not r.printed_valid:
                        outside.append((shape, k, q, tuple(r.tuple), printed_constraint_failures(shape, k, r.tuple)))

    agree = sum(r["printed"] == r["oracle"] for r in rows)
    print(f"\n{len(rows)} cases; printed count equals oracle count in {agree}")
    print("\nrealized labels outside the printed constraints (failing constraint lines):")
    for shape, k, q, tup, lines in outside:
        print(f"  shape {shape} type {k} q={q} label {tup}: lines {lines}")
    print("\nfailing-line frequency:", dict(sorted(Counter(n for *_, lines in outside for n in lines).items())))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"cases": rows, "outside": [dict(shape=s, type=k, q=q, label=t, lines=l) for s, k, q, t, l in outside]},
                      fh, indent=2)


if __name__ == "__main__":
    main()

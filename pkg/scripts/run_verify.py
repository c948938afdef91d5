"""Run the verification grid and summarize it.

Writes the full JSON report (same bytes as ``tsingular verify --out``) and
prints per-section pass counts, skipped cases and discrepancy kinds.

    python scripts/run_verify.py --out results/verify_report.json
"""

import argparse
import time
from collections import Counter
from pathlib import Path

from tsingular.verify import SECTIONS, VerifyConfig, render, run_verify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-q", type=int, default=3)
    ap.add_argument("--max-total-dim", type=int, default=4)
    ap.add_argument("--max-t", type=int, default=3)
    ap.add_argument("--out", default="results/verify_report.json")
    args = ap.parse_args()

    config = VerifyConfig(max_q=args.max_q, max_total_dim=args.max_total_dim, max_t=args.max_t)
    start = time.perf_counter()
    report = run_verify(config)
    elapsed = time.perf_counter() - start

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(render(report, "json"))

    print(f"grid max_q={config.max_q} max_total_dim={config.max_total_dim} max_t={config.max_t}  ({elapsed:.1f}s)")
    for section in SECTIONS:
        entries = report["cases"][section]
        if section == "skipped":
            print(f"  {section:<14} {len(entries):>6}")
            continue
        ok = sum(1 for e in entries if e["ok"])
        print(f"  {section:<14} {ok:>6} / {len(entries):<6} ok")
    print(f"hard failures: {len(report['hard_failures'])}")
    kinds = Counter(d["kind"] for d in report["discrepancies"])
    print("printed-formula discrepancies:")
    for kind, n in sorted(kinds.items()):
        print(f"  {kind:<44} {n:>4}")
    print(f"report: {out}")


if __name__ == "__main__":
    main()

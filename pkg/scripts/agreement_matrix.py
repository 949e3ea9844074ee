"""Predicted vs empirical verdicts over the canonical measures and (alpha, beta) grid.

    python scripts/agreement_matrix.py --depth 10 [--csv out.csv]
"""

import argparse
import csv
import sys
import time

from cesaro_lab.measure import canonical_suite
from cesaro_lab.probes import full_report

GRID = [(0.5, 1.0), (0.5, 1.5), (1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (2.0, 2.5), (2.0, 3.5)]


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--csv", help="also write the table here")
    args = p.parse_args()

    header = ["measure", "alpha", "beta", "regime", "pred_bounded", "pred_compact", "emp_bounded", "exponent", "emp_compact", "agree"]
    rows = []
    start = time.perf_counter()
    for name, m in canonical_suite().items():
        for alpha, beta in GRID:
            rep = full_report(m, alpha, beta, args.depth)
            rows.append(
                [
                    name,
                    alpha,
                    beta,
                    rep.verdict.regime,
                    rep.verdict.predicted_bounded,
                    rep.verdict.predicted_compact,
                    rep.bounded.empirical_verdict,
                    f"{rep.bounded.fitted_exponent:+.3f}",
                    rep.compact.empirical_verdict,
                    {True: "yes", False: "CONTRADICTION", None: "inconclusive"}[rep.agreement],
                ]
            )
            print("  ".join(f"{c!s:>16}" if i else f"{c!s:<18}" for i, c in enumerate(rows[-1])))
    bad = sum(r[-1] == "CONTRADICTION" for r in rows)
    print(f"# {len(rows)} cells, {bad} contradictions, {time.perf_counter() - start:.1f}s")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
    return 2 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

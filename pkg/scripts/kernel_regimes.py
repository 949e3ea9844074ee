"""Ratio scans of I_r(delta, c, k) against the four predicted growth shapes.

    python scripts/kernel_regimes.py --depth 24
"""

import argparse

from cesaro_lab.asymptotics import regime_scan

CASES = [(1.0, 0.0, -2.0), (0.0, 0.0, -1.0), (0.0, 0.0, 0.0), (0.0, 0.0, 1.5), (0.5, 2.0, 1.0), (-0.5, 1.0, -3.0)]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--depth", type=int, default=20)
    args = p.parse_args()
    for delta, c, k in CASES:
        scan = regime_scan(delta, c, k, args.depth)
        print(f"# delta={delta:g} c={c:g} k={k:g}  regime={scan.regime}  stabilized={scan.stabilized}")
        for j, r, value, pred, ratio in scan.rows()[::3] + scan.rows()[-1:]:
            print(f"  j={j:2d}  I={value:.6e}  predicted={pred:.6e}  ratio={ratio:.5f}")


if __name__ == "__main__":
    main()

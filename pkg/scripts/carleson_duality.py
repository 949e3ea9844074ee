"""Tail-quotient verdicts next to moment-decay fits for power-log tails.

For each tail exponent s0 the measure is probed at s0 - 0.5, s0 and s0 + 0.5;
the tail route (classify) and the moment route (n^s mu_n) should tell the
same story.
"""

import argparse

import numpy as np

from cesaro_lab.carleson import classify, moment_carleson_test
from cesaro_lab.measure import MeasureSpec, PowerLogTail


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--depth", type=int, default=30)
    p.add_argument("--top", type=int, default=18, help="largest moment order is 2^top")
    args = p.parse_args()
    grid = 2 ** np.arange(0, args.top + 1)
    print(f"{'s0':>5} {'gamma':>5} {'probe':>6} {'tail verdict':>18} {'mu exponent':>12} {'last doubling':>14}")
    for s0 in (0.5, 1.0, 2.0):
        for gamma in (0.0, 1.0):
            m = MeasureSpec.of(PowerLogTail(s0, gamma))
            for s in (s0 - 0.5, s0, s0 + 0.5):
                if s < 0:
                    continue
                rep = classify(m, s, 0.0, args.depth)
                mt = moment_carleson_test(m, s, grid)
                ratio = mt.weighted[-1] / mt.weighted[-2]
                print(f"{s0:5g} {gamma:5g} {s:6g} {rep.verdict:>18} {mt.exponent:12.4f} {ratio:14.4f}")


if __name__ == "__main__":
    main()

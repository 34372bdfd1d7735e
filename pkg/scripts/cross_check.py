"""Sweep Kac-Walton against the Verlinde formula and report deviations and timings.

    python3 scripts/cross_check.py A2:5 G2:3 B3:2
"""

import sys
import time

from realverlinde import build_root_datum, fusion_table
from realverlinde.fusion_ring import fusion_via_smatrix, quotient_residual


def check(name: str, kmax: int):
    d = build_root_datum(name)
    for k in range(kmax + 1):
        t0 = time.perf_counter()
        table = fusion_table(d, k)
        t1 = time.perf_counter()
        worst, bad = 0.0, 0
        for (i, j), entries in table.coeffs.items():
            exact = {table.weights[t]: n for t, n in entries.items()}
            num, dev = fusion_via_smatrix(d, k, table.weights[i], table.weights[j], return_deviation=True)
            worst = max(worst, dev)
            bad += num != exact
        res = quotient_residual(table)
        print(f"{name} k={k:<2} |L|={len(table.weights):<4} exact {t1 - t0:6.2f}s  "
              f"max dev {worst:.1e}  mismatches {bad}  residual {res:.1e}")


def main(argv):
    for arg in argv or ["A1:6", "A2:4", "C2:3", "G2:2"]:
        name, _, k = arg.partition(":")
        check(name, int(k or 2))


if __name__ == "__main__":
    main(sys.argv[1:])

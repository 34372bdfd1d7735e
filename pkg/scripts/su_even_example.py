"""Real Verlinde data for SU(2n) with the quaternionic involution.

    python3 scripts/su_even_example.py --n 2 --level 1
"""

import argparse

from realverlinde import RealVerlindeRing, build_root_datum, preset, real_ideal_generators
from realverlinde.real_verlinde import builtin_ik_generators, enumerate_S, monomial_name


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2, help="SU(2n)")
    ap.add_argument("--level", type=int, default=1)
    args = ap.parse_args()

    d = build_root_datum(f"A{2 * args.n - 1}")
    inv = preset(d, "su_even_quaternionic")
    R = RealVerlindeRing(d, inv, args.level)
    print(f"SU({2 * args.n}) level {args.level}: {len(R.basis())} generators")
    for b in R.basis():
        print(f"  {b}  degree {b.degree}")
    gens = R.generators()
    print("products:")
    for i, x in enumerate(gens):
        for y in gens[i:]:
            print(f"  {x} · {y} = {R.multiply(x, y)}")
    print("S =", ", ".join(monomial_name(m) for m in enumerate_S(d, inv)))
    print("ideal generators:")
    for g in real_ideal_generators(builtin_ik_generators(d, args.level), inv, d, args.level):
        print(f"  {g}")


if __name__ == "__main__":
    main()

"""Compare the displayed GL4 second-line coefficient with the recomputed one."""
import argparse
import random
from fractions import Fraction

from fernlab import hodgeflag
from fernlab.errors import DegenerateDenominator


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tuples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    shown = 0
    while shown < args.tuples:
        p = hodgeflag.GL4Params(*(Fraction(rng.randint(-5, 5)) for _ in range(5)))
        try:
            ok = hodgeflag.gl4_rebased_check(p)
        except DegenerateDenominator:
            continue
        shown += 1
        print(f"L34={p.L34!s:>3} check={ok!s:<5} corrected c={hodgeflag.gl4_corrected_coefficient(p)}")


if __name__ == "__main__":
    main()

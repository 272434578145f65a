"""Kernel dimension of the Hodge-parameter map for all-singleton shapes."""
import argparse
import random

from fernlab import dimcalc, hodgeflag, weyl


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'n':>3} {'d_env':>6} {'ker':>5} {'closed form':>12}")
    for n in range(2, args.nmax + 1):
        shape = weyl.BlockShape.build(n, (1,) * n)
        seen = set()
        for _ in range(args.samples):
            g, _ = hodgeflag.sample_generic_g(shape, rng)
            rep = dimcalc.kernel_report(dimcalc.Scenario(shape, 1, g))
            seen.add((rep["d_env"], rep["ker_dim"]))
        for d_env, ker in sorted(seen):
            print(f"{n:>3} {d_env:>6} {ker:>5} {2 ** n - n * (n + 1) // 2 - 1:>12}")


if __name__ == "__main__":
    main()

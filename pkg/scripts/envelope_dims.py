"""Envelope dimensions (circ and full) per block shape over sampled generic g."""
import argparse
import random
from collections import Counter

from fernlab import hodgeflag, parabolic, weyl


def parse_shape(text):
    return tuple(int(x) for x in text.split(","))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("shapes", nargs="*", default=["1,1", "1,2", "1,1,2", "2,2", "1,1,3"],
                    help="block sizes, comma separated")
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for text in args.shapes:
        r = parse_shape(text)
        shape = weyl.BlockShape.build(sum(r), r)
        circ, full = Counter(), Counter()
        for _ in range(args.samples):
            g, _ = hodgeflag.sample_generic_g(shape, rng)
            circ[parabolic.envelope_dim(g, shape, "circ")] += 1
            full[parabolic.envelope_dim(g, shape, "full")] += 1
        n = shape.n
        print(f"r={r}: circ {dict(circ)}  full {dict(full)}  dim b = {n * (n + 1) // 2}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Print the mosaic and loom count tables and the structure constants of a few small products."""

import argparse

from dyloom import counting
from dyloom.algebra import multiply, r_id


def table(title, f, size):
    print(title)
    print("n\\m " + " ".join(f"{m:>10}" for m in range(size + 1)))
    for n in range(size + 1):
        print(f"{n:>3} " + " ".join(f"{f(n, m):>10}" for m in range(size + 1)))
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=6, help="largest n and m in the count tables")
    ap.add_argument("--products", type=int, default=3, help="largest n+m for r_n^id ∘ r_m^id")
    args = ap.parse_args()

    table("mosaics F(n,m)", counting.mosaic_count, args.size)
    table("looms H(n,m)", counting.loom_count, args.size)

    for N in range(2, args.products + 1):
        for n in range(1, N):
            x = multiply(r_id(n), r_id(N - n))
            terms = " ".join(f"{c:+d}*{p}" for p, c in sorted(x.terms.items(), key=lambda t: t[0].images))
            print(f"r_{n}^id ∘ r_{N - n}^id = {terms}")


if __name__ == "__main__":
    main()

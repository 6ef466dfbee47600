#!/usr/bin/env python3
"""Census of homogeneous forms: shifted-curve reducibility, two ways.

Enumerates every nonzero coefficient vector of the given total degrees over
the given primes, classifies each form's shift h - alpha by (a) the
proper-power criterion and (b) the exhaustive divisor search, and tabulates
agreement. Any disagreement is printed immediately (none are expected).
"""

import argparse
import itertools
import sys
import time

from sumprod.field import make_prime
from sumprod.poly import BiPoly, abs_irreducible_shift, factor_oracle


def forms(p, deg):
    monos = [(deg - j, j) for j in range(deg + 1)]
    for vec in itertools.product(range(p), repeat=len(monos)):
        if any(vec):
            yield BiPoly(p, {m: c for m, c in zip(monos, vec) if c})


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="3,5")
    ap.add_argument("--degrees", default="2,3")
    ap.add_argument("--alpha", type=int, default=1)
    ap.add_argument("--dmax", type=int, default=3,
                    help="extension degree ceiling for the search oracle")
    args = ap.parse_args()

    ps = [int(s) for s in args.primes.split(",")]
    degs = [int(s) for s in args.degrees.split(",")]

    grand_total = grand_mismatch = 0
    t0 = time.monotonic()
    print(f"{'p':>4} {'deg':>4} {'forms':>7} {'reducible':>10} {'mismatch':>9}")
    for p in ps:
        prime = make_prime(p)
        alpha = args.alpha % p
        if alpha == 0:
            print(f"skipping p={p}: alpha vanishes mod p", file=sys.stderr)
            continue
        for deg in degs:
            total = reducible = mismatch = 0
            for h in forms(p, deg):
                total += 1
                crit = abs_irreducible_shift(h, alpha)
                orac = not factor_oracle(h.shift_const(alpha), args.dmax)
                if not orac:
                    reducible += 1
                if crit != orac:
                    mismatch += 1
                    print(f"  DISAGREE p={p} {h.to_text()} "
                          f"criterion={crit} oracle={orac}", file=sys.stderr)
            print(f"{p:>4} {deg:>4} {total:>7} {reducible:>10} {mismatch:>9}")
            grand_total += total
            grand_mismatch += mismatch

    print(f"\n{grand_total} forms, {grand_mismatch} disagreements, "
          f"{time.monotonic() - t0:.1f}s")
    return 1 if grand_mismatch else 0


if __name__ == "__main__":
    sys.exit(main())

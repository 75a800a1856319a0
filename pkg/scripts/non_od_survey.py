"""Which S_n inherit a Z_2 x A_n twin with the same order and degree pattern?"""

from __future__ import annotations

import argparse

from primegraph import odpipeline as od
from primegraph.arith import primes_upto
from primegraph.catalog import Alternating, order
from primegraph.graph import degree_pattern
from primegraph.spectra import gk_alternating, gk_symmetric, symmetric_order


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=60)
    args = ap.parse_args()
    for n in range(5, args.max_n + 1):
        gap = n - primes_upto(n)[-1]
        w = od.non_od_witness(symmetric_order(n), degree_pattern(gk_symmetric(n)),
                              order(Alternating(n)), gk_alternating(n), f"A_{n}")
        print(f"n = {n:>3}  n - l_n = {gap}  {w.construction if w else '-'}")


if __name__ == "__main__":
    main()

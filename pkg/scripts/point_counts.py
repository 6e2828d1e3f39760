"""Point counts of composition-series varieties over F_q, fitted as polynomials in q.

For each catalog module and each composition type with a nonzero count the
script prints the fitted polynomial and its value at q = 1.
"""
from __future__ import annotations

import argparse
import itertools

from clusterfold.charfun import DEFAULT_PRIMES, flag_degree_bound, point_count_polynomial
from clusterfold.repcore import CATALOG_IDS, catalog_rep


def types_of(dim):
    letters = [v for v in (1, 2, 3) for _ in range(dim[v - 1])]
    return sorted(set(itertools.permutations(letters)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--modules", nargs="*", default=list(CATALOG_IDS))
    ap.add_argument("--primes", nargs="*", type=int, default=list(DEFAULT_PRIMES))
    args = ap.parse_args()
    for cid in args.modules:
        x = catalog_rep(cid)
        print(f"{cid}  dim {x.dim}  degree bound {flag_degree_bound(x)}")
        for typ in types_of(x.dim):
            poly = point_count_polynomial(x, typ, args.primes)
            if poly.is_zero():
                continue
            chi = poly.evaluate({"q": 1})
            print(f"  type {''.join(map(str, typ))}: {poly}   chi = {chi}")


if __name__ == "__main__":
    main()

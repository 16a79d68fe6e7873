"""Search small algebras for vanishing (2,3)-cohomology.

    python scripts/rigidity_search.py [--even 1 --odd 1] [--values -1 0 1] [--save-first out.json]

Algebras with H = 0 have only trivial deformations. Prints one line per hit
and a summary of the H distribution.
"""

from __future__ import annotations

import argparse
from collections import Counter

from hlysa.cohomology import h23_dims
from hlysa.files import save
from hlysa.search import SearchConfig, small_algebras


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--even", type=int, default=1)
    ap.add_argument("--odd", type=int, default=1)
    ap.add_argument("--values", type=int, nargs="+", default=[-1, 0, 1])
    ap.add_argument("--alpha-values", type=int, nargs="+", default=[-1, 0, 1, 2])
    ap.add_argument("--limit", type=int, default=None)
    ap.add_argument("--save-first", default=None, help="write the first rigid algebra here")
    args = ap.parse_args(argv)
    config = SearchConfig(args.even, args.odd, tuple(args.values), tuple(args.alpha_values), args.limit)

    hist = Counter()
    saved = False
    for A in small_algebras(config):
        dims = h23_dims(A)
        hist[dims.h] += 1
        if dims.h:
            continue
        nonzero = bool(A.c.any() or A.d.any())
        print(f"{A.name}: cochains={dims.cochains} Z={dims.z} B={dims.b} nonzero_brackets={nonzero} "
              f"alpha={[str(A.a[i, i]) for i in range(A.dim)]}")
        if args.save_first and not saved:
            save(A, args.save_first)
            saved = True
    print("H distribution:", dict(sorted(hist.items())))


if __name__ == "__main__":
    main()

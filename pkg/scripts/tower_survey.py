"""Run the derivation tower checks over the fixtures and an exhaustive small search.

    python scripts/tower_survey.py [--kmax 2] [--limit N] [--fixtures-only]

Reports, per claim, how many algebras it was checked on and which ones fail.
"""

from __future__ import annotations

import argparse
from collections import defaultdict

from hlysa import fixtures as F
from hlysa.derivations import check_tower
from hlysa.search import SearchConfig, small_algebras


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=2)
    ap.add_argument("--limit", type=int, default=None)
    ap.add_argument("--fixtures-only", action="store_true")
    args = ap.parse_args(argv)

    algebras = F.corpus() + [F.T1()]
    if not args.fixtures_only:
        algebras += list(small_algebras(SearchConfig(limit=args.limit)))

    checked = defaultdict(int)
    failed = defaultdict(list)
    skipped = defaultdict(int)
    for A in algebras:
        report = check_tower(A, kmax=args.kmax)
        for c in report.claims:
            checked[c.claim] += 1
            if not c.passed:
                failed[c.claim].append(A.name)
        for claim in report.skipped:
            skipped[claim] += 1

    print(f"{len(algebras)} algebras, kmax={args.kmax}")
    for claim in sorted(checked):
        names = failed.get(claim, [])
        status = "ok" if not names else f"FAILS on {len(names)}: {', '.join(names[:8])}"
        print(f"  {claim}: checked {checked[claim]}, {status}")
    for claim, n in sorted(skipped.items()):
        print(f"  {claim}: skipped on {n} (hypothesis not met)")


if __name__ == "__main__":
    main()

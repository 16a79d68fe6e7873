"""Write the canonical fixture files under fixtures/.

    python scripts/make_fixtures.py [--out fixtures]

Everything is seeded, so rerunning reproduces the committed files exactly.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from hlysa import fixtures as F
from hlysa.algebra import HomLYSA
from hlysa.deformation import Deformation, random_formal_iso, transport
from hlysa.files import save
from hlysa.graded import SuperSpace
from hlysa.representation import RepTriple

BROKEN_A1 = HomLYSA.build(1, 1, [(0, 1, 1, 1), (1, 0, 1, 1)], name="A1_broken_skew",
                          description="A1 with [e1, e0] = +e1, breaking super-skewness")

# valid semidirect sum although the printed alpha-twisted module condition fails
A3_MODULE = dict(beta=[[2, 0], [0, 1]], rho=[(0, 0, 0, 1), (1, 0, 1, 1)])

BAD_SCALAR = """{
  "format": "hlysa-algebra",
  "version": 1,
  "name": "bad_scalar",
  "description": "alpha has a zero denominator",
  "even_dim": 1,
  "odd_dim": 1,
  "alpha": [["1/0", "0"], ["0", "1"]],
  "bracket2": [],
  "bracket3": []
}
"""


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="fixtures")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for name in ("A0", "A1", "A2", "A3", "T1"):
        save(F.by_name(name), out / f"{name}.json")
    save(BROKEN_A1, out / "A1_broken_skew.json")
    (out / "bad_scalar.json").write_text(BAD_SCALAR, encoding="utf-8")

    L = SuperSpace(1, 1)
    save(RepTriple.zero(L, SuperSpace(1, 1)), out / "rep_zero_1_1.json")
    save(RepTriple.from_entries(L, SuperSpace(1, 1), **A3_MODULE), out / "rep_A3_twisted.json")

    A0, A1 = F.A0(), F.A1()
    save(Deformation.from_arrays(A0, [A1.c, np.zeros((2,) * 3, dtype=object), np.zeros((2,) * 3, dtype=object)],
                                 [np.zeros((2,) * 4, dtype=object)] * 3),
         out / "deform_A0_to_A1.json")

    rng = np.random.default_rng(args.seed)
    phi = random_formal_iso(A1, 3, rng)
    save(phi, out / "iso_A1.json")
    save(transport(Deformation.null(A1, 3), phi), out / "deform_A1_coboundary.json")
    save(Deformation.null(A1, 3), out / "deform_A1_null.json")


if __name__ == "__main__":
    main()

"""Command-line front end.

Exit codes: 0 success, 1 a mathematical failure (axioms, module conditions,
tower claims, round-trip disagreement), 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import files
from .algebra import HomLYSA, classify_degenerate, verify_axioms
from .cohomology import CoboundaryOutsideCocycles, CochainPair, b23_basis, h23_dims, z23_basis
from .deformation import equivalent_infinitesimals, infinitesimal, transport, trivialize, verify_deformation
from .derivations import FAMILIES, ALIASES, canonical_family, center, check_tower, family_basis
from .graded import scalar_str
from .linalg import SubspaceBasis
from .representation import (RandomRepConfig, Split, SplitIncompatible, extract_rep, rep_corpus,
                             semidirect_sum, verify_representation)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Done(Exception):
    def __init__(self, code: int):
        self.code = code


# ---------------------------------------------------------------------------
# output


def _human(doc, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                sub = _human(v, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(doc)}")
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def emit(doc: dict, fmt: str, out) -> None:
    if fmt == "machine":
        out.write(files.render(doc))
    else:
        out.write("\n".join(_human(doc)) + "\n")


# ---------------------------------------------------------------------------
# helpers


def _load(path, kind, **kw):
    try:
        return files.load(path, kind, **kw)
    except files.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise _Done(EXIT_INPUT)


def _algebra_doc(A: HomLYSA) -> dict:
    return {"name": A.name, "space": str(A.space)}


def _require_valid(A: HomLYSA, args, command: str) -> None:
    report = verify_axioms(A)
    if not report.passed:
        doc = {"command": command, "algebra": _algebra_doc(A), "error": "axioms fail",
               "verify": report.as_dict()}
        emit(doc, args.format, args.out)
        raise _Done(EXIT_FAIL)


def _entries(t) -> list:
    return [list(e[:-1]) + [scalar_str(e[-1])] for e in t.entries()]


def _pair_doc(pair: CochainPair) -> dict:
    return {"f": _entries(pair.f), "g": _entries(pair.g)}


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    A = _load(args.algebra, "algebra")
    report = verify_axioms(A)
    doc = {"command": "verify", "algebra": _algebra_doc(A), "degenerate": sorted(classify_degenerate(A)),
           **report.as_dict()}
    emit(doc, args.format, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_derivations(args) -> int:
    A = _load(args.algebra, "algebra")
    if args.k < 0 or args.kmax < 0:
        print("error: --k and --kmax must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    _require_valid(A, args, "derivations")
    family = canonical_family(args.family)
    parities = (0, 1) if args.parity == "both" else (int(args.parity),)
    bases = {str(s): family_basis(A, family, args.k, s) for s in parities}
    doc = {"command": "derivations", "algebra": _algebra_doc(A), "family": family, "k": args.k,
           "dims": {s: b.dim for s, b in bases.items()},
           "bases": {s: b.as_dict() for s, b in bases.items()}}
    code = EXIT_OK
    if args.check_tower:
        tower = check_tower(A, args.kmax)
        doc["tower"] = tower.as_dict()
        if not tower.passed:
            code = EXIT_FAIL
    emit(doc, args.format, args.out)
    return code


def _h_representatives(A: HomLYSA) -> list:
    Z, B = z23_basis(A), b23_basis(A)
    reps, acc = [], B
    for v in Z.vectors:
        if not acc.contains(v):
            reps.append(_pair_doc(CochainPair.from_vector(A.space, v)))
            acc = acc.sum(SubspaceBasis.span([v], Z.ambient))
    return reps


def cmd_cohomology(args) -> int:
    A = _load(args.algebra, "algebra")
    _require_valid(A, args, "cohomology")
    try:
        dims = h23_dims(A)
    except CoboundaryOutsideCocycles as exc:
        emit({"command": "cohomology", "algebra": _algebra_doc(A), "error": str(exc)}, args.format, args.out)
        return EXIT_FAIL
    doc = {"command": "cohomology", "algebra": _algebra_doc(A), "degree": "(2,3)", **dims.as_dict(),
           "rigid_to_first_order": dims.h == 0, "representatives": _h_representatives(A)}
    emit(doc, args.format, args.out)
    return EXIT_OK


def _round_trip(A: HomLYSA, R) -> dict:
    rep = verify_representation(A, R)
    S = semidirect_sum(A, R)
    total = verify_axioms(S)
    out = {"rep_passed": rep.passed, "sum_passed": total.passed, "agree": rep.passed == total.passed}
    if total.passed:
        try:
            out["extract_round_trip"] = extract_rep(S, Split.canonical(A.space, R.module_space)) == R
        except SplitIncompatible:
            out["extract_round_trip"] = False
    return out


def cmd_rep(args) -> int:
    A = _load(args.algebra, "algebra")
    if args.random is None and args.rep is None:
        print("error: give a representation file or --random N", file=sys.stderr)
        return EXIT_INPUT
    if args.random is not None and args.random < 1:
        print("error: --random needs a positive count", file=sys.stderr)
        return EXIT_INPUT
    _require_valid(A, args, "rep")
    if args.rep is not None:
        R = _load(args.rep, "rep", base=A.space)
        report = verify_representation(A, R)
        doc = {"command": "rep", "algebra": _algebra_doc(A), "module": str(R.module_space),
               **report.as_dict(), "semidirect_sum": _round_trip(A, R)}
        emit(doc, args.format, args.out)
        return EXIT_OK if report.passed else EXIT_FAIL
    config = replace(RandomRepConfig(), seed=args.seed, count=args.random)
    pairs = rep_corpus([A], config)[: args.random]
    rows = [_round_trip(A, R) for _, R in pairs]
    disagreements = [k for k, r in enumerate(rows) if not r["agree"]]
    broken = [k for k, r in enumerate(rows) if r.get("extract_round_trip") is False]
    doc = {"command": "rep", "algebra": _algebra_doc(A), "seed": args.seed, "samples": len(rows),
           "valid": sum(r["rep_passed"] for r in rows), "sum_valid": sum(r["sum_passed"] for r in rows),
           "disagreements": disagreements, "extract_failures": broken}
    emit(doc, args.format, args.out)
    return EXIT_OK if not disagreements and not broken else EXIT_FAIL


def cmd_deform(args) -> int:
    D = _load(args.deformation, "deformation")
    _require_valid(D.base, args, f"deform {args.action}")
    head = {"command": f"deform {args.action}", "algebra": _algebra_doc(D.base), "order": D.order}
    report = verify_deformation(D)
    if args.action == "verify":
        doc = {**head, **report.as_dict()}
        if report.passed:
            doc["infinitesimal"] = _pair_doc(infinitesimal(D))
        emit(doc, args.format, args.out)
        return EXIT_OK if report.passed else EXIT_FAIL
    if not report.passed:
        emit({**head, "error": "not a deformation", "verify": report.as_dict()}, args.format, args.out)
        return EXIT_FAIL
    if args.action == "trivialize":
        emit({**head, **trivialize(D).as_dict()}, args.format, args.out)
        return EXIT_OK
    # compare
    if (args.other is None) == (args.iso is None):
        print("error: compare needs exactly one of a second deformation or --iso", file=sys.stderr)
        return EXIT_INPUT
    if args.iso is not None:
        phi = _load(args.iso, "iso")
        if phi.space != D.base.space or phi.order < D.order:
            print("error: iso does not match the deformation", file=sys.stderr)
            return EXIT_INPUT
        try:
            other = transport(D, phi)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        head["against"] = "transport by iso"
    else:
        other = _load(args.other, "deformation")
        if other.base.space != D.base.space or other.base.c.tolist() != D.base.c.tolist() \
                or other.base.d.tolist() != D.base.d.tolist() or other.base.a.tolist() != D.base.a.tolist():
            print("error: the two deformations have different bases", file=sys.stderr)
            return EXIT_INPUT
        other_report = verify_deformation(other)
        if not other_report.passed:
            emit({**head, "error": "second input is not a deformation", "verify": other_report.as_dict()},
                 args.format, args.out)
            return EXIT_FAIL
        head["against"] = "second deformation"
    doc = {**head, "equivalent_infinitesimals": equivalent_infinitesimals(D, other),
           "first": _pair_doc(infinitesimal(D)), "second": _pair_doc(infinitesimal(other))}
    emit(doc, args.format, args.out)
    return EXIT_OK


def cmd_center(args) -> int:
    A = _load(args.algebra, "algebra")
    _require_valid(A, args, "center")
    Z = center(A, first_slot_only=args.first_slot_only)
    doc = {"command": "center", "algebra": _algebra_doc(A), "reading": Z.reading, "dim": Z.dim,
           "basis": [[scalar_str(x) for x in v] for v in Z.basis.vectors]}
    emit(doc, args.format, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    parser = argparse.ArgumentParser(prog="hlysa", description="Exact computations on Hom-Lie-Yamaguti superalgebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the defining axioms")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derivations", parents=[common], help="solve a derivation-like family")
    p.add_argument("algebra")
    p.add_argument("--family", default="der", choices=FAMILIES + tuple(ALIASES))
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--parity", choices=("0", "1", "both"), default="both")
    p.add_argument("--check-tower", action="store_true")
    p.add_argument("--kmax", type=int, default=2)
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("cohomology", parents=[common], help="(2,3)-cohomology dimensions")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("rep", parents=[common], help="check a representation or survey random candidates")
    p.add_argument("algebra")
    p.add_argument("rep", nargs="?")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("deform", parents=[common], help="formal deformations")
    p.add_argument("action", choices=("verify", "trivialize", "compare"))
    p.add_argument("deformation")
    p.add_argument("other", nargs="?", help="second deformation (compare)")
    p.add_argument("--iso", help="formal iso file (compare against the transported deformation)")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("center", parents=[common], help="the center")
    p.add_argument("algebra")
    p.add_argument("--first-slot-only", action="store_true")
    p.set_defaults(func=cmd_center)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    args.out = out if out is not None else sys.stdout
    try:
        return args.func(args)
    except _Done as done:
        return done.code


if __name__ == "__main__":
    sys.exit(main())

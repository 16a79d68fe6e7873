"""Derivation-like operator families and the closure theorems relating them.

Each family is the solution space of a linear system in the unknown maps
(D and, for generalized/quasi derivations, the witness maps). Maps are
coordinatized row-major: entry [m, i] of D sits at m*n + i. Every map,
witnesses included, is required to be homogeneous of the requested parity
and to commute with alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import HomLYSA
from .graded import GradedMap, exact_array, sign_array, super_commutator
from .linalg import SubspaceBasis, nullspace, rows_from_forms, solve, unknowns

FAMILIES = ("der", "gder", "qder", "centroid", "qcentroid", "zder")
ALIASES = {"c": "centroid", "qc": "qcentroid"}
WITNESS_COUNT = {"der": 0, "gder": 3, "qder": 2, "centroid": 0, "qcentroid": 0, "zder": 0}

# readings applied where the printed definitions are garbled
NORMALIZATIONS = (
    "centroid chains: the last ternary slot map is applied to z",
    "central derivations: the second condition uses the ternary bracket",
    "central derivations: graded pieces are central derivations, not all derivations",
    "every family (and every witness map) commutes with alpha",
)


def canonical_family(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}")
    return name


def _es(spec, *ops):
    return np.einsum(spec, *ops, optimize=True)


class _Terms:
    """The bracket expressions the definitions are built from, for one (A, k, s)."""

    def __init__(self, A: HomLYSA, k: int, s: int):
        self.c, self.d = A.c, A.d
        ak = np.identity(A.dim, dtype=np.int64).astype(object)
        for _ in range(k):
            ak = ak.dot(A.a)
        self.ak = ak
        S = A.space
        sx2 = sign_array(S, 2, lambda x, y: s * x)
        sx3 = sign_array(S, 3, lambda x, y, z: s * x)
        sxy3 = sign_array(S, 3, lambda x, y, z: s * (x + y))
        self.sx2, self.sx3, self.sxy3 = sx2, sx3, sxy3

    @staticmethod
    def _sg(sign, t):
        return sign.reshape(sign.shape + (1,) * (t.ndim - sign.ndim)) * t

    # binary: [M x, a^k y], [a^k x, M y], M [x, y]
    def b1(self, M):
        return _es("px...,qy,pqm->xym...", M, self.ak, self.c)

    def b2(self, M):
        return self._sg(self.sx2, _es("px,qy...,pqm->xym...", self.ak, M, self.c))

    def bo(self, M):
        return _es("xyp,mp...->xym...", self.c, M)

    # ternary: {M x, ., .}, sign * {., M y, .}, sign * {., ., M z}, M {x, y, z}
    def t1(self, M):
        return _es("px...,qy,rz,pqrm->xyzm...", M, self.ak, self.ak, self.d)

    def t2(self, M):
        return self._sg(self.sx3, _es("px,qy...,rz,pqrm->xyzm...", self.ak, M, self.ak, self.d))

    def t3(self, M):
        return self._sg(self.sxy3, _es("px,qy,rz...,pqrm->xyzm...", self.ak, self.ak, M, self.d))

    def to(self, M):
        return _es("xyzp,mp...->xyzm...", self.d, M)


def family_residuals(A: HomLYSA, family: str, k: int, s: int, maps) -> dict[str, np.ndarray]:
    """Residual tensors of a family's defining equations.

    ``maps`` is (D, *witnesses); each entry is a matrix, possibly carrying a
    trailing batch axis of unknowns.
    """
    family = canonical_family(family)
    T = _Terms(A, k, s)
    D = maps[0]
    if family == "der":
        return {"binary": T.bo(D) - T.b2(D) - T.b1(D),
                "ternary": T.to(D) - T.t1(D) - T.t2(D) - T.t3(D)}
    if family == "gder":
        D1, D2, D3 = maps[1:]
        return {"binary": T.b1(D) + T.b2(D1) - T.bo(D2),
                "ternary": T.t1(D) + T.t2(D1) + T.t3(D2) - T.to(D3)}
    if family == "qder":
        D1, D2 = maps[1:]
        return {"binary": T.b1(D) + T.b2(D) - T.bo(D1),
                "ternary": T.t1(D) + T.t2(D) + T.t3(D) - T.to(D2)}
    if family == "centroid":
        return {"binary.slide": T.b1(D) - T.b2(D), "binary.image": T.b2(D) - T.bo(D),
                "ternary.slide12": T.t1(D) - T.t2(D), "ternary.slide23": T.t2(D) - T.t3(D),
                "ternary.image": T.t3(D) - T.to(D)}
    if family == "qcentroid":
        return {"binary.slide": T.b1(D) - T.b2(D),
                "ternary.slide12": T.t1(D) - T.t2(D), "ternary.slide23": T.t2(D) - T.t3(D)}
    return {"binary.image": T.bo(D), "binary.output": T.b1(D),
            "ternary.image": T.to(D), "ternary.output": T.t1(D)}


def _map_constraints(A: HomLYSA, s: int, M: np.ndarray, offset: int) -> list:
    n = A.dim
    rows = [{offset + m * n + i: 1} for m in range(n) for i in range(n)
            if (A.space.parity(m) + A.space.parity(i) + s) % 2]
    rows.extend(rows_from_forms(_es("mp...,pi->mi...", M, A.a) - _es("mp,pi...->mi...", A.a, M)))
    return rows


def _matrix(A: HomLYSA, flat, s: int) -> GradedMap:
    n = A.dim
    return GradedMap(A.space, exact_array(list(flat)).reshape(n, n), s)


@dataclass(frozen=True)
class OperatorFamilyBasis:
    family: str
    k: int
    parity: int
    maps: tuple
    witnesses: tuple
    span: SubspaceBasis

    @property
    def dim(self) -> int:
        return len(self.maps)

    def as_dict(self) -> dict:
        from .graded import scalar_str

        def mat(g):
            return [[scalar_str(v) for v in row] for row in g.matrix.tolist()]

        out = {"family": self.family, "k": self.k, "parity": self.parity, "dim": self.dim,
               "basis": [mat(g) for g in self.maps]}
        if WITNESS_COUNT[self.family]:
            out["witnesses"] = [[mat(w) for w in ws] for ws in self.witnesses]
        return out


def family_basis(A: HomLYSA, family: str, k: int, s: int) -> OperatorFamilyBasis:
    family = canonical_family(family)
    if k < 0:
        raise ValueError("k must be nonnegative")
    s %= 2
    n = A.dim
    nn = n * n
    r = 1 + WITNESS_COUNT[family]
    U = r * nn
    maps = [unknowns((n, n), U, j * nn) for j in range(r)]
    rows = []
    for j, M in enumerate(maps):
        rows.extend(_map_constraints(A, s, M, j * nn))
    for res in family_residuals(A, family, k, s, maps).values():
        rows.extend(rows_from_forms(res))
    solutions = nullspace(rows, U)
    span = SubspaceBasis.span([v[:nn] for v in solutions.vectors], nn)
    basis, witnesses = [], []
    for v in span.vectors:
        basis.append(_matrix(A, v, s))
        if r > 1:
            fix_rows = rows + [{c: 1} for c in range(nn)]
            rhs = [0] * len(rows) + list(v)
            sol = solve(fix_rows, rhs, U)
            if sol is None:
                raise AssertionError("projected family element has no witnesses")
            witnesses.append(tuple(_matrix(A, sol[j * nn:(j + 1) * nn], s) for j in range(1, r)))
        else:
            witnesses.append(())
    return OperatorFamilyBasis(family, k, s, tuple(basis), tuple(witnesses), span)


def der_basis(A, k, s):
    return family_basis(A, "der", k, s)


def gder_basis(A, k, s):
    return family_basis(A, "gder", k, s)


def qder_basis(A, k, s):
    return family_basis(A, "qder", k, s)


def centroid_basis(A, k, s):
    return family_basis(A, "centroid", k, s)


def qcentroid_basis(A, k, s):
    return family_basis(A, "qcentroid", k, s)


def zder_basis(A, k, s):
    return family_basis(A, "zder", k, s)


def is_member(A: HomLYSA, family: str, k: int, D: GradedMap, witnesses=()) -> bool:
    """Re-substitute a homogeneous map (and its witnesses) into the defining equations."""
    family = canonical_family(family)
    maps = [D.matrix] + [w.matrix for w in witnesses]
    if len(maps) != 1 + WITNESS_COUNT[family]:
        raise ValueError(f"{family} needs {WITNESS_COUNT[family]} witness maps")
    for M in maps:
        if M.dot(A.a).tolist() != A.a.dot(M).tolist():
            return False
    res = family_residuals(A, family, k, D.parity, maps)
    return all(not np.any(t != 0) for t in res.values())


# ---------------------------------------------------------------------------
# center


@dataclass(frozen=True)
class CenterSpace:
    basis: SubspaceBasis
    reading: str

    @property
    def dim(self) -> int:
        return self.basis.dim


def center(A: HomLYSA, first_slot_only: bool = False) -> CenterSpace:
    """x with [x, L] = 0 and {x, L, L} = 0, plus {L, L, x} = 0 unless ``first_slot_only``."""
    n = A.dim
    X = unknowns((n,))
    forms = [_es("x...,xym->ym...", X, A.c), _es("x...,xyzm->yzm...", X, A.d)]
    if not first_slot_only:
        forms.append(_es("x...,yzxm->yzm...", X, A.d))
    rows = []
    for f in forms:
        rows.extend(rows_from_forms(f))
    reading = "first_slot" if first_slot_only else "first_and_third_slot"
    return CenterSpace(nullspace(rows, n).canonical(), reading)


# ---------------------------------------------------------------------------
# tower of closure claims


def alpha_surjective(A: HomLYSA) -> bool:
    from .linalg import rank

    return rank([list(row) for row in A.a.tolist()], A.dim) == A.dim


def _flat(g: GradedMap) -> tuple:
    return tuple(g.matrix.reshape(-1))


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    passed: bool
    checked: int
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"claim": self.claim, "passed": self.passed, "checked": self.checked}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class TowerReport:
    kmax: int
    dims: dict
    claims: tuple
    skipped: tuple = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def failures(self) -> list:
        return [c for c in self.claims if not c.passed]

    def __getitem__(self, claim: str) -> ClaimResult:
        for c in self.claims:
            if c.claim == claim:
                return c
        raise KeyError(claim)

    def as_dict(self) -> dict:
        return {"passed": self.passed, "kmax": self.kmax,
                "dims": {f"{fam}/{k}": list(v) for (fam, k), v in sorted(self.dims.items())},
                "claims": [c.as_dict() for c in self.claims], "skipped": list(self.skipped),
                "normalizations": list(NORMALIZATIONS)}


def _mat_list(g: GradedMap) -> list:
    from .graded import scalar_str

    return [[scalar_str(v) for v in row] for row in g.matrix.tolist()]


class _Tower:
    def __init__(self, A: HomLYSA, kmax: int):
        self.A, self.kmax = A, kmax
        self.fam = {}
        for name in FAMILIES:
            for k in range(kmax + 1):
                self.fam[name, k] = (family_basis(A, name, k, 0), family_basis(A, name, k, 1))

    def elements(self, name, k):
        even, odd = self.fam[name, k]
        return list(even.maps) + list(odd.maps)

    def space(self, name, k) -> SubspaceBasis:
        even, odd = self.fam[name, k]
        return even.span.sum(odd.span)

    def inclusion(self, claim, small: list, big: SubspaceBasis) -> tuple:
        for idx, D in enumerate(small):
            if not big.contains(_flat(D)):
                return False, {"element": _mat_list(D), "index": idx}
        return True, {}

    def closure(self, claim, left, right, target_name, pairs) -> ClaimResult:
        checked = 0
        for k, s in pairs:
            if k + s > self.kmax:
                continue
            target = self.space(target_name, k + s) if isinstance(target_name, str) else target_name(k + s)
            for i, D1 in enumerate(self.elements(left, k)):
                for j, D2 in enumerate(self.elements(right, s)):
                    checked += 1
                    br = super_commutator(D1, D2)
                    if not target.contains(_flat(br)):
                        return ClaimResult(claim, False, checked, {
                            "k": k, "s": s, "left": _mat_list(D1), "right": _mat_list(D2),
                            "commutator": _mat_list(br)})
        return ClaimResult(claim, True, checked)


def check_tower(A: HomLYSA, kmax: int = 2) -> TowerReport:
    """Check every inclusion and bracket-closure claim on computed bases for k <= kmax."""
    T = _Tower(A, kmax)
    ks = range(kmax + 1)
    pairs = [(k, s) for k in ks for s in ks]
    claims = []

    claims.append(T.closure("[Der_k, Der_s] in Der_k+s", "der", "der", "der", pairs))
    claims.append(T.closure("[ZDer_k, Der_s] in ZDer_k+s", "zder", "der", "zder", pairs))
    for name in ("gder", "qder", "centroid"):
        claims.append(T.closure(f"[{name}_k, {name}_s] in {name}_k+s", name, name, name, pairs))
    claims.append(T.closure("[Der_k, C_s] in C_k+s", "der", "centroid", "centroid", pairs))
    claims.append(T.closure("[QDer_k, QC_s] in QC_k+s", "qder", "qcentroid", "qcentroid", pairs))
    claims.append(T.closure("[QC_k, QC_s] in QDer_k+s", "qcentroid", "qcentroid", "qder", pairs))

    for small, big, label in (("centroid", "qcentroid", "C_k in QC_k"),
                              ("zder", "der", "ZDer_k in Der_k"),
                              ("der", "qder", "Der_k in QDer_k"),
                              ("qder", "gder", "QDer_k in GDer_k"),
                              ("centroid", "qder", "C_k in QDer_k")):
        ok, detail, checked = True, {}, 0
        for k in ks:
            elems = T.elements(small, k)
            checked += len(elems)
            ok, detail = T.inclusion(label, elems, T.space(big, k))
            if not ok:
                detail["k"] = k
                break
        claims.append(ClaimResult(label, ok, checked, detail))

    # QDer_k + QC_k inside GDer_k
    ok, detail, checked = True, {}, 0
    for k in ks:
        summed = T.space("qder", k).sum(T.space("qcentroid", k))
        checked += summed.dim
        vecs = [_matrix(A, v, _parity_of(A, v)) for v in summed.vectors]
        ok, detail = T.inclusion("", vecs, T.space("gder", k))
        if not ok:
            detail["k"] = k
            break
    claims.append(ClaimResult("QDer_k + QC_k in GDer_k", ok, checked, detail))

    # W_k = QC_k + sum_{i+j=k} [QC_i, QC_j]: inside GDer_k and closed under brackets
    W = {}
    for k in ks:
        vecs = [_flat(D) for D in T.elements("qcentroid", k)]
        for i in range(k + 1):
            for D1 in T.elements("qcentroid", i):
                for D2 in T.elements("qcentroid", k - i):
                    vecs.append(_flat(super_commutator(D1, D2)))
        W[k] = SubspaceBasis.span(vecs, A.dim ** 2)
    ok, detail, checked = True, {}, 0
    for k in ks:
        checked += W[k].dim
        elems = [_matrix(A, v, _parity_of(A, v)) for v in W[k].vectors]
        ok, detail = T.inclusion("", elems, T.space("gder", k))
        if not ok:
            detail["k"] = k
            break
    claims.append(ClaimResult("QC + [QC, QC] in GDer", ok, checked, detail))
    ok, detail, checked = True, {}, 0
    for k, s in pairs:
        if k + s > kmax or not ok:
            continue
        for v1 in W[k].vectors:
            for v2 in W[s].vectors:
                checked += 1
                br = _bracket_mixed(A, v1, v2)
                if not W[k + s].contains(br):
                    ok, detail = False, {"k": k, "s": s}
                    break
            if not ok:
                break
    claims.append(ClaimResult("QC + [QC, QC] closed under brackets", ok, checked, detail))

    skipped = []
    if alpha_surjective(A):
        Z = center(A).basis
        ok, detail, checked = True, {}, 0
        for k in ks:
            for s in ks:
                for D1 in T.elements("centroid", k):
                    for D2 in T.elements("qcentroid", s):
                        checked += 1
                        br = super_commutator(D1, D2)
                        cols = [tuple(br.matrix[:, j]) for j in range(A.dim)]
                        bad = Z.contains_all(cols)
                        if bad is not None or (Z.dim == 0 and not br.is_zero()):
                            ok = False
                            detail = {"k": k, "s": s, "left": _mat_list(D1), "right": _mat_list(D2),
                                      "commutator": _mat_list(br), "center_dim": Z.dim}
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        claims.append(ClaimResult("[C, QC] maps into the center", ok, checked, detail))
    else:
        skipped.append("[C, QC] maps into the center (alpha not surjective)")

    dims = {(name, k): (T.fam[name, k][0].dim, T.fam[name, k][1].dim) for name in FAMILIES for k in ks}
    return TowerReport(kmax, dims, tuple(claims), tuple(skipped))


def _parity_of(A: HomLYSA, v) -> int:
    """Parity of a homogeneous flattened map (0 for the zero map)."""
    n = A.dim
    M = exact_array(list(v)).reshape(n, n)
    p = A.space.parities
    odd = (p[:, None] + p[None, :]) % 2 == 1
    has_odd, has_even = bool(np.any(M[odd] != 0)), bool(np.any(M[~odd] != 0))
    if has_odd and has_even:
        raise ValueError("map is not homogeneous")
    return int(has_odd)


def _split(A: HomLYSA, v) -> list:
    """Homogeneous components of a flattened map."""
    n = A.dim
    M = exact_array(list(v)).reshape(n, n)
    p = A.space.parities
    odd = (p[:, None] + p[None, :]) % 2 == 1
    parts = []
    for par, mask in ((0, ~odd), (1, odd)):
        part = np.where(mask, M, 0).astype(object)
        if np.any(part != 0):
            parts.append(GradedMap(A.space, part, par))
    return parts


def _bracket_mixed(A: HomLYSA, v1, v2) -> tuple:
    """Super-commutator extended bilinearly to possibly inhomogeneous maps."""
    n = A.dim
    total = np.zeros((n, n), dtype=object)
    for a in _split(A, v1):
        for b in _split(A, v2):
            total = total + super_commutator(a, b).matrix
    return tuple(total.reshape(-1))

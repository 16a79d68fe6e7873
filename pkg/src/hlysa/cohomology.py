"""Degree (1) -> (2,3) cohomology with adjoint coefficients.

A 2,3-cochain is a pair (f, g) of even L-valued maps, super-skew in the
leading pair and alpha-equivariant. Cochain pairs are coordinatized by the
flattened structure constants of f followed by those of g, so subspaces of
cochains are ``SubspaceBasis`` objects of ambient dimension n^3 + n^4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import identities as ids
from .algebra import HomLYSA, Violation, summarize
from .graded import GradedMap, MultiTensor, SuperSpace, exact_array, normalize, parity_mask
from .linalg import NotASubspace, SubspaceBasis, basis_forms, nullspace, rows_from_forms, solve, unknowns


@dataclass(frozen=True, eq=False)
class CochainPair:
    f: MultiTensor
    g: MultiTensor

    def __post_init__(self):
        if self.f.arity != 2 or self.g.arity != 3:
            raise ValueError("expected a bilinear f and a trilinear g")
        if self.f.space != self.g.space:
            raise ValueError("f and g live on different spaces")
        if self.f.parity or self.g.parity:
            raise ValueError("cochains are even maps")

    @property
    def space(self) -> SuperSpace:
        return self.f.space

    @classmethod
    def zero(cls, space: SuperSpace) -> "CochainPair":
        return cls(MultiTensor.zero(space, 2), MultiTensor.zero(space, 3))

    @classmethod
    def from_vector(cls, space: SuperSpace, v) -> "CochainPair":
        n = space.dim
        v = exact_array(list(v))
        return cls(MultiTensor(space, v[: n ** 3].reshape((n,) * 3)),
                   MultiTensor(space, v[n ** 3:].reshape((n,) * 4)))

    def vector(self) -> tuple:
        return tuple(self.f.coeffs.reshape(-1)) + tuple(self.g.coeffs.reshape(-1))

    def __add__(self, other):
        return CochainPair(self.f + other.f, self.g + other.g)

    def __sub__(self, other):
        return CochainPair(self.f - other.f, self.g - other.g)

    def scale(self, c):
        return CochainPair(self.f.scale(c), self.g.scale(c))

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CochainPair):
            return NotImplemented
        return self.f == other.f and self.g == other.g


def ambient_dim(space: SuperSpace) -> int:
    return space.dim ** 3 + space.dim ** 4


# ---------------------------------------------------------------------------
# cochain conditions


def _cochain_conditions(A: HomLYSA, f: np.ndarray, g: np.ndarray) -> dict[str, np.ndarray]:
    return {
        "f.skew": ids.super_skew(A.space, f),
        "g.skew": ids.super_skew(A.space, g),
        "f.equivariance": ids.equivariance(f, A.a, 2),
        "g.equivariance": ids.equivariance(g, A.a, 3),
    }


def is_cochain(pair: CochainPair, A: HomLYSA) -> tuple[bool, Violation | None]:
    """Super-skewness in the leading pair and alpha-equivariance, with a witness."""
    for name, res in _cochain_conditions(A, pair.f.coeffs, pair.g.coeffs).items():
        v = summarize(name, res)
        if not v.passed:
            return False, v
    return True, None


def literal_alternation(pair: CochainPair) -> Violation:
    """Diagnostic: f(x, x) = 0 and g(x, x, y) = 0 on even basis vectors x."""
    S = pair.space
    evens = range(S.even_dim)
    for i in evens:
        if np.any(pair.f.coeffs[i, i] != 0):
            return Violation("literal_alternation", False, (i, i), tuple(pair.f.coeffs[i, i]), 1)
        for j in range(S.dim):
            if np.any(pair.g.coeffs[i, i, j] != 0):
                return Violation("literal_alternation", False, (i, i, j), tuple(pair.g.coeffs[i, i, j]), 1)
    return Violation("literal_alternation", True)


def cochain_space(A: HomLYSA) -> SubspaceBasis:
    """All cochain pairs on A, as a subspace of the flattened (f, g) coordinates."""
    n = A.dim
    N = ambient_dim(A.space)
    F = unknowns((n,) * 3, N)
    G = unknowns((n,) * 4, N, n ** 3)
    rows = []
    for arity, start in ((2, 0), (3, n ** 3)):
        forbidden = np.argwhere(~parity_mask(A.space, arity))
        for idx in forbidden:
            rows.append({start + int(np.ravel_multi_index(tuple(idx), (n,) * (arity + 1))): 1})
    for res in _cochain_conditions(A, F, G).values():
        rows.extend(rows_from_forms(res))
    return nullspace(rows, N)


# ---------------------------------------------------------------------------
# coboundary and cocycle operators


def _delta1_raw(p: np.ndarray, c: np.ndarray, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    es = ids._es
    f = (es("px...,pym->xym...", p, c) + es("py...,xpm->xym...", p, c)
         - es("mp...,xyp->xym...", p, c))
    g = (es("px...,pyzm->xyzm...", p, d) + es("py...,xpzm->xyzm...", p, d)
         + es("pz...,xypm->xyzm...", p, d) - es("mp...,xyzp->xyzm...", p, d))
    return f, g


def _check_one_cochain(phi: GradedMap, A: HomLYSA):
    if phi.space != A.space or not phi.is_endomorphism:
        raise ValueError("phi must be an endomorphism of L")
    if phi.parity != 0 and not phi.is_zero():
        raise ValueError("1-cochains are even maps")
    if np.any(phi.matrix.dot(A.a) != A.a.dot(phi.matrix)):
        raise ValueError("1-cochains must commute with alpha")


def delta1(phi: GradedMap, A: HomLYSA) -> CochainPair:
    """(delta_I phi, delta_II phi): the derivation defect of phi on both brackets."""
    _check_one_cochain(phi, A)
    f, g = _delta1_raw(phi.matrix, A.c, A.d)
    return CochainPair(MultiTensor(A.space, normalize(f)), MultiTensor(A.space, normalize(g)))


def one_cochain_basis(A: HomLYSA) -> SubspaceBasis:
    """Even maps commuting with alpha, flattened row-major (entry [m, i] at m*n + i)."""
    n = A.dim
    P = unknowns((n, n))
    rows = [{m * n + i: 1} for m in range(n) for i in range(n) if A.space.parity(m) != A.space.parity(i)]
    rows.extend(rows_from_forms(ids._es("mp...,pi->mi...", P, A.a) - ids._es("mp,pi...->mi...", A.a, P)))
    return nullspace(rows, n * n)


def map_from_vector(space: SuperSpace, v) -> GradedMap:
    n = space.dim
    return GradedMap(space, exact_array(list(v)).reshape(n, n), 0)


@dataclass(frozen=True)
class CocycleResidual:
    E1: np.ndarray
    E2: np.ndarray
    E3: np.ndarray
    E4: np.ndarray

    def violations(self) -> list[Violation]:
        return [summarize(name, getattr(self, name)) for name in ("E1", "E2", "E3", "E4")]

    def is_zero(self) -> bool:
        return all(v.passed for v in self.violations())


def _cocycle_tensors(A: HomLYSA, f: np.ndarray, g: np.ndarray) -> tuple:
    S, a = A.space, A.a
    fs, gs = [A.c, f], [A.d, g]
    return (ids.cyclic_identity(S, a, fs, gs, 1), ids.cyclic_ternary_identity(S, a, fs, gs, 1),
            ids.mixed_identity(S, a, fs, gs, 1), ids.ternary_identity(S, a, fs, gs, 1))


def cocycle_residual(pair: CochainPair, A: HomLYSA) -> CocycleResidual:
    return CocycleResidual(*(normalize(t) for t in _cocycle_tensors(A, pair.f.coeffs, pair.g.coeffs)))


# ---------------------------------------------------------------------------
# Z, B, H


def z23_basis(A: HomLYSA) -> SubspaceBasis:
    n = A.dim
    C = cochain_space(A)
    if C.dim == 0:
        return C
    F = basis_forms(C, (n,) * 3)
    G = basis_forms(C, (n,) * 4, n ** 3)
    rows = []
    for t in _cocycle_tensors(A, F, G):
        rows.extend(rows_from_forms(t))
    kernel = nullspace(rows, C.dim)
    vecs = []
    for coeffs in kernel.vectors:
        vecs.append(tuple(sum(coeffs[k] * C.vectors[k][i] for k in range(C.dim)) for i in range(C.ambient)))
    return SubspaceBasis.span(vecs, C.ambient)


def b23_basis(A: HomLYSA) -> SubspaceBasis:
    images = [delta1(map_from_vector(A.space, v), A).vector() for v in one_cochain_basis(A).vectors]
    return SubspaceBasis.span(images, ambient_dim(A.space))


@dataclass(frozen=True)
class CohomologyDims:
    cochains: int
    z: int
    b: int

    @property
    def h(self) -> int:
        return self.z - self.b

    def as_dict(self) -> dict:
        return {"cochains": self.cochains, "Z": self.z, "B": self.b, "H": self.h}


class CoboundaryOutsideCocycles(RuntimeError):
    """B is not inside Z: the operators are inconsistent (an internal error)."""


def h23_dims(A: HomLYSA) -> CohomologyDims:
    Z, B = z23_basis(A), b23_basis(A)
    try:
        Z.quotient_dim(B)
    except NotASubspace as exc:
        raise CoboundaryOutsideCocycles(f"coboundary {exc.witness} is not a cocycle") from exc
    return CohomologyDims(cochain_space(A).dim, Z.dim, B.dim)


def coboundary_preimage(pair: CochainPair, A: HomLYSA) -> GradedMap | None:
    """Some 1-cochain h with delta1(h) = pair, or None if pair is not a coboundary.

    Among all preimages, the one with every free coordinate zero is returned.
    """
    n = A.dim
    P = unknowns((n, n))
    f, g = _delta1_raw(P, A.c, A.d)
    forms = np.concatenate([f.reshape(-1, n * n), g.reshape(-1, n * n)])
    target = pair.vector()
    rows, rhs = [], []
    for line, b in zip(forms, target):
        rows.append({int(c): line[c] for c in np.nonzero(line != 0)[0]})
        rhs.append(b)
    # 1-cochain constraints
    for m in range(n):
        for i in range(n):
            if A.space.parity(m) != A.space.parity(i):
                rows.append({m * n + i: 1})
                rhs.append(0)
    comm = ids._es("mp...,pi->mi...", P, A.a) - ids._es("mp,pi...->mi...", A.a, P)
    for r in rows_from_forms(comm):
        rows.append(r)
        rhs.append(0)
    x = solve(rows, rhs, n * n)
    return None if x is None else map_from_vector(A.space, x)


def is_coboundary(pair: CochainPair, A: HomLYSA) -> bool:
    return coboundary_preimage(pair, A) is not None

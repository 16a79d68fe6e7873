"""Truncated one-parameter formal deformations.

A deformation of order N stores f_1..f_N and g_1..g_N; f_0, g_0 are the base
brackets and everything lives modulo t^(N+1). Order-n deformation equations
are the t^n coefficients of the axioms for (f_t, g_t, alpha), so they are
labelled by the axiom they come from.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import identities as ids
from .algebra import AXIOMS, HomLYSA, Violation, summarize
from .cohomology import (CochainPair, b23_basis, coboundary_preimage, cocycle_residual, is_cochain,
                         literal_alternation, map_from_vector, one_cochain_basis)
from .graded import GradedMap, MultiTensor, SuperSpace, normalize, scalar_str


@dataclass(frozen=True, eq=False)
class Deformation:
    base: HomLYSA
    f: tuple
    g: tuple

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))
        if len(self.f) != len(self.g) or not self.f:
            raise ValueError("need the same number (>= 1) of binary and ternary coefficients")
        for t, arity in [(t, 2) for t in self.f] + [(t, 3) for t in self.g]:
            if t.space != self.base.space or t.arity != arity or t.parity != 0:
                raise ValueError("coefficients must be even maps on the base space")

    @property
    def order(self) -> int:
        return len(self.f)

    @classmethod
    def null(cls, A: HomLYSA, order: int) -> "Deformation":
        return cls(A, [MultiTensor.zero(A.space, 2)] * order, [MultiTensor.zero(A.space, 3)] * order)

    @classmethod
    def from_arrays(cls, A: HomLYSA, fs, gs) -> "Deformation":
        return cls(A, [MultiTensor(A.space, normalize(np.asarray(x, dtype=object))) for x in fs],
                   [MultiTensor(A.space, normalize(np.asarray(x, dtype=object))) for x in gs])

    def fs(self) -> list:
        """[f_0, f_1, ..., f_N] as arrays."""
        return [self.base.c] + [t.coeffs for t in self.f]

    def gs(self) -> list:
        return [self.base.d] + [t.coeffs for t in self.g]

    def coefficient(self, r: int) -> CochainPair:
        return CochainPair(self.f[r - 1], self.g[r - 1])

    def is_null(self) -> bool:
        return all(t.is_zero() for t in self.f + self.g)

    def __eq__(self, other):
        if not isinstance(other, Deformation):
            return NotImplemented
        return self.base.space == other.base.space and self.f == other.f and self.g == other.g


@dataclass(frozen=True)
class DeformationReport:
    order: int
    results: tuple  # (n, Violation) pairs, n = 0..N, every axiom at every order
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for _, v in self.results)

    @property
    def first_failure(self) -> tuple | None:
        for n, v in self.results:
            if not v.passed:
                return n, v
        return None

    def passed_through(self, n: int) -> bool:
        return all(v.passed for m, v in self.results if m <= n)

    def as_dict(self) -> dict:
        out = {"passed": self.passed, "order": self.order,
               "orders": [{"n": n, **v.as_dict()} for n, v in self.results]}
        fail = self.first_failure
        if fail is not None:
            out["first_failure"] = {"n": fail[0], "equation": fail[1].name, "witness": list(fail[1].witness)}
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out


def deformation_residuals(D: Deformation, n: int) -> dict[str, np.ndarray]:
    """Residuals of the t^n coefficient of every axiom."""
    A = D.base
    S, a = A.space, A.a
    fs, gs = D.fs(), D.gs()
    return {
        "SHLY1": ids.equivariance(fs[n], a, 2),
        "SHLY2": ids.equivariance(gs[n], a, 3),
        "SHLY3": ids.super_skew(S, fs[n]),
        "SHLY4": ids.super_skew(S, gs[n]),
        "SHLY5": ids.cyclic_identity(S, a, fs, gs, n),
        "SHLY6": ids.cyclic_ternary_identity(S, a, fs, gs, n),
        "SHLY7": ids.mixed_identity(S, a, fs, gs, n),
        "SHLY8": ids.ternary_identity(S, a, fs, gs, n),
    }


def verify_deformation(D: Deformation) -> DeformationReport:
    results = []
    for n in range(D.order + 1):
        res = deformation_residuals(D, n)
        results.extend((n, summarize(name, res[name])) for name in AXIOMS)
    literal = {}
    for r in range(1, D.order + 1):
        v = literal_alternation(D.coefficient(r))
        if not v.passed:
            literal[str(r)] = v.as_dict()
    return DeformationReport(D.order, tuple(results), {"literal_alternation": literal} if literal else {})


# ---------------------------------------------------------------------------
# formal isomorphisms


@dataclass(frozen=True, eq=False)
class FormalIso:
    """phi_t = sum_i phi_i t^i truncated at t^N, with phi_0 = id."""

    space: SuperSpace
    phis: tuple

    def __post_init__(self):
        phis = tuple(self.phis)
        object.__setattr__(self, "phis", phis)
        if not phis or phis[0] != GradedMap.identity(self.space):
            raise ValueError("phi_0 must be the identity")
        for p in phis:
            if p.space != self.space or not p.is_endomorphism or (p.parity != 0 and not p.is_zero()):
                raise ValueError("coefficients must be even endomorphisms")

    @property
    def order(self) -> int:
        return len(self.phis) - 1

    @classmethod
    def identity(cls, space: SuperSpace, order: int) -> "FormalIso":
        return cls(space, (GradedMap.identity(space),) + (GradedMap.zero(space),) * order)

    @classmethod
    def monomial(cls, h: GradedMap, r: int, order: int, coefficient=1) -> "FormalIso":
        """id + coefficient * h t^r."""
        phis = [GradedMap.identity(h.space)] + [GradedMap.zero(h.space)] * order
        if r <= order:
            phis[r] = h.scale(coefficient)
        return cls(h.space, tuple(phis))

    def commutes_with(self, alpha: GradedMap) -> bool:
        return all(p @ alpha == alpha @ p for p in self.phis)

    def compose(self, other: "FormalIso") -> "FormalIso":
        """self o other, truncated."""
        N = min(self.order, other.order)
        out = []
        for n in range(N + 1):
            acc = GradedMap.zero(self.space)
            for i in range(n + 1):
                acc = acc + self.phis[i] @ other.phis[n - i]
            out.append(acc)
        return FormalIso(self.space, tuple(out))

    def inverse(self) -> "FormalIso":
        psis = [GradedMap.identity(self.space)]
        for n in range(1, self.order + 1):
            acc = GradedMap.zero(self.space)
            for i in range(1, n + 1):
                acc = acc - self.phis[i] @ psis[n - i]
            psis.append(acc)
        return FormalIso(self.space, tuple(psis))

    def __eq__(self, other):
        if not isinstance(other, FormalIso):
            return NotImplemented
        return self.space == other.space and self.phis == other.phis


def _twist_slot(t: np.ndarray, m: np.ndarray, slot: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(t, m, axes=([slot], [0])), -1, slot)


def _transport_series(ts: list, phis: list, psis: list, arity: int, N: int) -> list:
    cur = ts
    for slot in range(arity):
        cur = [sum(_twist_slot(cur[j], psis[n - j], slot) for j in range(n + 1)) for n in range(N + 1)]
    return [normalize(sum(ids.apply_out(phis[i], cur[n - i], arity) for i in range(n + 1)))
            for n in range(N + 1)]


def transport(D: Deformation, phi: FormalIso) -> Deformation:
    """The deformation f'_t = phi_t o f_t o (phi_t^-1 x phi_t^-1), and likewise for g_t."""
    if phi.order != D.order:
        raise ValueError("orders of deformation and isomorphism differ")
    if phi.space != D.base.space or not phi.commutes_with(D.base.alpha):
        raise ValueError("the formal isomorphism must commute with alpha")
    N = D.order
    phis = [p.matrix for p in phi.phis]
    psis = [p.matrix for p in phi.inverse().phis]
    fs = _transport_series(D.fs(), phis, psis, 2, N)
    gs = _transport_series(D.gs(), phis, psis, 3, N)
    if np.any(fs[0] != D.base.c) or np.any(gs[0] != D.base.d):
        raise AssertionError("transport changed the order-0 brackets")
    return Deformation.from_arrays(D.base, fs[1:], gs[1:])


# ---------------------------------------------------------------------------
# infinitesimals, equivalence, rigidity


class NotACocycle(RuntimeError):
    """Order-1 equations passed but the cocycle operator disagrees (internal error)."""


def infinitesimal(D: Deformation) -> CochainPair:
    """(f_1, g_1), certified to be a cochain and a 2,3-cocycle."""
    pair = D.coefficient(1)
    ok, why = is_cochain(pair, D.base)
    if not ok:
        raise NotACocycle(f"infinitesimal is not a cochain: {why.name} at {why.witness}")
    res = cocycle_residual(pair, D.base)
    if not res.is_zero():
        bad = next(v for v in res.violations() if not v.passed)
        raise NotACocycle(f"infinitesimal fails {bad.name} at {bad.witness}")
    return pair


def equivalent_infinitesimals(D1: Deformation, D2: Deformation) -> bool:
    """Whether the two infinitesimals differ by a coboundary."""
    if D1.base.space != D2.base.space:
        raise ValueError("deformations of different algebras")
    diff = infinitesimal(D1) - infinitesimal(D2)
    return b23_basis(D1.base).contains(diff.vector())


@dataclass(frozen=True)
class ObstructionReport:
    trivializable: bool
    order: int
    obstruction_order: int | None = None
    certificate: CochainPair | None = None
    iso: FormalIso | None = None
    steps: tuple = ()
    certificate_is_cocycle: bool | None = None

    @property
    def status(self) -> str:
        return "trivializable" if self.trivializable else "obstructed"

    def summary(self) -> str:
        if self.trivializable:
            return f"trivializable to order {self.order}"
        return f"obstructed at order {self.obstruction_order}"

    def as_dict(self) -> dict:
        out = {"status": self.status, "order": self.order, "summary": self.summary()}
        if self.trivializable:
            out["iso"] = [[[scalar_str(v) for v in row] for row in p.matrix.tolist()] for p in self.iso.phis]
            out["steps"] = [{"r": r, "h": [[scalar_str(v) for v in row] for row in h.matrix.tolist()]}
                            for r, h in self.steps]
        else:
            cert = self.certificate
            out["obstruction_order"] = self.obstruction_order
            out["certificate"] = {
                "f": [list(e[:-1]) + [scalar_str(e[-1])] for e in cert.f.entries()],
                "g": [list(e[:-1]) + [scalar_str(e[-1])] for e in cert.g.entries()],
                "cocycle": self.certificate_is_cocycle,
                "coboundary": False,
            }
        return out


def trivialize(D: Deformation) -> ObstructionReport:
    """Remove the lowest nonzero order by a coboundary step, repeatedly.

    At order r with (f_r, g_r) = delta1(h), the step transports by the
    inverse of id - h t^r, which cancels order r and leaves lower orders alone.
    The returned iso is the composite of all steps: transporting D by it gives
    the null deformation.
    """
    A, N = D.base, D.order
    total = FormalIso.identity(A.space, N)
    cur = D
    steps = []
    for r in range(1, N + 1):
        pair = cur.coefficient(r)
        if pair.is_zero():
            continue
        h = coboundary_preimage(pair, A)
        if h is None:
            cocycle = cocycle_residual(pair, A).is_zero()
            return ObstructionReport(False, N, r, pair, None, tuple(steps), cocycle)
        step = FormalIso.monomial(h, r, N, -1).inverse()
        cur = transport(cur, step)
        if not cur.coefficient(r).is_zero():
            raise AssertionError(f"step at order {r} did not cancel the coefficient")
        total = step.compose(total)
        steps.append((r, h))
    if not transport(D, total).is_null():
        raise AssertionError("composite iso does not trivialize the deformation")
    return ObstructionReport(True, N, None, None, total, tuple(steps))


# ---------------------------------------------------------------------------
# seeded generators


def random_one_cochain(A: HomLYSA, rng: np.random.Generator, bound: int = 2) -> GradedMap:
    basis = one_cochain_basis(A)
    v = [0] * (A.dim ** 2)
    for b in basis.vectors:
        k = int(rng.integers(-bound, bound + 1))
        v = [x + k * y for x, y in zip(v, b)]
    return map_from_vector(A.space, v)


def random_formal_iso(A: HomLYSA, order: int, rng: np.random.Generator, bound: int = 2) -> FormalIso:
    phis = [GradedMap.identity(A.space)] + [random_one_cochain(A, rng, bound) for _ in range(order)]
    return FormalIso(A.space, tuple(phis))

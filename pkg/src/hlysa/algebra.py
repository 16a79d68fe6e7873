"""Hom-Lie-Yamaguti superalgebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import identities as ids
from .graded import GradedMap, MultiTensor, SuperSpace, normalize, scalar_str

AXIOMS = ("SHLY1", "SHLY2", "SHLY3", "SHLY4", "SHLY5", "SHLY6", "SHLY7", "SHLY8")

# names of the basis-tuple slots each residual is indexed by
AXIOM_SLOTS = {
    "SHLY1": ("x", "y"),
    "SHLY2": ("x", "y", "z"),
    "SHLY3": ("x", "y"),
    "SHLY4": ("x", "y", "z"),
    "SHLY5": ("x", "y", "z"),
    "SHLY6": ("x", "y", "z", "u"),
    "SHLY7": ("x", "y", "u", "v"),
    "SHLY8": ("x", "y", "u", "v", "w"),
}


@dataclass(frozen=True, eq=False)
class HomLYSA:
    """(L, [.,.], {.,.,.}, alpha) on a fixed homogeneous basis of L."""

    space: SuperSpace
    bracket2: MultiTensor
    bracket3: MultiTensor
    alpha: GradedMap
    name: str = ""
    description: str = ""

    def __post_init__(self):
        if self.bracket2.arity != 2 or self.bracket3.arity != 3:
            raise ValueError("bracket2 must be binary and bracket3 ternary")
        for part in (self.bracket2, self.bracket3):
            if part.space != self.space:
                raise ValueError("structure tensors live on a different space")
            if part.parity != 0:
                raise ValueError("brackets must be even maps")
        if self.alpha.space != self.space or not self.alpha.is_endomorphism:
            raise ValueError("alpha must be an endomorphism of L")
        if self.alpha.parity != 0 and not self.alpha.is_zero():
            raise ValueError("alpha must be even")

    @classmethod
    def build(cls, even_dim, odd_dim, bracket2=(), bracket3=(), alpha=None, name="", description=""):
        """Convenience constructor from sparse entries and an optional alpha matrix."""
        space = SuperSpace(even_dim, odd_dim)
        b2 = MultiTensor.from_entries(space, 2, bracket2)
        b3 = MultiTensor.from_entries(space, 3, bracket3)
        a = GradedMap.identity(space) if alpha is None else GradedMap(space, alpha, 0)
        return cls(space, b2, b3, a, name, description)

    @property
    def c(self) -> np.ndarray:
        return self.bracket2.coeffs

    @property
    def d(self) -> np.ndarray:
        return self.bracket3.coeffs

    @property
    def a(self) -> np.ndarray:
        return self.alpha.matrix

    @property
    def dim(self) -> int:
        return self.space.dim

    def with_name(self, name: str) -> "HomLYSA":
        return HomLYSA(self.space, self.bracket2, self.bracket3, self.alpha, name, self.description)


def eval_bracket2(A: HomLYSA, x, y) -> np.ndarray:
    return A.bracket2(x, y)


def eval_bracket3(A: HomLYSA, x, y, z) -> np.ndarray:
    return A.bracket3(x, y, z)


# ---------------------------------------------------------------------------
# axiom checking


@dataclass(frozen=True)
class Violation:
    """One identity's verdict: pass, or the first failing basis tuple."""

    name: str
    passed: bool
    witness: tuple | None = None
    residual: tuple | None = None
    count: int = 0

    def as_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "violations": self.count}
        if not self.passed:
            out["witness"] = list(self.witness)
            out["residual"] = _fmt(self.residual)
        return out


def _fmt(value):
    if isinstance(value, (tuple, list)):
        return [_fmt(v) for v in value]
    return scalar_str(value)


def _nested(arr):
    if isinstance(arr, np.ndarray):
        return tuple(_nested(a) for a in arr) if arr.ndim else arr.item()
    return arr


def summarize(name: str, residual: np.ndarray, out_axes: int = 1) -> Violation:
    """Verdict for a residual tensor whose last ``out_axes`` axes are the value.

    The residual at the witness keeps its shape (a vector, or a matrix for
    operator-valued identities) as nested tuples.
    """
    nz = residual != 0
    if out_axes:
        nz = nz.reshape(nz.shape[: nz.ndim - out_axes] + (-1,)).any(axis=-1)
    bad = np.argwhere(nz)
    if len(bad) == 0:
        return Violation(name, True)
    first = tuple(int(i) for i in bad[0])
    value = normalize(np.asarray(residual[first], dtype=object))
    return Violation(name, False, first, _nested(value), int(len(bad)))


@dataclass(frozen=True)
class AxiomReport:
    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> Violation:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def as_dict(self) -> dict:
        return {"passed": self.passed, "axioms": [r.as_dict() for r in self.results]}


def axiom_residuals(A: HomLYSA) -> dict[str, np.ndarray]:
    """Residual tensors of SHLY1-SHLY8 on every homogeneous basis tuple."""
    S, c, d, a = A.space, A.c, A.d, A.a
    fs, gs = [c], [d]
    return {
        "SHLY1": ids.equivariance(c, a, 2),
        "SHLY2": ids.equivariance(d, a, 3),
        "SHLY3": ids.super_skew(S, c),
        "SHLY4": ids.super_skew(S, d),
        "SHLY5": ids.cyclic_identity(S, a, fs, gs, 0),
        "SHLY6": ids.cyclic_ternary_identity(S, a, fs, gs, 0),
        "SHLY7": ids.mixed_identity(S, a, fs, gs, 0),
        "SHLY8": ids.ternary_identity(S, a, fs, gs, 0),
    }


def verify_axioms(A: HomLYSA) -> AxiomReport:
    res = axiom_residuals(A)
    return AxiomReport(tuple(summarize(name, res[name]) for name in AXIOMS))


class AxiomFailure(ValueError):
    def __init__(self, report: AxiomReport):
        names = ", ".join(r.name for r in report.failures)
        super().__init__(f"axioms fail: {names}")
        self.report = report


# ---------------------------------------------------------------------------
# degenerate cases


def classify_degenerate(A: HomLYSA) -> set[str]:
    tags = set()
    if A.alpha == GradedMap.identity(A.space):
        tags.add("untwisted")
    if A.bracket2.is_zero():
        tags.add("supertriple")
    if A.bracket3.is_zero():
        tags.add("hom_lie")
    return tags


def embed_hom_lie_super(bracket2: MultiTensor, alpha: GradedMap | None = None, name: str = "") -> HomLYSA:
    """A Hom-Lie superalgebra viewed as a Hom-LY superalgebra with zero ternary bracket.

    No axioms are checked here.
    """
    space = bracket2.space
    a = alpha if alpha is not None else GradedMap.identity(space)
    return HomLYSA(space, bracket2, MultiTensor.zero(space, 3), a, name)


def candidate_from_binary(bracket2: MultiTensor, alpha: GradedMap | None = None, name: str = "") -> HomLYSA:
    """Set {x, y, z} := [[x, y], alpha(z)] and keep the result only if it is valid.

    Raises AxiomFailure carrying the report otherwise.
    """
    space = bracket2.space
    a = alpha if alpha is not None else GradedMap.identity(space)
    c = bracket2.coeffs
    d = normalize(ids.b_of_b(c, c, a.matrix))
    A = HomLYSA(space, bracket2, MultiTensor(space, d), a, name)
    report = verify_axioms(A)
    if not report.passed:
        raise AxiomFailure(report)
    return A


# ---------------------------------------------------------------------------
# homomorphisms


def morphism_residuals(phi: GradedMap, A: HomLYSA, B: HomLYSA) -> dict[str, np.ndarray]:
    if phi.space != A.space or phi.codomain != B.space:
        raise ValueError("phi must map A's space to B's space")
    p = phi.matrix
    return {
        "alpha": (p.dot(A.a) - B.a.dot(p)).T,
        "bracket2": ids.apply_out(p, A.c, 2) - ids.twist(B.c, p, 2),
        "bracket3": ids.apply_out(p, A.d, 3) - ids.twist(B.d, p, 3),
    }


def is_morphism(phi: GradedMap, A: HomLYSA, B: HomLYSA) -> tuple[bool, Violation | None]:
    """(True, None) iff phi is a homomorphism A -> B, else (False, first violation).

    For the alpha condition the witness is the basis index j with
    phi(alpha(e_j)) != alpha'(phi(e_j)).
    """
    if phi.parity != 0 and not phi.is_zero():
        return False, Violation("parity", False, (), (), 1)
    for name, res in morphism_residuals(phi, A, B).items():
        v = summarize(name, res)
        if not v.passed:
            return False, v
    return True, None

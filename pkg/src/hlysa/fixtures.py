"""Small named algebras used throughout the tests, scripts and fixture files.

All live on (1|1) with e0 even and e1 odd unless stated otherwise.
"""

from __future__ import annotations

from .algebra import HomLYSA
from .graded import GradedMap, SuperSpace

# [e0, e1] = e1 = -[e1, e0]
_SOLVABLE = [(0, 1, 1, 1), (1, 0, 1, -1)]


def A0() -> HomLYSA:
    """Abelian (1|1), alpha = id."""
    return HomLYSA.build(1, 1, name="A0", description="abelian (1|1), alpha = id")


def A1() -> HomLYSA:
    """The solvable (1|1) Lie superalgebra, ternary bracket zero, alpha = id."""
    return HomLYSA.build(1, 1, _SOLVABLE, name="A1",
                         description="[e0,e1] = e1, ternary bracket zero, alpha = id")


def A2() -> HomLYSA:
    """A1's binary bracket with {x, y, z} = [[x, y], z]."""
    # [[e0,e1],e0] = [e1,e0] = -e1 and [[e1,e0],e0] = e1; every other product vanishes
    ternary = [(0, 1, 0, 1, -1), (1, 0, 0, 1, 1)]
    return HomLYSA.build(1, 1, _SOLVABLE, ternary, name="A2",
                         description="A1's bracket with {x,y,z} = [[x,y],z]")


def A3() -> HomLYSA:
    """A1's brackets twisted by alpha = diag(1, 2)."""
    return HomLYSA.build(1, 1, _SOLVABLE, alpha=[[1, 0], [0, 2]], name="A3",
                         description="A1's brackets, alpha(e0) = e0, alpha(e1) = 2 e1")


def T1() -> HomLYSA:
    """A (1|1) Hom-Lie supertriple with vanishing (2,3)-cohomology but nonzero coboundaries.

    {e0, e1, e0} = e1 = -{e1, e0, e0}, alpha = diag(-1, 1).
    """
    return HomLYSA.build(1, 1, (), [(0, 1, 0, 1, 1), (1, 0, 0, 1, -1)], alpha=[[-1, 0], [0, 1]], name="T1",
                         description="{e0,e1,e0} = e1, binary bracket zero, alpha = diag(-1, 1)")


def corpus() -> list[HomLYSA]:
    return [A0(), A1(), A2(), A3()]


def by_name(name: str) -> HomLYSA:
    table = {"A0": A0, "A1": A1, "A2": A2, "A3": A3, "T1": T1}
    return table[name]()


def abelian(even_dim: int, odd_dim: int, alpha_diag=None, name: str = "") -> HomLYSA:
    """Zero brackets with a diagonal twist (identity by default)."""
    space = SuperSpace(even_dim, odd_dim)
    alpha = GradedMap.identity(space) if alpha_diag is None else GradedMap.diagonal(space, alpha_diag)
    return HomLYSA.build(even_dim, odd_dim, alpha=alpha.matrix, name=name or f"abelian{space}")


def mutants() -> dict[str, tuple[str, HomLYSA]]:
    """Broken candidates on (1|1), keyed by name, each paired with the axiom it targets."""
    b = HomLYSA.build
    return {
        "skew2": ("SHLY3", b(1, 1, [(0, 1, 1, 1), (1, 0, 1, 1)], name="skew2")),
        "skew3": ("SHLY4", b(1, 1, _SOLVABLE, [(0, 1, 0, 1, -1), (1, 0, 0, 1, -1)], name="skew3")),
        "cyclic": ("SHLY5", b(1, 1, [(0, 1, 1, -1), (1, 0, 1, 1), (1, 1, 0, -1)], name="cyclic")),
        "cyclic3": ("SHLY6", b(1, 1, [(1, 1, 0, -1)], [(0, 1, 0, 1, -1), (1, 0, 0, 1, 1)], name="cyclic3")),
        "mixed": ("SHLY7", b(1, 1, _SOLVABLE, [(0, 1, 1, 0, 1), (1, 0, 1, 0, -1)], name="mixed")),
        "ternary": ("SHLY8", b(1, 1, (), [(0, 1, 0, 1, -1), (1, 0, 0, 1, 1), (0, 1, 1, 0, -1), (1, 0, 1, 0, 1),
                                          (1, 1, 0, 0, -1), (1, 1, 1, 1, -1)], name="ternary")),
    }

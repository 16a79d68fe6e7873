"""Exact structure-constant computations for Hom-Lie-Yamaguti superalgebras."""

from .algebra import HomLYSA, verify_axioms
from .graded import GradedMap, MultiTensor, SuperSpace

__all__ = ["HomLYSA", "verify_axioms", "GradedMap", "MultiTensor", "SuperSpace"]

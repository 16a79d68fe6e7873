from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlysa import fixtures as F
from hlysa.cohomology import (CochainPair, ambient_dim, b23_basis, coboundary_preimage, cochain_space,
                              cocycle_residual, delta1, h23_dims, is_coboundary, is_cochain,
                              literal_alternation, map_from_vector, one_cochain_basis, z23_basis)
from hlysa.graded import GradedMap, MultiTensor, SuperSpace
from oracles import cocycle_failures, cohomology_dims

# (cochains, Z, B, H)
DIMS = {
    "A0": (6, 4, 0, 4),
    "A1": (6, 2, 1, 1),
    "A2": (6, 2, 1, 1),
    "A3": (2, 2, 1, 1),
    "T1": (4, 1, 1, 0),
}


def _algebra(name):
    return F.abelian(1, 1, [2, 3], name=name) if name == "abelian23" else F.by_name(name)


@pytest.mark.parametrize("name", sorted(DIMS) + ["abelian23"])
def test_dimensions_match_independent_enumeration(name):
    A = _algebra(name)
    d = h23_dims(A)
    c, z, b = cohomology_dims(A)
    assert (d.cochains, d.z, d.b) == (c, z, b)
    if name in DIMS:
        assert (d.cochains, d.z, d.b, d.h) == DIMS[name]
    else:
        assert (d.cochains, d.z, d.b) == (0, 0, 0)


@pytest.mark.parametrize("name", sorted(DIMS))
def test_coboundaries_lie_in_cocycles(name):
    A = F.by_name(name)
    assert b23_basis(A).is_subspace_of(z23_basis(A))
    assert z23_basis(A).is_subspace_of(cochain_space(A))


@settings(max_examples=30)
@given(st.sampled_from(sorted(DIMS)), st.integers(0, 10 ** 6))
def test_delta_of_random_one_cochain_is_a_cocycle(name, seed):
    A = F.by_name(name)
    rng = np.random.default_rng(seed)
    v = [0] * A.dim ** 2
    for b in one_cochain_basis(A).vectors:
        k = int(rng.integers(-3, 4))
        v = [x + k * y for x, y in zip(v, b)]
    pair = delta1(map_from_vector(A.space, v), A)
    assert is_cochain(pair, A)[0]
    assert cocycle_residual(pair, A).is_zero()
    assert not any(cocycle_failures(A, pair.f.coeffs.tolist(), pair.g.coeffs.tolist()).values())
    h = coboundary_preimage(pair, A)
    assert h is not None and delta1(h, A) == pair


@settings(max_examples=30)
@given(st.sampled_from(sorted(DIMS)), st.data())
def test_cocycle_basis_matches_literal_residuals(name, data):
    A = F.by_name(name)
    C, Z = cochain_space(A), z23_basis(A)
    coeffs = [data.draw(st.integers(-2, 2)) for _ in C.vectors]
    v = [sum(k * b[i] for k, b in zip(coeffs, C.vectors)) for i in range(C.ambient)]
    pair = CochainPair.from_vector(A.space, v)
    literal = not any(cocycle_failures(A, pair.f.coeffs.tolist(), pair.g.coeffs.tolist()).values())
    assert literal == Z.contains(v) == cocycle_residual(pair, A).is_zero()


def test_a1_cohomology_class_is_not_a_coboundary():
    A = F.A1()
    Z, B = z23_basis(A), b23_basis(A)
    outside = [v for v in Z.vectors if not B.contains(v)]
    assert outside
    assert not is_coboundary(CochainPair.from_vector(A.space, outside[0]), A)


def test_delta_of_identity_on_a1():
    A = F.A1()
    pair = delta1(GradedMap.identity(A.space), A)
    # [x, y] + [x, y] - [x, y]
    assert pair.f == A.bracket2
    assert pair.g.is_zero()


def test_delta_validates_input():
    A = F.A3()
    with pytest.raises(ValueError):
        delta1(GradedMap(A.space, [[0, 0], [1, 0]], 1), A)
    B = F.abelian(2, 0, [1, 2])
    with pytest.raises(ValueError):
        delta1(GradedMap(B.space, [[0, 1], [0, 0]], 0), B)
    assert delta1(GradedMap.diagonal(B.space, [1, 0]), B).is_zero()


def test_cochain_conditions_and_alternation_reading():
    S = SuperSpace(1, 1)
    A = F.A1()
    # f(e1, e1) = e0 is super-skew (odd, odd) but not literally alternating
    f = MultiTensor.from_entries(S, 2, [(1, 1, 0, 1)])
    pair = CochainPair(f, MultiTensor.zero(S, 3))
    assert is_cochain(pair, A)[0]
    assert literal_alternation(pair).passed
    f_bad = MultiTensor.from_entries(S, 2, [(0, 1, 1, 1)])
    ok, v = is_cochain(CochainPair(f_bad, MultiTensor.zero(S, 3)), A)
    assert not ok and v.name == "f.skew" and v.witness == (0, 1)
    g_even = MultiTensor.from_entries(S, 3, [(0, 0, 1, 1, 1)])
    assert not literal_alternation(CochainPair(MultiTensor.zero(S, 2), g_even)).passed


def test_vector_round_trip_and_arithmetic():
    A = F.A2()
    Z = z23_basis(A)
    p = CochainPair.from_vector(A.space, Z.vectors[0])
    assert CochainPair.from_vector(A.space, p.vector()) == p
    assert (p + p - p.scale(2)).is_zero()
    assert len(p.vector()) == ambient_dim(A.space)

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hlysa import fixtures as F
from hlysa.cohomology import CochainPair, b23_basis, delta1, h23_dims, z23_basis
from hlysa.deformation import (Deformation, FormalIso, NotACocycle, equivalent_infinitesimals, infinitesimal,
                               random_formal_iso, random_one_cochain, transport, trivialize,
                               verify_deformation)
from hlysa.graded import GradedMap

BASES = ["A0", "A1", "A2", "A3", "T1"]


def _zeros(*shape):
    return np.zeros(shape, dtype=np.int64).astype(object)


def a0_to_a1(order=3):
    return Deformation.from_arrays(F.A0(), [F.A1().c] + [_zeros(2, 2, 2)] * (order - 1),
                                   [_zeros(2, 2, 2, 2)] * order)


def order_one(A, pair: CochainPair) -> Deformation:
    return Deformation(A, [pair.f], [pair.g])


@pytest.mark.parametrize("name", BASES)
def test_null_deformation_is_valid(name):
    D = Deformation.null(F.by_name(name), 2)
    assert D.is_null()
    assert verify_deformation(D).passed
    assert trivialize(D).trivializable


def test_a0_to_a1_is_a_deformation_but_not_trivial():
    D = a0_to_a1()
    report = verify_deformation(D)
    assert report.passed and report.first_failure is None
    inf = infinitesimal(D)
    assert inf.f.coeffs.tolist() == F.A1().c.tolist()
    result = trivialize(D)
    assert not result.trivializable
    assert result.obstruction_order == 1
    assert result.certificate == inf
    assert result.certificate_is_cocycle
    assert result.as_dict()["certificate"]["coboundary"] is False


def test_broken_order_two_is_reported():
    # [.,.]_A1 at order 1 plus a non-skew order-2 term
    bad = _zeros(2, 2, 2)
    bad[0, 1, 1] = 1
    D = Deformation.from_arrays(F.A0(), [F.A1().c, bad], [_zeros(2, 2, 2, 2)] * 2)
    report = verify_deformation(D)
    assert report.passed_through(1)
    n, v = report.first_failure
    assert (n, v.name) == (2, "SHLY3")


def test_infinitesimal_rejects_non_cocycle():
    f = _zeros(2, 2, 2)
    f[0, 1, 1], f[1, 0, 1] = 1, 1  # not super-skew
    with pytest.raises(NotACocycle):
        infinitesimal(Deformation.from_arrays(F.A1(), [f], [_zeros(2, 2, 2, 2)]))


def test_transport_checks_order_and_alpha():
    A = F.A1()
    D = Deformation.null(A, 2)
    with pytest.raises(ValueError):
        transport(D, FormalIso.identity(A.space, 3))
    B = F.abelian(2, 0, [1, 2])
    off = GradedMap(B.space, np.array([[0, 1], [0, 0]], dtype=object), 0)
    with pytest.raises(ValueError):
        transport(Deformation.null(B, 1), FormalIso.monomial(off, 1, 1))


def test_deformation_constructor_rejects_mismatch():
    A = F.A1()
    with pytest.raises(ValueError):
        Deformation(A, [], [])
    with pytest.raises(ValueError):
        Deformation.from_arrays(A, [_zeros(2, 2, 2)] * 2, [_zeros(2, 2, 2, 2)])


seeds = st.integers(0, 2**32 - 1)


@given(seed=seeds, name=st.sampled_from(BASES), order=st.integers(1, 3))
def test_formal_iso_group_laws(seed, name, order):
    A = F.by_name(name)
    rng = np.random.default_rng(seed)
    phi, psi = random_formal_iso(A, order, rng), random_formal_iso(A, order, rng)
    ident = FormalIso.identity(A.space, order)
    assert phi.compose(phi.inverse()) == ident
    assert phi.inverse().compose(phi) == ident
    assert phi.compose(ident) == phi
    assert phi.compose(psi).inverse() == psi.inverse().compose(phi.inverse())
    assert phi.commutes_with(A.alpha)


@given(seed=seeds, name=st.sampled_from(BASES))
def test_transport_is_an_action(seed, name):
    A = F.by_name(name)
    rng = np.random.default_rng(seed)
    phi, psi = random_formal_iso(A, 2, rng), random_formal_iso(A, 2, rng)
    D = a0_to_a1(2) if name == "A0" else transport(Deformation.null(A, 2), random_formal_iso(A, 2, rng))
    assert transport(transport(D, psi), phi) == transport(D, phi.compose(psi))
    assert transport(D, FormalIso.identity(A.space, 2)) == D
    assert verify_deformation(transport(D, phi)).passed


@given(seed=seeds, name=st.sampled_from(BASES))
def test_monomial_shifts_by_a_coboundary(seed, name):
    A = F.by_name(name)
    h = random_one_cochain(A, np.random.default_rng(seed))
    Def = transport(Deformation.null(A, 2), FormalIso.monomial(h, 1, 2))
    assert Def.coefficient(1) == delta1(h.scale(-1), A)
    assert b23_basis(A).contains(Def.coefficient(1).vector())


@given(seed=seeds, name=st.sampled_from(BASES))
def test_trivialize_coboundary_seeded(seed, name):
    A = F.by_name(name)
    rng = np.random.default_rng(seed)
    null = Deformation.null(A, 3)
    phi = random_formal_iso(A, 3, rng)
    Def = transport(null, phi)
    result = trivialize(Def)
    assert result.trivializable and result.summary() == "trivializable to order 3"
    assert transport(Def, result.iso).is_null()
    assert transport(null, result.iso.inverse()) == Def
    assert all(1 <= r <= 3 for r, _ in result.steps)


@given(seed=seeds, name=st.sampled_from(BASES))
def test_equivalent_deformations_share_a_class(seed, name):
    A = F.by_name(name)
    rng = np.random.default_rng(seed)
    D = a0_to_a1(2) if name == "A0" else transport(Deformation.null(A, 2), random_formal_iso(A, 2, rng))
    assert equivalent_infinitesimals(D, transport(D, random_formal_iso(A, 2, rng)))


def _cocycle(A, rng):
    Z = z23_basis(A)
    v = [0] * len(Z.vectors[0]) if Z.vectors else None
    for b in Z.vectors:
        k = int(rng.integers(-2, 3))
        v = [x + k * y for x, y in zip(v, b)]
    return CochainPair.from_vector(A.space, v)


@given(seed=seeds, name=st.sampled_from(BASES))
def test_order_one_cocycles_are_deformations(seed, name):
    A = F.by_name(name)
    pair = _cocycle(A, np.random.default_rng(seed))
    D = order_one(A, pair)
    assert verify_deformation(D).passed
    result = trivialize(D)
    # trivial exactly when the infinitesimal is a coboundary
    assert result.trivializable == b23_basis(A).contains(pair.vector())


@given(seed=seeds)
def test_vanishing_cohomology_forces_triviality(seed):
    A = F.T1()
    assert h23_dims(A).h == 0
    assert trivialize(order_one(A, _cocycle(A, np.random.default_rng(seed)))).trivializable


def test_nonzero_class_is_obstructed():
    A = F.A1()
    assert h23_dims(A).h == 1
    B = b23_basis(A)
    pair = next(CochainPair.from_vector(A.space, v) for v in z23_basis(A).vectors if not B.contains(v))
    result = trivialize(order_one(A, pair))
    assert result.obstruction_order == 1 and result.certificate_is_cocycle
    assert not equivalent_infinitesimals(order_one(A, pair), Deformation.null(A, 1))

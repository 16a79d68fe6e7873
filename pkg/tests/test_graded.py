from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hlysa.graded import (GradedMap, MultiTensor, SuperSpace, cyclic_signed_sum, koszul_sign, parity_mask,
                          scalar_str, super_commutator, to_scalar)
from strategies import graded_maps, parities, scalars, spaces

L11 = SuperSpace(1, 1)


@pytest.mark.parametrize("text,value", [("3", 3), ("-2/4", Fraction(-1, 2)), (" 6/3 ", 2), ("0/5", 0)])
def test_scalar_parsing(text, value):
    assert to_scalar(text) == value
    assert type(to_scalar(text)) is type(value)


@pytest.mark.parametrize("bad", ["1.5", "1e3", "x", "", "1/-2"])
def test_inexact_literals_rejected(bad):
    with pytest.raises(ValueError):
        to_scalar(bad)


def test_zero_denominator_and_floats_rejected():
    with pytest.raises(ZeroDivisionError):
        to_scalar("1/0")
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(TypeError):
        to_scalar(True)


@given(scalars)
def test_scalar_str_round_trips(x):
    assert to_scalar(scalar_str(to_scalar(x))) == x


def test_koszul_sign():
    assert koszul_sign([(1, 1)]) == -1
    assert koszul_sign([(1, 1), (1, 1)]) == 1
    assert koszul_sign([(0, 1), (1, 0)]) == 1
    assert koszul_sign([]) == 1


def test_space_parities():
    S = SuperSpace(2, 1)
    assert [S.parity(i) for i in range(3)] == [0, 0, 1]
    assert str(S) == "(2|1)"
    with pytest.raises(IndexError):
        S.parity(3)
    with pytest.raises(ValueError):
        SuperSpace(-1, 0)


def test_parity_enforced_on_maps_and_tensors():
    with pytest.raises(ValueError):
        GradedMap(L11, [[1, 1], [0, 1]], 0)
    with pytest.raises(ValueError):
        GradedMap(L11, [[1, 0], [0, 0]], 1)
    with pytest.raises(ValueError):
        MultiTensor.from_entries(L11, 2, [(0, 1, 0, 1)])
    assert parity_mask(L11, 2)[0, 1, 1] and not parity_mask(L11, 2)[0, 1, 0]


def test_super_commutator_examples():
    De = GradedMap(L11, [[0, 0], [0, 1]], 0)
    Do = GradedMap(L11, [[0, 0], [1, 0]], 1)
    br = super_commutator(De, Do)
    assert br.parity == 1
    assert list(br(L11.basis_vector(0))) == [0, 1]
    assert super_commutator(De, De).is_zero()
    assert super_commutator(GradedMap.identity(L11), Do).is_zero()


@given(spaces.flatmap(lambda S: st.tuples(graded_maps(S), graded_maps(S), graded_maps(S))))
def test_super_commutator_skew_and_jacobi(maps):
    a, b, c = maps
    ab = super_commutator(a, b)
    ba = super_commutator(b, a)
    assert ab == ba.scale(-koszul_sign([(a.parity, b.parity)]))

    def term(x, y, z):
        return super_commutator(x, super_commutator(y, z)).scale(koszul_sign([(x.parity, z.parity)]))

    total = term(a, b, c).matrix + term(b, c, a).matrix + term(c, a, b).matrix
    assert not np.any(total != 0)


@given(spaces.flatmap(lambda S: st.tuples(graded_maps(S), graded_maps(S))))
def test_composition_parity_adds(maps):
    a, b = maps
    assert (a @ b).parity == (a.parity + b.parity) % 2 or (a @ b).is_zero()


@given(graded_maps(parity=0), st.integers(0, 3), st.integers(0, 3))
def test_power_law(m, i, j):
    assert m.power(i) @ m.power(j) == m.power(i + j)


def test_multitensor_evaluation():
    t = MultiTensor.from_entries(L11, 2, [(0, 1, 1, 1), (1, 0, 1, -1)])
    assert list(t(L11.basis_vector(0), L11.basis_vector(1))) == [0, 1]
    assert t.entries() == [(0, 1, 1, 1), (1, 0, 1, -1)]
    assert (t - t).is_zero()
    assert t.scale("1/2").coeffs[0, 1, 1] == Fraction(1, 2)


def test_cyclic_signed_sum_of_constant_even_tensor():
    S = SuperSpace(2, 0)
    t = np.ones((2, 2, 2), dtype=object)
    assert np.all(cyclic_signed_sum(t, S) == 3)


@given(parities, parities, parities)
def test_cyclic_signs_match_definition(px, py, pz):
    S = SuperSpace(1, 1)
    idx = (px, py, pz)
    t = np.zeros((2, 2, 2), dtype=object)
    t[idx] = 1
    out = cyclic_signed_sum(t, S)
    assert out[idx] == koszul_sign([(px, pz)]) + (
        koszul_sign([(pz, py)]) if (py, pz, px) == idx else 0) + (
        koszul_sign([(py, px)]) if (pz, px, py) == idx else 0)

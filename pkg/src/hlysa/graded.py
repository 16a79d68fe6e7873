"""Exact scalars, Z2-graded spaces, homogeneous maps and multilinear tensors.

Every array in the package is a numpy array of dtype ``object`` whose entries
are Python ``int`` or ``fractions.Fraction``. Integral values are kept as
``int``: they are exact rationals and arithmetic on them is far cheaper than on
``Fraction``. No floating point value is ever accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral, Rational
from typing import Callable, Iterable, Sequence, Union

import numpy as np

Scalar = Union[int, Fraction]

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_scalar(value) -> Scalar:
    """Convert ``value`` to an exact scalar.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats and decimal strings are rejected so that exactness is never lost.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, Rational):
        q = Fraction(value.numerator, value.denominator)
        return q.numerator if q.denominator == 1 else q
    if isinstance(value, str):
        m = _SCALAR_RE.match(value)
        if m is None:
            raise ValueError(f"not an exact rational literal: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return to_scalar(Fraction(num, den))
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def scalar_str(value: Scalar) -> str:
    q = Fraction(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_to_scalar_vec = np.frompyfunc(to_scalar, 1, 1)


def exact_array(data, shape: Sequence[int] | None = None) -> np.ndarray:
    """Object array of exact scalars built from nested data (or an array)."""
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(tuple(shape))
    if arr.size == 0:
        return np.zeros(arr.shape, dtype=object)
    return np.asarray(_to_scalar_vec(arr), dtype=object).reshape(arr.shape)


def normalize(arr: np.ndarray) -> np.ndarray:
    """Collapse integral Fractions back to ints (keeps later arithmetic fast)."""
    if arr.size == 0:
        return arr

    def _norm(v):
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        return v

    return np.asarray(np.frompyfunc(_norm, 1, 1)(arr), dtype=object).reshape(arr.shape)


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=object)


def is_zero(arr: np.ndarray) -> bool:
    return not np.any(arr != 0)


def frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=object)
    arr.flags.writeable = False
    return arr


# ---------------------------------------------------------------------------
# parity and signs


def koszul_sign(terms: Iterable[tuple[int, int]]) -> int:
    """(-1) raised to the sum of the parity products in ``terms``."""
    exponent = 0
    for a, b in terms:
        exponent += (a % 2) * (b % 2)
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class SuperSpace:
    """K^(p|q): the first ``even_dim`` basis vectors are even, the rest odd."""

    even_dim: int
    odd_dim: int

    def __post_init__(self):
        if self.even_dim < 0 or self.odd_dim < 0:
            raise ValueError("dimensions must be non-negative")

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim

    def parity(self, i: int) -> int:
        if not 0 <= i < self.dim:
            raise IndexError(i)
        return 0 if i < self.even_dim else 1

    @property
    def parities(self) -> np.ndarray:
        return np.array([0] * self.even_dim + [1] * self.odd_dim, dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = zeros(self.dim)
        v[i] = 1
        return v

    def __str__(self):
        return f"({self.even_dim}|{self.odd_dim})"


def sign_array(space: SuperSpace, k: int, exponent: Callable[..., np.ndarray]) -> np.ndarray:
    """Array over k basis-index axes holding (-1)^exponent(p_1, ..., p_k).

    ``exponent`` receives k broadcastable integer parity grids.
    """
    p = space.parities
    grids = np.ix_(*([p] * k)) if k else ()
    e = np.broadcast_to(np.asarray(exponent(*grids)), (space.dim,) * k)
    return np.where(e % 2 == 1, -1, 1).astype(object)


def bcast(signs: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Reshape a sign array so it broadcasts against the leading axes of target."""
    return signs.reshape(signs.shape + (1,) * (target.ndim - signs.ndim))


def parity_mask(space: SuperSpace, arity: int, parity: int = 0) -> np.ndarray:
    """Boolean mask of structure-constant positions allowed for a homogeneous map.

    Position (i_1, ..., i_k, m) is allowed iff |m| = |i_1| + ... + |i_k| + parity.
    """
    p = space.parities
    grids = np.ix_(*([p] * (arity + 1)))
    total = sum(grids[:arity], np.zeros((1,) * (arity + 1), dtype=np.int64)) + parity
    return np.broadcast_to((total - grids[arity]) % 2 == 0, (space.dim,) * (arity + 1))


def cyclic_signed_sum(t: np.ndarray, space: SuperSpace) -> np.ndarray:
    """Sum over cyclic rotations of the first three slots, Koszul-signed.

    Returns (-1)^{|x||z|} T(x,y,z,...) + (-1)^{|y||x|} T(y,z,x,...)
    + (-1)^{|z||y|} T(z,x,y,...); trailing axes are carried along.
    """
    s_xz = sign_array(space, 3, lambda x, y, z: x * z)
    s_yx = sign_array(space, 3, lambda x, y, z: y * x)
    s_zy = sign_array(space, 3, lambda x, y, z: z * y)
    rot1 = np.einsum("yzx...->xyz...", t)
    rot2 = np.einsum("zxy...->xyz...", t)
    return bcast(s_xz, t) * t + bcast(s_yx, t) * rot1 + bcast(s_zy, t) * rot2


# ---------------------------------------------------------------------------
# homogeneous linear maps


@dataclass(frozen=True, eq=False)
class GradedMap:
    """A parity-homogeneous linear map given by its matrix in the fixed bases.

    Column j holds the image of basis vector j. ``codomain`` defaults to the
    domain, which covers every endomorphism in the package.
    """

    space: SuperSpace
    matrix: np.ndarray
    parity: int = 0
    codomain: SuperSpace | None = None

    def __post_init__(self):
        cod = self.codomain or self.space
        object.__setattr__(self, "codomain", cod)
        object.__setattr__(self, "parity", self.parity % 2)
        m = exact_array(self.matrix)
        if m.shape != (cod.dim, self.space.dim):
            raise ValueError(f"matrix shape {m.shape} does not match {cod}<-{self.space}")
        rows = cod.parities[:, None]
        cols = self.space.parities[None, :]
        forbidden = (rows - cols - self.parity) % 2 != 0
        if np.any(m[forbidden] != 0):
            i, j = map(int, np.argwhere(forbidden & (m != 0))[0])
            raise ValueError(f"entry ({i}, {j}) violates parity {self.parity}")
        object.__setattr__(self, "matrix", frozen(m))

    @classmethod
    def identity(cls, space: SuperSpace) -> "GradedMap":
        return cls(space, np.identity(space.dim, dtype=np.int64).astype(object), 0)

    @classmethod
    def zero(cls, space: SuperSpace, parity: int = 0, codomain: SuperSpace | None = None) -> "GradedMap":
        cod = codomain or space
        return cls(space, zeros((cod.dim, space.dim)), parity, cod)

    @classmethod
    def diagonal(cls, space: SuperSpace, entries) -> "GradedMap":
        m = zeros((space.dim, space.dim))
        for i, v in enumerate(entries):
            m[i, i] = to_scalar(v)
        return cls(space, m, 0)

    @property
    def is_endomorphism(self) -> bool:
        return self.codomain == self.space

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix.dot(np.asarray(v, dtype=object))

    def __call__(self, v):
        return self.apply(v)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        if other.codomain != self.space:
            raise ValueError("incompatible spaces in composition")
        return GradedMap(other.space, normalize(self.matrix.dot(other.matrix)),
                         self.parity + other.parity, self.codomain)

    def _same_shape(self, other: "GradedMap"):
        if (self.space, self.codomain) != (other.space, other.codomain):
            raise ValueError("maps live on different spaces")
        if self.parity != other.parity and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add maps of different parity")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._same_shape(other)
        par = other.parity if self.is_zero() else self.parity
        return GradedMap(self.space, normalize(self.matrix + other.matrix), par, self.codomain)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + other.scale(-1)

    def __neg__(self) -> "GradedMap":
        return self.scale(-1)

    def scale(self, c) -> "GradedMap":
        return GradedMap(self.space, normalize(self.matrix * to_scalar(c)), self.parity, self.codomain)

    def power(self, k: int) -> "GradedMap":
        if k < 0:
            raise ValueError("negative power")
        if not self.is_endomorphism:
            raise ValueError("powers need an endomorphism")
        out = GradedMap.identity(self.space)
        for _ in range(k):
            out = self @ out
        return out

    def is_zero(self) -> bool:
        return is_zero(self.matrix)

    def flat(self) -> tuple:
        """Row-major coordinates of the matrix (the ambient End(L) coordinates)."""
        return tuple(self.matrix.reshape(-1))

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.space == other.space and self.codomain == other.codomain
                and bool(np.all(self.matrix == other.matrix))
                and (self.parity == other.parity or self.is_zero()))

    __hash__ = None

    def __repr__(self):
        rows = ["[" + ", ".join(scalar_str(v) for v in row) + "]" for row in self.matrix]
        return f"GradedMap(parity={self.parity}, [{', '.join(rows)}])"


def super_commutator(d1: GradedMap, d2: GradedMap) -> GradedMap:
    """[D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1."""
    sign = koszul_sign([(d1.parity, d2.parity)])
    m = d1.matrix.dot(d2.matrix) - sign * d2.matrix.dot(d1.matrix)
    return GradedMap(d1.space, normalize(m), d1.parity + d2.parity)


# ---------------------------------------------------------------------------
# multilinear maps


@dataclass(frozen=True, eq=False)
class MultiTensor:
    """Structure constants of a k-linear map L x ... x L -> L.

    ``coeffs[i_1, ..., i_k, m]`` is the m-th coordinate of the map on the
    basis tuple (e_{i_1}, ..., e_{i_k}).
    """

    space: SuperSpace
    coeffs: np.ndarray
    parity: int = 0

    def __post_init__(self):
        c = exact_array(self.coeffs)
        n = self.space.dim
        if c.ndim < 2 or c.shape != (n,) * c.ndim:
            raise ValueError(f"coefficient shape {c.shape} does not fit {self.space}")
        object.__setattr__(self, "parity", self.parity % 2)
        allowed = parity_mask(self.space, c.ndim - 1, self.parity)
        bad = (~allowed) & (c != 0)
        if np.any(bad):
            idx = tuple(int(i) for i in np.argwhere(bad)[0])
            raise ValueError(f"coefficient at {idx} violates parity {self.parity}")
        object.__setattr__(self, "coeffs", frozen(c))

    @classmethod
    def zero(cls, space: SuperSpace, arity: int) -> "MultiTensor":
        return cls(space, zeros((space.dim,) * (arity + 1)))

    @classmethod
    def from_entries(cls, space: SuperSpace, arity: int, entries, parity: int = 0) -> "MultiTensor":
        """Build from sparse ``(i_1, ..., i_k, m, value)`` entries."""
        c = zeros((space.dim,) * (arity + 1))
        for entry in entries:
            *idx, value = entry
            c[tuple(idx)] = to_scalar(value)
        return cls(space, c, parity)

    @property
    def arity(self) -> int:
        return self.coeffs.ndim - 1

    def __call__(self, *vectors) -> np.ndarray:
        if len(vectors) != self.arity:
            raise ValueError(f"expected {self.arity} arguments")
        out = self.coeffs
        for v in vectors:
            v = np.asarray(v, dtype=object)
            if v.shape != (self.space.dim,):
                raise ValueError("dimension mismatch")
            out = np.tensordot(v, out, axes=(0, 0))
        return normalize(np.asarray(out, dtype=object))

    def is_zero(self) -> bool:
        return is_zero(self.coeffs)

    def __add__(self, other: "MultiTensor") -> "MultiTensor":
        return MultiTensor(self.space, normalize(self.coeffs + other.coeffs), self.parity)

    def __sub__(self, other: "MultiTensor") -> "MultiTensor":
        return MultiTensor(self.space, normalize(self.coeffs - other.coeffs), self.parity)

    def scale(self, c) -> "MultiTensor":
        return MultiTensor(self.space, normalize(self.coeffs * to_scalar(c)), self.parity)

    def entries(self) -> list[tuple]:
        """Sorted sparse entries ``(i_1, ..., i_k, m, value)``."""
        return [tuple(int(i) for i in idx) + (self.coeffs[tuple(idx)],)
                for idx in np.argwhere(self.coeffs != 0)]

    def __eq__(self, other):
        if not isinstance(other, MultiTensor):
            return NotImplemented
        return self.space == other.space and bool(np.all(self.coeffs == other.coeffs))

    __hash__ = None

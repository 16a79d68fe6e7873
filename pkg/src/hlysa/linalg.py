"""Exact sparse Gaussian elimination over Q and subspace bookkeeping.

Rows are dictionaries ``{column: scalar}``. Elimination always pivots on the
leftmost nonzero column, and results are returned in reduced row echelon form,
which is canonical for a row space. Solution bases are therefore reproducible
regardless of the order in which equations were generated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graded import Scalar, to_scalar

Row = dict


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return _clean(Fraction(a) / Fraction(b))


def as_row(row) -> Row:
    """Accept a dict or a dense sequence; drop zeros."""
    if isinstance(row, Mapping):
        items = row.items()
    else:
        items = enumerate(row)
    return {int(k): to_scalar(v) for k, v in items if v != 0}


class Echelon:
    """Incrementally maintained echelon basis of a row space.

    Each stored row has leading coefficient 1 at its pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row) -> Row:
        row = dict(row)
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            factor = row[lead]
            for col, val in piv.items():
                new = _clean(row.get(col, 0) - factor * val)
                if new == 0:
                    row.pop(col, None)
                else:
                    row[col] = new
        return row

    def add(self, row) -> bool:
        """Insert a row; return True iff it was independent of the current rows."""
        row = self.reduce(as_row(row))
        if not row:
            return False
        lead = min(row)
        inv = row[lead]
        self.pivots[lead] = {c: _div(v, inv) for c, v in row.items()}
        return True

    def extend(self, rows: Iterable) -> "Echelon":
        for r in rows:
            self.add(r)
        return self

    def rref(self) -> list[tuple[int, Row]]:
        """Fully reduced rows sorted by pivot column."""
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            prow = rows[c]
            for other in cols:
                if other >= c:
                    break
                orow = rows[other]
                factor = orow.get(c)
                if not factor:
                    continue
                for col, val in prow.items():
                    new = _clean(orow.get(col, 0) - factor * val)
                    if new == 0:
                        orow.pop(col, None)
                    else:
                        orow[col] = new
        return [(c, rows[c]) for c in cols]


def _dense(row: Row, n: int) -> tuple:
    v = [0] * n
    for c, x in row.items():
        v[c] = x
    return tuple(v)


def rows_from_forms(forms: np.ndarray) -> list[Row]:
    """Turn an array of linear forms (last axis = unknowns) into equation rows."""
    u = forms.shape[-1]
    flat = forms.reshape(-1, u)
    out = []
    for line in flat:
        nz = np.nonzero(line != 0)[0]
        if len(nz):
            out.append({int(c): _clean(line[c]) for c in nz})
    return out


def rank(rows: Iterable, ncols: int) -> int:
    return Echelon(ncols).extend(rows).rank


def nullspace(rows: Iterable, ncols: int) -> "SubspaceBasis":
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    ech = Echelon(ncols).extend(rows)
    reduced = ech.rref()
    pivot_cols = {c for c, _ in reduced}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = [0] * ncols
        v[free] = 1
        for c, r in reduced:
            coeff = r.get(free)
            if coeff:
                v[c] = _clean(-coeff)
        basis.append(tuple(v))
    return SubspaceBasis(ncols, tuple(basis))


def solve(rows: Sequence, rhs: Sequence, ncols: int) -> tuple | None:
    """A particular solution of ``rows . x = rhs`` with all free unknowns 0.

    Returns None when the system is inconsistent.
    """
    ech = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        row = as_row(r)
        b = to_scalar(b)
        if b != 0:
            row[ncols] = b
        ech.add(row)
    if ncols in ech.pivots:
        return None
    x = [0] * ncols
    for c, r in ech.rref():
        x[c] = r.get(ncols, 0)
    return tuple(x)


class NotASubspace(ValueError):
    """Raised when an inclusion B in A required by a quotient fails."""

    def __init__(self, witness: tuple):
        super().__init__(f"vector {witness} is not in the ambient subspace")
        self.witness = witness


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^ambient given by linearly independent vectors."""

    ambient: int
    vectors: tuple = ()

    def __post_init__(self):
        vecs = tuple(tuple(to_scalar(x) for x in v) for v in self.vectors)
        for v in vecs:
            if len(v) != self.ambient:
                raise ValueError("vector length differs from ambient dimension")
        object.__setattr__(self, "vectors", vecs)

    @classmethod
    def span(cls, vectors: Iterable, ambient: int) -> "SubspaceBasis":
        """Canonical (RREF) basis of the span of arbitrary vectors."""
        ech = Echelon(ambient).extend(vectors)
        return cls(ambient, tuple(_dense(r, ambient) for _, r in ech.rref()))

    @classmethod
    def full(cls, ambient: int) -> "SubspaceBasis":
        return cls(ambient, tuple(tuple(int(i == j) for j in range(ambient)) for i in range(ambient)))

    @classmethod
    def zero(cls, ambient: int) -> "SubspaceBasis":
        return cls(ambient, ())

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def _echelon(self) -> Echelon:
        return Echelon(self.ambient).extend(self.vectors)

    def canonical(self) -> "SubspaceBasis":
        return SubspaceBasis.span(self.vectors, self.ambient)

    def contains(self, v) -> bool:
        if len(v) != self.ambient:
            raise ValueError("dimension mismatch")
        return not self._echelon().reduce(as_row(v))

    def contains_all(self, vectors: Iterable) -> tuple | None:
        """None if every vector lies in the subspace, else the first outsider."""
        ech = self._echelon()
        for v in vectors:
            if ech.reduce(as_row(v)):
                return tuple(v)
        return None

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return other.contains_all(self.vectors) is None

    def sum(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._check(other)
        return SubspaceBasis.span(self.vectors + other.vectors, self.ambient)

    def intersect(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._check(other)
        a, b = self.vectors, other.vectors
        if not a or not b:
            return SubspaceBasis.zero(self.ambient)
        # sum_i s_i a_i - sum_j t_j b_j = 0, one equation per ambient coordinate
        ncols = len(a) + len(b)
        rows = []
        for k in range(self.ambient):
            rows.append([v[k] for v in a] + [-v[k] for v in b])
        kernel = nullspace(rows, ncols)
        vecs = []
        for coeffs in kernel.vectors:
            vecs.append(tuple(_clean(sum(coeffs[i] * a[i][k] for i in range(len(a))))
                              for k in range(self.ambient)))
        return SubspaceBasis.span(vecs, self.ambient)

    def quotient_dim(self, sub: "SubspaceBasis") -> int:
        """dim(self) - dim(sub); requires sub to lie inside self."""
        self._check(sub)
        outsider = self.contains_all(sub.vectors)
        if outsider is not None:
            raise NotASubspace(outsider)
        return self.dim - rank(sub.vectors, self.ambient)

    def _check(self, other: "SubspaceBasis"):
        if other.ambient != self.ambient:
            raise ValueError("subspaces of different ambient spaces")

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.ambient == other.ambient and self.canonical().vectors == other.canonical().vectors

    def __hash__(self):
        return hash((self.ambient, self.canonical().vectors))


def unknowns(shape: tuple, total: int | None = None, offset: int = 0) -> np.ndarray:
    """Tensor of linear forms whose entry at index I is the unknown ``offset + ravel(I)``.

    The result has shape ``shape + (total,)``; feeding it through multilinear
    code yields the coefficient forms of the output over all unknowns.
    """
    size = int(np.prod(shape)) if shape else 1
    total = size if total is None else total
    out = np.zeros((size, total), dtype=object)
    out[np.arange(size), offset + np.arange(size)] = 1
    return out.reshape(tuple(shape) + (total,))


def basis_forms(basis: "SubspaceBasis", shape: tuple, start: int = 0) -> np.ndarray:
    """Coordinates ``start:start+prod(shape)`` of every basis vector, as a batch tensor."""
    size = int(np.prod(shape))
    cols = np.array([v[start:start + size] for v in basis.vectors], dtype=object).reshape(len(basis.vectors), size)
    return cols.T.reshape(tuple(shape) + (len(basis.vectors),))

"""Representations (beta, rho, D, theta) and semidirect sums.

Operators on V are stored as matrices (column j = image of basis vector j):
``rho[i]`` is rho(e_i) and ``D[i, j]``, ``theta[i, j]`` are the operators
attached to the ordered basis pair (e_i, e_j). Residuals of the module
conditions are indexed ``[basis tuple of L..., row, column]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import HomLYSA, Violation, summarize
from .graded import GradedMap, MultiTensor, SuperSpace, exact_array, frozen, normalize, sign_array, zeros

CONDITIONS = tuple(f"SHR{k}" for k in range(1, 11))


def _es(spec, *ops):
    return np.einsum(spec, *ops, optimize=True)


def _operator_mask(L: SuperSpace, V: SuperSpace, arity: int) -> np.ndarray:
    """Allowed positions [i_1..i_k, r, c]: |r| = |c| + |i_1| + ... + |i_k|."""
    grids = np.ix_(*([L.parities] * arity + [V.parities, V.parities]))
    total = sum(grids[:arity], np.zeros((1,) * (arity + 2), dtype=np.int64))
    shape = (L.dim,) * arity + (V.dim, V.dim)
    return np.broadcast_to((total + grids[-1] - grids[-2]) % 2 == 0, shape)


@dataclass(frozen=True, eq=False)
class RepTriple:
    """Candidate module data over a base space L; validity is not implied."""

    base: SuperSpace
    module_space: SuperSpace
    beta: GradedMap
    rho: np.ndarray
    Dmap: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        L, V = self.base, self.module_space
        if self.beta.space != V or not self.beta.is_endomorphism or (
                self.beta.parity != 0 and not self.beta.is_zero()):
            raise ValueError("beta must be an even endomorphism of V")
        for name, arity in (("rho", 1), ("Dmap", 2), ("theta", 2)):
            arr = exact_array(getattr(self, name))
            shape = (L.dim,) * arity + (V.dim, V.dim)
            if arr.shape != shape:
                raise ValueError(f"{name} has shape {arr.shape}, expected {shape}")
            bad = (~_operator_mask(L, V, arity)) & (arr != 0)
            if np.any(bad):
                idx = tuple(int(i) for i in np.argwhere(bad)[0])
                raise ValueError(f"{name} entry {idx} has the wrong parity")
            object.__setattr__(self, name, frozen(arr))

    @classmethod
    def zero(cls, base: SuperSpace, module_space: SuperSpace, beta: GradedMap | None = None) -> "RepTriple":
        n, m = base.dim, module_space.dim
        b = beta if beta is not None else GradedMap.identity(module_space)
        return cls(base, module_space, b, zeros((n, m, m)), zeros((n, n, m, m)), zeros((n, n, m, m)))

    @classmethod
    def from_entries(cls, base, module_space, beta=None, rho=(), Dmap=(), theta=()) -> "RepTriple":
        """Sparse entries: rho ``(i, r, c, v)``, Dmap/theta ``(i, j, r, c, v)``."""
        R = cls.zero(base, module_space, beta if beta is None else GradedMap(module_space, beta, 0))
        arrays = {"rho": np.array(R.rho), "Dmap": np.array(R.Dmap), "theta": np.array(R.theta)}
        for name, entries in (("rho", rho), ("Dmap", Dmap), ("theta", theta)):
            for *idx, v in entries:
                arrays[name][tuple(idx)] = exact_array([v])[0]
        return cls(base, module_space, R.beta, **arrays)

    def __eq__(self, other):
        if not isinstance(other, RepTriple):
            return NotImplemented
        return (self.base == other.base and self.module_space == other.module_space
                and self.beta == other.beta
                and all(bool(np.all(getattr(self, k) == getattr(other, k))) for k in ("rho", "Dmap", "theta")))


@dataclass(frozen=True)
class RepReport:
    results: tuple
    alternative_shr1: Violation

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
        return {
            "passed": self.passed,
            "conditions": [r.as_dict() for r in self.results],
            "diagnostics": {"SHR1_alternative": self.alternative_shr1.as_dict()},
        }


def _check_base(A: HomLYSA, R: RepTriple):
    if A.space != R.base:
        raise ValueError(f"representation is over {R.base}, algebra lives on {A.space}")


def rep_residuals(A: HomLYSA, R: RepTriple) -> dict[str, np.ndarray]:
    """Residual operators of SHR1-SHR10 (plus ``SHR1_alternative``)."""
    _check_base(A, R)
    S = A.space
    a, c, d = A.a, A.c, A.d
    a2 = a.dot(a)
    b = R.beta.matrix
    b2 = b.dot(b)
    rho, Dm, th = R.rho, R.Dmap, R.theta

    rho_a = _es("px,prc->xrc", a, rho)
    rho_a2 = _es("px,prc->xrc", a2, rho)
    D_a = _es("px,qy,pqrc->xyrc", a, a, Dm)
    D_a2 = _es("px,qy,pqrc->xyrc", a2, a2, Dm)
    th_a = _es("px,qy,pqrc->xyrc", a, a, th)
    th_a2 = _es("px,qy,pqrc->xyrc", a2, a2, th)

    def s(k, fn):
        arr = sign_array(S, k, fn)
        return arr.reshape(arr.shape + (1, 1))

    out = {}
    out["SHR1"] = _es("xrk,kc->xrc", rho_a, b) - _es("rk,xkc->xrc", b, rho_a)
    out["SHR1_alternative"] = _es("xrk,kc->xrc", rho_a, b) - _es("rk,xkc->xrc", b, rho)
    out["SHR2"] = _es("xyrk,kc->xyrc", D_a, b) - _es("rk,xykc->xyrc", b, Dm)
    out["SHR3"] = _es("xyrk,kc->xyrc", th_a, b) - _es("rk,xykc->xyrc", b, th)

    s_xy = s(2, lambda x, y: x * y)
    rho_br = _es("xyp,prc->xyrc", c, rho)
    out["SHR4"] = (Dm - s_xy * np.swapaxes(th, 0, 1) + th
                   + _es("xyrk,kc->xyrc", rho_br, b)
                   - _es("xrk,ykc->xyrc", rho_a, rho)
                   + s_xy * _es("yrk,xkc->xyrc", rho_a, rho))

    # T[x, y, z] = D([x, y], a z)
    T = _es("xyp,qz,pqrc->xyzrc", c, a, Dm)
    out["SHR5"] = (T + s(3, lambda x, y, z: x * (y + z)) * np.einsum("yzx...->xyz...", T)
                   + s(3, lambda x, y, z: z * (x + y)) * np.einsum("zxy...->xyz...", T))

    out["SHR6"] = (_es("xyp,qz,pqrk,kc->xyzrc", c, a, th, b)
                   - s(3, lambda x, y, z: y * z) * _es("xzrk,ykc->xyzrc", th_a, rho)
                   + s(3, lambda x, y, z: x * (y + z)) * _es("yzrk,xkc->xyzrc", th_a, rho))

    out["SHR7"] = (_es("xyrk,zkc->xyzrc", D_a, rho)
                   - s(3, lambda x, y, z: z * (x + y)) * _es("zrk,xykc->xyzrc", rho_a2, Dm)
                   - _es("xyzp,prk,kc->xyzrc", d, rho, b2))

    out["SHR8"] = (_es("px,yzq,pqrk,kc->xyzrc", a, c, th, b)
                   - s(3, lambda x, y, z: x * y) * _es("yrk,xzkc->xyzrc", rho_a2, th)
                   + s(3, lambda x, y, z: z * (x + y)) * _es("zrk,xykc->xyzrc", rho_a2, th))

    out["SHR9"] = (_es("xyrk,uvkc->xyuvrc", D_a2, th)
                   - s(4, lambda x, y, u, v: (u + v) * (x + y)) * _es("uvrk,xykc->xyuvrc", th_a2, Dm)
                   - _es("xyup,qv,pqrk,kc->xyuvrc", d, a2, th, b2)
                   - s(4, lambda x, y, u, v: u * (x + y)) * _es("pu,xyvq,pqrk,kc->xyuvrc", a2, d, th, b2))

    out["SHR10"] = (_es("px,yzuq,pqrk,kc->xyzurc", a2, d, th, b2)
                    - s(4, lambda x, y, z, u: (z + u) * (x + y)) * _es("zurk,xykc->xyzurc", th_a2, th)
                    + s(4, lambda x, y, z, u: y * z) * _es("yurk,xzkc->xyzurc", th_a2, th)
                    - s(4, lambda x, y, z, u: x * (y + z)) * _es("yzrk,xukc->xyzurc", D_a2, th))
    return out


def verify_representation(A: HomLYSA, R: RepTriple) -> RepReport:
    res = rep_residuals(A, R)
    results = tuple(summarize(name, res[name], out_axes=2) for name in CONDITIONS)
    return RepReport(results, summarize("SHR1_alternative", res["SHR1_alternative"], out_axes=2))


# ---------------------------------------------------------------------------
# semidirect sum


@dataclass(frozen=True)
class Split:
    """Positions of L's and V's basis vectors inside the basis of L + V."""

    l_index: tuple
    v_index: tuple

    @classmethod
    def canonical(cls, L: SuperSpace, V: SuperSpace) -> "Split":
        """L even, V even, L odd, V odd."""
        le, ve, lo = L.even_dim, V.even_dim, L.odd_dim
        l_index = tuple(range(le)) + tuple(le + ve + k for k in range(lo))
        v_index = tuple(le + k for k in range(ve)) + tuple(le + ve + lo + k for k in range(V.odd_dim))
        return cls(l_index, v_index)


def semidirect_sum(A: HomLYSA, R: RepTriple, name: str = "") -> HomLYSA:
    """The bracket data on L + V built from (rho, D, theta) and alpha + beta.

    No axioms are checked; verify_axioms on the result decides validity.
    """
    _check_base(A, R)
    L, V = A.space, R.module_space
    T = SuperSpace(L.even_dim + V.even_dim, L.odd_dim + V.odd_dim)
    sp = Split.canonical(L, V)
    li, vi = np.array(sp.l_index), np.array(sp.v_index)
    pl, pv = L.parities, V.parities

    al = zeros((T.dim, T.dim))
    al[np.ix_(li, li)] = A.a
    al[np.ix_(vi, vi)] = R.beta.matrix

    c = zeros((T.dim,) * 3)
    c[np.ix_(li, li, li)] = A.c
    # [x, v] = rho(x) v and [u, y] = -(-1)^{|u||y|} rho(y) u
    rho_t = np.transpose(R.rho, (0, 2, 1))  # [i, col, row]
    c[np.ix_(li, vi, vi)] = rho_t
    s = np.where((pv[:, None] * pl[None, :]) % 2 == 1, 1, -1).astype(object)
    c[np.ix_(vi, li, vi)] = s[:, :, None] * np.transpose(R.rho, (2, 0, 1))

    d = zeros((T.dim,) * 4)
    d[np.ix_(li, li, li, li)] = A.d
    # {x, y, w} = D(x, y) w
    d[np.ix_(li, li, vi, vi)] = np.transpose(R.Dmap, (0, 1, 3, 2))
    # {x, v, z} = -(-1)^{|v||z|} theta(x, z) v
    s_vz = np.where((pv[:, None] * pl[None, :]) % 2 == 1, 1, -1).astype(object)
    d[np.ix_(li, vi, li, vi)] = s_vz[None, :, :, None] * np.transpose(R.theta, (0, 3, 1, 2))
    # {u, y, z} = (-1)^{|u|(|y|+|z|)} theta(y, z) u
    e = pv[:, None, None] * (pl[None, :, None] + pl[None, None, :])
    s_u = np.where(e % 2 == 1, -1, 1).astype(object)
    d[np.ix_(vi, li, li, vi)] = s_u[:, :, :, None] * np.transpose(R.theta, (3, 0, 1, 2))

    return HomLYSA(T, MultiTensor(T, normalize(c)), MultiTensor(T, normalize(d)),
                   GradedMap(T, normalize(al), 0), name or f"{A.name}+V{V}")


class SplitIncompatible(ValueError):
    """The algebra is not a semidirect sum for the given split."""

    def __init__(self, what: str, witness: tuple):
        super().__init__(f"{what} at {witness}")
        self.what = what
        self.witness = witness


def _subspace(S: SuperSpace, idx: tuple) -> SuperSpace:
    par = [S.parity(i) for i in idx]
    if par != sorted(par):
        raise ValueError("split must list even basis vectors before odd ones")
    return SuperSpace(par.count(0), par.count(1))


def extract_base(S: HomLYSA, split: Split) -> HomLYSA:
    li = np.array(split.l_index)
    L = _subspace(S.space, split.l_index)
    return HomLYSA(L, MultiTensor(L, S.c[np.ix_(li, li, li)]), MultiTensor(L, S.d[np.ix_(li, li, li, li)]),
                   GradedMap(L, S.a[np.ix_(li, li)], 0), S.name)


def extract_rep(S: HomLYSA, split: Split) -> RepTriple:
    """Read (beta, rho, D, theta) back off an algebra on L + V.

    Every structure constant of S outside the semidirect-sum pattern must
    vanish and the redundant components (e.g. [u, y] versus [y, u]) must agree
    with the recovered data; otherwise SplitIncompatible carries the first
    offending basis tuple, in S's indexing.
    """
    li, vi = np.array(split.l_index), np.array(split.v_index)
    if sorted(split.l_index + split.v_index) != list(range(S.dim)):
        raise ValueError("split is not a partition of the basis")
    L = _subspace(S.space, split.l_index)
    V = _subspace(S.space, split.v_index)
    if Split.canonical(L, V) != split:
        raise ValueError("only the canonical ordering L even, V even, L odd, V odd is supported")
    beta = GradedMap(V, S.a[np.ix_(vi, vi)], 0)
    rho = np.transpose(S.c[np.ix_(li, vi, vi)], (0, 2, 1))
    Dm = np.transpose(S.d[np.ix_(li, li, vi, vi)], (0, 1, 3, 2))
    pv, pl = V.parities, L.parities
    e = pv[:, None, None] * (pl[None, :, None] + pl[None, None, :])
    s_u = np.where(e % 2 == 1, -1, 1).astype(object)
    theta = np.transpose(s_u[:, :, :, None] * S.d[np.ix_(vi, li, li, vi)], (1, 2, 3, 0))
    R = RepTriple(L, V, beta, normalize(rho), normalize(Dm), normalize(theta))
    rebuilt = semidirect_sum(extract_base(S, split), R)
    for what, got, want in (("alpha", S.a, rebuilt.a), ("bracket2", S.c, rebuilt.c), ("bracket3", S.d, rebuilt.d)):
        diff = np.argwhere(got != want)
        if len(diff):
            raise SplitIncompatible(f"{what} component outside the semidirect pattern",
                                    tuple(int(i) for i in diff[0]))
    return R


# ---------------------------------------------------------------------------
# candidate corpora


@dataclass(frozen=True)
class RandomRepConfig:
    seed: int = 0
    count: int = 120
    bound: int = 2
    density: float = 1 / 3
    module_dims: tuple = ((1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (1, 2), (2, 2))


def _sparse(rng: np.random.Generator, mask: np.ndarray, bound: int, density: float) -> np.ndarray:
    vals = rng.integers(-bound, bound + 1, size=mask.shape)
    keep = rng.random(mask.shape) < density
    return np.where(mask & keep, vals, 0).astype(object)


def random_rep(A: HomLYSA, V: SuperSpace, rng: np.random.Generator, bound: int = 2,
               density: float = 1 / 3) -> RepTriple:
    """Sparse integer candidate with the right parities; usually not a module."""
    L = A.space
    beta = _sparse(rng, np.equal.outer(V.parities, V.parities), bound, density)
    return RepTriple(
        L, V, GradedMap(V, beta, 0),
        _sparse(rng, _operator_mask(L, V, 1), bound, density),
        _sparse(rng, _operator_mask(L, V, 2), bound, density),
        _sparse(rng, _operator_mask(L, V, 2), bound, density),
    )


def engineered_reps(A: HomLYSA) -> list[RepTriple]:
    """Known modules: zero data with assorted beta, plus scalar families on (1|0).

    The scalar family rho(e_0) = r, theta(e_0, e_0) = t on a one-dimensional
    even V is a module whenever the base has a single even basis vector whose
    bracket with itself vanishes and the ternary bracket is zero on it.
    """
    L = A.space
    out = []
    for V in (SuperSpace(1, 0), SuperSpace(0, 1), SuperSpace(1, 1), SuperSpace(2, 1)):
        out.append(RepTriple.zero(L, V))
        out.append(RepTriple.zero(L, V, GradedMap.zero(V)))
        out.append(RepTriple.zero(L, V, GradedMap.diagonal(V, range(2, V.dim + 2))))
    if L.even_dim == 1 and A.d[0, 0, 0, 0] == 0 and A.c[0, 0, 0] == 0:
        V = SuperSpace(1, 0)
        for r, t, b in ((1, 0, 1), (2, 1, 1), (-1, 3, 2), (1, 1, 0)):
            out.append(RepTriple.from_entries(L, V, beta=[[b]], rho=[(0, 0, 0, r)], theta=[(0, 0, 0, 0, t)]))
    return out


def rep_corpus(bases: list[HomLYSA], config: RandomRepConfig = RandomRepConfig()) -> list[tuple[HomLYSA, RepTriple]]:
    """``config.count`` seeded random candidates followed by the engineered modules."""
    rng = np.random.default_rng(config.seed)
    pairs = []
    for k in range(config.count):
        A = bases[k % len(bases)]
        V = SuperSpace(*config.module_dims[int(rng.integers(len(config.module_dims)))])
        pairs.append((A, random_rep(A, V, rng, config.bound, config.density)))
    for A in bases:
        pairs.extend((A, R) for R in engineered_reps(A))
    return pairs

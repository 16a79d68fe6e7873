"""Residual tensors of the Hom-Lie-Yamaguti identities.

The binary-ternary identities are written once, for truncated series of
structure tensors ``fs = [f_0, f_1, ...]`` and ``gs = [g_0, g_1, ...]``. The
order-n residual contains every product f_i . f_j (resp. g_i . f_j, ...) with
i + j = n. Order 0 with ``fs = [bracket2]`` gives the axioms themselves, order 1
with one unknown coefficient gives the (2,3)-cocycle operator, and higher
orders give the deformation equations.

Any operand may carry trailing "batch" axes (used for linear forms over
unknowns); at most one factor in each product may do so.

Index convention: ``f[x, y, m]`` is the m-th coordinate of f(e_x, e_y);
``alpha[m, i]`` is the m-th coordinate of alpha(e_i).
"""

from __future__ import annotations

import numpy as np

from .graded import SuperSpace, bcast, cyclic_signed_sum, sign_array


def _es(spec: str, *ops) -> np.ndarray:
    return np.einsum(spec, *ops, optimize=True)


def twist(t: np.ndarray, a: np.ndarray, slots: int) -> np.ndarray:
    """T(a x_1, ..., a x_k) for the first k slots."""
    for k in range(slots):
        t = np.moveaxis(np.tensordot(t, a, axes=([k], [0])), -1, k)
    return t


def apply_out(a: np.ndarray, t: np.ndarray, arity: int) -> np.ndarray:
    """a applied to the output slot (axis ``arity``) of t."""
    return np.moveaxis(np.tensordot(a, t, axes=([1], [arity])), 0, arity)


# --- products ---------------------------------------------------------------


def b_of_b(f, g, a):
    """f(g(x, y), a z) indexed [x, y, z, m]."""
    return _es("xyp...,pwm...,wz->xyzm...", g, f, a)


def t_of_b(h, g, a):
    """h(g(x, y), a z, a u) indexed [x, y, z, u, m]."""
    return _es("xyp...,pwvm...,wz,vu->xyzum...", g, h, a, a)


def t_on_b(h, g, a):
    """h(a x, a y, g(u, v)) indexed [x, y, u, v, m]."""
    return _es("uvp...,abpm...,ax,by->xyuvm...", g, h, a, a)


def b_of_t_first(f, k, a2):
    """f(k(x, y, u), a2 v) indexed [x, y, u, v, m]."""
    return _es("xyup...,pwm...,wv->xyuvm...", k, f, a2)


def b_of_t_second(f, k, a2):
    """f(a2 u, k(x, y, v)) indexed [x, y, u, v, m]."""
    return _es("xyvp...,wpm...,wu->xyuvm...", k, f, a2)


def t_on_t(h, k, a2):
    """h(a2 x, a2 y, k(u, v, w)) indexed [x, y, u, v, w, m]."""
    return _es("uvwp...,abpm...,ax,by->xyuvwm...", k, h, a2, a2)


def t_of_t_first(h, k, a2):
    """h(k(x, y, u), a2 v, a2 w)."""
    return _es("xyup...,pbcm...,bv,cw->xyuvwm...", k, h, a2, a2)


def t_of_t_second(h, k, a2):
    """h(a2 u, k(x, y, v), a2 w)."""
    return _es("xyvp...,apcm...,au,cw->xyuvwm...", k, h, a2, a2)


def t_of_t_third(h, k, a2):
    """h(a2 u, a2 v, k(x, y, w))."""
    return _es("xywp...,abpm...,au,bv->xyuvwm...", k, h, a2, a2)


# --- single-tensor conditions ----------------------------------------------


def equivariance(t: np.ndarray, a: np.ndarray, arity: int) -> np.ndarray:
    """a(T(x, ...)) - T(a x, ...)."""
    return apply_out(a, t, arity) - twist(t, a, arity)


def super_skew(space: SuperSpace, t: np.ndarray) -> np.ndarray:
    """T(x, y, ...) + (-1)^{|x||y|} T(y, x, ...)."""
    s = sign_array(space, 2, lambda x, y: x * y)
    return t + bcast(s, t) * np.swapaxes(t, 0, 1)


# --- the four binary-ternary identities, order n ---------------------------


def _conv(n, left, right, fn, *extra):
    total = None
    for i in range(n + 1):
        j = n - i
        if i >= len(left) or j >= len(right):
            continue
        term = fn(left[i], right[j], *extra)
        total = term if total is None else total + term
    return total


def cyclic_identity(space, a, fs, gs, n):
    """Order-n residual of: cyclic sum of (-1)^{|x||z|} ([[x,y], a z] + {x,y,z})."""
    inner = _conv(n, fs, fs, b_of_b, a)
    if n < len(gs):
        inner = inner + gs[n]
    return cyclic_signed_sum(inner, space)


def cyclic_ternary_identity(space, a, fs, gs, n):
    """Order-n residual of: cyclic sum over (x,y,z) of (-1)^{|x||z|} {[x,y], a z, a u}."""
    return cyclic_signed_sum(_conv(n, gs, fs, t_of_b, a), space)


def mixed_identity(space, a, fs, gs, n):
    """Order-n residual of
    {a x, a y, [u,v]} - [{x,y,u}, a2 v] - (-1)^{|u|(|x|+|y|)} [a2 u, {x,y,v}].
    """
    a2 = a.dot(a)
    s = sign_array(space, 4, lambda x, y, u, v: u * (x + y))
    lhs = _conv(n, gs, fs, t_on_b, a)
    first = _conv(n, fs, gs, b_of_t_first, a2)
    second = _conv(n, fs, gs, b_of_t_second, a2)
    return lhs - first - bcast(s, second) * second


def ternary_identity(space, a, fs, gs, n):
    """Order-n residual of the fundamental identity of the ternary bracket."""
    a2 = a.dot(a)
    s1 = sign_array(space, 5, lambda x, y, u, v, w: u * (x + y))
    s2 = sign_array(space, 5, lambda x, y, u, v, w: (u + v) * (x + y))
    lhs = _conv(n, gs, gs, t_on_t, a2)
    r1 = _conv(n, gs, gs, t_of_t_first, a2)
    r2 = _conv(n, gs, gs, t_of_t_second, a2)
    r3 = _conv(n, gs, gs, t_of_t_third, a2)
    return lhs - r1 - bcast(s1, r2) * r2 - bcast(s2, r3) * r3

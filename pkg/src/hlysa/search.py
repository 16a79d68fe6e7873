"""Exhaustive enumeration of small algebras with integer structure constants.

Brackets are generated orbit by orbit under super-skewness in the first two
slots, so SHLY3 and SHLY4 hold by construction; the remaining axioms are
checked and only valid algebras are yielded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .algebra import HomLYSA, verify_axioms
from .graded import SuperSpace


@dataclass(frozen=True)
class SearchConfig:
    even_dim: int = 1
    odd_dim: int = 1
    values: tuple = (-1, 0, 1)
    alpha_values: tuple = (-1, 0, 1, 2)  # diagonal twist maps only
    limit: int | None = None


def skew_orbits(space: SuperSpace, arity: int) -> list[tuple]:
    """Representatives (i, j, ..., m) with i <= j that an even super-skew map may use."""
    par = space.parity
    out = []
    for idx in itertools.product(range(space.dim), repeat=arity + 1):
        i, j = idx[0], idx[1]
        if i > j or sum(par(k) for k in idx[:-1]) % 2 != par(idx[-1]):
            continue
        if i == j and par(i) == 0:  # forced to vanish
            continue
        out.append(idx)
    return out


def _entries(orbits, coeffs, space):
    entries = []
    for idx, v in zip(orbits, coeffs):
        if not v:
            continue
        i, j, rest = idx[0], idx[1], idx[2:]
        entries.append((*idx, v))
        if i != j:
            sign = -1 if space.parity(i) * space.parity(j) == 0 else 1
            entries.append((j, i, *rest, sign * v))
    return entries


def small_algebras(config: SearchConfig = SearchConfig()) -> Iterator[HomLYSA]:
    S = SuperSpace(config.even_dim, config.odd_dim)
    o2, o3 = skew_orbits(S, 2), skew_orbits(S, 3)
    found = 0
    for diag in itertools.product(config.alpha_values, repeat=S.dim):
        alpha = [[diag[r] if r == c else 0 for c in range(S.dim)] for r in range(S.dim)]
        for cs in itertools.product(config.values, repeat=len(o2) + len(o3)):
            A = HomLYSA.build(S.even_dim, S.odd_dim, _entries(o2, cs[:len(o2)], S),
                              _entries(o3, cs[len(o2):], S), alpha,
                              name=f"search_{found}")
            if not verify_axioms(A).passed:
                continue
            yield A
            found += 1
            if config.limit is not None and found >= config.limit:
                return

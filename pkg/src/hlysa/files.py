"""JSON file formats for algebras, representations, deformations and formal isos.

Scalars are written as exact fraction strings, sparse entries are sorted, and
zero entries are dropped, so ``dumps(load(text))`` reproduces a canonical file
byte for byte. Anything malformed raises ``FormatError``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import HomLYSA
from .deformation import Deformation, FormalIso
from .graded import GradedMap, MultiTensor, SuperSpace, scalar_str, to_scalar, zeros
from .representation import RepTriple

FORMATS = {"algebra": "hlysa-algebra", "rep": "hlysa-rep", "deformation": "hlysa-deformation",
           "iso": "hlysa-iso"}
VERSION = 1


class FormatError(ValueError):
    """Malformed or inconsistent input file."""


# ---------------------------------------------------------------------------
# low-level parsing


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    return obj[key]


def _int(value, where: str, lo: int = 0, hi: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    if value < lo or (hi is not None and value >= hi):
        raise FormatError(f"{where}: {value} out of range")
    return value


def _scalar(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise FormatError(f"{where}: scalars are strings 'p/q' or integers, got {value!r}")
    try:
        return to_scalar(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def _header(obj, kind: str, where: str):
    fmt = _require(obj, "format", where)
    if fmt != FORMATS[kind]:
        raise FormatError(f"{where}: expected format {FORMATS[kind]!r}, got {fmt!r}")
    if _require(obj, "version", where) != VERSION:
        raise FormatError(f"{where}: unsupported version {obj['version']!r}")


def _space(obj, where: str, even_key="even_dim", odd_key="odd_dim") -> SuperSpace:
    p = _int(_require(obj, even_key, where), f"{where}.{even_key}")
    q = _int(_require(obj, odd_key, where), f"{where}.{odd_key}")
    if p + q == 0:
        raise FormatError(f"{where}: the space is zero-dimensional")
    return SuperSpace(p, q)


def _dense(value, rows: int, cols: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != rows:
        raise FormatError(f"{where}: expected {rows} rows")
    out = zeros((rows, cols))
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise FormatError(f"{where}[{r}]: expected {cols} entries")
        for c, v in enumerate(row):
            out[r, c] = _scalar(v, f"{where}[{r}][{c}]")
    return out


def _sparse(value, shape: tuple, where: str) -> np.ndarray:
    if not isinstance(value, list):
        raise FormatError(f"{where}: expected a list of entries")
    out = zeros(shape)
    seen = set()
    for k, entry in enumerate(value):
        if not isinstance(entry, list) or len(entry) != len(shape) + 1:
            raise FormatError(f"{where}[{k}]: expected {len(shape)} indices and a value")
        idx = tuple(_int(i, f"{where}[{k}]", 0, n) for i, n in zip(entry[:-1], shape))
        if idx in seen:
            raise FormatError(f"{where}[{k}]: duplicate entry {list(idx)}")
        seen.add(idx)
        out[idx] = _scalar(entry[-1], f"{where}[{k}]")
    return out


def _checked(build, where: str):
    try:
        return build()
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


# ---------------------------------------------------------------------------
# writing


def _dense_out(m: np.ndarray) -> list:
    return [[scalar_str(v) for v in row] for row in m.tolist()]


def _sparse_out(arr: np.ndarray) -> list:
    return [[int(i) for i in idx] + [scalar_str(arr[tuple(idx)])] for idx in np.argwhere(arr != 0)]


def _render(obj, indent: int = 0) -> str:
    """JSON with nested containers expanded and flat lists kept on one line."""
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and any(isinstance(v, (list, dict)) for v in obj):
        items = [pad + _render(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj, ensure_ascii=False)


def render(obj) -> str:
    return _render(obj) + "\n"


# ---------------------------------------------------------------------------
# algebras


def algebra_to_dict(A: HomLYSA) -> dict:
    return {
        "format": FORMATS["algebra"], "version": VERSION,
        "name": A.name, "description": A.description,
        "even_dim": A.space.even_dim, "odd_dim": A.space.odd_dim,
        "alpha": _dense_out(A.a),
        "bracket2": _sparse_out(A.c),
        "bracket3": _sparse_out(A.d),
    }


def algebra_from_dict(obj, where: str = "algebra") -> HomLYSA:
    _header(obj, "algebra", where)
    S = _space(obj, where)
    n = S.dim
    alpha = _dense(_require(obj, "alpha", where), n, n, f"{where}.alpha")
    c = _sparse(obj.get("bracket2", []), (n,) * 3, f"{where}.bracket2")
    d = _sparse(obj.get("bracket3", []), (n,) * 4, f"{where}.bracket3")
    name, desc = obj.get("name", ""), obj.get("description", "")
    if not isinstance(name, str) or not isinstance(desc, str):
        raise FormatError(f"{where}: name and description must be strings")
    return _checked(lambda: HomLYSA(S, MultiTensor(S, c), MultiTensor(S, d), GradedMap(S, alpha, 0), name, desc),
                    where)


# ---------------------------------------------------------------------------
# representations


def rep_to_dict(R: RepTriple) -> dict:
    return {
        "format": FORMATS["rep"], "version": VERSION,
        "base_even_dim": R.base.even_dim, "base_odd_dim": R.base.odd_dim,
        "even_dim": R.module_space.even_dim, "odd_dim": R.module_space.odd_dim,
        "beta": _dense_out(R.beta.matrix),
        "rho": _sparse_out(R.rho),
        "D": _sparse_out(R.Dmap),
        "theta": _sparse_out(R.theta),
    }


def rep_from_dict(obj, base: SuperSpace | None = None, where: str = "rep") -> RepTriple:
    _header(obj, "rep", where)
    L = _space(obj, where, "base_even_dim", "base_odd_dim")
    if base is not None and L != base:
        raise FormatError(f"{where}: module is over {L}, the algebra is {base}")
    V = _space(obj, where)
    n, m = L.dim, V.dim
    beta = _dense(_require(obj, "beta", where), m, m, f"{where}.beta")
    rho = _sparse(obj.get("rho", []), (n, m, m), f"{where}.rho")
    Dm = _sparse(obj.get("D", []), (n, n, m, m), f"{where}.D")
    theta = _sparse(obj.get("theta", []), (n, n, m, m), f"{where}.theta")
    return _checked(lambda: RepTriple(L, V, GradedMap(V, beta, 0), rho, Dm, theta), where)


# ---------------------------------------------------------------------------
# deformations and formal isos


def deformation_to_dict(D: Deformation) -> dict:
    return {
        "format": FORMATS["deformation"], "version": VERSION,
        "base": algebra_to_dict(D.base),
        "order": D.order,
        "f": [_sparse_out(t.coeffs) for t in D.f],
        "g": [_sparse_out(t.coeffs) for t in D.g],
    }


def deformation_from_dict(obj, where: str = "deformation") -> Deformation:
    _header(obj, "deformation", where)
    A = algebra_from_dict(_require(obj, "base", where), f"{where}.base")
    N = _int(_require(obj, "order", where), f"{where}.order", 1)
    n = A.dim
    fs, gs = _require(obj, "f", where), _require(obj, "g", where)
    if not isinstance(fs, list) or not isinstance(gs, list) or len(fs) != N or len(gs) != N:
        raise FormatError(f"{where}: f and g must list exactly {N} coefficients")
    f = [_sparse(x, (n,) * 3, f"{where}.f[{i + 1}]") for i, x in enumerate(fs)]
    g = [_sparse(x, (n,) * 4, f"{where}.g[{i + 1}]") for i, x in enumerate(gs)]
    return _checked(lambda: Deformation.from_arrays(A, f, g), where)


def iso_to_dict(phi: FormalIso) -> dict:
    return {
        "format": FORMATS["iso"], "version": VERSION,
        "even_dim": phi.space.even_dim, "odd_dim": phi.space.odd_dim,
        "order": phi.order,
        "phi": [_dense_out(p.matrix) for p in phi.phis[1:]],
    }


def iso_from_dict(obj, where: str = "iso") -> FormalIso:
    _header(obj, "iso", where)
    S = _space(obj, where)
    N = _int(_require(obj, "order", where), f"{where}.order", 1)
    phis = _require(obj, "phi", where)
    if not isinstance(phis, list) or len(phis) != N:
        raise FormatError(f"{where}: phi must list exactly {N} coefficients")
    mats = [_dense(p, S.dim, S.dim, f"{where}.phi[{i + 1}]") for i, p in enumerate(phis)]
    return _checked(lambda: FormalIso(S, (GradedMap.identity(S),) + tuple(GradedMap(S, m, 0) for m in mats)),
                    where)


# ---------------------------------------------------------------------------
# files

_READERS = {"algebra": algebra_from_dict, "rep": rep_from_dict, "deformation": deformation_from_dict,
            "iso": iso_from_dict}
_WRITERS = {HomLYSA: algebra_to_dict, RepTriple: rep_to_dict, Deformation: deformation_to_dict,
            FormalIso: iso_to_dict}


def loads(text: str, kind: str, **kwargs):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return _READERS[kind](obj, **kwargs)


def load(path, kind: str, **kwargs):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, kind, **kwargs)


def dumps(obj) -> str:
    for cls, writer in _WRITERS.items():
        if isinstance(obj, cls):
            return render(writer(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")

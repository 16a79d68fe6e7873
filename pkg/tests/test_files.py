from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given

from hlysa import fixtures as F
from hlysa.files import FormatError, dumps, load, loads
from strategies import candidate_algebras

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


def _kind(path: Path) -> str:
    fmt = json.loads(path.read_text())["format"]
    return fmt.removeprefix("hlysa-")


CANONICAL = sorted(p for p in FIXTURES.glob("*.json") if p.name != "bad_scalar.json")


@pytest.mark.parametrize("path", CANONICAL, ids=lambda p: p.stem)
def test_fixture_round_trip_is_byte_identical(path):
    assert dumps(load(path, _kind(path))) == path.read_text(encoding="utf-8")


@given(candidate_algebras())
def test_algebra_round_trip(A):
    text = dumps(A)
    B = loads(text, "algebra")
    assert dumps(B) == text
    assert (B.c == A.c).all() and (B.d == A.d).all() and (B.a == A.a).all()


def _algebra(**over):
    obj = {"format": "hlysa-algebra", "version": 1, "even_dim": 1, "odd_dim": 1,
           "alpha": [["1", "0"], ["0", "1"]], "bracket2": [], "bracket3": []}
    obj.update(over)
    return json.dumps(obj)


def test_integers_are_accepted_as_scalars():
    A = loads(_algebra(alpha=[[1, 0], [0, "1/2"]], bracket2=[[0, 1, 1, 3]]), "algebra")
    assert str(A.a[1, 1]) == "1/2" and A.c[0, 1, 1] == 3


@pytest.mark.parametrize("over, needle", [
    ({"bracket2": [[0, 1, 1, "1"], [0, 1, 1, "2"]]}, "duplicate"),
    ({"bracket2": [[0, 0, 1, "1"]]}, "parity"),            # even x even -> odd
    ({"bracket2": [[0, 2, 1, "1"]]}, "out of range"),
    ({"alpha": [["1/0", "0"], ["0", "1"]]}, "zero denominator"),
    ({"alpha": [[1.5, 0], [0, 1]]}, "scalars"),
    ({"alpha": [[True, 0], [0, 1]]}, "scalars"),
    ({"bracket2": [[False, 1, 1, "1"]]}, "integer"),
    ({"alpha": [["1", "0"], ["0"]]}, "entries"),
    ({"alpha": [["0", "1"], ["1", "0"]]}, "parity"),       # odd twist map
    ({"format": "hlysa-rep"}, "format"),
    ({"version": 2}, "version"),
    ({"even_dim": 0, "odd_dim": 0}, "zero-dimensional"),
])
def test_malformed_algebras(over, needle):
    with pytest.raises(FormatError, match=needle):
        loads(_algebra(**over), "algebra")


def test_missing_key_and_invalid_json():
    obj = json.loads(_algebra())
    del obj["alpha"]
    with pytest.raises(FormatError, match="alpha"):
        loads(json.dumps(obj), "algebra")
    with pytest.raises(FormatError, match="invalid JSON"):
        loads("{not json", "algebra")
    with pytest.raises(FormatError, match="cannot read"):
        load(FIXTURES / "does_not_exist.json", "algebra")


def test_bad_scalar_fixture():
    with pytest.raises(FormatError, match="alpha"):
        load(FIXTURES / "bad_scalar.json", "algebra")


def test_rep_base_mismatch():
    with pytest.raises(FormatError, match="module is over"):
        load(FIXTURES / "rep_zero_1_1.json", "rep", base=F.abelian(2, 0).space)


def test_deformation_and_iso_order_mismatch():
    obj = json.loads((FIXTURES / "deform_A1_null.json").read_text())
    obj["f"] = obj["f"][:-1]
    with pytest.raises(FormatError, match="exactly"):
        loads(json.dumps(obj), "deformation")
    iso = json.loads((FIXTURES / "iso_A1.json").read_text())
    iso["order"] = 5
    with pytest.raises(FormatError, match="exactly"):
        loads(json.dumps(iso), "iso")


def test_dumps_rejects_unknown_objects():
    with pytest.raises(TypeError):
        dumps(object())

import json

import numpy as np
import pytest

from twistormap import get_preset
from twistormap.errors import SpecParseError
from twistormap.inputs import load, parse_document, parse_text, to_document


def _doc(**changes):
    doc = to_document(get_preset("inoue-s0").manifold, get_preset("inoue-s0").J)
    doc.update(changes)
    return doc


@pytest.mark.parametrize("name", ["kodaira-hermitian", "kodaira-ak", "lie-ak", "inoue-s0", "flat-torus"])
def test_round_trip(name):
    p = get_preset(name)
    spec = parse_text(json.dumps(to_document(p.manifold, p.J, tol=1e-10)))
    assert np.array_equal(spec.manifold.c, p.manifold.c)
    assert np.array_equal(spec.J, p.J)
    assert spec.manifold.orientation == p.manifold.orientation
    assert spec.tol == 1e-10


def test_orientation_round_trip():
    p = get_preset("kodaira-hermitian", eps1=1, eps2=-1)
    spec = parse_document(to_document(p.manifold, p.J))
    assert spec.manifold.orientation == -1


def test_tolerance_object():
    spec = parse_document(_doc(tolerance={"tol": 1e-7, "jacobi": 1e-6}))
    assert spec.tol == 1e-7 and spec.jacobi_tol == 1e-6


def _where(doc):
    with pytest.raises(SpecParseError) as info:
        parse_document(doc)
    return info.value.location


def test_error_locations():
    assert _where([1, 2]) == "<input>"
    d = _doc()
    del d["J"]
    assert _where(d) == "<input>"
    assert _where(_doc(extra=1)) == "<input>"
    assert _where(_doc(name=5)) == "name"
    assert _where(_doc(structure_constants={})) == "structure_constants"
    assert _where(_doc(structure_constants=[5])) == "structure_constants[0]"
    assert _where(_doc(structure_constants=[{"i": 1, "j": 2, "k": 1}])) == "structure_constants[0]"
    assert _where(_doc(structure_constants=[{"i": 1, "j": 2, "k": 9, "c": 1}])) == "structure_constants[0].k"
    assert _where(_doc(structure_constants=[{"i": 1, "j": 2, "k": 1, "c": "x"}])) == "structure_constants[0].c"
    assert _where(_doc(structure_constants=[{"i": True, "j": 2, "k": 1, "c": 1}])) == "structure_constants[0].i"
    assert _where(_doc(structure_constants=[{"i": 2, "j": 2, "k": 1, "c": 1}])) == "structure_constants[0]"
    assert _where(_doc(J=[[0, 1, 0, 0]])) == "J"
    assert _where(_doc(J=[[0, 1, 0], [0] * 4, [0] * 4, [0] * 4])) == "J[0]"
    assert _where(_doc(J=[[0, -1, 0, 0], [1, 0, 0, None], [0] * 4, [0] * 4])) == "J[1][3]"
    assert _where(_doc(orientation=0)) == "orientation"
    assert _where(_doc(orientation=True)) == "orientation"
    assert _where(_doc(tolerance=-1)) == "tolerance"
    assert _where(_doc(tolerance={"tol": 0})) == "tolerance.tol"
    assert _where(_doc(tolerance={"eps": 1})) == "tolerance"


def test_duplicate_partner_rejected():
    sc = [{"i": 1, "j": 2, "k": 1, "c": 1.0}, {"i": 2, "j": 1, "k": 1, "c": -1.0}]
    with pytest.raises(SpecParseError, match="already given"):
        parse_document(_doc(structure_constants=sc))


def test_partner_filled_in():
    spec = parse_document(_doc(structure_constants=[{"i": 3, "j": 1, "k": 2, "c": 0.5}]))
    assert spec.manifold.c[2, 0, 1] == 0.5 and spec.manifold.c[0, 2, 1] == -0.5


def test_json_syntax_error_has_line_and_column():
    with pytest.raises(SpecParseError) as info:
        parse_text('{\n  "J": [1,,]\n}', "doc.json")
    assert info.value.location == "doc.json:2:11"


def test_load(tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(_doc()))
    assert load(path).name == "inoue-s0"
    with pytest.raises(SpecParseError) as info:
        load(tmp_path / "missing.json")
    assert "missing.json" in info.value.location

from __future__ import annotations

import json
import shutil

import pytest

from lgorb import catalog
from lgorb._data import data_dir
from lgorb.errors import CorruptFixture
from lgorb.invpoly import InvPoly, equivalent_up_to_permutation, milnor_number, transpose


def test_primary_rows():
    names = [e.name for e in catalog.primary_entries()]
    assert len(names) == 8
    assert names[0] == "J_{3,0}" and names[-1] == "VNA^1_{0,0}"


def test_j30_entry():
    e = catalog.get_entry("J_{3,0}")
    assert e.f == InvPoly.parse("x^6*y + y^3 + z^2")
    assert e.f_dual == InvPoly.parse("x^6 + x*y^3 + z^2")
    assert e.alphas == (2, 2, 2, 3)


def test_u10_entry():
    e = catalog.get_entry("U10")
    assert (e.gamma_prime, e.gammas, e.n3, e.Gamma) == ((4, 6, 3), (2, 3, 3), 2, (2, 3, 3, 3))


def test_a1_entry():
    e = catalog.get_entry("A_1")
    assert e.f == InvPoly.parse("x^2+y^2+z^2")
    assert milnor_number(e.f) == 1


def test_duals_are_transposes():
    for e in catalog.primary_entries():
        assert equivalent_up_to_permutation(transpose(e.f), e.f_dual), e.name


def test_exceptional_count():
    assert sum(1 for e in catalog.load_catalog() if e.kind == "exceptional") == 14


def test_unknown_entry():
    with pytest.raises(KeyError):
        catalog.get_entry("nope")


def test_entry_json():
    d = catalog.get_entry("NA").to_json()
    json.dumps(d)
    assert d["name"] == "NA^1_{0,0}"


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(schema_version=99),
    lambda d: d["primary"][0].pop("f"),
    lambda d: d["primary"][0].update(f=[[1, 1], [1, 1]]),
])
def test_corrupt_catalog(tmp_path, monkeypatch, mutate):
    data = tmp_path / "data"
    shutil.copytree(data_dir(), data)
    raw = json.loads((data / "catalog.json").read_text())
    mutate(raw)
    (data / "catalog.json").write_text(json.dumps(raw))
    monkeypatch.setenv("LGORB_DATA", str(data))
    with pytest.raises(CorruptFixture):
        catalog.load_catalog()

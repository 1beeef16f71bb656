from pathlib import Path

import pytest

from realizability.dco import catalog
from realizability.dcofile import DcoFileError, dump_dco, load_dco, normalize, parse_dco

DATA = Path(__file__).resolve().parent.parent / "data"
FILES = sorted(DATA.glob("*.dco"))


def test_shipped_files_exist():
    assert {p.name for p in FILES} >= {"trivial.dco", "two_point_c0.dco"}


@pytest.mark.parametrize("path", FILES, ids=lambda p: p.name)
def test_roundtrip(path):
    text = path.read_text()
    doc = load_dco(path)
    assert normalize(dump_dco(doc)) == normalize(text)
    assert parse_dco(dump_dco(doc)).dco.family == doc.dco.family


def test_files_match_catalog():
    cat = catalog()
    pairs = {"trivial": "trivial", "two_point_c0": "two_c0", "two_point_id": "two_id",
             "two_point_consts": "two_consts", "two_point_full": "two_full",
             "three_point_consts": "three_consts"}
    for stem, name in pairs.items():
        d = load_dco(DATA / f"{stem}.dco").dco
        assert tuple(d.carrier) == tuple(cat[name].carrier)
        assert set(d.family) == set(cat[name].family)


def test_c0_document_contents():
    doc = load_dco(DATA / "two_point_c0.dco")
    assert doc.predicates["phi"].values == (0, 1)
    assert doc.morphisms["collapse"].fn == ("u", "u")
    assert doc.cs is None


def test_comments_and_whitespace():
    text = "# header\ndco t\n\ncarrier  *\nfn id *->*   # the identity\nidentity id\n"
    assert len(parse_dco(text).dco.family) == 1


def test_non_functional_graph():
    text = "dco bad\ncarrier 0 1\nfn id 0->0 1->1\nfn f 0->0 0->1\nidentity id\n"
    with pytest.raises(DcoFileError) as info:
        parse_dco(text)
    assert "functional" in str(info.value) and info.value.line == 4


def test_unknown_atom_is_named():
    text = "dco bad\ncarrier 0 1\nfn id 0->0 1->1\nfn f 0->7\nidentity id\n"
    with pytest.raises(DcoFileError) as info:
        parse_dco(text)
    assert "7" in info.value.message and info.value.line == 4 and info.value.column > 1


def test_missing_identity():
    with pytest.raises(DcoFileError) as info:
        parse_dco("dco bad\ncarrier 0 1\nfn id 0->0 1->1\n")
    assert "missing identity declaration" in str(info.value)

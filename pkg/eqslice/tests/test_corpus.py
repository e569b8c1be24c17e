import pytest

import eqslice as eq
from eqslice._corpus import read_data


def test_bundled_corpus(corpus):
    assert "trefoil_right" in corpus
    assert corpus["unknot"] == eq.parse_pd("PD[]")
    assert corpus["t25"].n_crossings == 5
    assert set(corpus.by_name) == set(corpus.names)


def test_registry_names():
    registry = eq.DiagramRegistry()
    assert registry.add(eq.parse_pd("PD[]")) == "diagram 0"
    assert registry.add(eq.hopf_link(), "hopf") == "hopf"
    assert len(registry) == 2
    assert registry["hopf"] == eq.hopf_link()
    with pytest.raises(eq.ConfigError, match="no diagram named"):
        registry["trefoil"]


def test_registry_duplicates():
    registry = eq.DiagramRegistry(prefix="k")
    registry.load_text("a: PD[]\na: PD[O, O]\n")
    assert registry.names == ("a", "a")
    # the newest diagram wins
    assert registry["a"].n_components == 2
    with pytest.warns(UserWarning, match="repeated names"):
        mapping = registry.by_name
    assert mapping["a"].n_components == 2


def test_symmetric_names():
    names = eq.symmetric_names()
    assert {"fig8_tau", "fig8_mirror_tau", "fig8_other_inversion"} <= set(names)
    for name in names:
        if name == "fig8_other_inversion":
            continue
        assert eq.load_symmetric(name).name == name


def test_load_examples():
    assert eq.load_tree("path3_bplus").name == "path3_bplus"
    assert eq.load_plumbing("clasp_b").name == "clasp_b"


def test_missing_data():
    with pytest.raises(eq.ConfigError, match="no bundled data file"):
        read_data("nothing.pd")
    with pytest.raises(eq.ConfigError):
        eq.load_tree("nothing")
    with pytest.raises(eq.ConfigError):
        eq.load_symmetric("nothing")

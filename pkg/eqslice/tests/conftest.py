import sys

import pytest

import eqslice


def pytest_configure(config):
    # config is initialized here rather than in pytest.ini so that `pytest
    # --pyargs eqslice` (which would not find pytest.ini) works.
    for key, value in [
        ("filterwarnings", "error"),
    ]:
        config.addinivalue_line(key, value)

    # rendering must go through matplotlib.figure.Figure only
    assert sys.modules.get("matplotlib.pyplot") is None
    sys.modules["matplotlib.pyplot"] = None


@pytest.fixture
def corpus():
    return eqslice.bundled_corpus()


@pytest.fixture
def fig8_tau():
    return eqslice.load_symmetric("fig8_tau")


@pytest.fixture
def fig8_mirror_tau():
    return eqslice.load_symmetric("fig8_mirror_tau")


@pytest.fixture
def small_limits():
    with eqslice.limits(state_sum_limit=24, unknot_budget=4):
        yield

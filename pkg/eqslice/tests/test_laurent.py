import pytest

from eqslice import LaurentPolynomial as L


def test_zero_terms_dropped():
    p = L({2: 1, 3: 0, -1: 4})
    assert p.terms == {-1: 4, 2: 1}
    assert L({0: 0}) == L()
    assert not L()


def test_arithmetic():
    a = L({1: 1, -1: 1})
    assert a * a == L({2: 1, 0: 2, -2: 1})
    assert a - a == 0
    assert a + 1 == L({1: 1, 0: 1, -1: 1})
    assert 3 * a == L({1: 3, -1: 3})
    assert -a == L({1: -1, -1: -1})


def test_power():
    t = L.monomial(1)
    assert t**3 == L.monomial(3)
    assert (-t) ** -2 == L.monomial(-2)
    assert (t + 1) ** 0 == L.one()
    with pytest.raises(ValueError):
        (t + 1) ** -1
    with pytest.raises(ValueError):
        L.monomial(1, 2) ** -1


def test_rescale_and_substitute():
    p = L({4: 1, -8: 2})
    assert p.rescale(4) == L({1: 1, -2: 2})
    assert p.rescale(4).substitute(4) == p
    with pytest.raises(ValueError):
        L({3: 1}).rescale(2)


def test_evaluate_at_i():
    # 1 + t + t^2 + t^3 vanishes at i
    assert L({0: 1, 1: 1, 2: 1, 3: 1}).evaluate_at_i() == (0, 0)
    assert L({-1: 1}).evaluate_at_i() == (0, -1)
    assert L({2: 3}).evaluate(2) == 12


def test_format():
    p = L({-2: 1, 0: -1, 4: 2})
    assert p.format(denominator=1) == "1*t^-2 - 1 + 2*t^4"
    assert p.format() == "1*t^(-2/2) - 1 + 2*t^(4/2)"
    assert str(L()) == "0"
    assert L({1: 1}) != "t"


def test_degrees():
    p = L({-14: 1, -4: 1, -8: 1})
    assert (p.min_degree(), p.max_degree()) == (-14, -4)
    assert L().max_degree() == 0

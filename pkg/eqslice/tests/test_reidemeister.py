import random

import pytest

import eqslice as eq
from eqslice import DiagramError


def test_remove_kink(corpus):
    t = corpus["trefoil_right"]
    kinked = eq.r1_add(t, 1, variant=0)
    assert kinked.n_crossings == 4
    assert kinked.writhe() == 4
    assert eq.r1_sites(kinked) == [3]
    assert eq.r1_remove(kinked, 3) == t
    assert eq.simplify(kinked) == t


@pytest.mark.parametrize("variant, sign", [(0, 1), (1, -1), (2, -1), (3, 1)])
def test_kink_variants(corpus, variant, sign):
    d = eq.r1_add(corpus["trefoil_right"], 2, variant)
    assert d.sign(3) == sign
    assert d.n_components == 1


def test_kink_on_free_loop(corpus):
    assert eq.r1_add(corpus["unknot"]) == corpus["kink"]
    with pytest.raises(DiagramError, match="no free loop"):
        eq.r1_add(corpus["trefoil_right"])


def test_remove_crossings_makes_loops(corpus):
    d = eq.remove_crossings(corpus["kink"], [0])
    assert d == eq.LinkDiagram((), 1)
    hopf = eq.remove_crossings(corpus["hopf_pos"], [0, 1])
    assert hopf.n_components == 2 and hopf.n_crossings == 0


def test_alternating_has_no_sites(corpus):
    for name in ("hopf_pos", "trefoil_right", "fig8"):
        d = corpus[name]
        assert eq.r1_sites(d) == []
        assert eq.r2_sites(d) == []
        assert eq.r3_sites(d) == []
    with pytest.raises(DiagramError):
        eq.r2_remove(corpus["hopf_pos"], 0, 1)
    with pytest.raises(DiagramError):
        eq.r1_remove(corpus["hopf_pos"], 0)


def test_bigon_insert_and_remove(corpus):
    t = corpus["trefoil_right"]
    face = next(f for f in t.faces() if len(f) == 3)
    pushed = eq.r2_add(t, face, 0, 1, e_over=True)
    assert pushed.n_crossings == 5
    assert pushed.writhe() == 3
    assert eq.r2_sites(pushed)
    assert eq.simplify(pushed).n_crossings == 3


def test_random_perturbation_is_seeded(corpus):
    d = corpus["fig8"]
    a = eq.random_perturbation(d, 12, random.Random(7))
    b = eq.random_perturbation(d, 12, random.Random(7))
    assert a == b
    assert a.n_components == 1


def test_perturbation_keeps_linking(corpus):
    hopf = corpus["hopf_pos"]
    for seed in range(5):
        d = eq.random_perturbation(hopf, 8, random.Random(seed))
        assert d.n_components == 2
        assert eq.linking_matrix(d) == ((0, 1), (1, 0))

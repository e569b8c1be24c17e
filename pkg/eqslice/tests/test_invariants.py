import random

import pytest

import eqslice as eq
from eqslice import LaurentPolynomial as L
from eqslice import LimitExceeded, UnknotStatus

RIGHT_TREFOIL = L({2: 1, 6: 1, 8: -1})
FIG8 = L({-4: 1, -2: -1, 0: 1, 2: -1, 4: 1})


def test_bracket_of_hopf(corpus):
    assert eq.kauffman_bracket(corpus["hopf_pos"]) == L({-4: -1, 4: -1})
    assert eq.kauffman_bracket(corpus["unknot"]) == 1


@pytest.mark.parametrize(
    "name, poly",
    [
        ("unknot", L({0: 1})),
        ("kink", L({0: 1})),
        ("unlink2", L({-1: -1, 1: -1})),
        ("hopf_pos", L({1: -1, 5: -1})),
        ("trefoil_right", RIGHT_TREFOIL),
        ("trefoil_left", RIGHT_TREFOIL.substitute(-1)),
        ("fig8", FIG8),
    ],
)
def test_jones(corpus, name, poly):
    assert eq.jones(corpus[name]) == poly


def test_jones_of_t25(corpus):
    poly = eq.jones(corpus["t25"])
    assert poly == L({-4: 1, -8: 1, -10: -1, -12: 1, -14: -1})
    assert eq.jones_determinant(poly) == 5


@pytest.mark.parametrize(
    "name, det, sig",
    [
        ("unknot", 1, 0),
        ("kink", 1, 0),
        ("trefoil_right", 3, -2),
        ("trefoil_left", 3, 2),
        ("fig8", 5, 0),
        ("t25", 5, 4),
        ("hopf_pos", 2, -1),
        ("unlink2", 0, 0),
    ],
)
def test_determinant_and_signature(corpus, name, det, sig):
    d = corpus[name]
    assert eq.determinant(d) == det
    assert eq.signature(d) == sig


def test_goeritz_needs_connected(corpus):
    union = eq.disjoint_union(corpus["trefoil_right"], corpus["fig8"])
    with pytest.raises(eq.DiagramError):
        eq.goeritz(union)
    assert eq.determinant(union) == 0
    assert eq.signature(union) == -2


def test_arf(corpus):
    assert eq.arf(corpus["unknot"]) == 0
    assert eq.arf(corpus["trefoil_right"]) == 1
    assert eq.arf(corpus["fig8"]) == 1
    with pytest.raises(eq.DiagramError):
        eq.arf(corpus["hopf_pos"])


def test_try_unknot(corpus):
    assert eq.try_unknot(corpus["unknot"]) is UnknotStatus.PROVEN_UNKNOT
    assert eq.try_unknot(corpus["kink"]) is UnknotStatus.PROVEN_UNKNOT
    assert eq.try_unknot(corpus["trefoil_right"]) is UnknotStatus.PROVEN_KNOTTED
    assert str(UnknotStatus.UNKNOWN) == "Unknown"
    with pytest.raises(eq.DiagramError):
        eq.try_unknot(corpus["hopf_pos"])


def test_unknotting_moves_path(corpus):
    d = eq.r1_add(eq.r1_add(corpus["unknot"]), 1, variant=2)
    path = eq.unknotting_moves(d, 3)
    assert path[0] == d
    assert not path[-1].crossings
    assert len(path) == 3
    assert eq.unknotting_moves(d, 1) is None


def test_state_sum_limit(corpus):
    t = corpus["trefoil_right"]
    with eq.limits(state_sum_limit=2):
        with pytest.raises(LimitExceeded) as info:
            eq.jones(t)
        assert info.value.limit == 2 and info.value.actual == 3
        assert eq.try_unknot(t, budget=1) is UnknotStatus.UNKNOWN
    assert eq.get_limit("state_sum_limit") == 24


def test_limits_validation():
    with pytest.raises(eq.ConfigError):
        eq.limits(no_such_limit=3)
    with pytest.raises(eq.ConfigError):
        eq.limits(unknot_budget=0)
    assert eq.current_limits()["unknot_budget"] == 6


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_fig8_invariants_survive_perturbation(corpus, seed):
    d = corpus["fig8"]
    scrambled = eq.random_perturbation(d, 6, random.Random(seed))
    with eq.limits(state_sum_limit=16):
        if scrambled.n_crossings > 16:
            pytest.skip("perturbation grew too large for the state sum")
        assert eq.jones(scrambled) == FIG8
        assert eq.determinant(scrambled) == 5
        assert eq.signature(scrambled) == 0


CORPUS_NAMES = eq.bundled_corpus().names


@pytest.mark.parametrize("chunk", range(10))
@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_jones_survives_random_perturbations(corpus, name, chunk):
    # 10 chunks of 100 seeded move sequences per corpus diagram
    d = corpus[name]
    expected = eq.jones(d)
    for seed in range(100 * chunk, 100 * chunk + 100):
        rng = random.Random(seed)
        scrambled = eq.random_perturbation(d, rng.randint(1, 3), rng)
        assert scrambled.n_components == d.n_components, seed
        assert eq.jones(scrambled) == expected, seed


def test_report(corpus):
    report = eq.invariant_report(corpus["trefoil_right"])
    assert report.determinant == 3
    assert report.unknot_status is UnknotStatus.PROVEN_KNOTTED
    text = report.to_text()
    assert "determinant: 3\n" in text
    assert "arf: 1\n" in text
    assert "unknot_status: ProvenKnotted" in text
    hopf = eq.invariant_report(corpus["hopf_pos"])
    assert hopf.arf is None and hopf.unknot_status is None
    assert "components: 2" in hopf.to_text()


KNOTS = ["unknot", "kink", "trefoil_right", "trefoil_left", "fig8", "t25"]


@pytest.mark.parametrize("seed", range(50))
def test_jones_multiplies_under_connect_sum(corpus, seed):
    rng = random.Random(seed)
    a, b = (corpus[rng.choice(KNOTS)] for _ in range(2))
    edges = tuple(rng.choice(d.components[0]) if d.components else None for d in (a, b))
    s = eq.connect_sum(a, 0, b, 0, edges=None if None in edges else edges)
    assert s.n_components == 1
    assert eq.jones(s) == eq.jones(a) * eq.jones(b)
    assert eq.determinant(s) == eq.determinant(a) * eq.determinant(b)


def test_corpus_determinants_and_mirrors(corpus):
    for name, d in corpus:
        assert eq.determinant(d) == eq.jones_determinant(eq.jones(d)), name
        assert eq.signature(eq.mirror(d)) == -eq.signature(d), name


def test_limits_from_environment():
    from eqslice._limits import _from_environ

    table = _from_environ({"EQSLICE_STATE_SUM_LIMIT": "12", "HOME": "/root"})
    assert table["state_sum_limit"] == 12
    assert table["unknot_budget"] == 6
    with pytest.raises(eq.ConfigError, match="not an integer"):
        _from_environ({"EQSLICE_UNKNOT_BUDGET": "six"})
    with pytest.raises(eq.ConfigError, match="positive integer"):
        _from_environ({"EQSLICE_UNKNOT_BUDGET": "0"})


def test_parallel_state_sum_matches_sequential(corpus):
    t25 = corpus["t25"]
    d = eq.connect_sum(eq.connect_sum(t25, 0, t25, 0), 0, corpus["trefoil_right"], 0)
    assert d.n_crossings == 13  # two chunks of smoothings
    sequential = eq.kauffman_bracket(d)
    with eq.limits(workers=3):
        assert eq.get_limit("workers") == 3
        parallel = eq.kauffman_bracket(d)
        assert eq.jones(d) == eq.jones(t25) ** 2 * RIGHT_TREFOIL
    assert parallel == sequential
    assert list(parallel) == list(sequential)

import pytest

import eqslice as eq
from eqslice import Conclusion, Move, MoveType, UnknottingSequence

pytestmark = pytest.mark.filterwarnings("ignore:.*unknown unknot status")


def disk(*moves):
    return eq.disk_from_sequence(UnknottingSequence(tuple(moves)))


A_PAIR = Move((2, 3), MoveType.A)


def test_disk_from_sequence():
    d = disk(A_PAIR, Move(0, MoveType.B_PLUS))
    assert d.k == 3
    assert d.types == (MoveType.A, MoveType.A, MoveType.B_PLUS)
    assert d.omega == (MoveType.B_PLUS,)
    assert d.eligible
    assert d.describe() == "k=3 (2xA, 1xB+)"
    assert disk().describe() == "k=0 (none)"


def test_embedded_disk():
    cert = eq.check_theorem(disk(), eq.builtin("s2xs2_tau1"))
    assert isinstance(cert, eq.Certificate)
    assert cert.tree is None
    assert "no tubing needed" in cert.to_text()


def test_clause_i():
    result = eq.check_theorem(disk(A_PAIR), eq.builtin("s2xs2_tau1"))
    assert isinstance(result, eq.Rejection)
    assert not result
    assert result.clause == "i"


def test_clause_ii():
    # mirrored convention: a B+ plumbing needs a B- self-intersection
    result = eq.check_theorem(disk(Move(0, MoveType.B_PLUS)), eq.builtin("s2xs2_tau1"))
    assert result.clause == "ii"
    result = eq.check_theorem(disk(A_PAIR), eq.builtin("three_s2xs2(1)"))
    assert result.clause == "ii"
    assert "no self-intersection" in str(result)


def test_clause_iii():
    d = disk(Move(0, MoveType.B_PLUS), Move(1, MoveType.B_MINUS))
    result = eq.check_theorem(d, eq.builtin("three_s2xs2(1)"))
    assert result.clause == "iii"


def test_conventions():
    pt = eq.builtin("s2xs2_tau1")
    d = disk(Move(0, MoveType.B_PLUS))
    assert isinstance(eq.check_theorem(d, pt, convention="as-stated"), eq.Certificate)
    assert isinstance(eq.check_theorem(d, pt), eq.Rejection)
    cert = eq.check_theorem(disk(Move(0, MoveType.B_MINUS)), pt)
    assert cert.convention == "mirrored"
    assert len(cert.tree) == 1
    assert eq.tree_type(cert.tree) is MoveType.B_PLUS
    with pytest.raises(eq.EqsliceError, match="unknown convention"):
        eq.check_theorem(d, pt, convention="flipped")


def test_c_certificate():
    pt = eq.builtin("three_s2xs2(1)")
    cert = eq.check_theorem(disk(Move(0, MoveType.C), A_PAIR), pt)
    assert isinstance(cert, eq.Certificate)
    assert len(cert.tree) == 3
    assert eq.tree_type(cert.tree) is MoveType.C
    assert cert.embedding.is_equivariant(cert.tree, pt)
    text = cert.to_text()
    assert "plumbing: three_s2xs2(1)" in text
    assert "pruned paired A vertices down to 3" in text


def test_certificate_rechecks_tree():
    pt = eq.builtin("three_s2xs2(1)")
    with pytest.raises(eq.TreeError, match="needs a tree"):
        eq.Certificate(pt, None, None, disk(A_PAIR), "mirrored", ())
    et, embedding = eq.derive_embedded_tree(pt)
    with pytest.raises(eq.TreeError, match="k=1"):
        eq.Certificate(pt, et, embedding, disk(Move(0, MoveType.C)), "mirrored", ())


def test_parse_database():
    (entry,) = eq.parse_database(
        "# comment\nentry: K\nquotient: CP2\njones: 2:1 6:1 8:-1\ndeterminant: 3\n"
    )
    assert entry.name == "K"
    assert entry.jones == eq.LaurentPolynomial({2: 1, 6: 1, 8: -1})
    assert entry.citation == ""
    with pytest.raises(eq.DatabaseError, match="before any entry"):
        eq.parse_database("quotient: CP2\n")
    with pytest.raises(eq.DatabaseError, match="lacks determinant"):
        eq.parse_database("entry: K\nquotient: CP2\njones: 0:1\n")
    with pytest.raises(eq.DatabaseError, match="malformed"):
        eq.parse_database("entry: K\nquotient: CP2\njones: a:b\ndeterminant: 1\n")
    with pytest.raises(eq.DatabaseError, match="line 2"):
        eq.parse_database("entry: K\ngenus: 1\n")


def test_bundled_database(corpus):
    (entry,) = eq.load_database()
    assert entry.name == "T(2,-5)"
    assert entry.quotient == "CP2"
    assert entry.determinant == 5
    t25 = corpus["t25"]
    assert (eq.jones(t25), eq.determinant(t25)) == (entry.jones, entry.determinant)


def test_database_from_path(tmp_path):
    path = tmp_path / "tiny.db"
    path.write_text("entry: U\nquotient: S4\njones: 0:1\ndeterminant: 1\n")
    assert [e.name for e in eq.load_database(path)] == ["U"]


def test_quotient_obstruction(fig8_tau, fig8_mirror_tau):
    verdict = eq.quotient_obstruction(fig8_tau, eq.ambient("s2xs2_tau1"))
    assert verdict.conclusion is Conclusion.NOT_SLICE
    assert verdict.evidence.half_axis == "h1"
    assert verdict.evidence.entry.name == "T(2,-5)"
    assert not verdict.evidence.mirrored
    assert verdict.surface == "diagonal S2"

    verdict = eq.quotient_obstruction(fig8_mirror_tau, eq.ambient("s2xs2_tau2"))
    assert verdict.conclusion is Conclusion.NOT_SLICE
    assert verdict.evidence.mirrored

    verdict = eq.quotient_obstruction(fig8_tau, eq.ambient("s2xs2_tau2"))
    assert verdict.conclusion is Conclusion.INCONCLUSIVE

    verdict = eq.quotient_obstruction(fig8_tau, eq.ambient("s4"))
    assert verdict.conclusion is Conclusion.INCONCLUSIVE
    assert verdict.notes == ("no obstruction database for quotient S4",)


ADJUDICATIONS = [
    ("fig8_mirror_tau", "s2xs2_tau1", Conclusion.SLICE),
    ("fig8_tau", "s2xs2_tau1", Conclusion.NOT_SLICE),
    ("fig8_tau", "s2xs2_tau2", Conclusion.SLICE),
    ("fig8_mirror_tau", "s2xs2_tau2", Conclusion.NOT_SLICE),
    ("fig8_tau", "s4", Conclusion.INCONCLUSIVE),
]


@pytest.mark.parametrize("name, tag, conclusion", ADJUDICATIONS)
def test_adjudicate(name, tag, conclusion):
    sd = eq.load_symmetric(name)
    verdict = eq.adjudicate(sd, eq.ambient(tag), search_budget=2)
    assert verdict.conclusion is conclusion
    assert verdict.ambient == tag
    if conclusion is Conclusion.SLICE:
        cert = verdict.certificate
        assert cert.disk.k == 1
        assert cert.knot is sd
        assert eq.tree_type(cert.tree) is eq.plumbing_type(cert.plumbing)


def test_adjudicate_as_stated(fig8_tau):
    # with the convention as stated, the B- plumbing takes the B- moves directly
    verdict = eq.adjudicate(fig8_tau, eq.ambient("s2xs2_tau2"), search_budget=1, convention="as-stated")
    assert verdict.conclusion is Conclusion.SLICE
    assert str(verdict.certificate.disk.sequence) == "B-@0"


@pytest.mark.parametrize("name, tag, conclusion", ADJUDICATIONS)
def test_cross_check_agrees(name, tag, conclusion):
    sd = eq.load_symmetric(name)
    checked = eq.adjudicate(sd, eq.ambient(tag), search_budget=2, cross_check=True)
    assert checked.conclusion is conclusion


def _accepted_certificates():
    for name, tag, conclusion in ADJUDICATIONS:
        if conclusion is Conclusion.SLICE:
            yield eq.adjudicate(eq.load_symmetric(name), eq.ambient(tag), search_budget=2).certificate
    for n in (1, 2):
        pairs = [Move((2 * j, 2 * j + 1), MoveType.A) for j in range(1, n + 1)]
        yield eq.check_theorem(disk(Move(0, MoveType.C), *pairs), eq.builtin("three_s2xs2", n))


def _linking_profile(d):
    return sorted(sorted(abs(v) for v in row) for row in eq.linking_matrix(d))


def test_si_link_matches_mirror_of_associated_link():
    certs = list(_accepted_certificates())
    assert len(certs) == 4
    for cert in certs:
        si = eq.associated_si_link(cert.tree).base
        mirrored = eq.mirror(eq.associated_link(cert.tree.base))
        assert si.n_components == mirrored.n_components
        assert _linking_profile(si) == _linking_profile(mirrored)


@pytest.mark.parametrize("pairs", [0, 1, 2])
def test_acceptance_is_monotone_in_spheres(pairs):
    moves = [Move((2 * j, 2 * j + 1), MoveType.A) for j in range(1, pairs + 1)]
    d = disk(Move(0, MoveType.C), *moves)
    accepted = [isinstance(eq.check_theorem(d, eq.builtin("three_s2xs2", n)), eq.Certificate) for n in range(1, 5)]
    # once accepted, every larger plumbing accepts as well
    assert accepted == sorted(accepted)
    assert accepted.index(True) == max(pairs, 1) - 1


def test_verdict_consistency():
    with pytest.raises(eq.EqsliceError, match="needs a certificate"):
        eq.Verdict(Conclusion.SLICE, "s4", "S2")
    with pytest.raises(eq.EqsliceError, match="needs evidence"):
        eq.Verdict(Conclusion.NOT_SLICE, "s4", "S2")


def test_verdict_output(fig8_tau):
    verdict = eq.adjudicate(fig8_tau, eq.ambient("s2xs2_tau1"))
    out = verdict.to_dict()
    assert out["verdict"] == "NotSlice"
    assert out["knot"] == fig8_tau.name
    assert "T(2,-5)" in out["evidence"]
    text = verdict.to_text()
    assert text.startswith("verdict: NotSlice\nambient: s2xs2_tau1\n")
    assert "matches T(2,-5)" in text


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c_move_with_a_pairs_fills_three_s2xs2(n):
    pt = eq.builtin("three_s2xs2", n)
    pairs = [Move((2 * j, 2 * j + 1), MoveType.A) for j in range(1, n + 1)]
    d = disk(Move(0, MoveType.C), *pairs)
    assert d.k == 2 * n + 1 == pt.n_spheres - 1
    cert = eq.check_theorem(d, pt)
    assert isinstance(cert, eq.Certificate)
    assert len(cert.tree) == d.k
    too_many = disk(Move(0, MoveType.C), Move(1, MoveType.C), *pairs)
    assert eq.check_theorem(too_many, pt).clause == "i"


CLASPS = {
    MoveType.B_PLUS: "s2xs2_tau1",
    MoveType.B_MINUS: "s2xs2_tau2",
    MoveType.C: "three_s2xs2(1)",
}


@pytest.mark.parametrize("omega", list(CLASPS))
@pytest.mark.parametrize("kind", [MoveType.B_PLUS, MoveType.B_MINUS, MoveType.C])
def test_convention_audit(omega, kind):
    pt = eq.builtin(CLASPS[omega])
    d = disk(Move(0, kind))
    as_stated = isinstance(eq.check_theorem(d, pt, "as-stated"), eq.Certificate)
    mirrored = isinstance(eq.check_theorem(d, pt, "mirrored"), eq.Certificate)
    assert as_stated == (kind is omega)
    assert mirrored == (kind is omega.mirrored())
    if omega is MoveType.C:
        assert as_stated == mirrored

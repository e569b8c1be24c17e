import pytest

import eqslice as eq
from eqslice import DiagramError, LinkDiagram, ParseError

TREFOIL = "PD[X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)]"
HOPF = "PD[X(2,3,1,4), X(3,2,4,1)]"


def test_parse_basic():
    d = eq.parse_pd(TREFOIL)
    assert d.n_crossings == 3
    assert d.n_components == 1
    assert d.components == ((1, 2, 3, 4, 5, 6),)
    assert d.writhe() == 3
    assert eq.parse_pd(d.to_pd()) == d


def test_parse_unknot_and_loops():
    assert eq.parse_pd("PD[]") == LinkDiagram((), 1)
    d = eq.parse_pd("PD[O, O]")
    assert d.n_components == 2
    assert d.to_pd() == "PD[O, O]"
    assert eq.parse_pd(" PD [ X( 2,2,1,1 ) ] ").n_crossings == 1


@pytest.mark.parametrize(
    "text, offset",
    [
        ("PD[X(1,2,3)]", 10),
        ("PD[X(1,1,2,2),]", 14),
        ("PD[X(1,1,2,2)] extra", 15),
        ("PX[]", 0),
    ],
)
def test_parse_errors_report_position(text, offset):
    with pytest.raises(ParseError) as info:
        eq.parse_pd(text)
    assert info.value.position == offset
    assert info.value.line == 1


def test_bad_labels():
    with pytest.raises(DiagramError, match="exactly twice"):
        eq.parse_pd("PD[X(1,2,3,4)]")
    with pytest.raises(DiagramError):
        LinkDiagram([(1, 1, 2, 2)], free_loops=-1)


def test_blocks():
    text = "# comment\na: PD[]\nb: PD[X(2,2,1,1)]\n"
    blocks = eq.parse_pd_blocks(text)
    assert [name for name, _ in blocks] == ["a", "b"]
    assert blocks[1][1].n_crossings == 1
    assert eq.parse_pd_blocks("PD[X(2,2,1,1)]")[0][0] == ""
    with pytest.raises(ParseError):
        eq.parse_pd_blocks("   \n# nothing\n")


def test_signs_and_crossing_change():
    hopf = eq.parse_pd(HOPF)
    assert [hopf.sign(c) for c in range(2)] == [1, 1]
    changed = eq.crossing_change(hopf, 0)
    assert changed.crossings[0] == (4, 2, 3, 1)
    # one clasp crossing changed: the components come apart
    assert eq.linking_matrix(changed) == ((0, 0), (0, 0))
    assert eq.jones(changed) == eq.jones(eq.parse_pd("PD[O, O]"))
    assert eq.linking_matrix(eq.mirror(hopf)) == ((0, -1), (-1, 0))
    assert eq.crossing_change(changed, 0) == hopf
    assert eq.change_shift(1) == 1 and eq.change_shift(-1) == -1
    with pytest.raises(DiagramError, match="unknown crossing id"):
        eq.crossing_change(hopf, 2)


def test_mirror(corpus):
    right, left = corpus["trefoil_right"], corpus["trefoil_left"]
    assert eq.mirror(right) == left
    assert eq.mirror(eq.mirror(right)) == right
    assert eq.mirror(corpus["hopf_pos"]) == corpus["hopf_neg"]


def test_reverse_and_linking():
    hopf = eq.parse_pd(HOPF)
    assert eq.linking_matrix(hopf) == ((0, 1), (1, 0))
    rev = eq.reverse(hopf, [0])
    assert eq.linking_matrix(rev) == ((0, -1), (-1, 0))
    assert eq.reverse(eq.reverse(hopf)) == hopf
    with pytest.raises(DiagramError, match="invalid component id"):
        eq.reverse(hopf, [5])


def test_relabel_and_canonical_key(corpus):
    d = corpus["fig8"]
    r = eq.relabel(d, start=d.components[0][3])
    assert r != d
    assert sorted(r.labels) == list(range(1, 9))
    assert eq.canonical_key(r) == eq.canonical_key(d)
    assert eq.canonical_key(corpus["trefoil_right"]) != eq.canonical_key(corpus["trefoil_left"])


def test_connect_sum(corpus):
    t = corpus["trefoil_right"]
    s = eq.connect_sum(t, 0, t, 0)
    assert s.n_crossings == 6
    assert s.n_components == 1
    assert s.writhe() == 6
    u = eq.connect_sum(corpus["unlink2"], 0, t, 0)
    assert u.n_components == 2
    with pytest.raises(DiagramError):
        eq.connect_sum(t, 1, t, 0)


def test_splice_same_component():
    with pytest.raises(DiagramError, match="same component"):
        eq.splice(eq.parse_pd(TREFOIL), 1, 2)


def test_split_pieces_and_faces(corpus):
    union = eq.disjoint_union(corpus["hopf_pos"], corpus["trefoil_right"])
    assert union.split_pieces() == [(0, 1), (2, 3, 4)]
    assert union.is_split()
    # Euler characteristic of a connected diagram on the sphere
    t = corpus["trefoil_right"]
    assert len(t.faces()) == t.n_crossings + 2

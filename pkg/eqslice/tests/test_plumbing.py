from collections import Counter

import networkx as nx
import pytest

import eqslice as eq
from eqslice import MoveType


@pytest.mark.parametrize(
    "name, kind, n_spheres",
    [
        ("s2xs2_tau1", MoveType.B_PLUS, 2),
        ("s2xs2_tau2", MoveType.B_MINUS, 2),
        ("three_s2xs2(1)", MoveType.C, 4),
        ("three_s2xs2(2)", MoveType.C, 6),
    ],
)
def test_builtins(name, kind, n_spheres):
    pt = eq.builtin(name)
    assert eq.validate_plumbing(pt) == []
    assert eq.plumbing_type(pt) is kind
    assert pt.n_spheres == n_spheres
    assert pt.fixed_points() == ["p0"]


def test_builtin_errors():
    with pytest.raises(eq.TreeError):
        eq.builtin("three_s2xs2")
    with pytest.raises(eq.TreeError):
        eq.builtin("three_s2xs2(0)")
    with pytest.raises(eq.ConfigError, match="unknown builtin"):
        eq.builtin("cp2_conj")
    assert eq.plumbing_type(eq.builtin("three_s2xs2", 3)) is MoveType.C


def test_parse_matches_builtin():
    parsed = eq.load_plumbing("chain_c")
    expected = eq.builtin("three_s2xs2(1)")
    assert parsed.points == expected.points
    assert parsed.framings == expected.framings
    assert parsed.sigma == expected.sigma
    assert parsed.point_involution == expected.point_involution
    assert parsed.ambient is eq.ambient("three_s2xs2")


def test_clasp():
    pt = eq.load_plumbing("clasp_b")
    assert eq.plumbing_type(pt) is MoveType.B_PLUS
    assert pt.point_involution == {"p0": "p0"}
    assert pt.ambient.quotient == "CP2"


def test_invalid_plumbings():
    codes = [p.code for p in eq.validate_plumbing(eq.load_plumbing("mismatched_framing"))]
    assert "sigma" in codes
    with pytest.raises(eq.ValidationError):
        eq.plumbing_type(eq.load_plumbing("mismatched_framing"))
    # the fixed point is typed A
    pt = eq.parse_plumbing("sphere S1 0\nsphere S2 0\npoint p0 S1 S2 A\nsigma S1 S2\n")
    assert [p.code for p in eq.validate_plumbing(pt)] == ["type"]
    # a cycle of spheres
    pt = eq.parse_plumbing(
        "sphere S1 0\nsphere S2 0\npoint p0 S1 S2 C\npoint p1 S1 S2 C\n"
    )
    assert [p.code for p in eq.validate_plumbing(pt)] == ["tree"]
    # a C point whose spheres are exchanged
    pt = eq.parse_plumbing("sphere S1 0\nsphere S2 0\npoint p0 S1 S2 C\nsigma S1 S2\n")
    assert [p.code for p in eq.validate_plumbing(pt)] == ["type"]


def test_parse_errors():
    with pytest.raises(eq.ParseError, match="bad framing") as info:
        eq.parse_plumbing("sphere S1 zero\n")
    assert info.value.line == 1
    with pytest.raises(eq.ParseError, match="unknown ambient"):
        eq.parse_plumbing("ambient: k3\n")
    with pytest.raises(eq.ParseError, match="unknown move type") as info:
        eq.parse_plumbing("sphere S1 0\nsphere S2 0\npoint p0 S1 S2 D\n")
    assert info.value.line == 3


def test_plumbing_text_round_trip():
    pt = eq.builtin("three_s2xs2(2)")
    again = eq.parse_plumbing(eq.plumbing_to_text(pt))
    assert eq.plumbing_to_text(again) == eq.plumbing_to_text(pt)
    assert again.point_involution == pt.point_involution


def test_derive_embedded_tree():
    pt = eq.builtin("three_s2xs2(2)")
    et, embedding = eq.derive_embedded_tree(pt)
    assert len(et) == 5
    assert eq.tree_type(et) is MoveType.C
    assert et.fixed_vertices() == ["p0"]
    assert embedding.is_equivariant(et, pt)
    # the arms form a path through the fixed vertex
    g = et.base.graph
    assert sorted(g.edges("p0")) == [("p0", "a1"), ("p0", "b1")]
    assert g.has_edge("a1", "a2") and g.has_edge("b1", "b2")
    assert embedding.sheets["a2"] == ("R1", "R2")


def test_derive_embedded_tree_clasp():
    et, _ = eq.derive_embedded_tree(eq.builtin("s2xs2_tau2"))
    assert len(et) == 1
    assert eq.tree_type(et) is MoveType.B_MINUS


def test_capacity_check():
    pt = eq.builtin("three_s2xs2(2)")
    budget = eq.ImmersedSurfaceBudget.from_plumbing(pt)
    assert budget == eq.ImmersedSurfaceBudget(2, MoveType.C)
    et, _ = eq.derive_embedded_tree(pt)
    assert eq.capacity_check(budget, et) == []
    assert eq.capacity_check(budget, eq.prune_to_size(et, 3)) == []
    small = eq.ImmersedSurfaceBudget(1, MoveType.C)
    assert [p.code for p in eq.capacity_check(small, et)] == ["capacity"]
    wrong = eq.ImmersedSurfaceBudget(2, MoveType.B_PLUS)
    assert [p.code for p in eq.capacity_check(wrong, et)] == ["omega"]
    with pytest.raises(eq.TreeError):
        eq.ImmersedSurfaceBudget(-1, MoveType.C)


def test_ambients():
    assert eq.ambient_tags() == ["s2xs2_tau1", "s2xs2_tau2", "s4", "three_s2xs2"]
    assert eq.ambient("s2xs2_tau2").quotient == "CP2bar"
    assert eq.ambient("s4").sphere_component == "S2"
    with pytest.raises(eq.ConfigError, match="unknown ambient"):
        eq.ambient("nope")


def _rooted_trees(k):
    """One ``(graph, root)`` per isomorphism class of rooted trees on *k* vertices."""
    trees = [nx.empty_graph(1)] if k == 1 else nx.nonisomorphic_trees(k)
    shapes = {}
    for g in trees:
        for root in g.nodes:
            shapes.setdefault(nx.to_nested_tuple(g, root, canonical_form=True), (g, root))
    return list(shapes.values())


def _forests(n, shapes, smallest=(1, 0)):
    """Multisets of rooted shapes of total size *n*, as sorted ``(size, index)`` tuples."""
    if n == 0:
        yield ()
        return
    for size in range(1, n + 1):
        for i in range(len(shapes[size])):
            if (size, i) < smallest:
                continue
            for rest in _forests(n - size, shapes, (size, i)):
                yield ((size, i),) + rest


def _attach_pair(framings, points, sigma, anchor, g, root, tag):
    # a branch and its mirror copy, swapped by sigma
    for i in g.nodes:
        framings[f"R{tag}{i}"] = framings[f"L{tag}{i}"] = 0
        sigma[f"R{tag}{i}"], sigma[f"L{tag}{i}"] = f"L{tag}{i}", f"R{tag}{i}"
    if anchor is not None:
        points[f"r{tag}"] = (anchor, f"R{tag}{root}", MoveType.A)
        points[f"l{tag}"] = (anchor, f"L{tag}{root}", MoveType.A)
    for u, v in g.edges:
        points[f"r{tag}{u}_{v}"] = (f"R{tag}{u}", f"R{tag}{v}", MoveType.A)
        points[f"l{tag}{u}_{v}"] = (f"L{tag}{u}", f"L{tag}{v}", MoveType.A)


def _symmetric_plumbings(max_spheres):
    """
    Every symmetric plumbing shape with one fixed point, up to *max_spheres*.

    With a B point sigma swaps its two spheres, so the plumbing is a rooted
    tree glued to its copy at the roots.  With a C point both spheres are
    fixed and every other sphere lies on a branch hanging off one of them,
    paired with its image; the C shapes are unordered pairs of such forests.
    """
    half = max_spheres // 2
    shapes = {k: _rooted_trees(k) for k in range(1, half + 1)}
    for k in range(1, half + 1):
        for g, root in shapes[k]:
            for kind in (MoveType.B_PLUS, MoveType.B_MINUS):
                framings, points, sigma = {}, {}, {}
                _attach_pair(framings, points, sigma, None, g, root, "")
                points["p0"] = (f"R{root}", f"L{root}", kind)
                yield eq.PlumbingTree.build(framings, points, sigma)
    budget = (max_spheres - 2) // 2
    for a in range(budget + 1):
        for b in range(budget - a + 1):
            for first in _forests(a, shapes):
                for second in _forests(b, shapes):
                    if (a, first) > (b, second):
                        continue
                    framings = {"C0": 0, "C1": 0}
                    points = {"p0": ("C0", "C1", MoveType.C)}
                    sigma = {}
                    for anchor, forest in (("C0", first), ("C1", second)):
                        for j, (size, i) in enumerate(forest):
                            g, root = shapes[size][i]
                            _attach_pair(framings, points, sigma, anchor, g, root, f"{anchor}_{j}_")
                    yield eq.PlumbingTree.build(framings, points, sigma)


def _shape_graph(pt):
    g = nx.Graph()
    for s in pt.spheres:
        g.add_node(s, fixed=pt.sigma[s] == s)
    for a, b, kind in pt.points.values():
        g.add_edge(a, b, kind=kind)
    return g


def test_rooted_tree_counts():
    assert [len(_rooted_trees(k)) for k in range(1, 6)] == [1, 1, 2, 4, 9]
    shapes = {k: _rooted_trees(k) for k in range(1, 4)}
    assert [len(list(_forests(n, shapes))) for n in range(4)] == [1, 1, 2, 4]


def test_derived_trees_of_every_small_plumbing():
    plumbings = list(_symmetric_plumbings(8))
    for pt in plumbings:
        assert eq.validate_plumbing(pt) == []
        et, embedding = eq.derive_embedded_tree(pt)
        assert eq.validate_equivariant(et) == []
        assert len(et) == pt.n_spheres - 1
        assert eq.tree_type(et) is eq.plumbing_type(pt)
        assert embedding.is_equivariant(et, pt)
    # B: 8 rooted trees on at most 4 vertices, for each sign.
    # C: unordered pairs of forests on at most 3 vertices in total.
    by_type = Counter(eq.plumbing_type(pt) for pt in plumbings)
    assert by_type == {MoveType.B_PLUS: 8, MoveType.B_MINUS: 8, MoveType.C: 11}
    assert max(pt.n_spheres for pt in plumbings) == 8
    assert any(
        {"C0", "C1"} <= {s for k, p in pt.points.items() if k != "p0" for s in p[:2]} for pt in plumbings
    )
    # no shape is listed twice
    graphs = [_shape_graph(pt) for pt in plumbings]
    node_match = nx.algorithms.isomorphism.categorical_node_match("fixed", None)
    edge_match = nx.algorithms.isomorphism.categorical_edge_match("kind", None)
    for i, g in enumerate(graphs):
        for h in graphs[i + 1:]:
            assert not nx.is_isomorphic(g, h, node_match=node_match, edge_match=edge_match)

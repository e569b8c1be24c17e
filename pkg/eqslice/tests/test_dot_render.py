import pytest
from matplotlib.figure import Figure

import eqslice as eq


def test_tree_to_dot():
    dot = eq.tree_to_dot(eq.load_tree("path3_bplus"))
    assert dot.startswith('graph "path3_bplus" {\n')
    assert '"v0" [label="v0\\nB+", shape=doublecircle];' in dot
    # the edge a-v0 is in P at both ends
    assert '"a" -- "v0" [color="red;0.5:red"];' in dot
    assert '"b" -- "v0" [color="red;0.5:blue"];' in dot
    assert dot.endswith("}\n")


def test_plain_tree_to_dot():
    bt = eq.parse_tree("vertex x\nvertex y\nedge x y\nP x y\n")
    dot = eq.tree_to_dot(bt)
    assert dot.startswith('graph "tree" {')
    assert "doublecircle" not in dot
    assert '"x" -- "y" [color="red;0.5:blue"];' in dot


def test_plumbing_to_dot():
    dot = eq.plumbing_to_dot(eq.builtin("three_s2xs2(1)"))
    assert 'label="p0: C", style=bold' in dot
    assert dot.count(" -- ") == 3
    # exchanged spheres share a fill colour
    lines = {line.split()[0]: line for line in dot.splitlines() if "fillcolor" in line}
    assert lines['"R1"'].split("fillcolor=")[1] == lines['"L1"'].split("fillcolor=")[1]
    assert lines['"R1"'].split("fillcolor=")[1] != lines['"C0"'].split("fillcolor=")[1]


def test_dot_escapes_quotes():
    pt = eq.PlumbingTree.build(
        {'S"1': 0, 'S"2': 0},
        {'p"0': ('S"1', 'S"2', eq.MoveType.B_PLUS)},
        {'S"1': 'S"2', 'S"2': 'S"1'},
        name='two "spheres"',
    )
    dot = eq.plumbing_to_dot(pt)
    assert dot.startswith('graph "two \\"spheres\\"" {\n')
    assert '  "S\\"1" [label="S\\"1\\n0", ' in dot
    assert '"S\\"1" -- "S\\"2" [label="p\\"0: B+", style=bold];' in dot
    et, _ = eq.derive_embedded_tree(pt)
    assert '"p\\"0" [label="p\\"0\\nB+", shape=doublecircle];' in eq.tree_to_dot(et)


@pytest.mark.parametrize("name", ["path3_bplus", "caterpillar5_c"])
def test_render_tree(name, tmp_path):
    fig = eq.render_tree(eq.load_tree(name))
    assert isinstance(fig, Figure)
    assert fig.get_label() == name
    fig.savefig(tmp_path / f"{name}.png")
    assert (tmp_path / f"{name}.png").stat().st_size > 0


def test_render_plumbing(tmp_path):
    fig = eq.render_plumbing(eq.builtin("three_s2xs2(2)"), label="arms")
    assert isinstance(fig, Figure)
    assert fig.get_label() == "arms"
    fig.savefig(tmp_path / "arms.svg")

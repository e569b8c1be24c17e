"""Graphviz DOT export for trees and plumbings."""
from ._eqtree import EquivariantTree

_SIDE_COLOR = {"P": "red", "Q": "blue"}


def _escape(text):
    return str(text).replace("\\", "\\\\").replace('"', '\\"')


def _quote(text):
    return '"' + _escape(text) + '"'


def tree_to_dot(tree):
    """
    DOT source for a (possibly equivariant) bipartitioned tree.

    Each edge is drawn in two halves coloured by the bipartition class it
    belongs to at either end (P red, Q blue).  Weights are printed under
    the vertex ids and the fixed vertex is drawn as a double circle.
    """
    et = tree if isinstance(tree, EquivariantTree) else None
    bt = et.base if et else tree
    name = et.name if et and et.name else "tree"
    lines = [f"graph {_quote(name)} {{"]
    for v in bt.vertices:
        attrs = []
        if et:
            attrs.append(f'label="{_escape(v)}\\n{et.weight[v]}"')
            if et.rho[v] == v:
                attrs.append("shape=doublecircle")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(v)}{suffix};")
    for a, b in sorted(tuple(sorted(e)) for e in bt.graph.edges):
        tail, head = _SIDE_COLOR[bt.side(a, b)], _SIDE_COLOR[bt.side(b, a)]
        lines.append(f'  {_quote(a)} -- {_quote(b)} [color="{tail};0.5:{head}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def plumbing_to_dot(pt):
    """
    DOT source for a plumbing tree: spheres as nodes, points as edges.

    The fixed point is drawn bold; sigma pairs of spheres share a colour
    index so the symmetry is visible.
    """
    lines = [f"graph {_quote(pt.name or 'plumbing')} {{"]
    fixed = set(pt.fixed_points())
    orbits = {}
    for s in pt.spheres:
        key = min(s, pt.sigma.get(s, s))
        orbits.setdefault(key, len(orbits) + 1)
    for s in pt.spheres:
        index = orbits[min(s, pt.sigma.get(s, s))]
        lines.append(
            f'  {_quote(s)} [label="{_escape(s)}\\n{pt.framings[s]}", colorscheme=set312, '
            f"style=filled, fillcolor={(index - 1) % 12 + 1}];"
        )
    for k in sorted(pt.points):
        a, b, kind = pt.points[k]
        style = ", style=bold" if k in fixed else ""
        lines.append(f'  {_quote(a)} -- {_quote(b)} [label={_quote(f"{k}: {kind}")}{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"

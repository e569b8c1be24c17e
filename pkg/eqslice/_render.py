"""
Pictures of trees and plumbings.

Figures are built with the object oriented API and never touch pyplot, so
rendering works headless and does not register global state.
"""
import logging

import networkx as nx
from matplotlib.figure import Figure

from ._eqtree import EquivariantTree

_log = logging.getLogger(__name__)

SIDE_COLORS = {"P": "tab:red", "Q": "tab:blue"}


def _layered(graph, root):
    """Positions with one column per distance from *root*."""
    depth = nx.single_source_shortest_path_length(graph, root)
    layered = nx.Graph()
    for v in sorted(graph.nodes):
        layered.add_node(v, layer=depth[v])
    return nx.multipartite_layout(layered, subset_key="layer", align="horizontal")


def render_tree(tree, *, figsize=(6, 4), label=None):
    """
    Draw a bipartitioned tree.

    Every edge is drawn in two halves, coloured by the bipartition class of
    the edge at the nearer endpoint.  For an equivariant tree the weights
    are written under the vertex ids and the fixed vertex is ringed.

    Returns
    -------
    matplotlib.figure.Figure
    """
    et = tree if isinstance(tree, EquivariantTree) else None
    bt = et.base if et else tree
    root = et.fixed_vertices()[0] if et and et.fixed_vertices() else bt.vertices[0]
    pos = _layered(bt.graph, root)
    fig = Figure(figsize=figsize)
    fig.set_label(label or (et.name if et else "") or "tree")
    ax = fig.add_subplot()
    for a, b in bt.graph.edges:
        (xa, ya), (xb, yb) = pos[a], pos[b]
        xm, ym = (xa + xb) / 2, (ya + yb) / 2
        ax.plot([xa, xm], [ya, ym], color=SIDE_COLORS[bt.side(a, b)], lw=2, zorder=1)
        ax.plot([xm, xb], [ym, yb], color=SIDE_COLORS[bt.side(b, a)], lw=2, zorder=1)
    for v in bt.vertices:
        x, y = pos[v]
        fixed = et is not None and et.rho[v] == v
        ax.scatter([x], [y], s=400, color="white", edgecolors="black",
                   linewidths=3 if fixed else 1, zorder=2)
        text = f"{v}\n{et.weight[v]}" if et else str(v)
        ax.annotate(text, (x, y), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_axis_off()
    ax.margins(0.2)
    return fig


def render_plumbing(pt, *, figsize=(6, 4), label=None):
    """
    Draw a plumbing tree: spheres as nodes, plumbing points as edges.

    Spheres exchanged by sigma share a colour; the fixed point is drawn
    thick and labelled with its type.
    """
    graph = nx.Graph()
    graph.add_nodes_from(pt.spheres)
    for k, (a, b, _) in pt.points.items():
        graph.add_edge(a, b, point=k)
    fixed = pt.fixed_points()
    root = pt.points[fixed[0]][0] if fixed else pt.spheres[0]
    pos = _layered(graph, root)
    fig = Figure(figsize=figsize)
    fig.set_label(label or pt.name or "plumbing")
    ax = fig.add_subplot()
    colors = {}
    for s in pt.spheres:
        key = min(s, pt.sigma.get(s, s))
        colors.setdefault(key, f"C{len(colors) % 10}")
    for k in sorted(pt.points):
        a, b, kind = pt.points[k]
        (xa, ya), (xb, yb) = pos[a], pos[b]
        ax.plot([xa, xb], [ya, yb], color="black", lw=3 if k in fixed else 1, zorder=1)
        ax.annotate(f"{k}: {kind}", ((xa + xb) / 2, (ya + yb) / 2), fontsize=7,
                    ha="center", va="bottom")
    for s in pt.spheres:
        x, y = pos[s]
        color = colors[min(s, pt.sigma.get(s, s))]
        ax.scatter([x], [y], s=500, color=color, edgecolors="black", zorder=2)
        ax.annotate(f"{s}\n{pt.framings[s]}", (x, y), ha="center", va="center",
                    fontsize=8, zorder=3)
    ax.set_axis_off()
    ax.margins(0.2)
    _log.debug("rendered plumbing %s with %d spheres", pt.name, pt.n_spheres)
    return fig

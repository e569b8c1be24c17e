"""
Locally bipartitioned trees, their equivariant refinements and the
(strongly invertible) links associated with them.

Vertex ids are strings.  An edge at ``v`` is named by its other endpoint,
so ``P_v`` and ``Q_v`` are sets of neighbours of ``v``.
"""
import logging
from dataclasses import dataclass, field

import networkx as nx

from ._errors import DiagramError, ParseError, Problem, TreeError, ValidationError
from ._linkdiag import LinkDiagram, mirror, splice
from ._symdiag import MoveType, OnAxisCrossing, SymmetricDiagram, mirror_symmetric
from ._symdiag import slot_action

_log = logging.getLogger(__name__)

# positive Hopf link; component P is edges {1, 2}, component Q is {3, 4}
_HOPF = ((2, 3, 1, 4), (3, 2, 4, 1))
_HOPF_EDGES = {"P": (1, 2), "Q": (3, 4)}


def hopf_link(sign=1):
    """The two crossing Hopf link with linking number *sign*."""
    d = LinkDiagram(_HOPF)
    return d if sign > 0 else mirror(d)


@dataclass(frozen=True, eq=False)
class BipartitionedTree:
    """
    A tree with a bipartition ``(P_v, Q_v)`` of the edges at each vertex.

    Attributes
    ----------
    graph : networkx.Graph
    partition : dict
        Vertex -> ``(frozenset P_v, frozenset Q_v)`` of neighbours.
    """

    graph: nx.Graph
    partition: dict

    @classmethod
    def from_edges(cls, vertices, edges, p_sides):
        """
        Build a tree from a vertex list, an edge list and the P sides.

        ``p_sides`` maps a vertex to the neighbours forming ``P_v``; every
        other neighbour goes to ``Q_v``.
        """
        graph = nx.Graph()
        graph.add_nodes_from(str(v) for v in vertices)
        graph.add_edges_from((str(a), str(b)) for a, b in edges)
        partition = {}
        for v in graph.nodes:
            p = frozenset(str(u) for u in p_sides.get(v, ()))
            partition[v] = (p, frozenset(graph.neighbors(v)) - p)
        return cls(graph, partition)

    @property
    def vertices(self):
        return sorted(self.graph.nodes)

    def side(self, v, w):
        """``"P"`` or ``"Q"``: the class of the edge ``{v, w}`` at ``v``."""
        p, q = self.partition[v]
        if w in p:
            return "P"
        if w in q:
            return "Q"
        raise TreeError(f"{w!r} is not a neighbour of {v!r}")

    def __eq__(self, other):
        if not isinstance(other, BipartitionedTree):
            return NotImplemented
        return (
            set(self.graph.nodes) == set(other.graph.nodes)
            and {frozenset(e) for e in self.graph.edges}
            == {frozenset(e) for e in other.graph.edges}
            and self.partition == other.partition
        )

    __hash__ = None


def validate_tree(bt):
    """Problems with the tree shape or the bipartitions (empty if none)."""
    problems = []
    g = bt.graph
    if g.number_of_nodes() == 0 or not nx.is_tree(g):
        problems.append(Problem("tree", None, "underlying graph is not a finite tree"))
    for v in g.nodes:
        if v not in bt.partition:
            problems.append(Problem("bipartition", v, f"vertex {v} has no bipartition"))
            continue
        p, q = bt.partition[v]
        if p & q:
            problems.append(Problem("bipartition", v, f"P and Q overlap at {v}"))
        if p | q != set(g.neighbors(v)):
            problems.append(Problem("bipartition", v, f"P and Q do not cover the edges at {v}"))
    return problems


@dataclass(frozen=True, eq=False)
class EquivariantTree:
    """
    A bipartitioned tree with an involution ``rho`` and vertex weights.

    Attributes
    ----------
    base : BipartitionedTree
    rho : dict
        Involutive automorphism of the tree.
    weight : dict
        Vertex -> `MoveType`.
    name : str
    """

    base: BipartitionedTree
    rho: dict
    weight: dict
    name: str = field(default="")

    @property
    def vertices(self):
        return self.base.vertices

    def fixed_vertices(self):
        return [v for v in self.vertices if self.rho.get(v) == v]

    def __len__(self):
        return self.base.graph.number_of_nodes()

    def __eq__(self, other):
        if not isinstance(other, EquivariantTree):
            return NotImplemented
        return self.base == other.base and self.rho == other.rho and self.weight == other.weight

    __hash__ = None


def _image(rho, vertices):
    return frozenset(rho[u] for u in vertices)


def validate_equivariant(et):
    """
    Check the four conditions of an equivariantly bipartitioned tree.

    Returns
    -------
    list of Problem
        Codes are ``"condition 1"`` to ``"condition 4"`` for the numbered
        conditions, ``"tree"``/``"bipartition"`` for the base and
        ``"weights"`` for the single non-A vertex rule.
    """
    problems = validate_tree(et.base)
    if problems:
        return problems
    g = et.base.graph
    rho = et.rho
    vertices = set(g.nodes)
    if set(rho) != vertices or any(rho[v] not in vertices or rho[rho[v]] != v for v in vertices):
        problems.append(Problem("condition 1", None, "rho is not an involution on the vertices"))
        return problems
    for a, b in g.edges:
        if not g.has_edge(rho[a], rho[b]):
            problems.append(Problem("condition 1", a, f"rho does not map edge {a}-{b} to an edge"))
    fixed = [v for v in sorted(vertices) if rho[v] == v]
    if len(fixed) != 1:
        problems.append(
            Problem("condition 1", fixed or None, f"rho must fix exactly one vertex, fixes {len(fixed)}")
        )
    for v in sorted(vertices):
        w = et.weight.get(v)
        if not isinstance(w, MoveType):
            problems.append(Problem("weights", v, f"vertex {v} has no weight"))
            continue
        p, q = et.base.partition[v]
        rp = _image(rho, p)
        rv = rho[v]
        if w is MoveType.A:
            if rv == v:
                problems.append(Problem("condition 2", v, f"A vertex {v} is fixed by rho"))
            elif et.weight.get(rv) is not MoveType.A:
                problems.append(Problem("condition 2", v, f"image of A vertex {v} is not A"))
            elif rp not in et.base.partition[rv]:
                problems.append(Problem("condition 2", v, f"rho(P_{v}) is neither P nor Q of {rv}"))
        elif w in (MoveType.B_PLUS, MoveType.B_MINUS):
            if rv != v:
                problems.append(Problem("condition 3", v, f"B vertex {v} is not fixed by rho"))
            elif rp != q:
                problems.append(Problem("condition 3", v, f"rho(P_{v}) != Q_{v}"))
        else:
            if rv != v:
                problems.append(Problem("condition 4", v, f"C vertex {v} is not fixed by rho"))
            elif rp != p:
                problems.append(Problem("condition 4", v, f"rho(P_{v}) != P_{v}"))
    special = [v for v in sorted(vertices) if et.weight.get(v) not in (MoveType.A, None)]
    if len(special) != 1:
        problems.append(
            Problem("weights", special or None, f"exactly one vertex must be B+, B- or C, found {len(special)}")
        )
    return problems


def check_equivariant(et):
    problems = validate_equivariant(et)
    if problems:
        raise ValidationError(problems)
    return et


def tree_type(et):
    """The weight of the fixed vertex; raises `ValidationError` if invalid."""
    check_equivariant(et)
    (v,) = et.fixed_vertices()
    return et.weight[v]


def _without(et, doomed):
    g = et.base.graph.copy()
    g.remove_nodes_from(doomed)
    partition = {
        v: (p - doomed, q - doomed)
        for v, (p, q) in et.base.partition.items()
        if v not in doomed
    }
    return EquivariantTree(
        BipartitionedTree(g, partition),
        {v: r for v, r in et.rho.items() if v not in doomed},
        {v: w for v, w in et.weight.items() if v not in doomed},
        et.name,
    )


def prune_to_size(et, k):
    """
    Remove rho-paired A leaves until *k* vertices remain.

    Leaves farthest from the fixed vertex go first, ties broken by id.

    Raises
    ------
    TreeError
        If *k* is even or out of range, or no removable pair is left.
    """
    kind = tree_type(et)
    n = len(et)
    if k % 2 == 0 or not 1 <= k <= n:
        raise TreeError(f"target size must be odd and in [1, {n}], got {k}")
    (root,) = et.fixed_vertices()
    while len(et) > k:
        g = et.base.graph
        depth = nx.single_source_shortest_path_length(g, root)
        leaves = [
            v
            for v in g.nodes
            if g.degree(v) == 1
            and v != root
            and et.weight[v] is MoveType.A
            and g.degree(et.rho[v]) == 1
            and not g.has_edge(v, et.rho[v])
        ]
        if not leaves:
            raise TreeError(f"no removable leaf pair in tree with vertices {et.vertices}")
        v = min(leaves, key=lambda u: (-depth[u], u))
        _log.debug("pruning leaf pair %s, %s", v, et.rho[v])
        et = _without(et, {v, et.rho[v]})
    check_equivariant(et)
    assert tree_type(et) is kind
    return et


# ---- associated links -----------------------------------------------------
class _Builder:
    """Accumulates Hopf pieces and splices them, tracking edge choices."""

    def __init__(self):
        self.diagram = LinkDiagram()
        self.edges = {}  # (vertex, side) -> candidate labels
        self.uses = {}

    def add(self, vertex, piece, labels):
        off = self.diagram.max_label()
        n0 = self.diagram.n_crossings
        crossings = list(self.diagram.crossings) + [
            tuple(v + off for v in x) for x in piece.crossings
        ]
        self.diagram = LinkDiagram(crossings)
        for side, pair in labels.items():
            self.edges[vertex, side] = tuple(v + off for v in pair)
        return n0, off

    def site(self, vertex, side):
        """Next edge of the piece's component, alternating between its edges."""
        labels = self.edges[vertex, side]
        k = self.uses.get((vertex, side), 0)
        self.uses[vertex, side] = k + 1
        return labels[k % len(labels)]


def _bfs_edges(graph, root):
    order = []
    for parent, child in nx.bfs_edges(graph, root, sort_neighbors=sorted):
        order.append((parent, child))
    return order


def associated_link(bt, signs=None, root=None):
    """
    The link associated with a bipartitioned tree.

    Each vertex contributes a Hopf link whose components are labelled P
    and Q; for every edge ``{v, w}`` the component ``pi_v(e)`` of ``v``'s
    Hopf link is connect-summed with the component ``pi_w(e)`` of ``w``'s.

    Parameters
    ----------
    bt : BipartitionedTree
    signs : dict, optional
        Vertex -> +1 or -1, the handedness of its Hopf link (default +1).
    root : str, optional
        Vertex the breadth-first sweep starts from; the smallest id by
        default.

    Returns
    -------
    LinkDiagram
        ``len(V) + 1`` components.
    """
    problems = validate_tree(bt)
    if problems:
        raise ValidationError(problems)
    signs = signs or {}
    root = root if root is not None else bt.vertices[0]
    builder = _Builder()
    builder.add(root, hopf_link(signs.get(root, 1)), _HOPF_EDGES)
    for parent, child in _bfs_edges(bt.graph, root):
        builder.add(child, hopf_link(signs.get(child, 1)), _HOPF_EDGES)
        e1 = builder.site(parent, bt.side(parent, child))
        e2 = builder.site(child, bt.side(child, parent))
        builder.diagram = splice(builder.diagram, e1, e2)
    return builder.diagram


def _fixed_model(weight):
    """The symmetric Hopf link for the fixed vertex, by weight."""
    base = LinkDiagram(_HOPF)
    if weight is MoveType.C:
        return SymmetricDiagram(
            base,
            {0: 0, 1: 1},
            {1: 2, 2: 1, 3: 4, 4: 3},
            (OnAxisCrossing(0, "C"), OnAxisCrossing(1, "C")),
        )
    sd = SymmetricDiagram(
        base,
        {0: 0, 1: 1},
        {1: 3, 3: 1, 2: 4, 4: 2},
        (OnAxisCrossing(0, "B", 0), OnAxisCrossing(1, "B", 0)),
    )
    return mirror_symmetric(sd) if weight is MoveType.B_MINUS else sd


# edges of the fixed models drawn on the right, per component
_FIXED_SITES = {
    MoveType.B_PLUS: {"P": (2,), "Q": (3,)},
    MoveType.B_MINUS: {"P": (2,), "Q": (3,)},
    MoveType.C: {"P": (1,), "Q": (3,)},
}


def _image_crossing(x, sign, off):
    if sign > 0:
        return tuple(v + off for v in (x[3], x[2], x[1], x[0]))
    return tuple(v + off for v in (x[1], x[0], x[3], x[2]))


def associated_si_link(et):
    """
    The strongly invertible link associated with an equivariant tree.

    The fixed vertex's Hopf link uses the symmetric model of its weight;
    each rho-pair of vertices receives a Hopf link on the right and its
    mirror image on the left, and every connected sum is done together
    with its mirror image.  The image of a component that ends up in an
    iota-invariant link component is oriented backwards, as iota reverses
    invariant components.

    Returns
    -------
    SymmetricDiagram
        Validates, and forgetting the symmetry gives a diagram isotopic to
        ``associated_link(et.base)`` with the fixed vertex's Hopf link
        negative for weight B-.
    """
    kind = tree_type(et)
    (root,) = et.fixed_vertices()
    bt = et.base
    rho = et.rho

    # link components as classes of (vertex, side)
    classes = nx.utils.UnionFind()
    for a, b in bt.graph.edges:
        classes.union((a, bt.side(a, b)), (b, bt.side(b, a)))
    invariant = set()
    if kind is MoveType.C:
        invariant = {classes[root, "P"], classes[root, "Q"]}

    model = _fixed_model(kind)
    crossings = list(model.base.crossings)
    iota_c = dict(model.iota_crossings)
    iota_e = dict(model.iota_edges)
    right = set()
    sites = {(root, side): labels for side, labels in _FIXED_SITES[kind].items()}
    uses = {}

    def site(vertex, side):
        labels = sites[vertex, side]
        k = uses.get((vertex, side), 0)
        uses[vertex, side] = k + 1
        return labels[k % len(labels)]

    # right-hand representative of every rho-pair, inherited down the tree
    on_right = {}
    plan = []
    for parent, child in _bfs_edges(bt.graph, root):
        if parent == root:
            if rho[child] in on_right:
                on_right[child] = not on_right[rho[child]]
            else:
                on_right[child] = True
        else:
            on_right[child] = on_right[parent]
        if on_right[child]:
            plan.append((parent, child))

    for parent, child in plan:
        off = max(iota_e)
        n0 = len(crossings)
        hopf = hopf_link(1)
        mine = [tuple(v + off for v in x) for x in hopf.crossings]
        image = [_image_crossing(x, hopf.sign(k), off + 4) for k, x in enumerate(hopf.crossings)]
        reversed_labels = set()
        for side, pair in _HOPF_EDGES.items():
            if classes[child, side] in invariant:
                reversed_labels.update(v + off + 4 for v in pair)
        image = [
            (x[2], x[3], x[0], x[1]) if x[0] in reversed_labels else x for x in image
        ]
        crossings.extend(mine + image)
        for k in range(len(mine)):
            iota_c[n0 + k] = n0 + len(mine) + k
            iota_c[n0 + len(mine) + k] = n0 + k
            right.add(n0 + k)
        for v in range(1, 5):
            iota_e[v + off] = v + off + 4
            iota_e[v + off + 4] = v + off
        for side, pair in _HOPF_EDGES.items():
            sites[child, side] = tuple(v + off for v in pair)

    # slot actions are fixed before splicing; splices only move labels
    staged = SymmetricDiagram(LinkDiagram(crossings), iota_c, iota_e, model.axis, frozenset(right))
    sigma = {}
    for c in range(len(crossings)):
        action = slot_action(staged, c)
        if action is None:
            raise DiagramError(f"internal: crossing {c} lost its symmetry")
        sigma[c] = action

    diagram = staged.base
    for parent, child in plan:
        e1 = site(parent, bt.side(parent, child))
        e2 = site(child, bt.side(child, parent))
        m1, m2 = iota_e[e1], iota_e[e2]
        diagram = splice(diagram, e1, e2)
        diagram = splice(diagram, m1, m2)
        _log.debug("equivariant connect sums at (%d, %d) and (%d, %d)", e1, e2, m1, m2)

    edges = {}
    for c, x in enumerate(diagram.crossings):
        y = diagram.crossings[iota_c[c]]
        kind_, c0 = sigma[c]
        for j, label in enumerate(x):
            target = y[(c0 - j) % 4] if kind_ == "reflection" else y[(j + 2) % 4]
            if edges.setdefault(label, target) != target:
                raise DiagramError(f"internal: edge {label} has two images")
    result = SymmetricDiagram(
        diagram, iota_c, edges, model.axis, frozenset(right), name=et.name
    )
    return result


# ---- file format ----------------------------------------------------------
def parse_tree(text):
    """
    Parse a tree file.

    One statement per line, ``#`` starts a comment::

        name: path3_bplus
        vertex v0 B+
        vertex a A
        vertex b A
        edge a v0
        edge v0 b
        P v0 a
        P a v0
        P b v0
        rho a b

    ``P v u ...`` lists the neighbours in ``P_v``; the others are in
    ``Q_v``.  Vertices not named in a ``rho`` line are fixed.

    Returns
    -------
    EquivariantTree or BipartitionedTree
        The latter when no vertex carries a weight.
    """
    vertices = {}
    edges = []
    p_sides = {}
    rho = {}
    name = ""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name:"):
            name = line[5:].strip()
            continue
        words = line.split()
        head, args = words[0], words[1:]
        if head == "vertex" and len(args) in (1, 2):
            if args[0] in vertices:
                raise ParseError(f"vertex {args[0]!r} declared twice", line=number, position=0)
            vertices[args[0]] = MoveType.parse(args[1]) if len(args) == 2 else None
        elif head == "edge" and len(args) == 2:
            edges.append(tuple(args))
        elif head == "P" and args:
            p_sides[args[0]] = set(args[1:])
        elif head == "rho" and len(args) == 2:
            a, b = args
            if a in rho or b in rho:
                raise ParseError(f"vertex in two rho pairs: {line!r}", line=number, position=0)
            rho[a], rho[b] = b, a
        else:
            raise ParseError(f"bad statement {line!r}", line=number, position=0)
    for a, b in edges:
        for v in (a, b):
            if v not in vertices:
                raise ParseError(f"edge names undeclared vertex {v!r}", line=0, position=0)
    bt = BipartitionedTree.from_edges(list(vertices), edges, p_sides)
    weights = [w for w in vertices.values() if w is not None]
    if not weights:
        return bt
    if len(weights) != len(vertices):
        raise ParseError("either every vertex or no vertex carries a weight", line=0, position=0)
    for v in vertices:
        rho.setdefault(v, v)
    return EquivariantTree(bt, rho, dict(vertices), name)


def tree_to_text(tree):
    """Render a tree in the format read by `parse_tree`."""
    et = tree if isinstance(tree, EquivariantTree) else None
    bt = et.base if et else tree
    lines = [f"name: {et.name}"] if et and et.name else []
    for v in bt.vertices:
        lines.append(f"vertex {v} {et.weight[v]}" if et else f"vertex {v}")
    for a, b in sorted(tuple(sorted(e)) for e in bt.graph.edges):
        lines.append(f"edge {a} {b}")
    for v in bt.vertices:
        p = bt.partition[v][0]
        if p:
            lines.append(f"P {v} " + " ".join(sorted(p)))
    if et:
        for v in et.vertices:
            if v < et.rho[v]:
                lines.append(f"rho {v} {et.rho[v]}")
    return "\n".join(lines) + "\n"


"""
Symmetric plumbing trees of spheres and the ambient manifolds they live in.

A plumbing tree is a tree whose nodes are embedded spheres and whose edges
are the transverse points where two spheres meet.  The involution of the
ambient manifold permutes the spheres (``sigma``) and the points
(``point_involution``).
"""
import logging
import re
from dataclasses import dataclass, field

import networkx as nx

from ._eqtree import BipartitionedTree, EquivariantTree, check_equivariant, tree_type
from ._errors import ConfigError, ParseError, Problem, TreeError, ValidationError
from ._symdiag import MoveType

_log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AmbientDescriptor:
    """
    A named closed 4-manifold with an involution.

    Nothing geometric is modelled; the descriptor records what the
    certification pipeline needs to know about the manifold.

    Attributes
    ----------
    tag : str
    involution : str
    fixed_surface : tuple of (str, int)
        Components of the fixed surface as ``(name, genus)``.
    quotient : str
        Tag of the quotient manifold, e.g. ``"CP2"``.
    plumbings : tuple of str
        Builtin plumbing trees available in this manifold.
    flags : frozenset of str
    """

    tag: str
    involution: str
    fixed_surface: tuple
    quotient: str
    plumbings: tuple = ()
    flags: frozenset = field(default=frozenset())

    @property
    def sphere_component(self):
        """Name of the first genus 0 fixed component, or None."""
        for name, genus in self.fixed_surface:
            if genus == 0:
                return name
        return None


_AMBIENTS = {
    "s2xs2_tau1": AmbientDescriptor(
        "s2xs2_tau1",
        "swap (x, y) -> (y, x)",
        (("diagonal S2", 0),),
        "CP2",
        ("s2xs2_tau1",),
    ),
    "s2xs2_tau2": AmbientDescriptor(
        "s2xs2_tau2",
        "swap and reflect (x, y) -> (r(y), r(x))",
        (("S2", 0),),
        "CP2bar",
        ("s2xs2_tau2",),
        frozenset({"fixed-surface-unverified"}),
    ),
    "three_s2xs2": AmbientDescriptor(
        "three_s2xs2",
        "exchange the first two summands, reflect both factors of the third",
        (("S2", 0),),
        "unknown",
        ("three_s2xs2",),
    ),
    "s4": AmbientDescriptor("s4", "rotation", (("S2", 0),), "S4"),
}


def ambient(tag):
    """
    Look up a builtin ambient descriptor.

    Raises
    ------
    ConfigError
        For an unknown tag.
    """
    try:
        return _AMBIENTS[tag]
    except KeyError:
        raise ConfigError(
            f"unknown ambient {tag!r}; known: {', '.join(sorted(_AMBIENTS))}"
        ) from None


def ambient_tags():
    return sorted(_AMBIENTS)


@dataclass(frozen=True)
class ImmersedSurfaceBudget:
    """Self-intersections of an immersed invariant surface: A pairs and Omega."""

    n_type_a: int
    omega: MoveType = None

    def __post_init__(self):
        if self.n_type_a < 0:
            raise TreeError(f"negative type A count {self.n_type_a}")

    @classmethod
    def from_plumbing(cls, pt):
        """The immersed sphere obtained by smoothing nothing in *pt*."""
        kind = plumbing_type(pt)
        pairs = sum(1 for t in pt.points.values() if t[2] is MoveType.A) // 2
        return cls(pairs, kind)


@dataclass(frozen=True, eq=False)
class PlumbingTree:
    """
    A tree of framed spheres plumbed at typed points.

    Attributes
    ----------
    framings : dict
        Sphere id -> framing.
    points : dict
        Point id -> ``(sphere, sphere, MoveType)``.
    sigma : dict
        Involution on spheres.
    point_involution : dict
        Involution on points; derived from ``sigma`` when built with
        `PlumbingTree.build`.
    ambient : AmbientDescriptor or None
    name : str
    """

    framings: dict
    points: dict
    sigma: dict
    point_involution: dict
    ambient: AmbientDescriptor = None
    name: str = ""

    @classmethod
    def build(cls, framings, points, sigma, ambient=None, name=""):
        sigma = {s: sigma.get(s, s) for s in framings}
        by_ends = {frozenset(p[:2]): k for k, p in points.items()}
        involution = {}
        for k, (a, b, _) in points.items():
            image = by_ends.get(frozenset((sigma.get(a, a), sigma.get(b, b))))
            if image is not None:
                involution[k] = image
        return cls(dict(framings), dict(points), sigma, involution, ambient, name)

    @property
    def spheres(self):
        return sorted(self.framings)

    @property
    def n_spheres(self):
        return len(self.framings)

    def graph(self):
        g = nx.MultiGraph()
        g.add_nodes_from(self.framings)
        for k, (a, b, _) in self.points.items():
            g.add_edge(a, b, key=k)
        return g

    def points_on(self, sphere):
        return sorted(k for k, p in self.points.items() if sphere in p[:2])

    def fixed_points(self):
        return sorted(k for k in self.points if self.point_involution.get(k) == k)


def validate_plumbing(pt):
    """
    Check that *pt* is a simple symmetric plumbing tree.

    Returns
    -------
    list of Problem
    """
    problems = []
    g = pt.graph()
    spheres = set(pt.framings)
    for k, (a, b, kind) in sorted(pt.points.items()):
        if a not in spheres or b not in spheres:
            problems.append(Problem("tree", k, f"point {k} names an unknown sphere"))
        elif a == b:
            problems.append(Problem("tree", k, f"point {k} is a self-plumbing"))
        if not isinstance(kind, MoveType):
            problems.append(Problem("type", k, f"point {k} has no type"))
    if problems:
        return problems
    if not spheres or not nx.is_tree(g):
        problems.append(Problem("tree", None, "spheres and points do not form a tree"))
        return problems
    sigma = pt.sigma
    if set(sigma) != spheres or any(sigma[s] not in spheres or sigma[sigma[s]] != s for s in spheres):
        problems.append(Problem("sigma", None, "sigma is not an involution on the spheres"))
        return problems
    for s in sorted(spheres):
        if pt.framings[s] != pt.framings[sigma[s]]:
            problems.append(Problem("sigma", s, f"sphere {s} and its image have different framings"))
    pi = pt.point_involution
    for k, (a, b, kind) in sorted(pt.points.items()):
        image = pi.get(k)
        if image not in pt.points or pi.get(image) != k:
            problems.append(Problem("points", k, f"point {k} has no image under the involution"))
            continue
        if frozenset(pt.points[image][:2]) != frozenset((sigma[a], sigma[b])):
            problems.append(Problem("points", k, f"image of point {k} does not follow sigma"))
        if pt.points[image][2] is not kind:
            problems.append(Problem("type", k, f"point {k} and its image have different types"))
    if problems:
        return problems
    fixed = pt.fixed_points()
    if len(fixed) != 1:
        problems.append(
            Problem("simple", fixed or None, f"exactly one point must be fixed, found {len(fixed)}")
        )
    for k, (a, b, kind) in sorted(pt.points.items()):
        if k in fixed:
            if kind is MoveType.A:
                problems.append(Problem("type", k, f"fixed point {k} is typed A"))
            elif kind is MoveType.C and (sigma[a], sigma[b]) != (a, b):
                problems.append(Problem("type", k, f"type C point {k} must keep both spheres"))
            elif kind is not MoveType.C and (sigma[a], sigma[b]) != (b, a):
                problems.append(Problem("type", k, f"type B point {k} must exchange its spheres"))
        elif kind is not MoveType.A:
            problems.append(Problem("type", k, f"moved point {k} is typed {kind}, not A"))
    if len(spheres) % 2:
        problems.append(Problem("parity", None, f"{len(spheres)} spheres cannot be paired by sigma"))
    return problems


def check_plumbing(pt):
    problems = validate_plumbing(pt)
    if problems:
        raise ValidationError(problems)
    return pt


def plumbing_type(pt):
    """Type of the unique fixed point of a valid plumbing tree."""
    check_plumbing(pt)
    (p,) = pt.fixed_points()
    return pt.points[p][2]


@dataclass(frozen=True)
class EmbeddingMap:
    """
    Where each tree vertex sits in the plumbing.

    Attributes
    ----------
    points : dict
        Vertex -> plumbing point.
    sheets : dict
        Vertex -> ``(P sphere, Q sphere)``: the sphere every edge of each
        bipartition class runs along.
    """

    points: dict
    sheets: dict

    def is_equivariant(self, et, pt):
        return all(
            self.points[et.rho[v]] == pt.point_involution[self.points[v]]
            for v in et.vertices
        )


def derive_embedded_tree(pt):
    """
    The equivariant tree with one vertex per plumbing point.

    Every sphere joins its point nearest the fixed point to each of its
    other points, so the result is a tree on ``n - 1`` vertices.  At a
    vertex the edges running along one sphere form one bipartition class.

    Returns
    -------
    (EquivariantTree, EmbeddingMap)
    """
    kind = plumbing_type(pt)
    (root,) = pt.fixed_points()
    g = pt.graph()
    a, b, _ = pt.points[root]
    # distance of a sphere from the fixed point, through the plumbing tree
    depth = nx.multi_source_dijkstra_path_length(g, {a, b})
    vertices = sorted(pt.points)
    edges = []
    for sphere in pt.spheres:
        on = pt.points_on(sphere)
        if len(on) < 2:
            continue
        # the parent point lies towards the fixed point
        parent = min(on, key=lambda k: (max(depth[s] for s in pt.points[k][:2]), k))
        edges.extend((parent, k) for k in on if k != parent)
        _log.debug("sphere %s: %s -> %s", sphere, parent, [k for k in on if k != parent])

    sheets = {}
    p_sides = {}
    for v in vertices:
        s, t, _ = pt.points[v]
        first, second = (s, t) if s <= t else (t, s)
        if v != root and depth[first] > depth[second]:
            first, second = second, first
        sheets[v] = (first, second)
    for u, v in edges:
        for x, y in ((u, v), (v, u)):
            shared = set(pt.points[x][:2]) & set(pt.points[y][:2])
            if sheets[x][0] in shared:
                p_sides.setdefault(x, set()).add(y)
    bt = BipartitionedTree.from_edges(vertices, edges, p_sides)
    weight = {v: (kind if v == root else MoveType.A) for v in vertices}
    et = EquivariantTree(bt, dict(pt.point_involution), weight, pt.name)
    check_equivariant(et)
    embedding = EmbeddingMap({v: v for v in vertices}, sheets)
    if not embedding.is_equivariant(et, pt):
        raise TreeError("derived embedding does not commute with the involutions")
    return et, embedding


def capacity_check(budget, et):
    """
    Whether *et* fits an immersed surface with the given self-intersections.

    One fixed vertex sits at the Omega point and every other vertex pair
    at an A pair, so at most ``2 * n_type_a + 1`` vertices fit.

    Returns
    -------
    list of Problem
        Empty when the tree fits; code ``"omega"`` for a type mismatch,
        ``"capacity"`` when the tree is too large.
    """
    kind = tree_type(et)
    problems = []
    if budget.omega is not kind:
        problems.append(Problem("omega", budget.omega, f"surface has {budget.omega}, tree has type {kind}"))
    room = 2 * budget.n_type_a + 1
    if len(et) > room:
        problems.append(Problem("capacity", len(et), f"{len(et)} vertices do not fit in {room}"))
    return problems


# ---- builtins -------------------------------------------------------------
def _s2xs2(kind, tag):
    return PlumbingTree.build(
        {"S1": 0, "S2": 0},
        {"p0": ("S1", "S2", kind)},
        {"S1": "S2", "S2": "S1"},
        _AMBIENTS[tag],
        tag,
    )


def _three_s2xs2(n):
    if not isinstance(n, int) or n < 1:
        raise TreeError(f"three_s2xs2 needs n >= 1, got {n!r}")
    framings = {"C0": 0, "C1": 0}
    points = {"p0": ("C0", "C1", MoveType.C)}
    sigma = {"C0": "C0", "C1": "C1"}
    left, right = "C0", "C0"
    for k in range(1, n + 1):
        framings[f"R{k}"] = framings[f"L{k}"] = 0
        points[f"a{k}"] = (right, f"R{k}", MoveType.A)
        points[f"b{k}"] = (left, f"L{k}", MoveType.A)
        sigma[f"R{k}"], sigma[f"L{k}"] = f"L{k}", f"R{k}"
        left, right = f"L{k}", f"R{k}"
    return PlumbingTree.build(framings, points, sigma, _AMBIENTS["three_s2xs2"], f"three_s2xs2({n})")


_BUILTIN = re.compile(r"^(\w+?)(?:\((\d+)\))?$")


def builtin(name, n=None):
    """
    A builtin plumbing tree.

    Parameters
    ----------
    name : {"s2xs2_tau1", "s2xs2_tau2", "three_s2xs2"}
        ``"three_s2xs2(n)"`` is accepted as well.
    n : int, optional
        Number of A pairs for ``three_s2xs2``.

    Raises
    ------
    ConfigError
        For an unknown name.
    TreeError
        For a missing or invalid *n*.
    """
    m = _BUILTIN.match(name.strip())
    if m and m.group(2) is not None:
        name, n = m.group(1), int(m.group(2))
    if name == "s2xs2_tau1":
        return _s2xs2(MoveType.B_PLUS, name)
    if name == "s2xs2_tau2":
        return _s2xs2(MoveType.B_MINUS, name)
    if name == "three_s2xs2":
        return _three_s2xs2(n)
    raise ConfigError(f"unknown builtin plumbing {name!r}")


def ambient_plumbings(desc, n=None):
    """The builtin plumbing trees of an ambient descriptor."""
    return [builtin(name, n) for name in desc.plumbings]


# ---- file format ----------------------------------------------------------
def parse_plumbing(text):
    """
    Parse a plumbing file::

        name: clasp
        ambient: s2xs2_tau1
        sphere S1 0
        sphere S2 0
        point p0 S1 S2 B+
        sigma S1 S2

    Spheres not named in a ``sigma`` line are fixed.  The involution on
    points is derived from ``sigma``.
    """
    framings = {}
    points = {}
    sigma = {}
    name = ""
    desc = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name:"):
            name = line[5:].strip()
            continue
        if line.startswith("ambient:"):
            try:
                desc = ambient(line[8:].strip())
            except ConfigError as err:
                raise ParseError(str(err), line=number, position=0) from None
            continue
        words = line.split()
        head, args = words[0], words[1:]
        try:
            if head == "sphere" and len(args) == 2:
                framings[args[0]] = int(args[1])
            elif head == "point" and len(args) == 4:
                points[args[0]] = (args[1], args[2], MoveType.parse(args[3]))
            elif head == "sigma" and len(args) == 2:
                sigma[args[0]], sigma[args[1]] = args[1], args[0]
            else:
                raise ParseError(f"bad statement {line!r}", line=number, position=0)
        except ValueError:
            raise ParseError(f"bad framing in {line!r}", line=number, position=0) from None
        except ParseError as err:
            if err.line:
                raise
            raise ParseError(str(err), line=number, position=0) from None
    return PlumbingTree.build(framings, points, sigma, desc, name)


def plumbing_to_text(pt):
    lines = [f"name: {pt.name}"] if pt.name else []
    if pt.ambient is not None:
        lines.append(f"ambient: {pt.ambient.tag}")
    for s in pt.spheres:
        lines.append(f"sphere {s} {pt.framings[s]}")
    for k in sorted(pt.points):
        a, b, kind = pt.points[k]
        lines.append(f"point {k} {a} {b} {kind}")
    for s in pt.spheres:
        if s < pt.sigma[s]:
            lines.append(f"sigma {s} {pt.sigma[s]}")
    return "\n".join(lines) + "\n"

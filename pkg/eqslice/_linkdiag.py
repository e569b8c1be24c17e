"""
Planar link diagrams in PD notation and the moves every other module uses.

A crossing is a 4-tuple of edge labels ``(a, b, c, d)`` listed
counterclockwise starting from the incoming under-strand, so the under
strand runs ``a -> c`` and the over strand joins ``b`` and ``d``.  Edge
labels are positive integers that occur exactly twice.  Crossing ids are
positions in the crossing list.  Components without crossings cannot be
written in PD notation and are kept as a free-loop count.
"""
import logging
import re

import networkx as nx

from ._errors import DiagramError, ParseError

_log = logging.getLogger(__name__)


class LinkDiagram:
    """
    An oriented planar link diagram.

    Instances are immutable; every move returns a new diagram.

    Parameters
    ----------
    crossings : iterable of 4-tuples of int
        PD crossings, slot 0 being the incoming under-strand.
    free_loops : int, default: 0
        Number of crossingless components.

    Raises
    ------
    DiagramError
        If a label is not used exactly twice or some component cannot be
        closed consistently with the slot orientations.
    """

    __slots__ = (
        "_crossings",
        "_free_loops",
        "_positions",
        "_heads",
        "_components",
        "_label_component",
    )

    def __init__(self, crossings=(), free_loops=0):
        self._crossings = tuple(tuple(int(v) for v in x) for x in crossings)
        if free_loops < 0:
            raise DiagramError(f"negative free loop count {free_loops}")
        self._free_loops = int(free_loops)
        self._positions = _positions(self._crossings)
        self._heads, self._components = _orient(self._crossings, self._positions)
        self._label_component = {
            label: k for k, comp in enumerate(self._components) for label in comp
        }

    # ---- basic accessors -------------------------------------------------
    @property
    def crossings(self):
        return self._crossings

    @property
    def free_loops(self):
        return self._free_loops

    @property
    def n_crossings(self):
        return len(self._crossings)

    @property
    def components(self):
        """
        Cyclic edge sequences of the components that have crossings.

        Each sequence follows the orientation and starts at its smallest
        label; sequences are sorted by that label.  Free loops come after
        these in the component numbering but have no edges.
        """
        return self._components

    @property
    def n_components(self):
        return len(self._components) + self._free_loops

    @property
    def labels(self):
        return tuple(sorted(self._positions))

    def max_label(self):
        return max(self._positions, default=0)

    def occurrences(self, label):
        """Return the two ``(crossing, slot)`` positions of *label*."""
        try:
            return tuple(self._positions[label])
        except KeyError:
            raise DiagramError(f"unknown edge id {label}") from None

    def head(self, label):
        """The ``(crossing, slot)`` where *label* enters a crossing."""
        self.occurrences(label)
        return self._heads[label]

    def tail(self, label):
        """The ``(crossing, slot)`` where *label* leaves a crossing."""
        head = self.head(label)
        (p, q) = self._positions[label]
        return q if p == head else p

    def other_end(self, crossing, slot):
        """The position joined to ``(crossing, slot)`` by its edge."""
        label = self._crossings[crossing][slot]
        p, q = self._positions[label]
        return q if p == (crossing, slot) else p

    def component_of(self, label):
        """Index of the component that contains edge *label*."""
        self.occurrences(label)
        return self._label_component[label]

    def check_crossing(self, c):
        if not isinstance(c, int) or not 0 <= c < len(self._crossings):
            raise DiagramError(
                f"unknown crossing id {c!r}; diagram has {len(self._crossings)} crossings"
            )
        return c

    def check_component(self, k):
        if not isinstance(k, int) or not 0 <= k < self.n_components:
            raise DiagramError(
                f"invalid component id {k!r}; diagram has {self.n_components} components"
            )
        return k

    def is_free_loop(self, k):
        return self.check_component(k) >= len(self._components)

    def sign(self, c):
        """+1 if the over strand enters at slot 3, -1 if it enters at slot 1."""
        self.check_crossing(c)
        return 1 if self._heads[self._crossings[c][3]] == (c, 3) else -1

    def writhe(self):
        return sum(self.sign(c) for c in range(len(self._crossings)))

    def strand_components(self, c):
        """Component indices of the (under, over) strands at crossing *c*."""
        x = self._crossings[self.check_crossing(c)]
        return self._label_component[x[0]], self._label_component[x[1]]

    # ---- structure -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (
            self._crossings == other._crossings
            and self._free_loops == other._free_loops
        )

    def __hash__(self):
        return hash((self._crossings, self._free_loops))

    def __repr__(self):
        return f"LinkDiagram({list(self._crossings)!r}, free_loops={self._free_loops})"

    def to_pd(self):
        """Render in the PD text grammar accepted by `parse_pd`."""
        parts = ["X({},{},{},{})".format(*x) for x in self._crossings]
        parts.extend(["O"] * self._free_loops)
        return "PD[" + ", ".join(parts) + "]"

    def split_pieces(self):
        """
        Partition crossing ids into connected pieces of the diagram.

        Returns
        -------
        list of tuple of int
            One tuple per piece, sorted.  Free loops are not included.
        """
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self._crossings)))
        for label, ((c1, _), (c2, _)) in self._positions.items():
            graph.add_edge(c1, c2)
        return sorted(tuple(sorted(p)) for p in nx.connected_components(graph))

    def is_split(self):
        return len(self.split_pieces()) + self._free_loops > 1

    def faces(self):
        """
        The faces of each connected piece as cycles of corners.

        Corner ``(c, i)`` is the region at crossing *c* between slots
        ``i`` and ``i + 1``.  Leaving along the edge at slot ``i + 1``
        reaches the next corner of the same face.
        """
        seen = set()
        result = []
        for c in range(len(self._crossings)):
            for i in range(4):
                if (c, i) in seen:
                    continue
                face = []
                corner = (c, i)
                while corner not in seen:
                    seen.add(corner)
                    face.append(corner)
                    x, j = corner
                    corner = self.other_end(x, (j + 1) % 4)
                result.append(tuple(face))
        return result


def _positions(crossings):
    positions = {}
    for c, x in enumerate(crossings):
        if len(x) != 4:
            raise DiagramError(f"crossing {c} has {len(x)} slots, expected 4")
        for s, label in enumerate(x):
            if label <= 0:
                raise DiagramError(f"edge ids must be positive, got {label}")
            positions.setdefault(label, []).append((c, s))
    bad = {label: len(p) for label, p in positions.items() if len(p) != 2}
    if bad:
        raise DiagramError(
            f"every edge id must appear exactly twice; counts {dict(sorted(bad.items()))}"
        )
    return positions


def _strand_classes(crossings):
    uf = nx.utils.UnionFind()
    for x in crossings:
        uf.union(x[0], x[2])
        uf.union(x[1], x[3])
    return uf


def _orient(crossings, positions):
    by_position = {pos: label for label, occ in positions.items() for pos in occ}

    def other(pos):
        p, q = positions[by_position[pos]]
        return q if p == pos else p

    uf = _strand_classes(crossings)
    classes = {}
    for label in positions:
        classes.setdefault(uf[label], []).append(label)

    heads = {}
    components = []
    for members in sorted(classes.values(), key=min):
        member_set = set(members)
        start = None
        for c, x in enumerate(crossings):
            if x[0] in member_set:
                start = (c, 0)
                break
        if start is None:
            # the component is over at every crossing it meets
            c = min(p[0] for label in members for p in positions[label])
            s = 3 if crossings[c][3] in member_set else 1
            start = (c, s)
        sequence = []
        entry = start
        while True:
            c, s = entry
            label = crossings[c][s]
            if label in heads:
                raise DiagramError(f"edge {label} is entered twice; component cannot be closed")
            heads[label] = entry
            sequence.append(label)
            if s == 2:
                raise DiagramError(
                    f"edge {label} enters crossing {c} at the outgoing under slot"
                )
            entry = other((c, (s + 2) % 4))
            if entry == start:
                break
        if len(sequence) != len(members):
            raise DiagramError(
                f"component through edge {min(members)} does not close consistently"
            )
        # the walk records the edge entering each crossing; rotate so the
        # cycle starts at the smallest label
        k = sequence.index(min(sequence))
        components.append(tuple(sequence[k:] + sequence[:k]))
    return heads, tuple(sorted(components, key=lambda comp: comp[0]))


# ---- construction helpers -------------------------------------------------
def from_unoriented(crossings, free_loops=0):
    """
    Build a diagram from crossings whose slot 0 is an under slot.

    The under strand of a crossing may be listed in either direction; each
    component is oriented by walking it and crossings entered at slot 2 are
    rotated by two slots.
    """
    crossings = [tuple(x) for x in crossings]
    positions = _positions(crossings)
    by_position = {pos: label for label, occ in positions.items() for pos in occ}

    def other(pos):
        p, q = positions[by_position[pos]]
        return q if p == pos else p

    rotate = set()
    visited = set()
    for c0 in range(len(crossings)):
        for s0 in range(4):
            if (c0, s0) in visited:
                continue
            entry = (c0, s0) if s0 in (0, 2) else None
            if entry is None:
                continue
            while entry not in visited:
                c, s = entry
                exit_pos = (c, (s + 2) % 4)
                visited.add(entry)
                visited.add(exit_pos)
                if s == 2:
                    rotate.add(c)
                entry = other(exit_pos)
    # components that only pass over crossings keep any orientation
    fixed = [
        (x[2], x[3], x[0], x[1]) if c in rotate else x
        for c, x in enumerate(crossings)
    ]
    return LinkDiagram(fixed, free_loops)


def relabel(d, start=None):
    """
    Relabel edges ``1, 2, ...`` in traversal order.

    Parameters
    ----------
    d : LinkDiagram
    start : int, optional
        Edge label that becomes 1; its component is numbered first.
        Defaults to the first edge of component 0.
    """
    comps = list(d.components)
    if start is not None:
        k = d.component_of(start)
        comp = comps.pop(k)
        i = comp.index(start)
        comps.insert(0, comp[i:] + comp[:i])
    mapping = {}
    for comp in comps:
        for label in comp:
            mapping[label] = len(mapping) + 1
    crossings = [tuple(mapping[v] for v in x) for x in d.crossings]
    return LinkDiagram(crossings, d.free_loops)


def canonical_key(d):
    """
    A hashable key equal for diagrams that differ by relabelling edges.

    The key is minimised over the starting edge of component 0, so it is
    exact for knots and a best effort for links.
    """
    if not d.crossings:
        return ((), d.free_loops)
    best = None
    for start in d.components[0]:
        r = relabel(d, start)
        key = (tuple(sorted(r.crossings)), r.free_loops)
        if best is None or key < best:
            best = key
    return best


# ---- parsing --------------------------------------------------------------
_TOKEN = re.compile(
    r"\s*(?:(?P<pd>PD\s*\[)|(?P<x>X\s*\()|(?P<o>O)|(?P<int>\d+)|(?P<punct>[,\])]))"
)


def _line_of(text, pos):
    return text.count("\n", 0, pos) + 1


def _fail(text, pos, message):
    raise ParseError(message, position=pos, line=_line_of(text, pos))


def _scan(text, pos):
    m = _TOKEN.match(text, pos)
    if m is None:
        bad = pos
        while bad < len(text) and text[bad].isspace():
            bad += 1
        if bad >= len(text):
            _fail(text, bad, "unexpected end of input")
        _fail(text, bad, f"bad token {text[bad]!r}")
    kind = m.lastgroup
    return kind, m.group(kind), m.end(), m.start(kind)


def _parse_block(text, pos):
    kind, _, pos, start = _scan(text, pos)
    if kind != "pd":
        _fail(text, start, "expected 'PD['")
    crossings = []
    loops = 0
    expect_item = True
    while True:
        kind, value, pos, start = _scan(text, pos)
        if kind == "punct" and value == "]":
            if expect_item and (crossings or loops):
                _fail(text, start, "trailing ','")
            break
        if not expect_item:
            if kind == "punct" and value == ",":
                expect_item = True
                continue
            _fail(text, start, "expected ',' or ']'")
        if kind == "o":
            loops += 1
        elif kind == "x":
            labels = []
            for k in range(4):
                kind, value, pos, start = _scan(text, pos)
                if kind != "int":
                    _fail(text, start, "expected an edge id")
                labels.append(int(value))
                kind, value, pos, start = _scan(text, pos)
                want = ")" if k == 3 else ","
                if kind != "punct" or value != want:
                    _fail(text, start, f"expected {want!r}")
            crossings.append(tuple(labels))
        else:
            _fail(text, start, "expected 'X(' or 'O'")
        expect_item = False
    if not crossings and not loops:
        # the empty code is read as the unknot
        loops = 1
    return crossings, loops, pos


def parse_pd(text):
    """
    Parse one diagram in PD notation.

    The grammar is ``PD[X(a,b,c,d), ..., O, ...]``; whitespace is ignored,
    each ``O`` adds a free loop and ``PD[]`` is the unknot.

    Parameters
    ----------
    text : str

    Returns
    -------
    LinkDiagram

    Raises
    ------
    ParseError
        On a syntax error, with the offending position.
    DiagramError
        If the crossings are not a consistent oriented diagram.
    """
    crossings, loops, pos = _parse_block(text, 0)
    rest = text[pos:]
    if rest.strip():
        offset = pos + len(rest) - len(rest.lstrip())
        _fail(text, offset, "unexpected text after diagram")
    return LinkDiagram(crossings, loops)


_NAME = re.compile(r"\s*([A-Za-z_][\w.+-]*)\s*:")


def parse_pd_blocks(text):
    """
    Parse a file of named blocks ``name: PD[...]``.

    Lines starting with ``#`` are comments.  A file holding a single
    unnamed ``PD[...]`` yields the name ``""``.

    Returns
    -------
    list of (str, LinkDiagram)
        In file order; duplicate names are kept (see `DiagramRegistry`).
    """
    text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    if not text.strip():
        raise ParseError("empty diagram file", position=0, line=1)
    pos = 0
    blocks = []
    while text[pos:].strip():
        m = _NAME.match(text, pos)
        if m is None:
            if blocks:
                _fail(text, pos + len(text[pos:]) - len(text[pos:].lstrip()), "expected 'name:'")
            crossings, loops, pos = _parse_block(text, pos)
            blocks.append(("", LinkDiagram(crossings, loops)))
            continue
        crossings, loops, pos = _parse_block(text, m.end())
        blocks.append((m.group(1), LinkDiagram(crossings, loops)))
    return blocks


# ---- moves ----------------------------------------------------------------
def crossing_change(d, c):
    """
    Swap over and under at crossing *c* only.

    A positive crossing ``(a,b,c,d)`` becomes ``(d,a,b,c)`` and a negative
    one becomes ``(b,c,d,a)``; the move is an involution.

    Raises
    ------
    DiagramError
        If *c* is not a crossing id of *d*.
    """
    d.check_crossing(c)
    crossings = list(d.crossings)
    crossings[c] = _changed(crossings[c], d.sign(c))
    return LinkDiagram(crossings, d.free_loops)


def _changed(x, sign):
    a, b, c, d = x
    return (d, a, b, c) if sign > 0 else (b, c, d, a)


def change_shift(sign):
    """Slot index offset applied by `crossing_change` to a crossing of *sign*."""
    return 1 if sign > 0 else -1


def mirror(d):
    """Change every crossing; ``mirror(mirror(d)) == d``."""
    crossings = [_changed(x, d.sign(c)) for c, x in enumerate(d.crossings)]
    return LinkDiagram(crossings, d.free_loops)


def reverse(d, components=None):
    """
    Reverse the orientation of some components (default: all).

    Only crossings whose under strand is reversed change: they are rotated
    by two slots.  Free loops are unaffected.
    """
    if components is None:
        components = range(len(d.components))
    flip = set()
    for k in components:
        d.check_component(k)
        if k < len(d.components):
            flip.update(d.components[k])
    crossings = [
        (x[2], x[3], x[0], x[1]) if x[0] in flip else x for x in d.crossings
    ]
    return LinkDiagram(crossings, d.free_loops)


def disjoint_union(d1, d2):
    """Split union; the labels of *d2* are shifted above those of *d1*."""
    off = d1.max_label()
    crossings = list(d1.crossings) + [tuple(v + off for v in x) for x in d2.crossings]
    return LinkDiagram(crossings, d1.free_loops + d2.free_loops)


def splice(d, e1, e2):
    """
    Band two edges of different pieces together by swapping their heads.

    After the splice label *e1* runs from its old tail into the old head of
    *e2* and vice versa.
    """
    if d.component_of(e1) == d.component_of(e2):
        raise DiagramError(f"edges {e1} and {e2} lie on the same component")
    h1, h2 = d.head(e1), d.head(e2)
    crossings = [list(x) for x in d.crossings]
    crossings[h1[0]][h1[1]] = e2
    crossings[h2[0]][h2[1]] = e1
    return LinkDiagram(crossings, d.free_loops)


def connect_sum(d1, c1, d2, c2, *, edges=None):
    """
    Connected sum of component *c1* of *d1* with component *c2* of *d2*.

    Parameters
    ----------
    d1, d2 : LinkDiagram
    c1, c2 : int
        Component ids (free loops are numbered after the traced
        components).
    edges : (int, int), optional
        Edge of *c1* in *d1* and edge of *c2* in *d2* where the band is
        attached.  Defaults to the first edge of each component.

    Returns
    -------
    LinkDiagram
        ``n_components == d1.n_components + d2.n_components - 1`` and the
        crossing count is the sum of the inputs'.

    Raises
    ------
    DiagramError
        For an invalid component id or an edge not on the component.
    """
    d1.check_component(c1)
    d2.check_component(c2)
    if d1.is_free_loop(c1):
        return disjoint_union(LinkDiagram(d1.crossings, d1.free_loops - 1), d2)
    if d2.is_free_loop(c2):
        return disjoint_union(d1, LinkDiagram(d2.crossings, d2.free_loops - 1))
    if edges is None:
        e1, e2 = d1.components[c1][0], d2.components[c2][0]
    else:
        e1, e2 = edges
        if d1.component_of(e1) != c1 or d2.component_of(e2) != c2:
            raise DiagramError(f"edges {edges} are not on components ({c1}, {c2})")
    union = disjoint_union(d1, d2)
    _log.debug("connect sum at edges %d and %d", e1, e2)
    return splice(union, e1, e2 + d1.max_label())


def linking_matrix(d):
    """
    Pairwise linking numbers of the components.

    Returns
    -------
    tuple of tuple of int
        Symmetric, zero diagonal, one row per component (free loops
        included, with zero rows).
    """
    n = d.n_components
    acc = [[0] * n for _ in range(n)]
    for c in range(d.n_crossings):
        i, j = d.strand_components(c)
        if i != j:
            s = d.sign(c)
            acc[i][j] += s
            acc[j][i] += s
    return tuple(tuple(v // 2 for v in row) for row in acc)

"""
Strongly invertible diagrams in axis-normal form.

The involution is a half turn about a vertical line in the projection
plane.  It is recorded combinatorially: ``iota_crossings`` and
``iota_edges`` give its action on crossing ids and edge labels, and the
axis list records, from top to bottom, where the knot meets the axis
(``FixedPoint``) or crosses itself on it (``OnAxisCrossing``).

On every crossing the edge map induces a permutation of the four slots.
Paired crossings and on-axis crossings whose two strands are exchanged see
a reflection ``j -> c0 - j`` (``c0`` odd); an on-axis crossing whose
strands are each preserved sees the half turn ``j -> j + 2``.
"""
import enum
import logging
import re
import warnings
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Optional

import networkx as nx

from ._errors import AxisNormalError, DiagramError, LimitExceeded, ParseError, Problem
from ._errors import ValidationError
from ._invariants import UnknotStatus, try_unknot
from ._limits import get_limit
from ._linkdiag import LinkDiagram, change_shift, crossing_change, from_unoriented
from ._linkdiag import mirror, parse_pd

_log = logging.getLogger(__name__)


class MoveType(enum.Enum):
    """The four kinds of symmetric crossing change."""

    A = "A"
    B_PLUS = "B+"
    B_MINUS = "B-"
    C = "C"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text):
        aliases = {"B₊": "B+", "B₋": "B-", "Bp": "B+", "Bm": "B-"}
        try:
            return cls(aliases.get(text, text))
        except ValueError:
            raise ParseError(f"unknown move type {text!r}") from None

    def mirrored(self):
        return {MoveType.B_PLUS: MoveType.B_MINUS, MoveType.B_MINUS: MoveType.B_PLUS}.get(
            self, self
        )


@dataclass(frozen=True)
class FixedPoint:
    """A point where the knot meets the axis; ``edge`` is None on a free loop."""

    edge: Optional[int]

    def __str__(self):
        return f"fixed {'loop' if self.edge is None else self.edge}"


@dataclass(frozen=True)
class OnAxisCrossing:
    """
    A crossing sitting on the axis.

    ``right`` is the slot ``s`` such that slots ``s`` and ``s + 1`` face the
    right half-plane; it is only meaningful for kind ``"B"``.
    """

    crossing: int
    kind: str
    right: Optional[int] = None

    def __str__(self):
        if self.kind == "B":
            return f"B {self.crossing} right={self.right}"
        return f"C {self.crossing}"


@dataclass(frozen=True, eq=False)
class SymmetricDiagram:
    """
    A link diagram together with a strong inversion and its axis data.

    Attributes
    ----------
    base : LinkDiagram
    iota_crossings : dict
        Involution on crossing ids.
    iota_edges : dict
        Involution on edge labels.
    axis : tuple
        `FixedPoint` and `OnAxisCrossing` events ordered top to bottom.
        The half-axis ``h1`` is the arc above the first fixed point through
        infinity to below the second; ``h2`` is the segment between them.
    right : frozenset
        Off-axis crossings drawn in the right half-plane.
    name : str
    flags : frozenset of str
        Corpus annotations such as ``"transcription-dependent"``.
    """

    base: LinkDiagram
    iota_crossings: dict
    iota_edges: dict
    axis: tuple
    right: frozenset = frozenset()
    name: str = ""
    flags: frozenset = field(default=frozenset())

    @property
    def underlying(self):
        return self.base

    def key(self):
        """Hashable identity used by the search's visited set."""
        return (self.base, tuple(self.axis))

    def __eq__(self, other):
        if not isinstance(other, SymmetricDiagram):
            return NotImplemented
        return (
            self.base == other.base
            and self.iota_crossings == other.iota_crossings
            and self.iota_edges == other.iota_edges
            and self.axis == other.axis
            and self.right == other.right
        )

    def __hash__(self):
        return hash(self.key())

    def event_of(self, crossing):
        for event in self.axis:
            if isinstance(event, OnAxisCrossing) and event.crossing == crossing:
                return event
        return None

    def fixed_events(self):
        return [e for e in self.axis if isinstance(e, FixedPoint)]

    def half_axis(self, which):
        """
        Axis events lying on half-axis *which* (``"h1"`` or ``"h2"``).

        Events on ``h1`` are returned in the order the arc meets them when
        it is walked from the first fixed point upward, through infinity
        and back up from the bottom.
        """
        which = _check_half_axis(which)
        positions = [k for k, e in enumerate(self.axis) if isinstance(e, FixedPoint)]
        if len(positions) != 2:
            raise AxisNormalError(
                f"half-axes need exactly 2 fixed points, found {len(positions)}"
            )
        top, bottom = positions
        if which == "h2":
            return list(self.axis[top + 1:bottom])
        above = list(reversed(self.axis[:top]))
        below = list(reversed(self.axis[bottom + 1:]))
        return above + below

    def to_text(self):
        """Render in the ``.sym`` file format read by `parse_sym`."""
        lines = []
        if self.name:
            lines.append(f"name: {self.name}")
        lines.append(f"base: {self.base.to_pd()}")
        lines.append("iota-crossings: " + _cycles(self.iota_crossings))
        lines.append("iota-edges: " + _cycles(self.iota_edges))
        if self.right:
            lines.append("right: " + " ".join(str(c) for c in sorted(self.right)))
        lines.append("axis: " + "; ".join(str(e) for e in self.axis))
        if self.flags:
            lines.append("flags: " + " ".join(sorted(self.flags)))
        return "\n".join(lines) + "\n"


def _cycles(mapping):
    seen = set()
    parts = []
    for a in sorted(mapping):
        if a in seen:
            continue
        b = mapping[a]
        seen.update((a, b))
        parts.append(f"({a})" if a == b else f"({a} {b})")
    return " ".join(parts)


def _check_half_axis(which):
    aliases = {"h1": "h1", "h2": "h2", "h₁": "h1", "h₂": "h2", 1: "h1", 2: "h2"}
    try:
        return aliases[which]
    except (KeyError, TypeError):
        raise DiagramError(f"unknown half-axis {which!r}; use 'h1' or 'h2'") from None


# ---- slot actions ---------------------------------------------------------
def slot_action(sd, c):
    """
    The slot permutation induced by iota at crossing *c*.

    Returns
    -------
    (str, int) or None
        ``("reflection", c0)`` or ``("half-turn", 2)``, None if the edge map
        does not carry crossing *c* onto its image slot by slot.
    """
    x = sd.base.crossings[c]
    y = sd.base.crossings[sd.iota_crossings[c]]
    image = [sd.iota_edges.get(v) for v in x]
    for c0 in (1, 3):
        if all(image[j] == y[(c0 - j) % 4] for j in range(4)):
            return "reflection", c0
    if sd.iota_crossings[c] == c and all(image[j] == x[(j + 2) % 4] for j in range(4)):
        return "half-turn", 2
    return None


def _side(sd, crossing, slot):
    """'R', 'L' or None (a C crossing) for one slot position."""
    event = sd.event_of(crossing)
    if event is None:
        return "R" if crossing in sd.right else "L"
    if event.kind != "B":
        return None
    return "R" if (slot - event.right) % 4 in (0, 1) else "L"


def validate_symmetric(sd):
    """
    Check a symmetric diagram.

    Returns
    -------
    list of Problem
        Empty when every condition holds: iota is an involution and an
        automorphism of the diagram, fixed crossings are exactly the
        on-axis events with matching kinds, fixed edges are exactly the
        fixed-point events, each component carries 2 fixed points (or 0
        when it is swapped with another component) and the ``right`` data
        splits the diagram into two halves exchanged by iota.
    """
    d = sd.base
    problems = []
    ic, ie = sd.iota_crossings, sd.iota_edges
    crossing_ids = set(range(d.n_crossings))
    if set(ic) != crossing_ids:
        problems.append(
            Problem("iota-domain", sorted(crossing_ids ^ set(ic)), "iota must act on every crossing")
        )
    if set(ie) != set(d.labels):
        problems.append(
            Problem("iota-domain", sorted(set(d.labels) ^ set(ie)), "iota must act on every edge")
        )
    for mapping, what in ((ic, "crossing"), (ie, "edge")):
        for a, b in mapping.items():
            if mapping.get(b) != a:
                problems.append(Problem("involution", a, f"iota is not an involution at {what} {a}"))
    if problems:
        return problems

    events = Counter()
    for event in sd.axis:
        if isinstance(event, OnAxisCrossing):
            events[event.crossing] += 1
            if event.crossing not in crossing_ids:
                problems.append(Problem("axis", event.crossing, "on-axis event names no crossing"))
            elif event.kind not in ("B", "C"):
                problems.append(Problem("axis", event.crossing, f"unknown kind {event.kind!r}"))
        elif event.edge is not None:
            events[("edge", event.edge)] += 1
    for key, count in events.items():
        if count > 1:
            problems.append(Problem("axis", key, "axis event listed more than once"))

    for c in sorted(crossing_ids):
        action = slot_action(sd, c)
        event = sd.event_of(c)
        fixed = ic[c] == c
        if action is None:
            problems.append(Problem("automorphism", c, f"iota does not preserve crossing {c}"))
            continue
        if fixed and event is None:
            problems.append(Problem("axis", c, f"crossing {c} is fixed by iota but not on the axis"))
        elif not fixed and event is not None:
            problems.append(Problem("axis", c, f"crossing {c} is on the axis but not fixed by iota"))
        elif event is not None:
            kind = "B" if action[0] == "reflection" else "C"
            if event.kind != kind:
                problems.append(
                    Problem("axis", c, f"crossing {c} is listed as {event.kind} but iota acts as {kind}")
                )
            elif kind == "B":
                if event.right is None or (2 * event.right + 3 - action[1]) % 4:
                    problems.append(
                        Problem("axis-normal", c, f"right slots of B crossing {c} are not swapped by iota")
                    )
        if not fixed and d.n_components == 1 and d.sign(c) != d.sign(ic[c]):
            problems.append(Problem("automorphism", c, f"paired crossings {c}, {ic[c]} differ in sign"))

    fixed_edges = {e for e, f in ie.items() if e == f}
    listed = {ev.edge for ev in sd.axis if isinstance(ev, FixedPoint) and ev.edge is not None}
    for e in sorted(fixed_edges ^ listed):
        problems.append(Problem("fixed-points", e, f"edge {e} fixed by iota must match a fixed-point event"))

    problems.extend(_component_problems(sd))
    problems.extend(_half_problems(sd))
    return problems


def _component_problems(sd):
    d = sd.base
    problems = []
    counts = Counter()
    for ev in sd.axis:
        if isinstance(ev, FixedPoint) and ev.edge is not None and ev.edge in set(d.labels):
            counts[d.component_of(ev.edge)] += 1
        elif isinstance(ev, OnAxisCrossing) and ev.kind == "C" and 0 <= ev.crossing < d.n_crossings:
            for k in d.strand_components(ev.crossing):
                counts[k] += 1
    loop_events = sum(1 for ev in sd.axis if isinstance(ev, FixedPoint) and ev.edge is None)
    if loop_events != 2 * d.free_loops:
        problems.append(
            Problem(
                "fixed-points",
                None,
                f"{d.free_loops} free loops need {2 * d.free_loops} 'fixed loop' events, found {loop_events}",
            )
        )
    for k, comp in enumerate(d.components):
        images = {d.component_of(sd.iota_edges[e]) for e in comp}
        if len(images) != 1:
            problems.append(Problem("components", k, f"iota splits component {k}"))
            continue
        (image,) = images
        want = 2 if image == k else 0
        if counts[k] != want:
            problems.append(
                Problem(
                    "fixed-points",
                    k,
                    f"fixed-point count ≠ {want} on component {k} (found {counts[k]})",
                )
            )
    return problems


def _half_problems(sd):
    d = sd.base
    problems = []
    for c in sd.right:
        if c not in sd.iota_crossings or sd.iota_crossings[c] == c:
            problems.append(Problem("axis-normal", c, f"right crossing {c} is not an off-axis crossing"))
        elif sd.iota_crossings[c] in sd.right:
            problems.append(Problem("axis-normal", c, f"crossing {c} and its image are both on the right"))
    for a, b in sd.iota_crossings.items():
        if a < b and a not in sd.right and b not in sd.right:
            problems.append(Problem("axis-normal", a, f"neither {a} nor {b} is on the right"))
    if problems:
        return problems
    fixed = {ev.edge for ev in sd.axis if isinstance(ev, FixedPoint)}
    for label in d.labels:
        sides = {_side(sd, c, s) for c, s in d.occurrences(label)}
        if None in sides:
            continue
        crosses = len(sides) == 2
        if crosses != (label in fixed):
            problems.append(
                Problem(
                    "axis-normal",
                    label,
                    f"edge {label} {'crosses' if crosses else 'does not cross'} the axis",
                )
            )
    return problems


def check_symmetric(sd):
    """Raise `ValidationError` unless `validate_symmetric` finds nothing."""
    problems = validate_symmetric(sd)
    if problems:
        raise ValidationError(problems)
    return sd


# ---- quotient -------------------------------------------------------------
def _hook(top_in, top_out, upper, lower, port_slot, w, m, upward):
    """
    The two crossings of a hook around the half-axis.

    Slots are listed E, N, W, S counterclockwise and rotated to start at
    an under slot.  The cap from the upper port crosses the axis at the top
    crossing and the cap from the lower port at the bottom one; the cap
    from the over port passes over.
    """
    upper_over = (port_slot + 1) % 2 == 1
    if upward:
        # walking up: enter the bottom crossing from the south
        ct_north, cb_south = top_out, top_in
    else:
        ct_north, cb_south = top_in, top_out
    ct = [upper, ct_north, w, m]
    cb = [lower, m, w, cb_south]
    ct = ct[1:] + ct[:1] if upper_over else ct
    cb = cb if upper_over else cb[1:] + cb[:1]
    return tuple(ct), tuple(cb)


def quotient(sd, which):
    """
    The quotient knot ``(K ∪ h) / iota`` for half-axis *which*.

    The right half tangle is kept.  Each on-axis B crossing off the chosen
    half-axis is closed by a cap joining its two right ports; each one on
    it is closed by a hook around the half-axis; the half-axis itself joins
    the two fixed points.

    Parameters
    ----------
    sd : SymmetricDiagram
        A strongly invertible knot.
    which : {"h1", "h2"}

    Returns
    -------
    LinkDiagram
        A knot diagram.

    Raises
    ------
    ValidationError
        If *sd* does not validate.
    AxisNormalError
        If the right-half data is inconsistent with the axis events, or
        some axis event cannot be folded (C crossings).
    """
    which = _check_half_axis(which)
    problems = validate_symmetric(sd)
    unfoldable = [p for p in problems if p.code == "axis-normal"]
    if unfoldable:
        raise AxisNormalError(
            "not in axis-normal form: " + "; ".join(p.message for p in unfoldable),
            [p.subject for p in unfoldable],
        )
    if problems:
        raise ValidationError(problems)
    d = sd.base
    if d.n_components != 1:
        raise DiagramError(f"quotient needs a strongly invertible knot, got {d.n_components} components")
    c_events = [e for e in sd.axis if isinstance(e, OnAxisCrossing) and e.kind == "C"]
    if c_events:
        raise AxisNormalError(
            "cannot be folded: " + ", ".join(str(e) for e in c_events), c_events
        )
    if not d.crossings:
        return LinkDiagram([], 1)

    top, bottom = sd.fixed_events()
    a, b = top.edge, bottom.edge
    uf = nx.utils.UnionFind()
    crossings = [d.crossings[c] for c in sorted(sd.right)]
    on_path = sd.half_axis(which)
    on_path_ids = {e.crossing for e in on_path}
    next_label = d.max_label() + 1

    for event in sd.axis:
        if isinstance(event, OnAxisCrossing) and event.crossing not in on_path_ids:
            x = d.crossings[event.crossing]
            uf.union(x[event.right % 4], x[(event.right + 1) % 4])

    if on_path:
        path = [a] + list(range(next_label, next_label + len(on_path) - 1)) + [b]
        next_label += len(on_path) - 1
    else:
        uf.union(a, b)
    for k, event in enumerate(on_path):
        x = d.crossings[event.crossing]
        s = event.right
        w, m = next_label, next_label + 1
        next_label += 2
        ct, cb = _hook(
            path[k], path[k + 1], x[(s + 1) % 4], x[s % 4], s, w, m, which == "h1"
        )
        crossings.extend([ct, cb])
        _log.debug("hook at crossing %d: %s %s", event.crossing, ct, cb)

    rep = {v: min(group) for group in uf.to_sets() for v in group}
    relabelled = [tuple(rep.get(v, v) for v in x) for x in crossings]
    used = {v for x in relabelled for v in x}
    # port-only cycles close up without crossings
    loops = len(set(rep.values()) - used)
    result = from_unoriented(relabelled, loops)
    if result.n_components != 1:
        raise AxisNormalError(
            f"folding along {which} gave {result.n_components} components", list(on_path)
        )
    return result


# ---- moves ----------------------------------------------------------------
@dataclass(frozen=True)
class Move:
    """
    One symmetric crossing change.

    ``site`` is a crossing id for B and C moves and a pair of crossing ids
    exchanged by iota for A moves.
    """

    site: object
    type: MoveType

    def crossings(self):
        return tuple(self.site) if isinstance(self.site, tuple) else (self.site,)

    def __str__(self):
        where = "/".join(str(c) for c in self.crossings())
        return f"{self.type}@{where}"


@dataclass(frozen=True)
class UnknottingSequence:
    """An ordered list of moves with the self-intersection counts it yields."""

    moves: tuple = ()

    def count(self, kind):
        return sum(1 for m in self.moves if m.type is kind)

    @property
    def k_A_pairs(self):
        return self.count(MoveType.A)

    @property
    def k_B_plus(self):
        return self.count(MoveType.B_PLUS)

    @property
    def k_B_minus(self):
        return self.count(MoveType.B_MINUS)

    @property
    def k_C(self):
        return self.count(MoveType.C)

    @property
    def k_total(self):
        """Each A pair gives two self-intersections, every other move one."""
        return 2 * self.k_A_pairs + self.k_B_plus + self.k_B_minus + self.k_C

    def __len__(self):
        return len(self.moves)

    def __str__(self):
        return " ".join(str(m) for m in self.moves) or "(empty)"


@dataclass(frozen=True)
class NotFound:
    """Outcome of an exhausted search, with per-depth frontier sizes."""

    max_moves: int
    explored: int
    frontier_sizes: tuple
    unknown: int = 0

    def __bool__(self):
        return False


def classify_move(sd, site):
    """
    Type of the symmetric crossing change at *site*.

    Parameters
    ----------
    sd : SymmetricDiagram
    site : int or (int, int)
        An on-axis crossing, or an off-axis crossing (alone or with its
        iota image).

    Returns
    -------
    MoveType
        A for off-axis sites; B+ or B- for on-axis crossings whose strands
        iota exchanges, the sign being read after transporting the under
        strand's orientation to the over strand; C when each strand is
        preserved.

    Raises
    ------
    DiagramError
        For an unknown crossing, a pair not exchanged by iota, or a
        crossing fixed by iota that is missing from the axis list.
    """
    crossings = tuple(site) if isinstance(site, (tuple, list)) else (site,)
    for c in crossings:
        sd.base.check_crossing(c)
    c = crossings[0]
    image = sd.iota_crossings[c]
    if len(crossings) == 2:
        if crossings[1] != image or image == c:
            raise DiagramError(f"crossings {crossings} are not exchanged by iota")
        return MoveType.A
    if len(crossings) != 1:
        raise DiagramError(f"bad move site {site!r}")
    if image != c:
        return MoveType.A
    event = sd.event_of(c)
    if event is None:
        raise DiagramError(f"crossing {c} is fixed by iota but not listed on the axis")
    action = slot_action(sd, c)
    if action is None:
        raise DiagramError(f"iota does not preserve crossing {c}")
    kind, c0 = action
    if kind == "half-turn":
        return MoveType.C
    # the under strand enters at slot 0, so its image enters at slot c0
    return MoveType.B_PLUS if c0 == 3 else MoveType.B_MINUS


def candidate_moves(sd):
    """Every symmetric crossing change available on *sd*."""
    moves = []
    for c in range(sd.base.n_crossings):
        image = sd.iota_crossings[c]
        if image == c:
            moves.append(Move(c, classify_move(sd, c)))
        elif c < image:
            moves.append(Move((c, image), MoveType.A))
    return moves


def _shift_event(d, event):
    if isinstance(event, OnAxisCrossing) and event.kind == "B":
        shift = change_shift(d.sign(event.crossing))
        return replace(event, right=(event.right + shift) % 4)
    return event


def apply_move(sd, move):
    """
    Perform *move*: one crossing change for B and C, two for A.

    Raises
    ------
    DiagramError
        If the declared type differs from `classify_move` at the site.
    """
    actual = classify_move(sd, move.site)
    if actual is not move.type:
        raise DiagramError(f"move {move} is declared {move.type} but the site is {actual}")
    targets = set(move.crossings())
    if actual is MoveType.A:
        targets.add(sd.iota_crossings[move.crossings()[0]])
    axis = tuple(
        _shift_event(sd.base, e)
        if isinstance(e, OnAxisCrossing) and e.crossing in targets
        else e
        for e in sd.axis
    )
    base = sd.base
    for c in sorted(targets):
        base = crossing_change(base, c)
    return replace(sd, base=base, axis=axis)


def mirror_symmetric(sd):
    """
    Mirror a symmetric diagram; B+ sites become B- sites and vice versa.

    The crossing ids, edge labels and iota are unchanged; the right slots
    of B events follow the slot shift of the crossing change.
    """
    axis = tuple(_shift_event(sd.base, e) for e in sd.axis)
    return replace(sd, base=mirror(sd.base), axis=axis)


def equivariant_unknotting_search(sd, max_moves, allowed_types=None, single=None):
    """
    Breadth-first search for symmetric crossing changes that unknot *sd*.

    Parameters
    ----------
    sd : SymmetricDiagram
        A strongly invertible knot.
    max_moves : int
        Maximum sequence length; at most the ``search_max_moves`` limit.
    allowed_types : iterable of MoveType or str, optional
        Move types to try; all four by default.
    single : MoveType, optional
        Only accept the empty sequence or sequences with exactly one move
        of this type; no sequence uses it twice.

    Returns
    -------
    UnknottingSequence or NotFound
        A sequence that replays through `apply_move` to a diagram for which
        `try_unknot` proves unknottedness, or the search statistics.
        Diagrams whose status stays Unknown count as failures.
    """
    cap = get_limit("search_max_moves")
    if max_moves > cap:
        raise LimitExceeded("search_max_moves", cap, max_moves)
    if allowed_types is None:
        allowed = set(MoveType)
    else:
        allowed = {t if isinstance(t, MoveType) else MoveType.parse(t) for t in allowed_types}
    if sd.base.n_components != 1:
        raise DiagramError("equivariant unknotting needs a strongly invertible knot")

    unknown = 0
    visited = {(sd.key(), 0)}
    layer = [(sd, ())]
    sizes = []
    explored = 0
    for depth in range(max_moves + 1):
        sizes.append(len(layer))
        _log.debug("search depth %d: %d diagrams", depth, len(layer))
        next_layer = []
        for current, moves in layer:
            explored += 1
            used = sum(1 for m in moves if m.type is single)
            status = try_unknot(current.base)
            if status is UnknotStatus.PROVEN_UNKNOT and (single is None or used == 1 or not moves):
                _log.info("unknotted %s with %d moves", sd.name or "diagram", len(moves))
                if unknown:
                    _warn_unknown(unknown)
                return UnknottingSequence(moves)
            if status is UnknotStatus.UNKNOWN:
                unknown += 1
            if depth == max_moves:
                continue
            for move in candidate_moves(current):
                if move.type not in allowed or (used and move.type is single):
                    continue
                nxt = apply_move(current, move)
                state = (nxt.key(), used + (move.type is single))
                if state in visited:
                    continue
                visited.add(state)
                next_layer.append((nxt, moves + (move,)))
        layer = next_layer
        if not layer:
            break
    if unknown:
        _warn_unknown(unknown)
    return NotFound(max_moves, explored, tuple(sizes), unknown)


def _warn_unknown(count):
    warnings.warn(
        f"{count} diagram(s) in the search had unknown unknot status and were "
        "treated as knotted",
        stacklevel=3,
    )


# ---- file format ----------------------------------------------------------
_KEYS = ("name", "base", "iota-crossings", "iota-edges", "right", "axis", "flags")
_CYCLE = re.compile(r"\(\s*(\d+)(?:\s+(\d+))?\s*\)")


def _parse_cycles(value, line):
    mapping = {}
    rest = _CYCLE.sub("", value).strip()
    if rest:
        raise ParseError(f"bad cycle notation near {rest[:20]!r}", line=line, position=0)
    for m in _CYCLE.finditer(value):
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) else a
        if a in mapping or b in mapping:
            raise ParseError(f"id {a if a in mapping else b} appears in two cycles", line=line, position=m.start())
        mapping[a] = b
        mapping[b] = a
    return mapping


def _parse_event(text, line):
    words = text.split()
    if not words:
        raise ParseError("empty axis event", line=line, position=0)
    if words[0] == "fixed" and len(words) == 2:
        if words[1] == "loop":
            return FixedPoint(None)
        if words[1].isdigit():
            return FixedPoint(int(words[1]))
    if words[0] == "C" and len(words) == 2 and words[1].isdigit():
        return OnAxisCrossing(int(words[1]), "C")
    if words[0] == "B" and len(words) == 3 and words[1].isdigit():
        m = re.fullmatch(r"right=([0-3])", words[2])
        if m:
            return OnAxisCrossing(int(words[1]), "B", int(m.group(1)))
    raise ParseError(f"bad axis event {text!r}", line=line, position=0)


def parse_sym(text):
    """
    Parse the ``.sym`` text format.

    The file is a list of ``key: value`` lines; indented lines continue the
    previous value and ``#`` starts a comment::

        name: fig8_tau
        base: PD[X(5,1,6,8), X(1,5,2,4), X(7,2,8,3), X(3,6,4,7)]
        iota-crossings: (0) (1) (2 3)
        iota-edges: (1 5) (2 4) (6 8) (3) (7)
        right: 3
        axis: B 0 right=1; B 1 right=3; fixed 7; fixed 3

    Returns
    -------
    SymmetricDiagram
        Not validated; see `validate_symmetric`.
    """
    values = {}
    lines = {}
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        if raw[:1].isspace() and current is not None:
            values[current] += " " + stripped.strip()
            continue
        key, sep, value = stripped.partition(":")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise ParseError(f"expected one of {', '.join(_KEYS)}, got {key!r}", line=number, position=0)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", line=number, position=0)
        values[key] = value.strip()
        lines[key] = number
        current = key
    for key in ("base", "iota-crossings", "iota-edges", "axis"):
        if key not in values:
            raise ParseError(f"missing key {key!r}", line=len(text.splitlines()) + 1, position=len(text))
    try:
        base = parse_pd(values["base"])
    except ParseError as err:
        raise ParseError(f"in base: {err}", line=lines["base"], position=err.position) from None
    right = set()
    for word in values.get("right", "").replace(",", " ").split():
        if not word.isdigit():
            raise ParseError(f"bad crossing id {word!r}", line=lines["right"], position=0)
        right.add(int(word))
    axis = tuple(
        _parse_event(part.strip(), lines["axis"])
        for part in values["axis"].split(";")
        if part.strip()
    )
    return SymmetricDiagram(
        base=base,
        iota_crossings=_parse_cycles(values["iota-crossings"], lines["iota-crossings"]),
        iota_edges=_parse_cycles(values["iota-edges"], lines["iota-edges"]),
        axis=axis,
        right=frozenset(right),
        name=values.get("name", ""),
        flags=frozenset(values.get("flags", "").split()),
    )

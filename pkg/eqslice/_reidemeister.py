"""
Reidemeister moves as local rewrites of PD crossing lists.

Removal moves (R1, R2) and the R3 triangle move are what the unknot search
explores; the insertion moves exist so that diagrams can be scrambled by
`random_perturbation` when checking that invariants do not change.
"""
import logging
import random

import networkx as nx

from ._errors import DiagramError
from ._linkdiag import LinkDiagram

_log = logging.getLogger(__name__)


def remove_crossings(d, ids):
    """
    Delete crossings and rejoin the strands through them.

    At each deleted crossing the labels in slots 0/2 and in slots 1/3 are
    merged.  Merged classes are renamed to their smallest label; classes
    with no surviving occurrence become free loops.
    """
    ids = set(ids)
    uf = nx.utils.UnionFind()
    for c in ids:
        x = d.crossings[c]
        uf.union(x[0], x[2])
        uf.union(x[1], x[3])
    rep = {}
    for group in uf.to_sets():
        low = min(group)
        for label in group:
            rep[label] = low
    kept = [
        tuple(rep.get(v, v) for v in x)
        for c, x in enumerate(d.crossings)
        if c not in ids
    ]
    alive = {v for x in kept for v in x}
    loops = len({rep[v] for v in rep} - alive)
    return LinkDiagram(kept, d.free_loops + loops)


# ---- sites ----------------------------------------------------------------
def r1_sites(d):
    """Crossings that carry a kink (two adjacent slots share a label)."""
    return [
        c
        for c, x in enumerate(d.crossings)
        if any(x[s] == x[(s + 1) % 4] for s in range(4))
    ]


def _same_level(i, j):
    # slot parity encodes the level: odd slots are over, even are under
    return i % 2 == j % 2


def r2_sites(d):
    """Pairs of crossings bounding a bigon with one strand over both."""
    sites = []
    for face in d.faces():
        if len(face) != 2:
            continue
        (x, i), (y, j) = face
        if x != y and _same_level(i + 1, j):
            sites.append((min(x, y), max(x, y)))
    return sorted(set(sites))


def r3_sites(d):
    """Triangular faces on which an R3 move applies."""
    sites = []
    for face in d.faces():
        if len(face) != 3:
            continue
        (x, i), (y, j), (z, k) = face
        if len({x, y, z}) != 3:
            continue
        if _same_level(i + 1, j) or _same_level(j + 1, k) or _same_level(k + 1, i):
            sites.append(face)
    return sites


# ---- removal and R3 -------------------------------------------------------
def r1_remove(d, c):
    if c not in r1_sites(d):
        raise DiagramError(f"crossing {c} is not a kink")
    return remove_crossings(d, [c])


def r2_remove(d, x, y):
    if (min(x, y), max(x, y)) not in r2_sites(d):
        raise DiagramError(f"crossings {x} and {y} do not bound a removable bigon")
    return remove_crossings(d, [x, y])


def r3(d, face):
    """
    Slide the strand opposite the triangle *face* across it.

    *face* is a cycle of three corners as returned by `LinkDiagram.faces`.
    Slot directions at each crossing are unchanged, so signs are kept.
    """
    (x, i), (y, j), (z, k) = face
    cx, cy, cz = (list(d.crossings[c]) for c in (x, y, z))
    f1, f2, f3 = cx[(i + 1) % 4], cy[(j + 1) % 4], cz[(k + 1) % 4]
    x1, x3 = cx[(i + 3) % 4], cx[(i + 2) % 4]
    y1, y2 = cy[(j + 2) % 4], cy[(j + 3) % 4]
    z2, z3 = cz[(k + 2) % 4], cz[(k + 3) % 4]
    for crossing, base, values in (
        (cx, i, (z3, y1, f3, f1)),
        (cy, j, (x1, z2, f1, f2)),
        (cz, k, (y2, x3, f2, f3)),
    ):
        for offset, value in enumerate(values):
            crossing[(base + offset) % 4] = value
    crossings = list(d.crossings)
    crossings[x], crossings[y], crossings[z] = tuple(cx), tuple(cy), tuple(cz)
    return LinkDiagram(crossings, d.free_loops)


# ---- insertions -----------------------------------------------------------
# kink crossing for edge L split into L -> (loop m) -> n; keyed by variant
_KINKS = {
    0: lambda L, m, n: (L, n, m, m),  # positive, L passes under first
    1: lambda L, m, n: (L, m, m, n),  # negative, L passes under first
    2: lambda L, m, n: (m, L, n, m),  # negative, L passes over first
    3: lambda L, m, n: (m, m, n, L),  # positive, L passes over first
}


def r1_add(d, label=None, variant=0):
    """
    Insert a kink on edge *label* (or on a free loop when *label* is None).

    Parameters
    ----------
    variant : {0, 1, 2, 3}
        Sign and over/under order of the kink: 0 and 3 give a positive
        crossing, 1 and 2 a negative one.
    """
    m = d.max_label() + 1
    n = m + 1
    crossings = list(d.crossings)
    if label is None:
        if not d.free_loops:
            raise DiagramError("diagram has no free loop to kink")
        crossings.append((n, n, m, m))
        return LinkDiagram(crossings, d.free_loops - 1)
    hc, hs = d.head(label)
    row = list(crossings[hc])
    row[hs] = n
    crossings[hc] = tuple(row)
    crossings.append(_KINKS[variant](label, m, n))
    return LinkDiagram(crossings, d.free_loops)


def _sides(d, face):
    """Sides of *face*: (label, walk-start position, walk-end position)."""
    sides = []
    for k, (x, i) in enumerate(face):
        start = (x, (i + 1) % 4)
        end = face[(k + 1) % len(face)]
        sides.append((d.crossings[x][start[1]], start, end))
    return sides


def r2_add(d, face, e_side, f_side, e_over=True):
    """
    Push side *e_side* of *face* across side *f_side*, creating a bigon.

    Parameters
    ----------
    face : tuple of corners
    e_side, f_side : int
        Indices into the sides of *face*; their labels must differ.
    e_over : bool
        Whether the pushed strand passes over.
    """
    sides = _sides(d, face)
    le, e_start, e_end = sides[e_side]
    lf, f_start, f_end = sides[f_side]
    labels = [side[0] for side in sides]
    if le == lf or labels.count(le) > 1 or labels.count(lf) > 1:
        raise DiagramError(
            "R2 insertion needs two different edges, each bounding the face once"
        )
    s_e = 1 if d.tail(le) == e_start else -1
    s_f = 1 if d.tail(lf) == f_start else -1
    base = d.max_label()
    e1, e2, e3 = le, base + 1, base + 2
    f1, f2, f3 = lf, base + 3, base + 4
    crossings = [list(x) for x in d.crossings]
    crossings[e_end[0]][e_end[1]] = e3
    crossings[f_end[0]][f_end[1]] = f3
    if not e_over:
        if s_e > 0:
            u, v = [e1, f3, e2, f2], [e2, f1, e3, f2]
        else:
            u, v = [e2, f2, e1, f3], [e3, f2, e2, f1]
    else:
        if s_f > 0:
            u, v = [f2, e1, f3, e2], [f1, e3, f2, e2]
        else:
            u, v = [f3, e2, f2, e1], [f2, e2, f1, e3]
    crossings.extend([u, v])
    return LinkDiagram(crossings, d.free_loops)


def _pushable(d, face):
    labels = [side[0] for side in _sides(d, face)]
    return len(labels) > 1 and len(set(labels)) == len(labels)


# ---- compound -------------------------------------------------------------
def simplify(d):
    """Greedily remove kinks and bigons until none is left."""
    while True:
        kinks = r1_sites(d)
        if kinks:
            d = remove_crossings(d, [kinks[0]])
            continue
        bigons = r2_sites(d)
        if bigons:
            d = remove_crossings(d, bigons[0])
            continue
        return d


def random_perturbation(d, n_moves, rng=None):
    """
    Apply *n_moves* random Reidemeister moves to *d*.

    Moves are drawn among kink and bigon insertions, R3 slides and kink or
    bigon removals, so the result is an isotopic diagram with roughly the
    same number of crossings.

    Parameters
    ----------
    d : LinkDiagram
    n_moves : int
    rng : random.Random, optional
        Source of randomness; a fresh unseeded generator by default.
    """
    rng = rng if rng is not None else random.Random()
    for _ in range(n_moves):
        choices = ["r1_add"]
        faces = [f for f in d.faces() if _pushable(d, f)]
        if faces:
            choices.append("r2_add")
        triangles = r3_sites(d)
        if triangles:
            choices.extend(["r3", "r3"])
        kinks = r1_sites(d)
        if kinks:
            choices.append("r1_remove")
        bigons = r2_sites(d)
        if bigons:
            choices.append("r2_remove")
        move = rng.choice(choices)
        if move == "r1_add":
            labels = d.labels
            if not labels or (d.free_loops and rng.random() < 0.25):
                d = r1_add(d, None)
            else:
                d = r1_add(d, rng.choice(labels), rng.randrange(4))
        elif move == "r2_add":
            face = rng.choice(faces)
            sides = _sides(d, face)
            a, b = rng.sample(range(len(sides)), 2)
            d = r2_add(d, face, a, b, rng.random() < 0.5)
        elif move == "r3":
            d = r3(d, rng.choice(triangles))
        elif move == "r1_remove":
            d = remove_crossings(d, [rng.choice(kinks)])
        else:
            d = remove_crossings(d, rng.choice(bigons))
        _log.debug("%s -> %d crossings", move, d.n_crossings)
    return d

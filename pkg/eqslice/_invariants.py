"""
Exact classical invariants used to check diagrams.

The Kauffman bracket is a plain state sum streamed over the smoothing
index space, so memory stays flat; the Goeritz form gives the determinant
and, with the Gordon-Litherland correction, the signature.
"""
import enum
import logging
import math
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import networkx as nx
import sympy

from ._errors import DiagramError, LimitExceeded
from ._laurent import LaurentPolynomial
from ._limits import get_limit
from ._linkdiag import LinkDiagram, canonical_key
from ._reidemeister import r1_sites, r2_sites, r3, r3_sites, remove_crossings

_log = logging.getLogger(__name__)

_CHUNK = 1 << 12
_DELTA = LaurentPolynomial({-2: -1, 2: -1})


def _check_size(d):
    limit = get_limit("state_sum_limit")
    if d.n_crossings > limit:
        raise LimitExceeded("state_sum_limit", limit, d.n_crossings)


def _bracket_chunk(crossings, start, stop):
    """Count states in ``[start, stop)`` by (A exponent, loop count)."""
    n = len(crossings)
    counts = Counter()
    for state in range(start, stop):
        uf = nx.utils.UnionFind()
        for k, (a, b, c, d) in enumerate(crossings):
            if state >> k & 1:
                uf.union(a, d)
                uf.union(b, c)
            else:
                uf.union(a, b)
                uf.union(c, d)
        loops = sum(1 for _ in uf.to_sets())
        counts[n - 2 * bin(state).count("1"), loops] += 1
    return counts


def _state_counts(d):
    total = 1 << d.n_crossings
    ranges = [(s, min(s + _CHUNK, total)) for s in range(0, total, _CHUNK)]
    workers = get_limit("workers")
    counts = Counter()
    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_bracket_chunk, d.crossings, start, stop)
                for start, stop in ranges
            ]
            # summed in submission order; integer sums make the result
            # independent of the split anyway
            for future in futures:
                counts.update(future.result())
    else:
        for start, stop in ranges:
            counts.update(_bracket_chunk(d.crossings, start, stop))
    return counts


def kauffman_bracket(d):
    """
    The Kauffman bracket of *d* as a Laurent polynomial in ``A``.

    The single crossingless loop has bracket 1 and every further loop
    contributes a factor ``-A^2 - A^-2``.

    Raises
    ------
    LimitExceeded
        If *d* has more crossings than the ``state_sum_limit``.

    Examples
    --------
    >>> kauffman_bracket(parse_pd("PD[X(2,3,1,4), X(3,2,4,1)]")).terms
    {-4: -1, 4: -1}
    """
    _check_size(d)
    if not d.crossings:
        return _DELTA ** (d.free_loops - 1) if d.free_loops > 1 else LaurentPolynomial.one()
    powers = {}
    result = LaurentPolynomial()
    for (a_exp, loops), count in sorted(_state_counts(d).items()):
        k = loops + d.free_loops - 1
        if k not in powers:
            powers[k] = _DELTA**k
        result = result + LaurentPolynomial.monomial(a_exp, count) * powers[k]
    return result


def jones(d):
    """
    The Jones polynomial, stored with integer exponents of ``t^(1/2)``.

    Computed as ``(-A^3)^(-w) <d>`` with ``A = t^(-1/4)``.
    """
    bracket = kauffman_bracket(d)
    w = d.writhe()
    factor = LaurentPolynomial.monomial(-3 * w, -1 if w % 2 else 1)
    return (factor * bracket).substitute(-1).rescale(2)


def jones_determinant(poly):
    """``|V(-1)|`` of a Jones polynomial in ``t^(1/2)`` exponents."""
    re, im = poly.evaluate_at_i()
    square = re * re + im * im
    root = math.isqrt(square)
    if root * root != square:
        raise DiagramError(f"|V(-1)|^2 = {square} is not a perfect square")
    return root


# ---- Goeritz form ---------------------------------------------------------
def _white_faces(d):
    faces = d.faces()
    face_of = {corner: k for k, face in enumerate(faces) for corner in face}
    graph = nx.Graph()
    graph.add_nodes_from(range(len(faces)))
    for c in range(d.n_crossings):
        for i in range(4):
            graph.add_edge(face_of[c, i], face_of[c, (i + 1) % 4])
    colors = nx.bipartite.color(graph)
    white = colors[face_of[0, 0]] if faces else 0
    return faces, face_of, [k for k in range(len(faces)) if colors[k] == white]


def goeritz_matrix(d):
    """
    The Goeritz matrix of a connected diagram, and its correction term.

    Returns
    -------
    matrix : sympy.Matrix
        Reduced Goeritz matrix (first white region deleted).
    correction : int
        Sum of the region signs at crossings where the region sign agrees
        with the crossing sign.
    """
    if len(d.split_pieces()) != 1 or d.free_loops:
        raise DiagramError("Goeritz form needs a connected diagram with crossings")
    faces, face_of, white = _white_faces(d)
    index = {f: k for k, f in enumerate(white)}
    size = len(white)
    g = sympy.zeros(size, size)
    correction = 0
    for c in range(d.n_crossings):
        if face_of[c, 0] in index:
            s, f, h = 1, face_of[c, 0], face_of[c, 2]
        else:
            s, f, h = -1, face_of[c, 1], face_of[c, 3]
        if f != h:
            g[index[f], index[h]] += s
            g[index[h], index[f]] += s
        if s == d.sign(c):
            correction += s
    for k in range(size):
        g[k, k] = -sum(g[j, k] for j in range(size) if j != k)
    return g[1:, 1:], correction


def _matrix_signature(m):
    if m.rows == 0:
        return 0
    x = sympy.Symbol("x")
    coeffs = [int(c) for c in m.charpoly(x).all_coeffs()]

    def changes(cs):
        cs = [c for c in cs if c]
        return sum(1 for a, b in zip(cs, cs[1:]) if (a > 0) != (b > 0))

    # the characteristic polynomial of a symmetric matrix is real-rooted,
    # so Descartes' rule counts roots exactly
    positive = changes(coeffs)
    degree = len(coeffs) - 1
    negative = changes([c * (-1) ** (degree - k) for k, c in enumerate(coeffs)])
    return positive - negative


def goeritz(d):
    """
    Determinant and signature of a connected diagram.

    The signature follows the convention in which the right-handed
    trefoil has signature -2.

    Returns
    -------
    (int, int)

    Raises
    ------
    DiagramError
        For a split diagram; use `determinant` and `signature`, which
        combine the pieces.
    """
    if not d.crossings:
        if d.n_components == 1:
            return 1, 0
        raise DiagramError("Goeritz form of a split diagram is not defined")
    matrix, correction = goeritz_matrix(d)
    det = abs(int(matrix.det(method="bareiss"))) if matrix.rows else 1
    return det, -(_matrix_signature(matrix) + correction)


def _pieces(d):
    return [
        LinkDiagram([d.crossings[c] for c in piece])
        for piece in d.split_pieces()
    ]


def signature(d):
    """Signature of *d*; split pieces add up and free loops contribute 0."""
    return sum(goeritz(p)[1] for p in _pieces(d))


def determinant(d):
    """Determinant of *d*; 0 for a split diagram of two or more pieces."""
    pieces = _pieces(d)
    if len(pieces) + d.free_loops > 1:
        return 0
    if not pieces:
        return 1
    return goeritz(pieces[0])[0]


def arf(d):
    """
    Arf invariant of a knot from its determinant.

    Raises
    ------
    DiagramError
        If *d* has more than one component.
    """
    if d.n_components != 1:
        raise DiagramError(f"Arf invariant needs a knot, got {d.n_components} components")
    return 0 if determinant(d) % 8 in (1, 7) else 1


# ---- unknot recognition ---------------------------------------------------
class UnknotStatus(enum.Enum):
    PROVEN_UNKNOT = "ProvenUnknot"
    PROVEN_KNOTTED = "ProvenKnotted"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


def _neighbours(d):
    for c in r1_sites(d):
        yield remove_crossings(d, [c])
    for pair in r2_sites(d):
        yield remove_crossings(d, pair)
    for face in r3_sites(d):
        yield r3(d, face)


def unknotting_moves(d, budget):
    """
    Breadth-first search for at most *budget* Reidemeister moves to a
    crossingless diagram.

    Returns
    -------
    list of LinkDiagram or None
        The diagrams along a successful path (starting with *d*), or None
        when the budget or the ``unknot_state_cap`` runs out.
    """
    if not d.crossings:
        return [d]
    cap = get_limit("unknot_state_cap")
    start = canonical_key(d)
    parents = {start: None}
    diagrams = {start: d}
    queue = deque([(d, start, 0)])
    while queue:
        current, key, depth = queue.popleft()
        if depth >= budget:
            continue
        for nxt in _neighbours(current):
            nkey = canonical_key(nxt)
            if nkey in parents:
                continue
            parents[nkey] = key
            diagrams[nkey] = nxt
            if not nxt.crossings:
                path = [nkey]
                while parents[path[-1]] is not None:
                    path.append(parents[path[-1]])
                return [diagrams[k] for k in reversed(path)]
            if len(parents) >= cap:
                _log.info("unknot search stopped after %d states", len(parents))
                return None
            queue.append((nxt, nkey, depth + 1))
    return None


def try_unknot(d, budget=None):
    """
    Bounded unknot recognition.

    Parameters
    ----------
    d : LinkDiagram
        A knot diagram.
    budget : int, optional
        Maximum number of Reidemeister moves; defaults to the
        ``unknot_budget`` limit.

    Returns
    -------
    UnknotStatus
        ``PROVEN_KNOTTED`` if the Jones polynomial is not 1,
        ``PROVEN_UNKNOT`` if a move sequence within budget removes every
        crossing, ``UNKNOWN`` otherwise (including when the diagram is too
        large for the state sum).
    """
    if d.n_components != 1:
        raise DiagramError(f"unknot recognition needs a knot, got {d.n_components} components")
    budget = get_limit("unknot_budget") if budget is None else budget
    try:
        if jones(d) != 1:
            return UnknotStatus.PROVEN_KNOTTED
    except LimitExceeded as err:
        _log.info("skipping Jones test: %s", err)
    if unknotting_moves(d, budget) is not None:
        return UnknotStatus.PROVEN_UNKNOT
    return UnknotStatus.UNKNOWN


@dataclass(frozen=True)
class InvariantReport:
    """Invariants of one diagram, as printed by ``eqslice invariants``."""

    jones: LaurentPolynomial
    determinant: int
    signature: int
    arf: Optional[int]
    unknot_status: Optional[UnknotStatus]
    n_components: int = 1
    writhe: int = 0

    def to_text(self):
        lines = [
            f"components: {self.n_components}",
            f"writhe: {self.writhe}",
            f"jones: {self.jones.format('t', 2)}",
            f"determinant: {self.determinant}",
            f"signature: {self.signature}",
        ]
        if self.arf is not None:
            lines.append(f"arf: {self.arf}")
        if self.unknot_status is not None:
            lines.append(f"unknot_status: {self.unknot_status}")
        return "\n".join(lines) + "\n"


def invariant_report(d, budget=None):
    """
    Compute every invariant of *d*.

    The determinant is computed from the Goeritz form and cross-checked
    against ``|V(-1)|``; the Arf invariant and unknot status are only
    reported for knots.
    """
    poly = jones(d)
    det = determinant(d)
    from_jones = jones_determinant(poly)
    if det != from_jones:
        raise DiagramError(f"determinant mismatch: Goeritz {det}, Jones {from_jones}")
    knot = d.n_components == 1
    return InvariantReport(
        jones=poly,
        determinant=det,
        signature=signature(d),
        arf=(0 if det % 8 in (1, 7) else 1) if knot else None,
        unknot_status=try_unknot(d, budget) if knot else None,
        n_components=d.n_components,
        writhe=d.writhe(),
    )

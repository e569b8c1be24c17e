"""
Sliceness certificates from the tubing construction and non-sliceness
verdicts from the quotient obstruction.
"""
import enum
import logging
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from ._eqtree import associated_link, prune_to_size, tree_type, validate_equivariant
from ._errors import DatabaseError, EqsliceError, LimitExceeded, TreeError
from ._invariants import determinant, jones
from ._laurent import LaurentPolynomial
from ._limits import get_limit
from ._linkdiag import mirror
from ._plumbing import EmbeddingMap, ambient_plumbings, derive_embedded_tree, plumbing_type
from ._symdiag import MoveType, NotFound, UnknottingSequence, check_symmetric
from ._symdiag import equivariant_unknotting_search, mirror_symmetric, quotient

_log = logging.getLogger(__name__)

CONVENTIONS = ("mirrored", "as-stated")


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise EqsliceError(f"unknown convention {convention!r}; use one of {CONVENTIONS}")
    return convention


def disk_type(omega, convention):
    """The self-intersection type a disk needs for a plumbing of type *omega*."""
    return omega.mirrored() if _check_convention(convention) == "mirrored" else omega


# ---- disks ----------------------------------------------------------------
@dataclass(frozen=True)
class ImmersedDiskDescriptor:
    """
    The invariant immersed disk traced by an equivariant unknotting sequence.

    Attributes
    ----------
    sequence : UnknottingSequence
    k : int
        Number of self-intersections.
    types : tuple of MoveType
        One entry per self-intersection, sorted.
    """

    sequence: UnknottingSequence
    k: int
    types: tuple

    @property
    def omega(self):
        """The non-A types present, as a tuple."""
        return tuple(t for t in self.types if t is not MoveType.A)

    @property
    def eligible(self):
        """At most one self-intersection is not of type A."""
        return len(self.omega) <= 1

    def describe(self):
        counts = Counter(str(t) for t in self.types)
        body = ", ".join(f"{n}x{t}" for t, n in sorted(counts.items())) or "none"
        return f"k={self.k} ({body})"


def disk_from_sequence(seq):
    """
    Read off the disk of an unknotting sequence.

    Each A move contributes a pair of A self-intersections and every other
    move one self-intersection of its own type.
    """
    types = []
    for move in seq.moves:
        types.extend([move.type] * (2 if move.type is MoveType.A else 1))
    types.sort(key=lambda t: t.value)
    return ImmersedDiskDescriptor(seq, len(types), tuple(types))


# ---- theorem check --------------------------------------------------------
@dataclass(frozen=True)
class Rejection:
    """Why `check_theorem` refused: the first clause that fails."""

    clause: str
    message: str

    def __bool__(self):
        return False

    def __str__(self):
        return f"clause ({self.clause}): {self.message}"


@dataclass(frozen=True, eq=False)
class Certificate:
    """
    Evidence that a knot bounds an invariant disk in the ambient manifold.

    The pruned tree is re-checked on construction: it validates, has ``k``
    vertices and has the plumbing's type.

    Attributes
    ----------
    plumbing : PlumbingTree
    tree : EquivariantTree or None
        The pruned tree; None for an embedded disk (``k == 0``).
    embedding : EmbeddingMap or None
    disk : ImmersedDiskDescriptor
    convention : str
    transcript : tuple of str
    knot : SymmetricDiagram, optional
    """

    plumbing: object
    tree: object
    embedding: object
    disk: ImmersedDiskDescriptor
    convention: str
    transcript: tuple
    knot: object = None

    def __post_init__(self):
        if self.tree is None:
            if self.disk.k:
                raise TreeError("a certificate for an immersed disk needs a tree")
            return
        problems = validate_equivariant(self.tree)
        if problems:
            raise TreeError(f"certificate tree is invalid: {problems[0].message}")
        if len(self.tree) != self.disk.k:
            raise TreeError(f"certificate tree has {len(self.tree)} vertices, disk has k={self.disk.k}")
        if tree_type(self.tree) is not plumbing_type(self.plumbing):
            raise TreeError("certificate tree type differs from the plumbing type")

    def to_text(self):
        lines = [
            f"plumbing: {self.plumbing.name}",
            f"convention: {self.convention}",
            f"disk: {self.disk.describe()}",
            f"moves: {self.disk.sequence}",
        ]
        if self.tree is not None:
            lines.append("tree: " + " ".join(
                f"{v}:{self.tree.weight[v]}" for v in self.tree.vertices
            ))
        lines.extend(f"step: {step}" for step in self.transcript)
        return "\n".join(lines) + "\n"


def check_theorem(disk, pt, convention="mirrored", knot=None):
    """
    Check the hypotheses of the tubing theorem and build a certificate.

    Parameters
    ----------
    disk : ImmersedDiskDescriptor
    pt : PlumbingTree
        Of type Omega, with ``n`` spheres.
    convention : {"mirrored", "as-stated"}
        With ``"as-stated"`` the disk needs one self-intersection of type
        Omega; with ``"mirrored"`` one of type -Omega (B+ and B- swap, C is
        its own mirror).
    knot : SymmetricDiagram, optional
        Recorded in the certificate.

    Returns
    -------
    Certificate or Rejection
        Clause ``"i"`` when ``k > n - 1``, ``"ii"`` when the single non-A
        self-intersection has the wrong type or is missing, ``"iii"`` when
        more than one self-intersection is not of type A.
    """
    omega = plumbing_type(pt)
    n = pt.n_spheres
    want = disk_type(omega, convention)
    if disk.k > n - 1:
        return Rejection("i", f"k={disk.k} exceeds n-1={n - 1}")
    transcript = [
        f"disk {disk.describe()} against {pt.name or 'plumbing'} with {n} spheres of type {omega}",
    ]
    if disk.k == 0:
        transcript.append("k=0: the disk is embedded, no tubing needed")
        _log.info("certificate for an embedded disk")
        return Certificate(pt, None, None, disk, convention, tuple(transcript), knot)
    if disk.omega and disk.omega[0] is not want and disk.eligible:
        return Rejection("ii", f"disk has type {disk.omega[0]}, plumbing of type {omega} needs {want}")
    if not disk.omega:
        return Rejection("ii", f"disk has no self-intersection of type {want}")
    if not disk.eligible:
        kinds = ", ".join(str(t) for t in disk.omega)
        return Rejection("iii", f"more than one self-intersection is not of type A: {kinds}")
    if convention == "mirrored":
        transcript.append(
            f"mirrored convention: disk type {want} matches plumbing type {omega} after mirroring the knot"
        )
    et, embedding = derive_embedded_tree(pt)
    transcript.append(f"embedded tree with {len(et)} vertices derived from the plumbing")
    pruned = prune_to_size(et, disk.k)
    transcript.append(f"pruned paired A vertices down to {len(pruned)}")
    link = associated_link(pruned.base)
    transcript.append(
        f"associated link of the pruned tree has {link.n_components} components"
    )
    transcript.append(
        f"tubing along {disk.k} symmetric annuli joins the disk to the fixed surface"
    )
    kept = {v: embedding.points[v] for v in pruned.vertices}
    cert = Certificate(
        pt,
        pruned,
        EmbeddingMap(kept, {v: embedding.sheets[v] for v in kept}),
        disk,
        convention,
        tuple(transcript),
        knot,
    )
    _log.info("certificate built against %s", pt.name)
    return cert


# ---- obstruction database -------------------------------------------------
@dataclass(frozen=True)
class DatabaseEntry:
    """A knot known not to be slice in the manifold tagged ``quotient``."""

    name: str
    quotient: str
    jones: LaurentPolynomial
    determinant: int
    citation: str = ""


_ENTRY_KEYS = ("entry", "quotient", "jones", "determinant", "citation")
# orientation reversal of a quotient manifold mirrors the knots in it
_REVERSED = {"CP2": "CP2bar", "CP2bar": "CP2"}


def parse_database(text):
    """
    Parse an obstruction database.

    Entries are blocks of ``key: value`` lines starting with ``entry:``;
    ``jones`` lists ``exponent:coefficient`` pairs in powers of ``t^(1/2)``.
    """
    entries = []
    block = None
    number = 0

    def close():
        if block is None:
            return
        missing = [k for k in _ENTRY_KEYS[:4] if k not in block]
        if missing:
            raise DatabaseError(f"entry {block.get('entry')!r} lacks {', '.join(missing)}")
        try:
            poly = LaurentPolynomial(
                tuple(int(v) for v in pair.split(":")) for pair in block["jones"].split()
            )
            det = int(block["determinant"])
        except ValueError:
            raise DatabaseError(f"entry {block['entry']!r} has a malformed value") from None
        entries.append(
            DatabaseEntry(block["entry"], block["quotient"], poly, det, block.get("citation", ""))
        )

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in _ENTRY_KEYS:
            raise DatabaseError(f"line {number}: unexpected {line!r}")
        if key == "entry":
            close()
            block = {}
        elif block is None:
            raise DatabaseError(f"line {number}: {key!r} before any entry")
        block[key] = value.strip()
    close()
    return entries


def load_database(path=None):
    """Read the bundled obstruction database, or the file at *path*."""
    if path is None:
        text = resources.files("eqslice").joinpath("data", "nonslice.db").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_database(text)


# ---- verdicts -------------------------------------------------------------
class Conclusion(enum.Enum):
    SLICE = "Slice"
    NOT_SLICE = "NotSlice"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Evidence:
    """A quotient knot that matches a database entry."""

    half_axis: str
    entry: DatabaseEntry
    mirrored: bool

    def __str__(self):
        where = "mirror of quotient" if self.mirrored else "quotient"
        return (
            f"{where} along {self.half_axis} matches {self.entry.name} "
            f"({self.entry.quotient}, determinant {self.entry.determinant})"
        )


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of the obstruction and certification pipeline.

    Attributes
    ----------
    conclusion : Conclusion
    ambient : str
    surface : str or None
        Fixed-surface component the statement refers to.
    knot : str
    certificate : Certificate, optional
    evidence : Evidence, optional
    notes : tuple of str
    """

    conclusion: Conclusion
    ambient: str
    surface: Optional[str]
    knot: str = ""
    certificate: Optional[Certificate] = None
    evidence: Optional[Evidence] = None
    notes: tuple = field(default=())

    def __post_init__(self):
        if (self.conclusion is Conclusion.SLICE) != (self.certificate is not None):
            raise EqsliceError("a Slice verdict needs a certificate and nothing else has one")
        if (self.conclusion is Conclusion.NOT_SLICE) != (self.evidence is not None):
            raise EqsliceError("a NotSlice verdict needs evidence and nothing else has it")

    def to_dict(self):
        out = {
            "verdict": str(self.conclusion),
            "ambient": self.ambient,
            "surface": self.surface,
            "knot": self.knot,
        }
        if self.evidence is not None:
            out["evidence"] = str(self.evidence)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_text().splitlines()
        out["notes"] = list(self.notes)
        return out

    def to_text(self):
        lines = [
            f"verdict: {self.conclusion}",
            f"ambient: {self.ambient}",
            f"surface: {self.surface}",
            f"knot: {self.knot}",
        ]
        if self.evidence is not None:
            lines.append(f"evidence: {self.evidence}")
        if self.certificate is not None:
            lines.extend(self.certificate.to_text().splitlines())
        lines.extend(f"note: {note}" for note in self.notes)
        return "\n".join(lines) + "\n"


def _entries_for(database, tag):
    """Entries to compare against and whether the quotient must be mirrored."""
    direct = [e for e in database if e.quotient == tag]
    reverse = _REVERSED.get(tag)
    flipped = [e for e in database if reverse is not None and e.quotient == reverse]
    return [(e, False) for e in direct] + [(e, True) for e in flipped]


def quotient_obstruction(sd, desc, database=None):
    """
    Look for a quotient knot that cannot be slice in the quotient manifold.

    If the knot were equivariantly slice with a sphere fixed component, both
    quotient knots would be slice in ``X / tau``.

    Parameters
    ----------
    sd : SymmetricDiagram
    desc : AmbientDescriptor
    database : list of DatabaseEntry, optional
        The bundled database by default.

    Returns
    -------
    Verdict
        NotSlice naming the matching entry, or Inconclusive.
    """
    check_symmetric(sd)
    database = load_database() if database is None else database
    surface = desc.sphere_component
    name = sd.name or "knot"

    def inconclusive(note):
        return Verdict(Conclusion.INCONCLUSIVE, desc.tag, surface, name, notes=(note,))

    if surface is None:
        return inconclusive("the fixed surface has no sphere component")
    candidates = _entries_for(database, desc.quotient)
    if not candidates:
        return inconclusive(f"no obstruction database for quotient {desc.quotient}")
    notes = []
    for which in ("h1", "h2"):
        q = quotient(sd, which)
        try:
            keys = {False: (jones(q), determinant(q))}
            m = mirror(q)
            keys[True] = (jones(m), determinant(m))
        except LimitExceeded as err:
            notes.append(f"quotient along {which} skipped: {err}")
            continue
        for entry, flip in candidates:
            if keys[flip] == (entry.jones, entry.determinant):
                evidence = Evidence(which, entry, flip)
                _log.info("%s is not slice in %s: %s", name, desc.tag, evidence)
                return Verdict(
                    Conclusion.NOT_SLICE, desc.tag, surface, name, evidence=evidence
                )
    notes.append("no quotient matches the obstruction database")
    return Verdict(Conclusion.INCONCLUSIVE, desc.tag, surface, name, notes=tuple(notes))


def _certify(sd, desc, max_moves, convention):
    notes = []
    plumbings = ambient_plumbings(desc, max(1, max_moves))
    if not plumbings:
        notes.append(f"no builtin plumbing tree in {desc.tag}")
    for pt in plumbings:
        omega = plumbing_type(pt)
        want = disk_type(omega, convention)
        knot = mirror_symmetric(sd) if convention == "mirrored" else sd
        result = equivariant_unknotting_search(knot, max_moves, {MoveType.A, want}, single=want)
        if isinstance(result, NotFound):
            notes.append(
                f"no unknotting sequence with moves A and {want} within {max_moves} moves"
            )
            continue
        cert = check_theorem(disk_from_sequence(result), pt, convention, knot=sd)
        if cert:
            return cert, notes
        notes.append(f"{pt.name}: {cert}")
    return None, notes


def adjudicate(sd, desc, search_budget=None, convention="mirrored", database=None, cross_check=False):
    """
    Decide what can be said about *sd* in the ambient manifold *desc*.

    The quotient obstruction runs first.  Otherwise every builtin plumbing
    of the ambient is tried: an equivariant unknotting sequence with A
    moves and the matching on-axis type is searched for and handed to
    `check_theorem`.

    Parameters
    ----------
    sd : SymmetricDiagram
    desc : AmbientDescriptor
    search_budget : int, optional
        Maximum number of moves; the ``search_max_moves`` limit by default.
        It also sets ``n`` for builtins taking one.
    convention : {"mirrored", "as-stated"}
    database : list of DatabaseEntry, optional
    cross_check : bool, default: False
        Also run the certificate search after a NotSlice verdict and raise
        if it succeeds.

    Returns
    -------
    Verdict
    """
    _check_convention(convention)
    max_moves = get_limit("search_max_moves") if search_budget is None else search_budget
    verdict = quotient_obstruction(sd, desc, database)
    name = sd.name or "knot"
    if verdict.conclusion is Conclusion.NOT_SLICE and not cross_check:
        return verdict
    cert, notes = _certify(sd, desc, max_moves, convention)
    if cert is not None:
        if verdict.conclusion is Conclusion.NOT_SLICE:
            raise EqsliceError(
                f"{name} in {desc.tag} is both obstructed ({verdict.evidence}) and certified"
            )
        _log.info("%s is slice in %s", name, desc.tag)
        return Verdict(Conclusion.SLICE, desc.tag, verdict.surface, name, certificate=cert)
    if verdict.conclusion is Conclusion.NOT_SLICE:
        return verdict
    return Verdict(
        Conclusion.INCONCLUSIVE,
        desc.tag,
        verdict.surface,
        name,
        notes=verdict.notes + tuple(notes),
    )

"""
Command line front end.

Exit codes
----------
0   success (``certify``: Slice)
2   unreadable input, unknown ambient or builtin name
3   a resource limit would be exceeded
4   the symmetric diagram cannot be folded along its axis
5   tree or plumbing validation failed
10  ``certify``: NotSlice
11  ``certify``: Inconclusive
"""
import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from ._certify import CONVENTIONS, Conclusion, adjudicate, load_database
from ._corpus import read_data
from ._dot import plumbing_to_dot, tree_to_dot
from ._eqtree import (
    EquivariantTree,
    associated_link,
    associated_si_link,
    parse_tree,
    prune_to_size,
    tree_to_text,
    validate_equivariant,
    validate_tree,
)
from ._errors import (
    AxisNormalError,
    ConfigError,
    DatabaseError,
    DiagramError,
    EqsliceError,
    LimitExceeded,
    ParseError,
    TreeError,
    ValidationError,
)
from ._invariants import invariant_report, jones
from ._limits import get_limit, limits
from ._linkdiag import parse_pd_blocks
from ._plumbing import ambient, builtin, derive_embedded_tree, parse_plumbing
from ._plumbing import plumbing_to_text, plumbing_type, validate_plumbing
from ._reidemeister import random_perturbation
from ._render import render_plumbing, render_tree
from ._symdiag import MoveType, UnknottingSequence, candidate_moves, classify_move
from ._symdiag import parse_sym, quotient
from ._symdiag import equivariant_unknotting_search, validate_symmetric
from ._version import __version__

_log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_AXIS = 4
EXIT_INVALID = 5
EXIT_NOT_SLICE = 10
EXIT_INCONCLUSIVE = 11

_VERDICT_EXIT = {
    Conclusion.SLICE: EXIT_OK,
    Conclusion.NOT_SLICE: EXIT_NOT_SLICE,
    Conclusion.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}
FORMATS = ("text", "jsonl", "dot")


@dataclass(frozen=True)
class RunConfig:
    """One batch run, checked against the configured hard caps."""

    subcommand: str
    inputs: tuple
    convention: str = "mirrored"
    max_moves: int = None
    budget: int = None
    output_format: str = "text"
    seed: int = 0
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"unknown convention {self.convention!r}")
        cap = get_limit("search_max_moves")
        if self.max_moves is not None and not 0 <= self.max_moves <= cap:
            raise LimitExceeded("search_max_moves", cap, self.max_moves)
        if self.budget is not None and self.budget < 0:
            raise ConfigError(f"negative unknot budget {self.budget}")


# ---- input helpers ----------------------------------------------------------
def _read(arg):
    """Text of *arg*: a path, else a bundled data file name."""
    path = Path(arg)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    try:
        return read_data(arg)
    except ConfigError:
        raise ConfigError(f"no such file: {arg}") from None


def _diagrams(arg):
    """Named diagrams of a ``.pd`` or ``.sym`` file."""
    text = _read(arg)
    if arg.endswith(".sym"):
        sd = parse_sym(text)
        return [(sd.name, sd.base)]
    return parse_pd_blocks(text)


def _plumbing(arg):
    path = Path(arg)
    if path.is_file() or arg.endswith(".plumb"):
        return parse_plumbing(_read(arg))
    return builtin(arg)


def _tree(arg):
    return parse_tree(_read(arg))


def _emit(text, fmt, out):
    """Write a ``key: value`` report, or the same fields as one JSON line."""
    if fmt != "jsonl":
        out.write(text)
        return
    record = {}
    for line in text.splitlines():
        key, _, value = line.partition(": ")
        if key in record:
            if not isinstance(record[key], list):
                record[key] = [record[key]]
            record[key].append(value)
        else:
            record[key] = value
    out.write(json.dumps(record, sort_keys=False) + "\n")


def _problems_text(problems):
    return "".join(f"problem: {p.code}: {p.message}\n" for p in problems)


# ---- subcommands ------------------------------------------------------------
def cmd_invariants(cfg, out):
    (arg,) = cfg.inputs
    perturb = cfg.options.get("perturb", 0)
    rng = random.Random(cfg.seed)
    for name, d in _diagrams(arg):
        report = invariant_report(d, cfg.budget)
        text = (f"name: {name}\n" if name else "") + report.to_text()
        if perturb:
            scrambled = random_perturbation(d, perturb, rng)
            same = jones(scrambled) == report.jones
            verdict = "unchanged" if same else "CHANGED"
            text += f"perturbed: {perturb} moves, {scrambled.n_crossings} crossings, jones {verdict}\n"
            if not same:
                raise DiagramError(f"Jones polynomial changed under Reidemeister moves on {name!r}")
        _emit(text, cfg.output_format, out)
    return EXIT_OK


def cmd_quotient(cfg, out):
    arg, which = cfg.inputs
    sd = parse_sym(_read(arg))
    q = quotient(sd, which)
    target = cfg.options.get("output")
    pd = q.to_pd()
    if target:
        Path(target).write_text(pd + "\n", encoding="utf-8")
    text = f"quotient: {which}\npd: {pd}\n" + invariant_report(q, cfg.budget).to_text()
    _emit(text, cfg.output_format, out)
    return EXIT_OK


def _site(text):
    parts = [int(p) for p in text.replace("/", ",").split(",") if p]
    return parts[0] if len(parts) == 1 else tuple(parts)


def cmd_classify(cfg, out):
    arg, *sites = cfg.inputs
    sd = parse_sym(_read(arg))
    problems = validate_symmetric(sd)
    if problems:
        raise ValidationError(problems)
    if sites:
        lines = [f"{s}: {classify_move(sd, _site(s))}" for s in sites]
    else:
        lines = [f"{'/'.join(str(c) for c in m.crossings())}: {m.type}" for m in candidate_moves(sd)]
    _emit("".join(line + "\n" for line in lines), cfg.output_format, out)
    return EXIT_OK


def cmd_unknot_search(cfg, out):
    (arg,) = cfg.inputs
    sd = parse_sym(_read(arg))
    max_moves = get_limit("search_max_moves") if cfg.max_moves is None else cfg.max_moves
    types = cfg.options.get("types")
    allowed = [MoveType.parse(t) for t in types.split(",")] if types else None
    result = equivariant_unknotting_search(sd, max_moves, allowed)
    if isinstance(result, UnknottingSequence):
        text = (
            f"found: {len(result)} moves\nsequence: {result}\n"
            f"k_total: {result.k_total}\nk_A_pairs: {result.k_A_pairs}\n"
            f"k_B+: {result.k_B_plus}\nk_B-: {result.k_B_minus}\nk_C: {result.k_C}\n"
        )
    else:
        text = (
            f"found: none within {result.max_moves} moves\nexplored: {result.explored}\n"
            f"frontier: {' '.join(str(n) for n in result.frontier_sizes)}\n"
            f"unknown: {result.unknown}\n"
        )
    _emit(text, cfg.output_format, out)
    return EXIT_OK


def _tree_output(cfg, tree, out):
    figure = cfg.options.get("figure")
    if figure:
        render_tree(tree).savefig(figure)
    if cfg.output_format == "dot":
        out.write(tree_to_dot(tree))
    else:
        _emit(tree_to_text(tree), cfg.output_format, out)


def cmd_tree(cfg, out):
    action, arg = cfg.inputs
    if action == "derive":
        pt = _plumbing(arg)
        et, embedding = derive_embedded_tree(pt)
        _tree_output(cfg, et, out)
        if cfg.output_format == "text":
            for v in et.vertices:
                p, q = embedding.sheets[v]
                out.write(f"embed {v} {embedding.points[v]} P={p} Q={q}\n")
        return EXIT_OK
    tree = _tree(arg)
    if action == "validate":
        if isinstance(tree, EquivariantTree):
            problems = validate_equivariant(tree)
        else:
            problems = validate_tree(tree)
        if problems:
            out.write(_problems_text(problems))
            return EXIT_INVALID
        out.write("valid\n")
        return EXIT_OK
    if action == "prune":
        k = cfg.options.get("k")
        if k is None:
            raise ConfigError("tree prune needs --k")
        _tree_output(cfg, prune_to_size(tree, k), out)
        return EXIT_OK
    if action == "assoc":
        if isinstance(tree, EquivariantTree):
            out.write(associated_si_link(tree).to_text())
        else:
            out.write(associated_link(tree).to_pd() + "\n")
        return EXIT_OK
    if action == "dot":
        _tree_output(cfg, tree, out)
        return EXIT_OK
    raise ConfigError(f"unknown tree action {action!r}")


def cmd_plumbing(cfg, out):
    action, arg = cfg.inputs
    pt = _plumbing(arg)
    figure = cfg.options.get("figure")
    if figure:
        render_plumbing(pt).savefig(figure)
    if action == "validate":
        problems = validate_plumbing(pt)
        if problems:
            out.write(_problems_text(problems))
            return EXIT_INVALID
        out.write("valid\n")
    elif action == "type":
        out.write(f"type: {plumbing_type(pt)}\nspheres: {pt.n_spheres}\n")
    elif action == "dot" or cfg.output_format == "dot":
        out.write(plumbing_to_dot(pt))
    elif action == "show":
        out.write(plumbing_to_text(pt))
    else:
        raise ConfigError(f"unknown plumbing action {action!r}")
    return EXIT_OK


def cmd_certify(cfg, out):
    arg, tag = cfg.inputs
    sd = parse_sym(_read(arg))
    desc = ambient(tag)
    path = cfg.options.get("database")
    database = load_database(path) if path else None
    verdict = adjudicate(sd, desc, cfg.max_moves, cfg.convention, database)
    if cfg.output_format == "jsonl":
        out.write(json.dumps(verdict.to_dict()) + "\n")
    else:
        out.write(verdict.to_text())
    return _VERDICT_EXIT[verdict.conclusion]


_COMMANDS = {
    "invariants": cmd_invariants,
    "quotient": cmd_quotient,
    "classify": cmd_classify,
    "unknot-search": cmd_unknot_search,
    "tree": cmd_tree,
    "plumbing": cmd_plumbing,
    "certify": cmd_certify,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="eqslice",
        description="Strongly invertible knots, equivariant trees and sliceness certificates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--format", dest="output_format", choices=FORMATS, default="text")
    parser.add_argument("--state-sum-limit", type=int, default=None,
                        help="override the crossing limit of the state sum")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("invariants", help="Jones, determinant, signature, Arf, unknot status")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=None, help="Reidemeister move budget")
    p.add_argument("--perturb", type=int, default=0, help="also check Jones after N random moves")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("quotient", help="quotient knot along a half-axis")
    p.add_argument("file")
    p.add_argument("half_axis", choices=("h1", "h2"))
    p.add_argument("-o", "--output", help="write the quotient PD code here")
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("classify", help="types of symmetric crossing changes")
    p.add_argument("file")
    p.add_argument("sites", nargs="*", help="crossing ids, or pairs written 2/3")

    p = sub.add_parser("unknot-search", help="equivariant unknotting search")
    p.add_argument("file")
    p.add_argument("--max-moves", type=int, default=None)
    p.add_argument("--types", help="comma separated subset of A,B+,B-,C")

    p = sub.add_parser("tree", help="bipartitioned and equivariant trees")
    p.add_argument("action", choices=("validate", "assoc", "prune", "derive", "dot"))
    p.add_argument("file", help="tree file, or a plumbing file / builtin name for derive")
    p.add_argument("--k", type=int, default=None, help="target size for prune")
    p.add_argument("--figure", help="save a picture of the tree")

    p = sub.add_parser("plumbing", help="plumbing trees")
    p.add_argument("action", choices=("validate", "type", "dot", "show"))
    p.add_argument("file", help="plumbing file or builtin name such as three_s2xs2(2)")
    p.add_argument("--figure", help="save a picture of the plumbing")

    p = sub.add_parser("certify", help="adjudicate equivariant sliceness in an ambient manifold")
    p.add_argument("file")
    p.add_argument("ambient")
    p.add_argument("--convention", choices=CONVENTIONS, default="mirrored")
    p.add_argument("--max-moves", type=int, default=None)
    p.add_argument("--database", help="obstruction database file")
    return parser


def _config(args):
    fields = {
        "invariants": ("file",),
        "quotient": ("file", "half_axis"),
        "classify": ("file", "sites"),
        "unknot-search": ("file",),
        "tree": ("action", "file"),
        "plumbing": ("action", "file"),
        "certify": ("file", "ambient"),
    }[args.subcommand]
    inputs = []
    for name in fields:
        value = getattr(args, name)
        inputs.extend(value if isinstance(value, list) else [value])
    options = {
        key: getattr(args, key)
        for key in ("perturb", "output", "types", "k", "figure", "database")
        if getattr(args, key, None) is not None
    }
    return RunConfig(
        subcommand=args.subcommand,
        inputs=tuple(inputs),
        convention=getattr(args, "convention", "mirrored"),
        max_moves=getattr(args, "max_moves", None),
        budget=getattr(args, "budget", None),
        output_format=args.output_format,
        seed=getattr(args, "seed", 0),
        options=options,
    )


def run(argv=None, out=None, err=None):
    """
    Run the command line and return its exit code.

    Parameters
    ----------
    argv : list of str, optional
        Defaults to ``sys.argv[1:]``.
    out, err : file-like, optional
        Defaults to ``sys.stdout`` and ``sys.stderr``.
    """
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        overrides = {}
        if args.state_sum_limit is not None:
            overrides["state_sum_limit"] = args.state_sum_limit
        with limits(**overrides):
            cfg = _config(args)
            return _COMMANDS[cfg.subcommand](cfg, out)
    except (ParseError, ConfigError, DatabaseError, DiagramError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except LimitExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_LIMIT
    except AxisNormalError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_AXIS
    except (ValidationError, TreeError) as exc:
        problems = getattr(exc, "problems", ())
        err.write(f"error: {exc}\n" + _problems_text(problems))
        return EXIT_INVALID
    except EqsliceError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run())

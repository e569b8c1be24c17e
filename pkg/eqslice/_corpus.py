"""Named diagrams and the example files shipped in ``eqslice/data``."""
import logging
import warnings
from collections import Counter
from importlib import resources

from ._eqtree import parse_tree
from ._errors import ConfigError
from ._linkdiag import parse_pd_blocks
from ._plumbing import parse_plumbing
from ._symdiag import parse_sym

_log = logging.getLogger(__name__)

TRANSCRIPTION_DEPENDENT = "transcription-dependent"


class DiagramRegistry:
    """
    A registry of named link diagrams.

    Diagrams are kept in insertion order.  Names need not be unique; lookups
    by name return the newest diagram with that name.

    Parameters
    ----------
    prefix : str, default: "diagram "
        Label prefix for diagrams added without a name.
    """

    def __init__(self, *, prefix="diagram "):
        self._entries = []
        self._prefix = prefix

    @property
    def diagrams(self):
        return tuple(d for _, d in self._entries)

    @property
    def names(self):
        return tuple(name for name, _ in self._entries)

    def add(self, diagram, name=""):
        """Register *diagram* and return the name it was stored under."""
        if not name:
            name = f"{self._prefix}{len(self._entries)}"
        self._entries.append((name, diagram))
        return name

    def load_text(self, text):
        """Register every ``name: PD[...]`` block of *text*."""
        for name, diagram in parse_pd_blocks(text):
            self.add(diagram, name)
        return self

    @property
    def by_name(self):
        """
        Return a dictionary of the current mapping names -> diagrams.

        If there are duplicate names, newer diagrams take precedence.
        """
        mapping = dict(self._entries)
        if len(mapping) != len(self._entries):
            counts = Counter(self.names)
            multiples = {k: v for k, v in counts.items() if v > 1}
            warnings.warn(
                (
                    f"There are repeated names ({multiples!r}), but only the newest diagram with "
                    "that name can be returned. "
                ),
                stacklevel=2,
            )
        return mapping

    def __getitem__(self, name):
        for key, diagram in reversed(self._entries):
            if key == name:
                return diagram
        raise ConfigError(f"no diagram named {name!r}")

    def __contains__(self, name):
        return name in self.names

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)


def _data():
    return resources.files("eqslice").joinpath("data")


def read_data(name):
    """Text of a bundled data file."""
    path = _data().joinpath(name)
    if not path.is_file():
        raise ConfigError(f"no bundled data file {name!r}")
    return path.read_text(encoding="utf-8")


def data_files(suffix):
    return sorted(p.name for p in _data().iterdir() if p.name.endswith(suffix))


def bundled_corpus():
    """The bundled PD corpus as a `DiagramRegistry`."""
    registry = DiagramRegistry()
    for name in data_files(".pd"):
        registry.load_text(read_data(name))
    _log.debug("loaded %d corpus diagrams", len(registry))
    return registry


def load_symmetric(name):
    """
    A bundled symmetric diagram, by file stem (``"fig8_tau"``).

    Entries flagged transcription-dependent record one of several possible
    readings of their source drawing; using them warns.
    """
    sd = parse_sym(read_data(f"{name}.sym"))
    if TRANSCRIPTION_DEPENDENT in sd.flags:
        warnings.warn(
            f"symmetric diagram {name!r} is transcription-dependent: which of two "
            "inversions it records is a choice of the corpus",
            stacklevel=2,
        )
    return sd


def symmetric_names():
    return [n[: -len(".sym")] for n in data_files(".sym")]


def load_tree(name):
    return parse_tree(read_data(f"{name}.tree"))


def load_plumbing(name):
    return parse_plumbing(read_data(f"{name}.plumb"))

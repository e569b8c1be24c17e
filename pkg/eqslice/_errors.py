"""Exception hierarchy shared by every eqslice module."""

from collections import namedtuple


Problem = namedtuple("Problem", ["code", "subject", "message"])
Problem.__doc__ = """
One violated invariant reported by a ``validate_*`` function.

Attributes
----------
code : str
    Short machine readable tag, e.g. ``"condition 1"`` or ``"fixed-points"``.
subject : object
    The offending id (crossing, edge, vertex, sphere, ...), or None.
message : str
    Human readable description.
"""


class EqsliceError(Exception):
    """Base class of all errors raised by eqslice."""


class ParseError(EqsliceError):
    """
    Malformed input text.

    Parameters
    ----------
    message : str
        What went wrong.
    position : int, optional
        Character offset into the parsed text.
    line : int, optional
        1-based line number of *position*.
    """

    def __init__(self, message, *, position=None, line=None):
        self.position = position
        self.line = line
        if position is not None:
            message = f"{message} (line {line}, offset {position})"
        super().__init__(message)


class DiagramError(EqsliceError):
    """A diagram (or an id into one) is inconsistent."""


class LimitExceeded(EqsliceError):
    """A configured resource bound would be exceeded."""

    def __init__(self, name, limit, actual):
        self.name = name
        self.limit = limit
        self.actual = actual
        super().__init__(f"{name} limit is {limit}, got {actual}")


class AxisNormalError(EqsliceError):
    """A symmetric diagram cannot be folded along its axis."""

    def __init__(self, message, events=()):
        self.events = list(events)
        super().__init__(message)


class ValidationError(EqsliceError):
    """Raised by the strict wrappers around the ``validate_*`` functions."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(f"{p.code}: {p.message}" for p in self.problems))


class ConfigError(EqsliceError):
    """Bad limit name or value."""


class DatabaseError(EqsliceError):
    """Malformed obstruction database."""


class TreeError(EqsliceError):
    """A tree or plumbing operation cannot be carried out on its input."""

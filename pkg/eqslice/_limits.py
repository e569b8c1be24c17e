"""Module for managing the resource bounds of the searches and state sums."""
import logging
import os

from ._errors import ConfigError

_log = logging.getLogger(__name__)

_DEFAULTS = {
    "state_sum_limit": 24,
    "unknot_budget": 6,
    "unknot_state_cap": 20000,
    "search_max_moves": 4,
    "workers": 1,
}

_ENVIRON = {
    "EQSLICE_STATE_SUM_LIMIT": "state_sum_limit",
    "EQSLICE_UNKNOT_BUDGET": "unknot_budget",
}


def _checked(name, value):
    if name not in _DEFAULTS:
        raise ConfigError(f"unknown limit {name!r}; known: {sorted(_DEFAULTS)}")
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"limit {name!r} must be a positive integer, not {value!r}")
    return value


def _from_environ(environ):
    table = dict(_DEFAULTS)
    for var, name in _ENVIRON.items():
        raw = environ.get(var)
        if raw is None:
            continue
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(f"{var}={raw!r} is not an integer") from None
        table[name] = _checked(name, value)
        _log.debug("limit %s=%d taken from %s", name, value, var)
    return table


_current = _from_environ(os.environ)


def get_limit(name):
    """
    Return the current value of a resource bound.

    Known names are ``state_sum_limit``, ``unknot_budget``,
    ``unknot_state_cap``, ``search_max_moves`` and ``workers``.

    See Also
    --------
    limits : Change bounds, optionally only inside a ``with`` block.
    """
    if name not in _current:
        raise ConfigError(f"unknown limit {name!r}; known: {sorted(_DEFAULTS)}")
    return _current[name]


def current_limits():
    """Return a copy of the whole limit table."""
    return dict(_current)


class _LimitsContext:
    """
    Context manager for `.limits`.

    The state is changed in ``__init__()`` instead of ``__enter__()``. The
    latter is a no-op. This allows using `.limits` both as a function and
    as a context.
    """

    def __init__(self, overrides):
        checked = {k: _checked(k, v) for k, v in overrides.items()}
        self.previous = dict(_current)
        _current.update(checked)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        _current.clear()
        _current.update(self.previous)


def limits(**overrides):
    """
    Change resource bounds.

    Parameters
    ----------
    **overrides : int
        New values, keyed by limit name.

    Notes
    -----
    For a temporary change, this can be used as a context manager::

        with eqslice.limits(state_sum_limit=30):
            # a 28 crossing diagram is accepted here
            poly = eqslice.jones(big)
        # and rejected again here

    To enable usage as a context manager, this function returns a
    ``_LimitsContext`` object. The return value is not intended to be stored
    or accessed by the user.
    """
    return _LimitsContext(overrides)

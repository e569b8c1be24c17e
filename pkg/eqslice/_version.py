"""Version of the eqslice package."""

__version__ = "0.1.0"

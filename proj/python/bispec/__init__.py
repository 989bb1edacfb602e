"""Bispectrum invariants on SU(2) and SO(3)."""

from ._bispec import *  # noqa: F401,F403
from ._bispec import __doc__  # noqa: F401

__version__ = "0.1.0"

"""Occupancy, negative occupancy and spillage distributions."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, ResourceLimitError, Pmf  # noqa: F401

__version__ = "0.1.0"

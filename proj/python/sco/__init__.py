"""Soft Condorcet Optimization ratings and rank aggregation."""

from ._sco import *  # noqa: F401,F403
from ._sco import __doc__  # noqa: F401

"""
Error hierarchy for CoPart.

Negative outcomes of the algorithms (an unschedulable core, a search that
finds no solution, a divergent recurrence) are returned as values. The
exceptions below are reserved for misuse and broken internal guards.
"""
from typing import Optional


class CoPartError(Exception):
    """Base class for all CoPart errors"""


class PreconditionViolation(CoPartError, ValueError):
    """An operation was called with arguments outside its domain"""


class ConfigurationError(CoPartError):
    """Invalid scenario, settings or command-line configuration"""


class SearchInvariantError(CoPartError, RuntimeError):
    """A search guard failed (pruning bound, call ceiling, budget accounting)"""


class AllocationTimeout(CoPartError):
    """An allocation exceeded its wall-clock budget"""

    def __init__(self, algorithm: str, timeout_s: Optional[float] = None):
        budget = f"{timeout_s:g}s" if timeout_s is not None else "its time budget"
        super().__init__(f"{algorithm} exceeded {budget}")
        self.algorithm = algorithm
        self.timeout_s = timeout_s


class OracleSizeError(PreconditionViolation):
    """Instance too large for exhaustive enumeration"""

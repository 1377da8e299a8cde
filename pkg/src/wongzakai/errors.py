"""Shared exception types.

Validation failures (bad arguments, misaligned grids, unreadable configs)
raise ``ValueError`` subclasses; numerical failures during a run (blow-up,
state-bound breach) raise ``SimulationError`` subclasses.  The CLI maps the
former to exit code 1 and the latter to exit code 2.
"""


class GridAlignmentError(ValueError):
    """A time argument is not an exact node of the relevant grid."""


class ConfigError(ValueError):
    """Invalid experiment or CLI configuration."""


class SimulationError(RuntimeError):
    """Base class for numerical aborts."""


class BlowUpError(SimulationError):
    """Non-finite state encountered while integrating.

    ``time`` is the first grid time with a non-finite entry; ``replica``
    is set when the failure happened inside a Monte Carlo run.
    """

    def __init__(self, time, replica=None):
        self.time = time
        self.replica = replica
        where = f" (replica {replica})" if replica is not None else ""
        super().__init__(f"non-finite state first encountered at t={time}{where}")


class BoundViolationError(SimulationError):
    """The a.e. boundedness contract on the solution was breached."""

    def __init__(self, time, norm_sq, bound, replica=None):
        self.time = time
        self.norm_sq = norm_sq
        self.bound = bound
        self.replica = replica
        where = f" (replica {replica})" if replica is not None else ""
        super().__init__(
            f"state norm breached the enforced bound at t={time}{where}: "
            f"sum_i ||X^i||^2 = {norm_sq:.6g} > {bound:.6g}"
        )

"""Exception hierarchy shared by every randchem module."""


class RandChemError(Exception):
    """Base class for all randchem errors."""


class DomainError(RandChemError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class InfeasibleScheduleError(RandChemError, ValueError):
    """The requested stage count cannot be realized for the instance."""


class RootBracketError(InfeasibleScheduleError):
    """The stage equation has no sign change on the admissible interval."""


class NumericalError(RandChemError, ArithmeticError):
    """A computation produced a non-finite value or missed its tolerance."""


class SimulationAbortedError(NumericalError):
    """A simulated stage exceeded its draw budget."""

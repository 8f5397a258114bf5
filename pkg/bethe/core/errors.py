"""Error hierarchy. Input errors are ValueErrors, numerical failures ArithmeticErrors."""

import numpy as np


class BetheError(Exception):
    """Base for every error raised by bethe."""


class FactorError(BetheError, ValueError):
    pass


class SpecError(BetheError, ValueError):
    pass


class PreconditionError(BetheError, ValueError):
    pass


class InconsistentTypeError(BetheError, ValueError):
    pass


class ConfigError(BetheError, ValueError):
    pass


class InfeasibleError(BetheError, ValueError):
    """No factor-type realizes the requested marginals.

    `certificate` is a direction d with d·nu > max over supported tuples of d·counts/r.
    """

    def __init__(self, message: str, certificate: np.ndarray | None = None):
        super().__init__(message)
        self.certificate = certificate


class BudgetExceededError(BetheError):
    def __init__(self, what: str, needed: float, budget: float):
        super().__init__(f"{what} needs {needed:.3g} entries, budget is {budget:.3g}")
        self.needed = needed
        self.budget = budget


class DegenerateMessageError(BetheError, ArithmeticError):
    pass


class NumericalError(BetheError, ArithmeticError):
    pass

"""Exception hierarchy shared by every subpackage."""


class NSFGError(Exception):
    """Base class for simulator errors."""


class GridError(NSFGError, ValueError):
    pass


class FieldError(NSFGError, ValueError):
    pass


class NonFiniteFieldError(FieldError):
    pass


class BasisError(NSFGError, ValueError):
    pass


class DensityFloorError(NSFGError, ValueError):
    """Density at or below the floor the singular terms tolerate."""


class StabilityError(NSFGError):
    """Time step above the stability bound of a named term."""

    def __init__(self, term: str, dt: float, bound: float):
        self.term = term
        self.dt = dt
        self.bound = bound
        super().__init__(f"dt={dt:.3e} exceeds the {term} stability bound {bound:.3e}")


class MassOperatorError(NSFGError):
    pass


class HeatLawError(NSFGError, ValueError):
    pass


class InvalidHFunctionError(NSFGError, ValueError):
    pass


class ThermalSolveError(NSFGError):
    pass


class ConvergenceError(NSFGError):
    """Fixed-point iteration stopped at its iteration cap."""

    def __init__(self, what: str, iterations: int, last_residual: float):
        self.what = what
        self.iterations = iterations
        self.last_residual = last_residual
        super().__init__(
            f"{what} did not converge in {iterations} iterations "
            f"(last residual {last_residual:.3e})"
        )


class HistoryError(NSFGError, ValueError):
    pass


class WeightFunctionError(NSFGError, ValueError):
    pass


class ConfigError(NSFGError, ValueError):
    pass


class UnknownSuiteError(NSFGError, ValueError):
    pass


class NegativeTemperatureError(NSFGError, ValueError):
    pass


class CutoffError(NSFGError, ValueError):
    pass

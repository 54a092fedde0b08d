"""Exception types raised across the package."""


class GdrsError(Exception):
    """Base class for every error raised by this package."""


class NotPrimePower(GdrsError, ValueError):
    pass


class NoModulusAvailable(GdrsError, ValueError):
    pass


class LogOfZero(GdrsError, ValueError):
    pass


class MuOutOfRange(GdrsError, ValueError):
    pass


class NonIntegralCount(GdrsError, ArithmeticError):
    pass


class NonIntegralResult(GdrsError, ArithmeticError):
    pass


class MassMismatch(GdrsError, ValueError):
    pass


class DistanceTooSmall(GdrsError, ValueError):
    pass


class NotUniformCase(GdrsError, ValueError):
    pass


class BudgetExceeded(GdrsError, RuntimeError):
    pass


class RouteMismatch(GdrsError):
    """Two computation routes disagree on a peculiarity value.

    ``lam`` is the first residue where they differ and ``values`` maps each
    route name to the value it produced there.
    """

    def __init__(self, R, mu, lam, values):
        self.R = R
        self.mu = mu
        self.lam = lam
        self.values = dict(values)
        shown = ", ".join(f"{k}={v}" for k, v in self.values.items())
        super().__init__(f"routes disagree for R={R}, mu={mu} at lambda={lam}: {shown}")

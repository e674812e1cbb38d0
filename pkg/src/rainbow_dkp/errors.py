"""Exception hierarchy shared by all modules."""


class RainbowDKPError(Exception):
    """Base class for every error raised by the package."""


class DomainError(RainbowDKPError, ValueError):
    """Input lies outside the region where a quantity is defined."""


class ParameterError(RainbowDKPError, ValueError):
    """Invalid model parameter or quantum number."""


class ConvergenceError(RainbowDKPError, ArithmeticError):
    """Iterative evaluation did not converge."""


class NoSignChangeError(RainbowDKPError, ValueError):
    """Root bracket does not contain a sign change."""


class UnphysicalError(RainbowDKPError, ValueError):
    """Requested state exists only as an unphysical branch."""


class ResolutionError(RainbowDKPError, RuntimeError):
    """Radial grid too coarse for the requested accuracy."""


class ConfigError(RainbowDKPError, ValueError):
    """Sweep configuration failed validation."""


class NoCutoffError(RainbowDKPError, ZeroDivisionError):
    """Cutoff frequency undefined because the spectrum does not depend on omega."""

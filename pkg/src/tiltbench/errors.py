"""Exception and warning types shared across the package."""


class TiltbenchError(Exception):
    """Base class for all package-specific errors."""


class ParameterDomainError(TiltbenchError, ValueError):
    """A distribution or model parameter is outside its admissible domain."""


class InfeasibleTargetError(TiltbenchError, ValueError):
    """The benchmark target cannot be met by any tilting parameter.

    ``attainable`` holds the (low, high) interval of targets that the
    given draws can reach, when that interval is known.
    """

    def __init__(self, message, attainable=None):
        super().__init__(message)
        self.attainable = attainable


class InfeasibleMomentsError(TiltbenchError, ValueError):
    """No (gamma1, gamma2) pair satisfies both moment constraints."""


class SamplerDivergenceError(TiltbenchError, RuntimeError):
    """A full conditional produced non-finite parameters mid-chain."""

    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration


class DegenerateWeightsError(TiltbenchError, ValueError):
    """An adjustment direction is identically zero."""


class InternalInvariantError(TiltbenchError, RuntimeError):
    """A quantity that is positive/exact by construction failed its guard."""


class ConfigError(TiltbenchError, ValueError):
    """Bad CLI flag or config-file entry; ``key`` names the offender."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class DegenerateWeightsWarning(UserWarning):
    """Importance weights have collapsed onto a few draws (low ESS)."""


class BenchmarkWeightWarning(UserWarning):
    """A benchmark weight is large relative to 1/m; tilting error bounds degrade."""


class TuningWarning(UserWarning):
    """A Metropolis-Hastings acceptance rate ended up outside [0.05, 0.95]."""


class DiagnosticsWarning(UserWarning):
    """A diagnostic quantity (e.g. a KL estimate) is suspicious but usable."""

"""Variate generation and log-densities for the samplers' building blocks.

Conventions that the rest of the package relies on:

* ``Normal`` is parameterized by mean and **variance**.
* ``Gamma`` and ``InverseGamma`` use the shape-**rate** convention, so a
  ``Gamma(a, b)`` has mean ``a / b``.  Mixing up rate and scale is the
  easiest way to corrupt a Gibbs step silently, so every conditional in
  this package goes through these classes or states the convention.
* ``log_pdf`` returns ``-inf`` outside the support instead of raising.
* Half-Cauchy variates come from the nested inverse-gamma mixture
  (x | z ~ IG(1/2, 1/z), z ~ IG(1/2, 1), sqrt(x) ~ C+(0, 1)), the same
  decomposition the horseshoe Gibbs updates use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import ParameterDomainError
from .rng import as_generator

__all__ = [
    "Normal",
    "Gamma",
    "InverseGamma",
    "Exponential",
    "HalfCauchy",
    "StudentT",
    "Poisson",
    "Bernoulli",
    "draw",
    "log_pdf",
]

_LOG_2PI = np.log(2.0 * np.pi)


def _require_positive(name: str, value: float) -> None:
    if not np.isfinite(value) or value <= 0.0:
        raise ParameterDomainError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class Normal:
    mean: float
    var: float

    def __post_init__(self):
        _require_positive("var", self.var)

    def sample(self, rng, size=None):
        return as_generator(rng).normal(self.mean, np.sqrt(self.var), size)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        return -0.5 * (_LOG_2PI + np.log(self.var)) - 0.5 * (x - self.mean) ** 2 / self.var

    def moments(self):
        return self.mean, self.var


@dataclass(frozen=True)
class Gamma:
    shape: float
    rate: float

    def __post_init__(self):
        _require_positive("shape", self.shape)
        _require_positive("rate", self.rate)

    def sample(self, rng, size=None):
        return as_generator(rng).gamma(self.shape, 1.0 / self.rate, size)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        a, b = self.shape, self.rate
        with np.errstate(divide="ignore", invalid="ignore"):
            out = a * np.log(b) - gammaln(a) + (a - 1.0) * np.log(x) - b * x
        return np.where(x > 0.0, out, -np.inf)

    def moments(self):
        return self.shape / self.rate, self.shape / self.rate**2


@dataclass(frozen=True)
class InverseGamma:
    shape: float
    rate: float

    def __post_init__(self):
        _require_positive("shape", self.shape)
        _require_positive("rate", self.rate)

    def sample(self, rng, size=None):
        # 1/X with X ~ Gamma(shape, rate=self.rate) is IG(shape, self.rate).
        return 1.0 / as_generator(rng).gamma(self.shape, 1.0 / self.rate, size)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        a, b = self.shape, self.rate
        with np.errstate(divide="ignore", invalid="ignore"):
            out = a * np.log(b) - gammaln(a) - (a + 1.0) * np.log(x) - b / x
        return np.where(x > 0.0, out, -np.inf)

    def moments(self):
        mean = self.rate / (self.shape - 1.0) if self.shape > 1.0 else None
        var = (
            self.rate**2 / ((self.shape - 1.0) ** 2 * (self.shape - 2.0))
            if self.shape > 2.0
            else None
        )
        return mean, var


@dataclass(frozen=True)
class Exponential:
    rate: float

    def __post_init__(self):
        _require_positive("rate", self.rate)

    def sample(self, rng, size=None):
        return as_generator(rng).exponential(1.0 / self.rate, size)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, np.log(self.rate) - self.rate * x, -np.inf)

    def moments(self):
        return 1.0 / self.rate, 1.0 / self.rate**2


@dataclass(frozen=True)
class HalfCauchy:
    scale: float

    def __post_init__(self):
        _require_positive("scale", self.scale)

    def sample(self, rng, size=None):
        gen = as_generator(rng)
        z = 1.0 / gen.gamma(0.5, 1.0, size)
        x = 1.0 / gen.gamma(0.5, 1.0 / z, size)  # IG(1/2, 1/z), gamma scale = z
        return self.scale * np.sqrt(x)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.log(2.0 / np.pi) - np.log(self.scale) - np.log1p((x / self.scale) ** 2)
        return np.where(x >= 0.0, out, -np.inf)

    def moments(self):
        return None, None  # heavy tails: no finite moments

    def median(self):
        return self.scale


@dataclass(frozen=True)
class StudentT:
    df: float

    def __post_init__(self):
        _require_positive("df", self.df)

    def sample(self, rng, size=None):
        return as_generator(rng).standard_t(self.df, size)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        v = self.df
        return (
            gammaln((v + 1.0) / 2.0)
            - gammaln(v / 2.0)
            - 0.5 * np.log(v * np.pi)
            - (v + 1.0) / 2.0 * np.log1p(x**2 / v)
        )

    def moments(self):
        mean = 0.0 if self.df > 1.0 else None
        var = self.df / (self.df - 2.0) if self.df > 2.0 else None
        return mean, var


@dataclass(frozen=True)
class Poisson:
    mean: float

    def __post_init__(self):
        if not np.isfinite(self.mean) or self.mean < 0.0:
            raise ParameterDomainError(f"mean must be finite and >= 0, got {self.mean!r}")

    def sample(self, rng, size=None):
        return as_generator(rng).poisson(self.mean, size)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        valid = (x >= 0.0) & (x == np.floor(x))
        k = np.where(valid, x, 0.0)
        if self.mean == 0.0:
            out = np.where(k == 0.0, 0.0, -np.inf)
        else:
            out = k * np.log(self.mean) - self.mean - gammaln(k + 1.0)
        return np.where(valid, out, -np.inf)

    def moments(self):
        return self.mean, self.mean


@dataclass(frozen=True)
class Bernoulli:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ParameterDomainError(f"p must be in [0, 1], got {self.p!r}")

    def sample(self, rng, size=None):
        return (as_generator(rng).random(size) < self.p).astype(np.int64)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            out = np.where(x == 1.0, np.log(self.p), np.log1p(-self.p))
        return np.where((x == 0.0) | (x == 1.0), out, -np.inf)

    def moments(self):
        return self.p, self.p * (1.0 - self.p)


def draw(dist, rng, size=None):
    """Sample from a distribution spec with a seeded stream."""
    return dist.sample(rng, size)


def log_pdf(dist, x):
    """Natural-log density (or mass) of ``dist`` at ``x``; -inf off support."""
    return dist.log_pdf(x)

"""Model-agnostic entropic tilting of posterior draws.

Given draws ``theta`` from a posterior over m area parameters, a
benchmark asks for the weighted mean of ``psi'(theta_i)`` to equal a
target C.  The closest distribution in KL that meets the constraint
multiplies the posterior density by ``exp(gamma * sum_i w_i
psi'(theta_i))``; on a finite set of draws that becomes self-normalized
importance sampling (SNIS): draw s receives unnormalized log-weight
``gamma * T_s`` with ``T_s = sum_i w_i psi'(theta_i^(s))``, and gamma is
the root of ``sum_s wtilde_s T_s = C``.

Everything here works in log space; raw exponentials of ``gamma * T``
overflow for heavy-tailed draws.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import (
    BenchmarkWeightWarning,
    DegenerateWeightsWarning,
    InfeasibleTargetError,
    InternalInvariantError,
)
from .rng import as_generator

__all__ = [
    "NEFFamily",
    "gaussian_nef",
    "poisson_nef",
    "BenchmarkConstraint",
    "DrawMatrix",
    "snis_log_weights",
    "normalized_weights",
    "solve_tilt_snis",
    "solve_tilt_multi",
    "ess",
    "resample",
    "tilted_draws",
]


@dataclass(frozen=True)
class NEFFamily:
    """Natural-exponential-family pieces needed by generic tilting.

    ``psi_prime`` must be strictly increasing (it is the conditional-mean
    map, whose derivative is a conditional variance); ``xi`` holds the
    known per-area dispersion constants.
    """

    psi: Callable[[np.ndarray], np.ndarray]
    psi_prime: Callable[[np.ndarray], np.ndarray]
    xi: np.ndarray
    link: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=float)
        if xi.ndim != 1 or not np.all(xi > 0.0):
            raise ValueError("xi must be a 1-D vector of positive dispersions")
        object.__setattr__(self, "xi", xi)


def gaussian_nef(sampling_var: np.ndarray) -> NEFFamily:
    """Gaussian family: psi(t) = t^2/2, psi'(t) = t, xi_i = 1/D_i."""
    d = np.asarray(sampling_var, dtype=float)
    return NEFFamily(
        psi=lambda t: 0.5 * t**2,
        psi_prime=lambda t: t,
        xi=1.0 / d,
        link=lambda lin: lin,
    )


def poisson_nef(exposure: np.ndarray) -> NEFFamily:
    """Poisson-gamma family on theta = log(rate): psi = psi' = exp, xi_i = n_i."""
    n = np.asarray(exposure, dtype=float)
    return NEFFamily(
        psi=np.exp,
        psi_prime=np.exp,
        xi=n,
        link=np.exp,
    )


@dataclass(frozen=True)
class BenchmarkConstraint:
    """Weights w, mean target C, and an optional second-moment target H."""

    weights: np.ndarray
    target: float
    second_moment: Optional[float] = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-D vector")
        if not np.all(np.isfinite(w)) or not np.all(w > 0.0):
            raise ValueError("all benchmark weights must be finite and > 0")
        if not np.isfinite(self.target):
            raise ValueError("benchmark target must be finite")
        if self.second_moment is not None and not self.second_moment > 0.0:
            raise ValueError("second-moment target must be > 0 when given")
        object.__setattr__(self, "weights", w)
        m = w.size
        if w.max() > 10.0 / m:
            warnings.warn(
                f"max benchmark weight {w.max():.4g} exceeds 10/m = {10.0 / m:.4g}; "
                "tilting accuracy guarantees assume weights of order 1/m",
                BenchmarkWeightWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class DrawMatrix:
    """S x m matrix of posterior draws plus per-draw log-weights."""

    theta: np.ndarray
    log_weight: np.ndarray = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        theta = np.ascontiguousarray(self.theta, dtype=float)
        if theta.ndim != 2 or theta.shape[0] < 1:
            raise ValueError("theta must be an S x m matrix with S >= 1")
        if not np.all(np.isfinite(theta)):
            raise ValueError("theta contains non-finite entries")
        lw = self.log_weight
        if lw is None:
            lw = np.zeros(theta.shape[0])
        lw = np.ascontiguousarray(lw, dtype=float)
        if lw.shape != (theta.shape[0],):
            raise ValueError("log_weight must have length S")
        theta.setflags(write=False)
        lw.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "log_weight", lw)

    @property
    def n_draws(self) -> int:
        return self.theta.shape[0]

    @property
    def n_areas(self) -> int:
        return self.theta.shape[1]


def _statistics(draws: DrawMatrix, family: NEFFamily, bc: BenchmarkConstraint) -> np.ndarray:
    """T_s = sum_i w_i psi'(theta_i^(s)) for each draw."""
    return family.psi_prime(draws.theta) @ bc.weights


def snis_log_weights(draws, family, bc, gamma: float) -> np.ndarray:
    """Log importance weights ``gamma * T_s``, shifted by their maximum."""
    logw = gamma * _statistics(draws, family, bc)
    return logw - logw.max()


def normalized_weights(log_weights: np.ndarray) -> np.ndarray:
    """Exponentiate shifted log-weights and normalize to sum to one."""
    w = np.exp(log_weights - np.max(log_weights))
    return w / w.sum()


def ess(weights: np.ndarray) -> float:
    """Effective sample size 1 / sum(w^2) of normalized weights; in [1, S]."""
    w = np.asarray(weights, dtype=float)
    return 1.0 / np.sum(w**2)


def _snis_mean(stats: np.ndarray, gamma: float) -> float:
    w = normalized_weights(gamma * stats)
    return float(w @ stats)


def solve_tilt_snis(draws, family, bc, ess_warn_frac: float = 0.05) -> float:
    """Solve the SNIS moment equation for the tilting parameter.

    The weighted statistic's SNIS mean is nondecreasing in gamma, so the
    root is unique once bracketed.  Raises :class:`InfeasibleTargetError`
    when the target lies outside the convex hull of the per-draw
    statistics; warns when the solution leaves fewer than
    ``ess_warn_frac * S`` effective draws.
    """
    stats = _statistics(draws, family, bc)
    target = float(bc.target)
    lo, hi = float(stats.min()), float(stats.max())
    scale = max(1.0, abs(target))

    if lo == hi:
        if abs(lo - target) <= 1e-10 * scale:
            return 0.0
        raise InfeasibleTargetError(
            f"target {target} unattainable: all draw statistics equal {lo}",
            attainable=(lo, hi),
        )
    if not lo < target < hi:
        raise InfeasibleTargetError(
            f"target {target} outside the attainable interval ({lo:.6g}, {hi:.6g})",
            attainable=(lo, hi),
        )

    def f(g: float) -> float:
        return _snis_mean(stats, g) - target

    f0 = f(0.0)
    if abs(f0) <= 1e-14 * scale:
        gamma = 0.0
    else:
        # Bracket by doubling away from zero in the direction of the root.
        a, fa = 0.0, f0
        direction = 1.0 if f0 < 0.0 else -1.0
        b = direction
        fb = f(b)
        k = 0
        while fa * fb > 0.0:
            k += 1
            if k > 60:
                raise InfeasibleTargetError(
                    f"no finite tilting parameter reaches target {target} "
                    f"(attainable interval ({lo:.6g}, {hi:.6g}) approached too slowly)",
                    attainable=(lo, hi),
                )
            a, fa = b, fb
            b = direction * 2.0**k
            fb = f(b)
        lo_b, hi_b = (a, b) if a < b else (b, a)
        gamma = brentq(f, lo_b, hi_b, xtol=1e-12, rtol=8.9e-16, maxiter=200)
        # Newton polish: the derivative of the SNIS mean is the weighted
        # variance of the statistic, available in closed form.
        for _ in range(8):
            resid = f(gamma)
            if abs(resid) <= 1e-10 * scale:
                break
            w = normalized_weights(gamma * stats)
            var = float(w @ (stats - w @ stats) ** 2)
            if var <= 0.0:
                break
            gamma -= resid / var
        if abs(f(gamma)) > 1e-10 * scale:
            raise InternalInvariantError(
                f"SNIS solve residual {f(gamma):.3e} exceeds tolerance for target {target}"
            )

    w = normalized_weights(gamma * stats)
    if ess(w) < ess_warn_frac * draws.n_draws:
        warnings.warn(
            f"SNIS weights are degenerate at the solution: ESS {ess(w):.1f} "
            f"of {draws.n_draws} draws",
            DegenerateWeightsWarning,
            stacklevel=2,
        )
    return float(gamma)


def solve_tilt_multi(
    stats: np.ndarray,
    targets: np.ndarray,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> np.ndarray:
    """Vector tilting parameter for J stacked moment constraints.

    ``stats`` is S x J with one row of constraint statistics per draw;
    draw s gets log-weight ``stats_s @ gamma``.  Solved by damped Newton
    with a finite-difference Jacobian.
    """
    stats = np.asarray(stats, dtype=float)
    targets = np.asarray(targets, dtype=float)
    n_s, n_j = stats.shape
    if targets.shape != (n_j,):
        raise ValueError("targets length must match the number of constraint columns")
    lo = stats.min(axis=0)
    hi = stats.max(axis=0)
    inside = (lo < targets) & (targets < hi)
    exact = np.isclose(lo, hi) & np.isclose(lo, targets)
    if not np.all(inside | exact):
        j = int(np.argmin(inside | exact))
        raise InfeasibleTargetError(
            f"constraint {j}: target {targets[j]} outside attainable "
            f"interval ({lo[j]:.6g}, {hi[j]:.6g})",
            attainable=(float(lo[j]), float(hi[j])),
        )

    def moments(gamma: np.ndarray) -> np.ndarray:
        w = normalized_weights(stats @ gamma)
        return w @ stats

    scale = np.maximum(1.0, np.abs(targets))
    gamma = np.zeros(n_j)
    resid = moments(gamma) - targets
    for _ in range(max_iter):
        if np.all(np.abs(resid) <= tol * scale):
            return gamma
        jac = np.empty((n_j, n_j))
        for j in range(n_j):
            h = 1e-6 * (1.0 + abs(gamma[j]))
            bumped = gamma.copy()
            bumped[j] += h
            jac[:, j] = (moments(bumped) - targets - resid) / h
        try:
            step = np.linalg.solve(jac, -resid)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(jac, -resid, rcond=None)[0]
        # Damp until the residual norm actually improves.
        t = 1.0
        base = np.linalg.norm(resid / scale)
        for _ in range(40):
            trial = gamma + t * step
            trial_resid = moments(trial) - targets
            if np.linalg.norm(trial_resid / scale) < base:
                gamma, resid = trial, trial_resid
                break
            t *= 0.5
        else:
            break
    if not np.all(np.abs(resid) <= tol * scale):
        raise InternalInvariantError("multi-constraint tilt failed to converge")
    return gamma


def resample(draws: DrawMatrix, weights: np.ndarray, rng, n_out: int) -> DrawMatrix:
    """Draw ``n_out`` rows with replacement; output carries uniform weights."""
    if n_out < 1:
        raise ValueError("n_out must be >= 1")
    gen = as_generator(rng)
    idx = gen.choice(draws.n_draws, size=n_out, replace=True, p=weights)
    meta = dict(draws.meta)
    meta["resampled_from"] = draws.n_draws
    return DrawMatrix(theta=draws.theta[idx], log_weight=np.zeros(n_out), meta=meta)


def tilted_draws(draws, family, bc, gamma: float) -> DrawMatrix:
    """Attach normalized tilting log-weights for the given gamma."""
    logw = snis_log_weights(draws, family, bc, gamma)
    logw = logw - np.log(np.sum(np.exp(logw)))
    return DrawMatrix(theta=draws.theta, log_weight=logw, meta=dict(draws.meta))

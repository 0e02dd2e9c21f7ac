"""Gaussian-mixture conditional densities with exact interval masses.

Each conditional density of the channel output is a finite Gaussian mixture.
All probability masses are computed in closed form through the normal CDF
(error function), never by quadrature, so interval masses are exact to
floating-point rounding and additive by construction.  Infinite endpoints are
first-class: ``interval_mass(model, -inf, +inf)`` is the total mass.

The second Gaussian parameter throughout this package is the *standard
deviation*, not the variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.special import ndtr

from .errors import InvalidSpecError

__all__ = [
    "GaussianComponent",
    "DensityModel",
    "Prior",
    "Thresholds",
    "validate_thresholds",
    "pdf",
    "log_pdf",
    "cdf",
    "interval_mass",
    "partition_mass",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

#: A strictly increasing, finite sequence of quantizer boundaries.
#: The empty tuple is the constant quantizer (a single segment).
Thresholds = tuple[float, ...]


@dataclass(frozen=True)
class GaussianComponent:
    """One mixture component N(mean, stddev) carrying ``weight`` of the mass."""

    mean: float
    stddev: float
    weight: float

    def __post_init__(self):
        if not math.isfinite(self.mean):
            raise InvalidSpecError(f"component mean must be finite, got {self.mean!r}")
        if not (math.isfinite(self.stddev) and self.stddev > 0.0):
            raise InvalidSpecError(f"component stddev must be > 0, got {self.stddev!r}")
        if not (0.0 < self.weight <= 1.0):
            raise InvalidSpecError(f"component weight must be in (0, 1], got {self.weight!r}")


@dataclass(frozen=True)
class DensityModel:
    """A finite Gaussian mixture; weights must sum to 1 within 1e-12."""

    components: tuple[GaussianComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise InvalidSpecError("density model needs at least one component")
        total = math.fsum(c.weight for c in comps)
        if abs(total - 1.0) > 1e-12:
            raise InvalidSpecError(f"component weights must sum to 1, got {total!r}")

    @property
    def mean(self) -> float:
        return math.fsum(c.weight * c.mean for c in self.components)

    @property
    def max_stddev(self) -> float:
        return max(c.stddev for c in self.components)

    def _params(self):
        mus = np.array([c.mean for c in self.components])
        sigmas = np.array([c.stddev for c in self.components])
        weights = np.array([c.weight for c in self.components])
        return mus, sigmas, weights


@dataclass(frozen=True)
class Prior:
    """Input distribution P(X=0) = p0; p1 is derived, never stored."""

    p0: float

    def __post_init__(self):
        if not (math.isfinite(self.p0) and 0.0 < self.p0 < 1.0):
            raise InvalidSpecError(f"p0 must lie strictly inside (0, 1), got {self.p0!r}")

    @property
    def p1(self) -> float:
        return 1.0 - self.p0


def validate_thresholds(thresholds) -> Thresholds:
    """Check that thresholds are finite and strictly increasing; return a tuple."""
    h = tuple(float(t) for t in thresholds)
    for t in h:
        if not math.isfinite(t):
            raise InvalidSpecError(f"thresholds must be finite, got {t!r}")
    for lo, hi in zip(h, h[1:]):
        if not lo < hi:
            raise InvalidSpecError(f"thresholds must be strictly increasing, got {h!r}")
    return h


def pdf(model: DensityModel, y):
    """Mixture density at ``y`` (scalar or array): sum_k w_k N(y; mu_k, sigma_k)."""
    mus, sigmas, weights = model._params()
    z = (np.asarray(y, dtype=float)[..., None] - mus) / sigmas
    vals = np.sum(weights / (sigmas * math.sqrt(2.0 * math.pi)) * np.exp(-0.5 * z * z), axis=-1)
    return float(vals) if np.ndim(y) == 0 else vals


def log_pdf(model: DensityModel, y):
    """Log of the mixture density, computed in log-space (no tail underflow)."""
    mus, sigmas, weights = model._params()
    z = (np.asarray(y, dtype=float)[..., None] - mus) / sigmas
    comp_logs = -0.5 * z * z - np.log(sigmas) - _LOG_SQRT_2PI + np.log(weights)
    # log-sum-exp over the component axis; comp_logs is always finite
    top = np.max(comp_logs, axis=-1, keepdims=True)
    vals = top[..., 0] + np.log(np.sum(np.exp(comp_logs - top), axis=-1))
    return float(vals) if np.ndim(y) == 0 else vals


def cdf(model: DensityModel, y):
    """Mixture CDF at ``y``; accepts +-inf (limits 0 and 1)."""
    y_arr = np.asarray(y, dtype=float)
    mus, sigmas, weights = model._params()
    with np.errstate(invalid="ignore"):
        z = (y_arr[..., None] - mus) / sigmas
    # +-inf inputs give +-inf z; ndtr maps those to 1/0 exactly
    z = np.where(np.isposinf(y_arr)[..., None], np.inf, z)
    z = np.where(np.isneginf(y_arr)[..., None], -np.inf, z)
    vals = np.sum(weights * ndtr(z), axis=-1)
    return float(vals) if np.ndim(y) == 0 else vals


def interval_mass(model: DensityModel, lo: float, hi: float) -> float:
    """Exact probability mass of ``model`` on the interval [lo, hi].

    Endpoints may be ``-inf``/``+inf``.  Rejects lo > hi.  The result is the
    closed-form CDF difference clipped into [0, 1].
    """
    lo = float(lo)
    hi = float(hi)
    if math.isnan(lo) or math.isnan(hi):
        raise InvalidSpecError("interval endpoints must not be NaN")
    if lo > hi:
        raise InvalidSpecError(f"interval bounds out of order: {lo!r} > {hi!r}")
    mass = cdf(model, hi) - cdf(model, lo)
    return min(1.0, max(0.0, mass))


def partition_mass(
    model: DensityModel,
    thresholds: Thresholds,
    parity: Literal["odd", "even"],
) -> float:
    """Mass of ``model`` on alternating segments of the threshold partition.

    ``n`` thresholds split the line into ``n + 1`` contiguous segments.
    ``parity="odd"`` selects the 1st, 3rd, 5th, ... segments, i.e.
    (-inf, h1), [h2, h3), ...; ``parity="even"`` selects [h1, h2), [h3, h4),
    and so on.  The two parities always sum to the total mass.
    """
    if parity not in ("odd", "even"):
        raise InvalidSpecError(f"parity must be 'odd' or 'even', got {parity!r}")
    h = validate_thresholds(thresholds)
    edges = (-math.inf, *h, math.inf)
    start = 0 if parity == "odd" else 1
    return min(1.0, max(0.0, math.fsum(
        interval_mass(model, edges[i], edges[i + 1])
        for i in range(start, len(edges) - 1, 2)
    )))

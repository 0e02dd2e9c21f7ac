"""Induced binary channel, mutual information, and the stationarity function.

A threshold vector turns the continuous channel into a 2x2 discrete channel;
its diagonal (a11, a22) holds the correct-decision probabilities.  For a
posterior level ``a`` the induced quantizer maps the region {u < a} to Z=0,
giving the correct-decision masses

    f(a) = mass of density0 on {u < a},   g(a) = mass of density1 on {u >= a},

both computed from exact interval masses (no quadrature).  The stationarity
function returned by :func:`stationarity` is the scalar factor in

    d I(X;Z)_a / da = p0 * f'(a) * F(a),

so its zero is the stationary level of the mutual information.  F decreases
strictly through that zero, which is what makes bisection applicable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .density import Thresholds, cdf, partition_mass, validate_thresholds
from .errors import DegenerateChannelError, InvalidSpecError
from .likelihood import DEFAULT_GRID_POINTS, ChannelSpec, Prior, find_level_set, posterior

__all__ = [
    "Mapping",
    "ChannelMatrix",
    "LevelFunctionals",
    "channel_matrix",
    "binary_entropy",
    "mutual_information",
    "level_functionals",
    "stationarity",
    "DEGENERACY_EPS",
]

Mapping = Literal["odd_to_zero", "even_to_zero"]

#: Correct-decision masses within this band of {0, 1} make the stationarity
#: logs unbounded; :func:`stationarity` raises DegenerateChannelError there.
DEGENERACY_EPS = 1e-12


@dataclass(frozen=True)
class ChannelMatrix:
    """Diagonal of the induced 2x2 channel: a11 = P(Z=0|X=0), a22 = P(Z=1|X=1).

    The off-diagonal entries are 1 - a11 and 1 - a22 by construction.
    """

    a11: float
    a22: float

    def __post_init__(self):
        for name, v in (("a11", self.a11), ("a22", self.a22)):
            if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                raise InvalidSpecError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True)
class LevelFunctionals:
    """Correct-decision masses induced by one posterior level.

    ``correct0`` is f(a), ``correct1`` is g(a); ``roots`` are the level-set
    solutions that bound the quantizer segments.  f + g >= 1 always holds for
    a level-set quantizer, and is enforced here (violation means the segment
    assignment is broken).
    """

    level: float
    correct0: float
    correct1: float
    roots: Thresholds

    def __post_init__(self):
        if self.correct0 + self.correct1 < 1.0 - 1e-9:
            raise InvalidSpecError(
                f"correct-decision masses must satisfy f + g >= 1, got "
                f"f={self.correct0!r}, g={self.correct1!r} at level {self.level!r}"
            )


def channel_matrix(spec: ChannelSpec, thresholds: Thresholds, mapping: Mapping) -> ChannelMatrix:
    """The 2x2 channel induced by alternating segments of a threshold vector.

    ``odd_to_zero`` sends the 1st, 3rd, ... segments (starting with
    (-inf, h1)) to Z=0; ``even_to_zero`` sends them to Z=1.  With no
    thresholds everything lands in the single (odd) segment.
    """
    if mapping not in ("odd_to_zero", "even_to_zero"):
        raise InvalidSpecError(f"unknown mapping {mapping!r}")
    h = validate_thresholds(thresholds)
    if mapping == "odd_to_zero":
        a11 = partition_mass(spec.density0, h, "odd")
        a22 = partition_mass(spec.density1, h, "even")
    else:
        a11 = partition_mass(spec.density0, h, "even")
        a22 = partition_mass(spec.density1, h, "odd")
    return ChannelMatrix(a11=a11, a22=a22)


def binary_entropy(w: float) -> float:
    """H2(w) in bits, with 0 log 0 := 0."""
    if w <= 0.0 or w >= 1.0:
        return 0.0
    return -(w * math.log2(w) + (1.0 - w) * math.log2(1.0 - w))


def binary_entropy_arr(w: np.ndarray) -> np.ndarray:
    """Vectorized H2 in bits; endpoints map to 0."""
    w = np.asarray(w, dtype=float)
    inside = (w > 0.0) & (w < 1.0)
    safe = np.where(inside, w, 0.5)
    with np.errstate(invalid="ignore"):
        h = -(safe * np.log2(safe) + (1.0 - safe) * np.log2(1.0 - safe))
    return np.where(inside, h, 0.0)


def mutual_information(prior: Prior, matrix: ChannelMatrix) -> float:
    """I(X;Z) of the induced binary channel, in bits.

    q0 = p0 a11 + p1 (1 - a22) is the output mass on Z=0 and

        I = H2(q0) - p0 H2(a11) - p1 H2(a22).

    The value is clamped at 0 (rounding can produce -1e-16 for useless
    channels).  It never exceeds H2(p0).
    """
    p0, p1 = prior.p0, prior.p1
    q0 = p0 * matrix.a11 + p1 * (1.0 - matrix.a22)
    mi = binary_entropy(q0) - p0 * binary_entropy(matrix.a11) - p1 * binary_entropy(matrix.a22)
    return max(0.0, mi)


def level_functionals(
    spec: ChannelSpec, level: float, grid_points: int = DEFAULT_GRID_POINTS
) -> LevelFunctionals:
    """Correct-decision masses f, g of the quantizer induced by ``level``.

    The level-set roots split the line into segments; each segment belongs to
    {u < level} or {u >= level} according to the posterior at its midpoint
    (the unbounded end segments are probed at the search-window edges, where
    the posterior has stabilized to its tail behavior).  f sums density0
    masses over {u < level}; g sums density1 masses over the complement.
    Boundary points (u = level) belong to the Z=1 side; they carry no mass.
    """
    level_set = find_level_set(spec, level, grid_points)
    roots = level_set.roots
    n = len(roots)

    c0 = cdf(spec.density0, np.asarray(roots)) if n else np.empty(0)
    c1 = cdf(spec.density1, np.asarray(roots)) if n else np.empty(0)

    f_parts = []
    g_parts = []
    for i in range(n + 1):
        mass0_lo = 0.0 if i == 0 else c0[i - 1]
        mass0_hi = 1.0 if i == n else c0[i]
        mass1_lo = 0.0 if i == 0 else c1[i - 1]
        mass1_hi = 1.0 if i == n else c1[i]
        if i == 0:
            probe = spec.search_lo
        elif i == n:
            probe = spec.search_hi
        else:
            probe = 0.5 * (roots[i - 1] + roots[i])
        if posterior(spec, probe) < level:
            f_parts.append(mass0_hi - mass0_lo)
        else:
            g_parts.append(mass1_hi - mass1_lo)

    f = min(1.0, max(0.0, math.fsum(f_parts)))
    g = min(1.0, max(0.0, math.fsum(g_parts)))
    return LevelFunctionals(level=level, correct0=f, correct1=g, roots=roots)


def _stationarity_from_masses(prior: Prior, level: float, f: float, g: float) -> float:
    """F value from precomputed masses; raises on degenerate f or g."""
    if (
        f <= DEGENERACY_EPS
        or f >= 1.0 - DEGENERACY_EPS
        or g <= DEGENERACY_EPS
        or g >= 1.0 - DEGENERACY_EPS
    ):
        raise DegenerateChannelError(level, f, g)
    p0, p1 = prior.p0, prior.p1
    q0 = p0 * f + p1 * (1.0 - g)
    q1 = p0 * (1.0 - f) + p1 * g
    ratio_coeff = level / (1.0 - level)
    return (
        math.log(f / (1.0 - f))
        - ratio_coeff * math.log(g / (1.0 - g))
        - (1.0 + ratio_coeff) * math.log(q0 / q1)
    )


def stationarity(spec: ChannelSpec, level: float, grid_points: int = DEFAULT_GRID_POINTS) -> float:
    """The stationarity function F at ``level`` (natural logs).

        F(a) = log(f/(1-f)) - (a/(1-a)) log(g/(1-g))
               - (1/(1-a)) log((p0 f + p1 (1-g)) / (p0 (1-f) + p1 g))

    F is the scalar factor in dI/da = p0 f'(a) F(a): it is positive while
    raising the level still gains information and negative past the optimum,
    crossing zero exactly once, so bisection on F finds the optimal level.
    (F is monotone when the posterior has a single extremum; for multimodal
    posteriors it can rise where a new dip joins the level set, without
    re-crossing zero.)  The zero is invariant to the log base.

    Raises DegenerateChannelError when f or g is within 1e-12 of {0, 1},
    signalling that the level must move inward.
    """
    fn = level_functionals(spec, level, grid_points)
    return _stationarity_from_masses(spec.prior, level, fn.correct0, fn.correct1)

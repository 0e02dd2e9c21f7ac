"""Bisection solver for the optimal binary quantizer.

The mutual information of the induced quantizer, viewed as a function of the
posterior level ``a``, has a single stationary point; the stationarity
function F of :mod:`binquant.channel` decreases strictly through zero there.
The solver brackets that zero on a coarse level grid (trimming inward past
levels whose channel is degenerate), bisects to tolerance, and takes *all*
level-set roots at the solution as the threshold vector: dropping any subset
of them can never improve the mutual information.

At the solution every threshold carries the same likelihood ratio

    r* = (p1/p0) (1 - a*) / a*,

which is the post-solve certificate checked by :func:`verify_stationarity`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelMatrix, Mapping, channel_matrix, mutual_information, stationarity
from .density import Thresholds
from .errors import (
    DegenerateChannelError,
    InvalidSpecError,
    NoSignChangeError,
    NotConvergedError,
)
from .likelihood import (
    ChannelSpec,
    Monotonicity,
    classify_monotonicity,
    find_level_set,
    likelihood_ratio,
    posterior,
    translate_log_concavity,
)

__all__ = [
    "SolverConfig",
    "QuantizerDesign",
    "StationarityReport",
    "solve",
    "verify_stationarity",
    "predict_single_threshold",
]

#: Number of points in the coarse bracketing scan over the level range.
SCAN_POINTS = 64


@dataclass(frozen=True)
class SolverConfig:
    """Bisection parameters; the defaults solve all shipped channels < 1 s."""

    a_lo: float = 1e-6
    a_hi: float = 1.0 - 1e-6
    tol_a: float = 1e-10
    max_iter: int = 200
    grid_points: int = 4096

    def __post_init__(self):
        if not (0.0 < self.a_lo < self.a_hi < 1.0):
            raise InvalidSpecError(
                f"need 0 < a_lo < a_hi < 1, got a_lo={self.a_lo!r}, a_hi={self.a_hi!r}"
            )
        if not self.tol_a > 0.0:
            raise InvalidSpecError(f"tol_a must be > 0, got {self.tol_a!r}")
        if self.max_iter < 1:
            raise InvalidSpecError(f"max_iter must be >= 1, got {self.max_iter!r}")
        if self.grid_points < 64:
            raise InvalidSpecError(f"grid_points must be >= 64, got {self.grid_points!r}")


@dataclass(frozen=True)
class QuantizerDesign:
    """A solved, certified quantizer.

    ``a_star`` is the optimal posterior level, ``r_star`` the common
    likelihood ratio (p1/p0)(1-a*)/a* at every threshold, and
    ``stationarity_residual`` the worst relative deviation
    max_i |r(h_i) - r*| / r* actually measured.  ``mi_bits`` is recomputed
    from exact interval masses at the final thresholds, never interpolated.
    """

    a_star: float
    r_star: float
    thresholds: Thresholds
    mapping: Mapping
    channel: ChannelMatrix
    mi_bits: float
    stationarity_residual: float
    iterations: int
    notes: tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class StationarityReport:
    """Equal-ratio certificate: the likelihood ratio recomputed per threshold."""

    residual: float
    per_threshold: tuple[tuple[float, float], ...]


def _scan_values(spec: ChannelSpec, levels: np.ndarray, grid_points: int):
    """Evaluate F on the scan grid; NaN marks degenerate levels."""
    values = np.full(levels.shape, np.nan)
    last_degenerate: DegenerateChannelError | None = None
    for i, a in enumerate(levels):
        try:
            values[i] = stationarity(spec, float(a), grid_points)
        except DegenerateChannelError as err:
            last_degenerate = err
    return values, last_degenerate


def _posterior_is_flat(spec: ChannelSpec, grid_points: int) -> bool:
    ys = np.linspace(spec.search_lo, spec.search_hi, grid_points)
    us = posterior(spec, ys)
    return float(np.max(us) - np.min(us)) <= 1e-12


def solve(spec: ChannelSpec, config: SolverConfig | None = None) -> QuantizerDesign:
    """Find the optimal binary quantizer for ``spec`` by bisection on F.

    Procedure: (1) scan F on a 64-point level grid over [a_lo, a_hi],
    skipping degenerate levels at the ends; (2) bisect the sign-change cell
    down to ``tol_a``; (3) take every level-set root at the midpoint as the
    threshold vector; (4) map segments with posterior below a* to Z=0;
    (5) recompute the channel matrix, mutual information (bits), r*, and the
    equal-ratio residual from the final thresholds.

    Raises NoSignChangeError when F keeps one sign over the admissible range
    (e.g. identical conditional densities carry no information),
    NotConvergedError past ``max_iter``, and DegenerateChannelError when no
    level in the range is evaluable for a non-flat posterior.
    """
    cfg = config or SolverConfig()
    notes: list[str] = []

    scan_levels = np.linspace(cfg.a_lo, cfg.a_hi, SCAN_POINTS)
    scan_f, last_degenerate = _scan_values(spec, scan_levels, cfg.grid_points)
    valid = np.isfinite(scan_f)

    if not valid.any():
        if _posterior_is_flat(spec, cfg.grid_points):
            raise NoSignChangeError(
                "the posterior level is constant, so the channel carries no "
                "information (mutual information is identically 0)"
            )
        raise last_degenerate  # non-flat posterior with no evaluable level

    exact = np.nonzero(valid & (scan_f == 0.0))[0]
    if exact.size:
        lo = hi = float(scan_levels[exact[0]])
        iterations = 0
    else:
        cells = [
            i
            for i in range(SCAN_POINTS - 1)
            if valid[i] and valid[i + 1] and scan_f[i] * scan_f[i + 1] < 0.0
        ]
        if not cells:
            if _posterior_is_flat(spec, cfg.grid_points):
                raise NoSignChangeError(
                    "the posterior level is constant, so the channel carries no "
                    "information (mutual information is identically 0)"
                )
            raise NoSignChangeError(
                "the stationarity function keeps one sign over the admissible "
                f"level range [{cfg.a_lo}, {cfg.a_hi}]; widen the range or check "
                "the channel"
            )
        if len(cells) > 1:
            spreads = [abs(scan_f[i + 1] - scan_f[i]) for i in cells]
            cells = [cells[int(np.argmax(spreads))]]
            notes.append(
                "multiple sign-change cells in the coarse scan (noise-level "
                "flats); kept the one with the largest spread"
            )
        i = cells[0]
        lo, hi = float(scan_levels[i]), float(scan_levels[i + 1])
        f_lo = scan_f[i]

        iterations = 0
        while hi - lo > cfg.tol_a:
            if iterations >= cfg.max_iter:
                raise NotConvergedError(
                    f"bisection exceeded max_iter={cfg.max_iter} "
                    f"(bracket width {hi - lo:.3e} > tol_a={cfg.tol_a})"
                )
            mid = 0.5 * (lo + hi)
            f_mid = stationarity(spec, mid, cfg.grid_points)
            iterations += 1
            if f_mid == 0.0:
                lo = hi = mid
                break
            if (f_mid > 0.0) == (f_lo > 0.0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid

    a_star = 0.5 * (lo + hi)
    level_set = find_level_set(spec, a_star, cfg.grid_points)
    thresholds = level_set.roots

    mapping: Mapping = (
        "odd_to_zero" if posterior(spec, spec.search_lo) < a_star else "even_to_zero"
    )
    matrix = channel_matrix(spec, thresholds, mapping)
    mi_bits = mutual_information(spec.prior, matrix)
    r_star = (spec.prior.p1 / spec.prior.p0) * (1.0 - a_star) / a_star

    if thresholds:
        ratios = likelihood_ratio(spec, np.asarray(thresholds))
        residual = float(np.max(np.abs(ratios - r_star)) / r_star)
    else:
        residual = 0.0

    return QuantizerDesign(
        a_star=a_star,
        r_star=r_star,
        thresholds=thresholds,
        mapping=mapping,
        channel=matrix,
        mi_bits=mi_bits,
        stationarity_residual=residual,
        iterations=iterations,
        notes=tuple(notes),
    )


def verify_stationarity(spec: ChannelSpec, design: QuantizerDesign) -> StationarityReport:
    """Recompute the likelihood ratio at every threshold of a solved design.

    All ratios must agree with r* at the optimum; the report carries the
    worst relative deviation and the per-threshold values.
    """
    per = tuple(
        (h, float(likelihood_ratio(spec, h))) for h in design.thresholds
    )
    if per:
        residual = max(abs(r - design.r_star) for _, r in per) / design.r_star
    else:
        residual = 0.0
    return StationarityReport(residual=residual, per_threshold=per)


def predict_single_threshold(spec: ChannelSpec, grid_points: int = 4096) -> bool:
    """Predict, before solving, whether one threshold suffices.

    True when the likelihood ratio is strictly monotone, or when density1 is
    a translate of density0 and density0 is strictly log-concave or
    log-convex.  A true prediction is confirmed by :func:`solve` returning
    exactly one threshold.
    """
    mono = classify_monotonicity(spec, grid_points)
    if mono.verdict in (Monotonicity.STRICTLY_INCREASING, Monotonicity.STRICTLY_DECREASING):
        return True
    shape = translate_log_concavity(spec, grid_points)
    return shape.shift_detected and (shape.log_concave or shape.log_convex)

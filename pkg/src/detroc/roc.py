"""ROC analysis of weighted threshold voting rules.

Sweeping the threshold trades retaliation credibility R(tau) against
false-alarm risk F(tau); the locus of (F, R) pairs is the rule's ROC curve.
Two sweep modes are provided:

* ``replication``: tau sampled linearly over [0, sum(w)] (default 41 points)
  and the trapezoid AUC taken over exactly the sampled points, with no
  synthetic corners.  This mirrors the published experiments and reproduces
  their printed AUC values.
* ``exact``: tau visits every distinct achievable sum plus a sentinel above
  the maximum, anchoring the curve at (0,0) and (1,1).  The trapezoid AUC
  then equals the rank statistic Pr(S1 > S0) + 0.5 Pr(S1 = S0), the
  statistically standard AUC.

The two conventions genuinely differ (the replication AUC omits the corner
region below the most conservative operating point), which is why both are
kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .distribution import (
    SUM_TOL,
    SumDistribution,
    achievable_sums,
    tail_probability,
    weighted_sum_distribution,
)
from .model import InfoEnvironment, WeightScheme, validate_environment

GRID_MODES = ("replication", "exact")


@dataclass(frozen=True)
class ThresholdGrid:
    """Threshold sweep specification.

    In replication mode, ``samples`` equally spaced values cover [lo, hi]
    (hi defaults to the scheme's total weight).  Exact mode ignores the
    sampling fields and sweeps the achievable sums instead.
    """

    mode: str = "replication"
    samples: int = 41
    lo: float = 0.0
    hi: float | None = None

    def __post_init__(self):
        if self.mode not in GRID_MODES:
            raise ValueError(
                f"grid mode must be one of {GRID_MODES}, got {self.mode!r}"
            )
        if self.mode == "replication" and self.samples < 2:
            raise ValueError(f"replication grid needs samples >= 2, got {self.samples}")
        if self.hi is not None and not self.lo <= self.hi:
            raise ValueError(f"grid needs lo <= hi, got lo={self.lo}, hi={self.hi}")


class RocPoint(NamedTuple):
    fpr: float
    tpr: float
    tau: float


@dataclass(frozen=True)
class RocCurve:
    """Ordered ROC points with the threshold that produced each.

    Points are sorted by ascending (fpr, tpr), which for these step curves is
    descending threshold order.  ``anchored`` records whether the sweep
    guarantees the (0,0) and (1,1) corners (exact mode does).
    """

    points: tuple[RocPoint, ...]
    mode: str
    anchored: bool


def sweep_thresholds(scheme: WeightScheme, grid: ThresholdGrid) -> np.ndarray:
    """Threshold values visited by the sweep, in increasing order.

    Replication mode returns ``grid.samples`` linearly spaced values.  Exact
    mode returns 0, every distinct achievable sum, and an unattainable
    sentinel one above the total weight (which yields the (0,0) ROC corner).
    """
    if grid.mode == "replication":
        hi = scheme.total if grid.hi is None else grid.hi
        return np.linspace(grid.lo, hi, grid.samples)
    sums = achievable_sums(scheme)
    taus = np.concatenate(([0.0], sums, [scheme.total + 1.0]))
    keep = np.empty(taus.size, dtype=bool)
    keep[0] = True
    keep[1:] = np.diff(taus) > SUM_TOL
    return taus[keep]


def roc_curve(
    scheme: WeightScheme, env: InfoEnvironment, grid: ThresholdGrid
) -> RocCurve:
    """Evaluate (F(tau), R(tau)) over the sweep for one environment."""
    validate_environment(env, scheme.n)
    dist1 = weighted_sum_distribution(scheme, env.p, type_label=1)
    dist0 = weighted_sum_distribution(scheme, env.q, type_label=0)
    taus = sweep_thresholds(scheme, grid)
    points = [
        RocPoint(tail_probability(dist0, t), tail_probability(dist1, t), float(t))
        for t in taus[::-1]
    ]
    # Decreasing tau makes both rates non-decreasing, so this stable sort is
    # normally a no-op; it guarantees the ordering invariant regardless.
    points.sort(key=lambda pt: (pt.fpr, pt.tpr))
    return RocCurve(tuple(points), grid.mode, anchored=grid.mode == "exact")


def auc_trapezoid(curve: RocCurve) -> float:
    """Trapezoid area under the curve's points, sorted by (fpr, tpr).

    Integrates only over the span of the given points; no corners are
    invented.  Anchored exact curves therefore integrate from (0,0) to (1,1)
    while replication curves start at their most conservative sampled point.
    """
    if len(curve.points) < 2:
        raise ValueError(f"AUC needs at least 2 points, got {len(curve.points)}")
    pts = sorted((pt.fpr, pt.tpr) for pt in curve.points)
    return math.fsum(
        (x2 - x1) * (y1 + y2) / 2.0 for (x1, y1), (x2, y2) in zip(pts, pts[1:])
    )


def auc_exact(dist1: SumDistribution, dist0: SumDistribution) -> float:
    """Rank-statistic AUC: Pr(S1 > S0) + 0.5 Pr(S1 = S0).

    S1 and S0 are independent draws from the two distributions; sums within
    SUM_TOL of each other count as ties.
    """
    cum0 = np.concatenate(([0.0], np.cumsum(dist0.mass)))
    below = np.searchsorted(dist0.support, dist1.support - SUM_TOL, side="left")
    upto = np.searchsorted(dist0.support, dist1.support + SUM_TOL, side="right")
    wins = cum0[below]
    ties = cum0[upto] - cum0[below]
    return float(np.dot(dist1.mass, wins + 0.5 * ties))


# J values this close to the sweep maximum count as maximizers.  Mathematically
# tied J values (e.g. symmetric environments with p = 1 - q) can differ by a few
# ulps depending on summation order; without the tolerance the tie-break would
# depend on that noise.
J_TIE_TOL = 1e-12


@dataclass(frozen=True)
class YoudenResult:
    """Maximum of J(tau) = R(tau) - F(tau) over a sweep.

    ``tau_star`` is the smallest threshold attaining the maximum, with
    maximizers detected up to J_TIE_TOL.
    """

    j_star: float
    tau_star: float
    taus: tuple[float, ...]
    j_values: tuple[float, ...]


def youden(
    scheme: WeightScheme, env: InfoEnvironment, grid: ThresholdGrid
) -> YoudenResult:
    """J statistic over the sweep and its optimal threshold."""
    validate_environment(env, scheme.n)
    dist1 = weighted_sum_distribution(scheme, env.p, type_label=1)
    dist0 = weighted_sum_distribution(scheme, env.q, type_label=0)
    taus = [float(t) for t in sweep_thresholds(scheme, grid)]
    j_values = [
        tail_probability(dist1, t) - tail_probability(dist0, t) for t in taus
    ]
    j_star = max(j_values)
    best = next(i for i, j in enumerate(j_values) if j >= j_star - J_TIE_TOL)
    return YoudenResult(j_star, taus[best], tuple(taus), tuple(j_values))


@dataclass(frozen=True)
class AucStats:
    """AUC summary for one scheme over a battery of environments."""

    scheme: str
    mean: float
    min: float
    max: float


def auc_statistics(
    scheme: WeightScheme, envs: Sequence[InfoEnvironment], grid: ThresholdGrid
) -> AucStats:
    """Mean/min/max trapezoid AUC of one scheme across environments."""
    if not envs:
        raise ValueError("environment battery is empty")
    aucs = [auc_trapezoid(roc_curve(scheme, env, grid)) for env in envs]
    return AucStats(scheme.name, math.fsum(aucs) / len(aucs), min(aucs), max(aucs))


@dataclass(frozen=True)
class JStats:
    """Youden-J summary for one scheme over a battery of environments.

    ``mean_tau_star`` is reported un-discretized (no rounding to whole votes).
    """

    scheme: str
    mean_j: float
    min_j: float
    max_j: float
    mean_tau_star: float


def j_statistics(
    scheme: WeightScheme, envs: Sequence[InfoEnvironment], grid: ThresholdGrid
) -> JStats:
    """Mean/min/max optimal J and mean optimal threshold across environments."""
    if not envs:
        raise ValueError("environment battery is empty")
    results = [youden(scheme, env, grid) for env in envs]
    j_stars = [r.j_star for r in results]
    tau_stars = [r.tau_star for r in results]
    return JStats(
        scheme.name,
        math.fsum(j_stars) / len(j_stars),
        min(j_stars),
        max(j_stars),
        math.fsum(tau_stars) / len(tau_stars),
    )

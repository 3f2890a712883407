"""Exact distribution of the weighted vote sum, and supporting oracles.

Member votes are independent Bernoulli(``probs[i]``) variables.  For a weight
vector ``w`` the decision statistic is ``S = sum(w_i * v_i)``, whose exact
distribution is computed by enumerating all ``2^n`` vote vectors and merging
coinciding sums.  The retaliation probability of a rule with threshold
``tau`` is then the tail ``Pr(S >= tau)`` under the relevant adversary type.

Equal weights with equal probabilities reduce to binomial tails, provided
here as a closed form, and a seeded Monte Carlo estimator serves as an
independent cross-check for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import MAX_ENUM_MEMBERS, WeightScheme, check_probabilities

# Two weighted sums within SUM_TOL are the same support point, and
# "S >= tau" admits sums down to tau - SUM_TOL.  Scheme weights are short
# decimals, so genuinely distinct sums sit many orders of magnitude above
# this scale while float noise from reordered additions sits far below it.
SUM_TOL = 1e-9

# A distribution's probability mass must account for everything.
MASS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SumDistribution:
    """Probability mass of the weighted vote sum under one adversary type.

    ``support`` is strictly increasing, ``mass`` matches it elementwise and
    sums to one.  ``type_label`` records which adversary type (1 hostile,
    0 benign) the member probabilities were conditioned on, when known.
    """

    support: np.ndarray
    mass: np.ndarray
    type_label: int | None = None

    def __post_init__(self):
        support = np.asarray(self.support, dtype=float)
        mass = np.asarray(self.mass, dtype=float)
        if support.ndim != 1 or support.shape != mass.shape:
            raise ValueError("support and mass must be matching 1-d vectors")
        if support.size == 0:
            raise ValueError("distribution must have at least one support point")
        if np.any(np.diff(support) <= 0):
            raise ValueError("support values must be strictly increasing")
        if np.any(mass < 0):
            raise ValueError("probability mass must be non-negative")
        total = float(mass.sum())
        if abs(total - 1.0) > MASS_TOL:
            raise ValueError(f"probability mass sums to {total!r}, expected 1")
        if self.type_label not in (None, 0, 1):
            raise ValueError(f"type_label must be 0, 1 or None, got {self.type_label!r}")
        support.flags.writeable = False
        mass.flags.writeable = False
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "mass", mass)


def vote_vector_probability(votes, probs) -> float:
    """Probability of one exact vote vector under independent Bernoulli votes.

    Returns ``prod(probs[i]**votes[i] * (1-probs[i])**(1-votes[i]))``.
    """
    probs = check_probabilities(probs)
    votes = list(votes)
    if len(votes) != len(probs):
        raise ValueError(
            f"vote vector has length {len(votes)}, probabilities {len(probs)}"
        )
    prob = 1.0
    for i, (v, p) in enumerate(zip(votes, probs)):
        if v not in (0, 1):
            raise ValueError(f"votes[{i}] = {v!r} is not a binary vote")
        prob *= p if v else 1.0 - p
    return prob


def _enumerate_sums(weights: np.ndarray, probs: np.ndarray):
    """All 2^n weighted sums with their probabilities.

    Vote vectors are iterated as n-bit integers 0..2^n-1 with bit i holding
    member i's vote.
    """
    n = len(weights)
    if n > MAX_ENUM_MEMBERS:
        raise ValueError(
            f"exact enumeration supports at most {MAX_ENUM_MEMBERS} members, got {n}"
        )
    count = 1 << n
    index = np.arange(count, dtype=np.uint32)
    sums = np.zeros(count)
    mass = np.ones(count)
    for i in range(n):
        voted = (index >> np.uint32(i)) & np.uint32(1) == 1
        sums[voted] += weights[i]
        mass[voted] *= probs[i]
        mass[~voted] *= 1.0 - probs[i]
    return sums, mass


def _merge_support(sums: np.ndarray, mass: np.ndarray):
    """Sort sums and pool mass of values that coincide within SUM_TOL.

    Sums that carry no probability (members voting with certainty) are
    dropped, so the support holds exactly the values S can actually take.
    """
    order = np.argsort(sums, kind="stable")
    sorted_sums = sums[order]
    sorted_mass = mass[order]
    starts = np.empty(sorted_sums.size, dtype=bool)
    starts[0] = True
    starts[1:] = np.diff(sorted_sums) > SUM_TOL
    group = np.cumsum(starts) - 1
    support = sorted_sums[starts]
    merged = np.bincount(group, weights=sorted_mass)
    reachable = merged > 0.0
    return support[reachable], merged[reachable]


def weighted_sum_distribution(
    scheme: WeightScheme, probs, type_label: int | None = None
) -> SumDistribution:
    """Exact distribution of ``S = sum(w_i * v_i)`` by full enumeration.

    Vote vectors whose weighted sums coincide within SUM_TOL are merged into
    a single support point.
    """
    probs = check_probabilities(probs)
    if len(probs) != scheme.n:
        raise ValueError(
            f"scheme {scheme.name!r} has {scheme.n} members, "
            f"got {len(probs)} probabilities"
        )
    sums, mass = _enumerate_sums(np.array(scheme.weights), np.array(probs))
    support, merged = _merge_support(sums, mass)
    return SumDistribution(support, merged, type_label)


def achievable_sums(scheme: WeightScheme) -> np.ndarray:
    """Distinct values the weighted vote sum can take, in increasing order."""
    uniform = [0.5] * scheme.n  # every vote vector has positive mass
    return weighted_sum_distribution(scheme, uniform).support


def tail_probability(dist: SumDistribution, tau: float) -> float:
    """``Pr(S >= tau)``, counting support within SUM_TOL below tau as meeting it.

    Applied to the hostile-type distribution this is the retaliation
    probability R(tau); applied to the benign-type distribution it is the
    false-alarm rate F(tau).
    """
    start = int(np.searchsorted(dist.support, float(tau) - SUM_TOL, side="left"))
    if start == 0:
        return 1.0  # nothing excluded: the whole unit of probability mass
    return float(dist.mass[start:].sum())


def binomial_tail(n: int, prob: float, tau: int) -> float:
    """``Pr(Bin(n, prob) >= tau)`` for an integer threshold in [0, n].

    This is the closed form the weighted-sum tail collapses to when all
    weights are equal and all members share one probability.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    (prob,) = check_probabilities([prob], "prob")
    k = int(tau)
    if k != tau or not 0 <= k <= n:
        raise ValueError(f"tau must be an integer in [0, {n}], got {tau!r}")
    if k == 0:
        return 1.0
    return math.fsum(
        math.comb(n, j) * prob**j * (1.0 - prob) ** (n - j) for j in range(k, n + 1)
    )


@dataclass(frozen=True)
class TailEstimate:
    """Monte Carlo estimate of a tail probability with its standard error."""

    estimate: float
    std_error: float
    trials: int


def sample_vote_sums(scheme: WeightScheme, probs, trials: int, seed: int) -> np.ndarray:
    """Draw ``trials`` weighted vote sums from the Bernoulli product model.

    Uses numpy's default generator (PCG64), so a fixed seed reproduces the
    same draws bit for bit on any platform.
    """
    probs = check_probabilities(probs)
    if len(probs) != scheme.n:
        raise ValueError(
            f"scheme {scheme.name!r} has {scheme.n} members, "
            f"got {len(probs)} probabilities"
        )
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    rng = np.random.default_rng(seed)
    weights = np.array(scheme.weights)
    p = np.array(probs)
    out = np.empty(trials)
    chunk = 1 << 20
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        votes = rng.random((m, scheme.n)) < p
        out[done : done + m] = votes @ weights
        done += m
    return out


def monte_carlo_tail(
    scheme: WeightScheme, probs, tau: float, trials: int, seed: int
) -> TailEstimate:
    """Estimate ``Pr(S >= tau)`` from seeded simulation.

    Returns the hit fraction together with the binomial standard error
    ``sqrt(est * (1 - est) / trials)``.
    """
    sums = sample_vote_sums(scheme, probs, trials, seed)
    hits = int(np.count_nonzero(sums >= float(tau) - SUM_TOL))
    estimate = hits / trials
    std_error = math.sqrt(estimate * (1.0 - estimate) / trials)
    return TailEstimate(estimate, std_error, trials)

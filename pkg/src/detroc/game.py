"""Attack-condition arithmetic for the deterrence signalling model.

A rational adversary weighs the benefit B of an unanswered attack against
the cost C of retaliation.  With retaliation probability R the expected
payoff of attacking is (1-R)B - RC, so the attack is worthwhile exactly when
R falls strictly below the deterrence threshold B/(B+C).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .distribution import tail_probability, weighted_sum_distribution
from .model import (
    GameParams,
    InfoEnvironment,
    WeightScheme,
    check_probabilities,
    validate_environment,
)


@dataclass(frozen=True)
class AttackAssessment:
    """Outcome of the adversary's attack decision at one retaliation level."""

    expected_payoff: float
    attacks: bool
    deterrence_threshold: float
    retaliation_prob: float


def expected_attack_payoff(retaliation_prob: float, params: GameParams) -> float:
    """Expected payoff of attacking: (1-R) * benefit - R * cost."""
    (r,) = check_probabilities([retaliation_prob], "retaliation_prob")
    return (1.0 - r) * params.benefit - r * params.cost


def assess_attack(retaliation_prob: float, params: GameParams) -> AttackAssessment:
    """Decide whether a rational adversary attacks.

    The attack happens iff R is strictly below the deterrence threshold;
    exact equality gives zero expected payoff and counts as deterred.
    """
    (r,) = check_probabilities([retaliation_prob], "retaliation_prob")
    threshold = params.deterrence_threshold
    return AttackAssessment(
        expected_payoff=expected_attack_payoff(r, params),
        attacks=r < threshold,
        deterrence_threshold=threshold,
        retaliation_prob=r,
    )


def breakeven_benefit_ratio(retaliation_prob: float) -> float:
    """Smallest benefit/cost ratio making an attack rational: R / (1 - R).

    Returns infinity when retaliation is certain.
    """
    (r,) = check_probabilities([retaliation_prob], "retaliation_prob")
    if r == 1.0:
        return math.inf
    return r / (1.0 - r)


def average_rates(
    scheme: WeightScheme, tau: float, envs: Sequence[InfoEnvironment]
) -> tuple[float, float]:
    """Mean retaliation and false-alarm probabilities at a fixed threshold.

    Averages tail probabilities of the hostile- and benign-type distributions
    across the given environments.
    """
    if not envs:
        raise ValueError("environment battery is empty")
    r_values = []
    f_values = []
    for env in envs:
        validate_environment(env, scheme.n)
        dist1 = weighted_sum_distribution(scheme, env.p, type_label=1)
        dist0 = weighted_sum_distribution(scheme, env.q, type_label=0)
        r_values.append(tail_probability(dist1, tau))
        f_values.append(tail_probability(dist0, tau))
    return math.fsum(r_values) / len(envs), math.fsum(f_values) / len(envs)

"""Domain types for coalition retaliation voting.

A coalition of ``n`` members votes on retaliation under a weighted threshold
rule: the joint decision is 1 iff ``sum(w_i * v_i) >= tau``.  Member votes are
independent Bernoulli signals whose success probability depends on whether the
adversary is actually hostile (``p``) or benign (``q``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

# Exact evaluation enumerates all 2^n vote vectors; past this the table no
# longer fits in memory.
MAX_ENUM_MEMBERS = 24


def check_probabilities(values: Iterable[float], name: str = "probs") -> tuple[float, ...]:
    """Coerce to floats and verify every entry lies in [0, 1].

    Raises ValueError naming the offending index, so callers can surface
    useful messages for hand-typed inputs.
    """
    out = []
    for i, value in enumerate(values):
        v = float(value)
        if not 0.0 <= v <= 1.0:  # also rejects NaN
            raise ValueError(f"{name}[{i}] = {value!r} is not a probability in [0, 1]")
        out.append(v)
    return tuple(out)


def check_member_count(n: int) -> int:
    if n < 1:
        raise ValueError(f"coalition needs at least one member, got n={n}")
    return int(n)


@dataclass(frozen=True)
class WeightScheme:
    """A named weight vector defining one weighted threshold voting rule."""

    name: str
    weights: tuple[float, ...]

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if not weights:
            raise ValueError("weight scheme must have at least one member")
        for i, w in enumerate(weights):
            if not w >= 0.0:
                raise ValueError(
                    f"weights[{i}] = {w}: negative weights are not supported"
                )
        if not any(w > 0.0 for w in weights):
            raise ValueError("at least one weight must be positive")
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> float:
        """Sum of all weights (upper end of the meaningful threshold range)."""
        return math.fsum(self.weights)


@dataclass(frozen=True)
class InfoEnvironment:
    """Per-member signal probabilities for the two adversary types.

    ``p[i]`` is the probability member ``i`` votes to retaliate given an
    actual attack; ``q[i]`` is the probability of a retaliation vote on a
    false alarm.
    """

    env_id: str
    p: tuple[float, ...]
    q: tuple[float, ...]

    def __post_init__(self):
        p = check_probabilities(self.p, "p")
        q = check_probabilities(self.q, "q")
        if len(p) != len(q):
            raise ValueError(
                f"p and q must have equal length, got {len(p)} and {len(q)}"
            )
        if not p:
            raise ValueError("environment must cover at least one member")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return len(self.p)


@dataclass(frozen=True)
class GameParams:
    """Adversary payoff parameters.

    ``benefit`` is what an unanswered attack is worth, ``cost`` what a
    retaliation costs the attacker.  ``prior`` is the coalition's shared
    belief that the adversary is hostile; it is carried through reports but
    the attack condition itself depends only on benefit/(benefit+cost).
    """

    benefit: float
    cost: float
    prior: float = 0.5

    def __post_init__(self):
        if not self.benefit > 0.0:
            raise ValueError(f"benefit must be positive, got {self.benefit}")
        if not self.cost > 0.0:
            raise ValueError(f"cost must be positive, got {self.cost}")
        if not 0.0 <= self.prior <= 1.0:
            raise ValueError(f"prior must be in [0, 1], got {self.prior}")

    @property
    def deterrence_threshold(self) -> float:
        """Retaliation probability below which attacking has positive payoff."""
        return self.benefit / (self.benefit + self.cost)


def validate_environment(env: InfoEnvironment, n: int) -> InfoEnvironment:
    """Check ``env`` against an expected member count and return it unchanged."""
    check_member_count(n)
    if env.n != n:
        raise ValueError(
            f"environment {env.env_id!r} has {env.n} members, expected {n}"
        )
    # Ranges were already enforced at construction; re-validate so callers can
    # pass structurally similar duck-typed objects.
    check_probabilities(env.p, "p")
    check_probabilities(env.q, "q")
    return env


# The seven built-in four-member schemes, each normalized to total weight 4.
_SCHEME_TABLE = (
    ("unbiased", (1.0, 1.0, 1.0, 1.0)),
    ("dictator", (4.0, 0.0, 0.0, 0.0)),
    ("veto", (2.5, 0.5, 0.5, 0.5)),
    ("technology", (1.2, 1.1, 0.9, 0.8)),
    ("frontline", (1.6, 0.8, 0.8, 0.8)),
    ("geographical", (1.6, 1.2, 0.8, 0.4)),
    ("two-bloc", (1.3, 1.3, 0.7, 0.7)),
)


def paper_schemes() -> list[WeightScheme]:
    """The seven named weight schemes used in the published experiments.

    Order and weights follow the study: unbiased, dictator, veto, technology,
    frontline, geographical, two-bloc.
    """
    return [WeightScheme(name, weights) for name, weights in _SCHEME_TABLE]


def scheme_by_name(name: str) -> WeightScheme:
    """Look up one of the built-in schemes by its name."""
    for scheme_name, weights in _SCHEME_TABLE:
        if scheme_name == name:
            return WeightScheme(scheme_name, weights)
    known = ", ".join(n for n, _ in _SCHEME_TABLE)
    raise ValueError(f"unknown scheme {name!r} (built-in schemes: {known})")


def normalize_scheme(
    weights: Sequence[float], target_sum: float, name: str = "custom"
) -> WeightScheme:
    """Scale a non-negative weight vector so its entries sum to ``target_sum``."""
    if not target_sum > 0.0:
        raise ValueError(f"target_sum must be positive, got {target_sum}")
    raw = [float(w) for w in weights]
    for i, w in enumerate(raw):
        if not w >= 0.0:
            raise ValueError(f"weights[{i}] = {w}: negative weights are not supported")
    total = math.fsum(raw)
    if total <= 0.0:
        raise ValueError("cannot normalize an all-zero weight vector")
    scale = target_sum / total
    return WeightScheme(name, tuple(w * scale for w in raw))

"""Deterrence coalitions as weighted-threshold binary classifiers.

Exact retaliation and false-alarm probabilities from per-member Bernoulli
signals, ROC/AUC/Youden analysis of institutional designs, the adversary's
attack-condition arithmetic, and a batch harness that reproduces the
published tables and figure data.
"""

from ._version import __version__
from .classifier import WeightedThresholdClassifier
from .distribution import (
    SUM_TOL,
    SumDistribution,
    TailEstimate,
    achievable_sums,
    binomial_tail,
    monte_carlo_tail,
    sample_vote_sums,
    tail_probability,
    vote_vector_probability,
    weighted_sum_distribution,
)
from .game import (
    AttackAssessment,
    assess_attack,
    average_rates,
    breakeven_benefit_ratio,
    expected_attack_payoff,
)
from .harness import (
    ExperimentConfig,
    RunReport,
    conclusion_environments,
    paper_environments,
    read_roc_points,
    reproduce_paper,
    run_config,
    write_roc_points_csv,
)
from .model import (
    MAX_ENUM_MEMBERS,
    GameParams,
    InfoEnvironment,
    WeightScheme,
    normalize_scheme,
    paper_schemes,
    scheme_by_name,
    validate_environment,
)
from .roc import (
    AucStats,
    JStats,
    RocCurve,
    RocPoint,
    ThresholdGrid,
    YoudenResult,
    auc_exact,
    auc_statistics,
    auc_trapezoid,
    j_statistics,
    roc_curve,
    sweep_thresholds,
    youden,
)
from .svg import emit_svg

__all__ = [
    "__version__",
    "MAX_ENUM_MEMBERS",
    "SUM_TOL",
    "WeightScheme",
    "InfoEnvironment",
    "GameParams",
    "normalize_scheme",
    "paper_schemes",
    "scheme_by_name",
    "validate_environment",
    "SumDistribution",
    "TailEstimate",
    "achievable_sums",
    "binomial_tail",
    "monte_carlo_tail",
    "sample_vote_sums",
    "tail_probability",
    "vote_vector_probability",
    "weighted_sum_distribution",
    "ThresholdGrid",
    "RocCurve",
    "RocPoint",
    "YoudenResult",
    "AucStats",
    "JStats",
    "auc_exact",
    "auc_statistics",
    "auc_trapezoid",
    "j_statistics",
    "roc_curve",
    "sweep_thresholds",
    "youden",
    "AttackAssessment",
    "assess_attack",
    "average_rates",
    "breakeven_benefit_ratio",
    "expected_attack_payoff",
    "ExperimentConfig",
    "RunReport",
    "conclusion_environments",
    "paper_environments",
    "read_roc_points",
    "reproduce_paper",
    "run_config",
    "write_roc_points_csv",
    "WeightedThresholdClassifier",
    "emit_svg",
]

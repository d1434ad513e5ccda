"""Fuzzy comparative anomaly detection for co-located photovoltaic fleets."""

from pvwatch._core import (
    ConfusionMatrix,
    MembershipFunction,
    __version__,
    assess,
    confusion_matrix,
    daily_performance_csv,
    drop_extremes_weights,
    error_rates,
    fsm_step,
    learn_model,
    linguistic_label,
    owa,
    relative_difference,
    run_trace,
    to_alert,
)

__all__ = [
    "ConfusionMatrix",
    "MembershipFunction",
    "__version__",
    "assess",
    "confusion_matrix",
    "daily_performance_csv",
    "drop_extremes_weights",
    "error_rates",
    "fsm_step",
    "learn_model",
    "linguistic_label",
    "owa",
    "relative_difference",
    "run_trace",
    "to_alert",
]

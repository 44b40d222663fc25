"""Noisy quantum Rock-Scissors-Paper game on two qutrits."""

from noisy_rsp.channels import ChannelKind, KrausSet, kraus_set
from noisy_rsp.game import (
    PayoffMatrix,
    PayoffResult,
    StrategyParams,
    classical_mixed_payoff,
    payoff,
)
from noisy_rsp.estimator import RSPPayoffModel

__all__ = [
    "ChannelKind",
    "KrausSet",
    "PayoffMatrix",
    "PayoffResult",
    "RSPPayoffModel",
    "StrategyParams",
    "classical_mixed_payoff",
    "kraus_set",
    "payoff",
]

__version__ = "0.1.0"

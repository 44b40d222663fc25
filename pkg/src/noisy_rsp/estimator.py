"""scikit-learn compatible wrapper around the payoff pipeline.

Feature rows are ``(x1, y1, x2, y2, alpha)``. Nothing is learned: ``fit`` only
validates the configuration and freezes the payoff operators, so the model can
sit inside pipelines, grid searches and ``clone`` calls like any estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from noisy_rsp.channels import ChannelKind
from noisy_rsp.game import TABLE_1, PayoffMatrix, Player, payoff_operator, payoff_points
from noisy_rsp.validation import check_points

FEATURE_NAMES = np.array(["x1", "y1", "x2", "y2", "alpha"], dtype=object)


class RSPPayoffModel(TransformerMixin, BaseEstimator):
    """Expected payoffs of the noisy quantum RSP game.

    Parameters
    ----------
    channel : str or ChannelKind, default="ad"
        Noise model applied to the shared state: ``ad``, ``pd``, ``dep`` or ``none``.
    payoff_matrix : PayoffMatrix, array-like of shape (3, 3, 2) or None
        Classical bimatrix; ``None`` uses the standard RSP table.
    player : {"alice", "bob"}, default="alice"
        Whose payoff ``predict`` returns. ``transform`` always returns both.
    """

    def __init__(self, channel="ad", payoff_matrix=None, player="alice"):
        self.channel = channel
        self.payoff_matrix = payoff_matrix
        self.player = player

    def fit(self, X=None, y=None):
        self.channel_ = ChannelKind.parse(self.channel)
        if self.payoff_matrix is None:
            self.payoff_matrix_ = TABLE_1
        elif isinstance(self.payoff_matrix, PayoffMatrix):
            self.payoff_matrix_ = self.payoff_matrix
        else:
            self.payoff_matrix_ = PayoffMatrix.from_json(self.payoff_matrix)
        self.player_ = Player(self.player)
        self.payoff_operators_ = {
            p: payoff_operator(p, self.payoff_matrix_) for p in Player
        }
        self.n_features_in_ = 5
        self.feature_names_in_ = FEATURE_NAMES.copy()
        if X is not None:
            check_points(X)
        return self

    def transform(self, X):
        """Return an ``(n_samples, 2)`` array of (alice, bob) payoffs."""
        check_is_fitted(self, "payoff_matrix_")
        return payoff_points(check_points(X), self.channel_, self.payoff_matrix_)

    def predict(self, X):
        col = 0 if self.player_ is Player.ALICE else 1
        return self.transform(X)[:, col]

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "payoff_matrix_")
        return np.array(["payoff_alice", "payoff_bob"], dtype=object)

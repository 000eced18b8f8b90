"""scikit-learn style facade over the sampling and recovery pipeline.

`LossyChannel` is a transformer that pushes bitstrings through the erasure
channel; `PopulationRecoverer` is an estimator that fits a sparse
distribution to channel output. Both follow sklearn conventions: bare
``__init__`` that only stores parameters, validation in ``fit``, learned
state in trailing-underscore attributes, so they compose with ``Pipeline``,
``clone`` and friends.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .channel import ListOracle, erase_block
from .core import Params, ValidationError, rat
from .recover import RecoveryConfig, recover_population

__all__ = ["LossyChannel", "PopulationRecoverer"]


def _as_oracle(X):
    """Accept either an oracle-like object or a sequence of sample strings."""
    if hasattr(X, "block_arrays") and hasattr(X, "n"):
        return X
    return ListOracle(list(X))


class LossyChannel(TransformerMixin, BaseEstimator):
    """Transformer: independently erase each bit with probability 1 - mu.

    Deterministic in (seed, row index): transforming the same rows again
    reproduces the same erasures. Output strings are over {0, 1, ?}.
    """

    def __init__(self, mu=rat(1, 2), seed: int = 0):
        self.mu = mu
        self.seed = seed

    def fit(self, X, y=None):
        X = list(X)
        if X:
            self.n_features_in_ = len(X[0])
        return self

    def transform(self, X):
        return erase_block(list(X), self.mu, self.seed)

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = False
        tags.input_tags.two_d_array = False
        tags.input_tags.string = True
        tags.non_deterministic = False
        return tags


class PopulationRecoverer(BaseEstimator):
    """Estimator: recover a sparse bitstring distribution from lossy samples.

    ``fit(X)`` accepts either a list of channel-output strings (each over
    {0, 1, ?}, equal lengths) or a sample oracle, and finds every string of
    mass at least ``prune_threshold + stage_accuracy`` (3*eps/4 by default)
    along with mass estimates accurate to ``stage_accuracy``, with
    probability at least 1 - delta. Fitting on a fixed list re-reads it
    each stage (``fresh_samples=False``), so the list must cover the
    largest single-stage sample bill; pass ``fresh_samples=True`` only with
    a generative oracle.

    Parameters: mu is the per-coordinate survival probability of the
    channel the samples came through; eps / delta are the accuracy /
    failure-probability targets; stage_accuracy, lp_accuracy and
    prune_threshold override the per-stage knobs (see RecoveryConfig).
    """

    def __init__(
        self,
        mu=rat(1, 2),
        eps=rat(1, 10),
        delta=rat(1, 20),
        fresh_samples: bool = False,
        stage_accuracy=None,
        lp_accuracy=None,
        prune_threshold=None,
    ):
        self.mu = mu
        self.eps = eps
        self.delta = delta
        self.fresh_samples = fresh_samples
        self.stage_accuracy = stage_accuracy
        self.lp_accuracy = lp_accuracy
        self.prune_threshold = prune_threshold

    def fit(self, X, y=None):
        oracle = _as_oracle(X)
        if oracle.n is None:
            raise ValidationError("cannot infer string length from empty input")
        params = Params(n=oracle.n, mu=self.mu, eps=self.eps, delta=self.delta)
        cfg = RecoveryConfig(
            params=params,
            fresh_samples_per_stage=self.fresh_samples,
            prune_threshold=self.prune_threshold,
            stage_accuracy=self.stage_accuracy,
            lp_accuracy=self.lp_accuracy,
        )
        result = recover_population(oracle, cfg)
        self.n_features_in_ = params.n
        self.result_ = result
        self.estimates_ = dict(result.entries)
        self.support_ = result.support
        return self

    def mass(self, a: str):
        """Estimated mass of `a` (zero if it was pruned or never seen)."""
        check_is_fitted(self)
        return self.estimates_.get(a, rat(0))

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.two_d_array = False
        tags.input_tags.string = True
        tags.non_deterministic = False
        return tags

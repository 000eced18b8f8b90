"""Prefix-extension recovery of a sparse distribution from lossy samples.

Candidate prefixes grow one coordinate per stage. The marginal mass of a
prefix is at least the mass of any string extending it, so pruning on
estimated marginal mass never discards the prefix of a heavy string (up to
the failure probability), while every survivor witnesses real mass - which
caps the candidate set, and with it the sample bill, at every stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    CountHistogram,
    Params,
    Rational,
    ValidationError,
    coerce_rational,
    rat,
    rat_ceil,
    validate_bitstring,
)
from .estimate import MassEstimate, compute_sample_count, histogram_dot
from .inverse import LocalInverseCertificate, solve_local_inverse

__all__ = [
    "RecoveryConfig",
    "RecoveryResult",
    "StageTrace",
    "recover_population",
    "recover_single",
]

_CHUNK = 1 << 18


@dataclass(frozen=True)
class RecoveryConfig:
    """Knobs of the staged recovery.

    Defaults: stage_accuracy = eps/4 and prune_threshold = eps/2, so a true
    mass >= 3*eps/4 always survives, every survivor has true mass at least
    eps/4, and survivors number at most ceil(4/eps). The stage accuracy is
    split between the inverse LP's residual and the sampling error
    (lp_accuracy defaults to half of it); both land on the estimate, so the
    split must stay inside the stage budget for the bounds above to hold.
    """

    params: Params
    fresh_samples_per_stage: bool = True
    prune_threshold: Rational = None
    stage_accuracy: Rational = None
    lp_accuracy: Rational = None

    def __post_init__(self) -> None:
        eps = self.params.eps
        if self.stage_accuracy is None:
            object.__setattr__(self, "stage_accuracy", eps / 4)
        else:
            object.__setattr__(
                self, "stage_accuracy", coerce_rational(self.stage_accuracy)
            )
        if self.prune_threshold is None:
            object.__setattr__(self, "prune_threshold", eps / 2)
        else:
            object.__setattr__(
                self, "prune_threshold", coerce_rational(self.prune_threshold)
            )
        if self.lp_accuracy is None:
            object.__setattr__(self, "lp_accuracy", self.stage_accuracy / 2)
        else:
            object.__setattr__(
                self, "lp_accuracy", coerce_rational(self.lp_accuracy)
            )
        if not 0 < self.lp_accuracy < self.stage_accuracy:
            raise ValidationError(
                f"lp_accuracy must be in (0, stage_accuracy), got {self.lp_accuracy}"
            )
        if not self.stage_accuracy < self.prune_threshold < eps:
            raise ValidationError(
                "need stage_accuracy < prune_threshold < eps, got "
                f"{self.stage_accuracy} / {self.prune_threshold} / {eps}"
            )

    @property
    def survivor_cap(self) -> int:
        return rat_ceil(rat(1) / (self.prune_threshold - self.stage_accuracy))


@dataclass(frozen=True)
class StageTrace:
    """What one stage did: prefix length, LP sensitivity, sample bill."""

    length: int
    sigma: Rational
    samples: int
    start_index: int
    candidates: int
    survivors: int


@dataclass(frozen=True)
class RecoveryResult:
    """Final survivors with their estimated masses, plus per-stage traces."""

    params: Params
    entries: tuple
    stages: tuple
    samples_consumed: int

    @property
    def support(self) -> list:
        return [a for a, _ in self.entries]

    def estimate(self, a: str) -> Rational:
        for s, e in self.entries:
            if s == a:
                return e
        raise KeyError(a)


@lru_cache(maxsize=None)
def _cached_inverse(n: int, mu, eps) -> LocalInverseCertificate:
    return solve_local_inverse(n, mu, eps)


def _stage_histograms(oracle, candidates, count: int, start: int) -> list:
    """Disagreement histograms for every candidate over one shared sample
    block, reading the oracle once per chunk rather than once per candidate."""
    ell = len(candidates[0])
    masks = [
        np.array([1 if c == "1" else 0 for c in a], dtype=np.uint8)
        for a in candidates
    ]
    counts = np.zeros((len(candidates), ell + 1), dtype=np.int64)
    done = 0
    while done < count:
        take = min(_CHUNK, count - done)
        values, revealed = oracle.block_arrays(start + done, take)
        v = values[:, :ell]
        r = revealed[:, :ell]
        for ci, mask in enumerate(masks):
            hits = (v != mask) & r
            counts[ci] += np.bincount(hits.sum(axis=1), minlength=ell + 1)
        done += take
    return [
        CountHistogram.from_counts([int(c) for c in row], count) for row in counts
    ]


def _check_oracle(oracle, params: Params) -> None:
    if oracle.n != params.n:
        raise ValidationError(
            f"oracle emits length-{oracle.n} samples but params.n={params.n}"
        )
    oracle_mu = getattr(oracle, "mu", None)
    if oracle_mu is not None and oracle_mu != params.mu:
        raise ValidationError(
            f"oracle was built with mu={oracle_mu} but params.mu={params.mu}"
        )


def recover_population(oracle, cfg: RecoveryConfig) -> RecoveryResult:
    """Recover all strings of mass >= prune_threshold + stage_accuracy.

    Stage ell extends every surviving prefix by one bit, solves the length-
    ell minimum-sensitivity inverse once, estimates each candidate's marginal
    mass from a shared sample block sized by the Hoeffding bound at the
    per-candidate failure budget delta/(n * candidates), and prunes below
    the threshold. With the default config, and probability >= 1-delta:
    every string of mass >= 3*eps/4 is output, output estimates are within
    eps/4 of true marginal mass, and survivors never exceed ceil(4/eps).

    With fresh_samples_per_stage=False every stage re-reads the stream from
    index 0, so the run consumes max-stage-bill samples instead of the sum;
    stages are then correlated but each stage's own guarantee is unchanged.
    """
    params = cfg.params
    _check_oracle(oracle, params)
    samp_eps = cfg.stage_accuracy - cfg.lp_accuracy
    tau = cfg.prune_threshold
    cap = cfg.survivor_cap

    survivors = [""]
    stages = []
    next_index = 0
    max_bill = 0
    final = []
    for ell in range(1, params.n + 1):
        candidates = [a + b for a in survivors for b in "01"]
        cert = _cached_inverse(ell, params.mu, cfg.lp_accuracy)
        delta_cell = params.delta / (params.n * len(candidates))
        m = compute_sample_count(ell, cert.sigma, samp_eps, delta_cell)
        start = next_index if cfg.fresh_samples_per_stage else 0
        hists = _stage_histograms(oracle, candidates, m, start)
        scored = [
            (a, histogram_dot(h, cert.v)) for a, h in zip(candidates, hists)
        ]
        kept = [(a, e) for a, e in scored if e >= tau]
        if len(kept) > cap:
            kept.sort(key=lambda t: (-t[1], t[0]))
            kept = kept[:cap]
        kept.sort(key=lambda t: t[0])
        stages.append(
            StageTrace(
                length=ell,
                sigma=cert.sigma,
                samples=m,
                start_index=start,
                candidates=len(candidates),
                survivors=len(kept),
            )
        )
        next_index = start + m
        max_bill = max(max_bill, m)
        survivors = [a for a, _ in kept]
        final = kept
        if not survivors:
            break
    total = next_index if cfg.fresh_samples_per_stage else max_bill
    return RecoveryResult(
        params=params,
        entries=tuple(final),
        stages=tuple(stages),
        samples_consumed=total,
    )


def recover_single(oracle, a: str, cfg: RecoveryConfig) -> MassEstimate:
    """One-shot estimate of the mass of a single full-length string, within
    eps with probability >= 1-delta, reading the stream from index 0."""
    params = cfg.params
    _check_oracle(oracle, params)
    validate_bitstring(a, params.n)
    lp_eps = params.eps / 2
    cert = _cached_inverse(params.n, params.mu, lp_eps)
    m = compute_sample_count(
        params.n, cert.sigma, params.eps - lp_eps, params.delta
    )
    hist = _stage_histograms(oracle, [a], m, 0)[0]
    return MassEstimate(
        target=a,
        value=histogram_dot(hist, cert.v),
        samples_used=m,
        eps_requested=params.eps,
    )

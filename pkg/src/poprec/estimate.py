"""Mass estimation from lossy samples.

For a candidate prefix a, the informative statistic of a sample is how many
revealed coordinates disagree with a: if the source string differs from a in
i prefix positions, the observed disagreement count is Binomial(i, mu) - the
channel count matrix applied to the population's disagreement profile.
Dotting the empirical count histogram with local-inverse weights v
(A v within eps of e0) therefore estimates the mass of a itself, to eps plus
a sampling term controlled by the Hoeffding bound below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .core import (
    CountHistogram,
    Rational,
    SparseDistribution,
    ValidationError,
    coerce_rational,
    rat,
    rat_ceil,
    validate_bitstring,
)
from .channel import ListOracle

__all__ = [
    "MassEstimate",
    "compute_sample_count",
    "estimate_mass",
    "expected_histogram",
    "histogram_dot",
    "masked_ones_histogram",
    "ones_histogram",
]

_CHUNK = 1 << 20


@dataclass(frozen=True)
class MassEstimate:
    """A single mass estimate. Values are exact rationals given the samples
    and may legitimately fall slightly outside [0, 1]; they are never
    clamped, because downstream pruning relies on symmetric additive error."""

    target: str
    value: Rational
    samples_used: int
    eps_requested: Rational | None = None


def masked_ones_histogram(oracle, a: str, count: int, start: int = 0) -> CountHistogram:
    """Empirical disagreement-count histogram over samples [start, start+count).

    Counts, per sample, the revealed positions among the first len(a)
    coordinates that differ from a. Streams fixed-size chunks, so memory
    stays bounded for any count.
    """
    validate_bitstring(a)
    ell = len(a)
    if ell < 1 or ell > oracle.n:
        raise ValidationError(
            f"prefix length must be in [1, {oracle.n}], got {ell}"
        )
    if count < 1:
        raise ValidationError("sample count must be positive")
    a_arr = np.array([1 if c == "1" else 0 for c in a], dtype=np.uint8)
    counts = np.zeros(ell + 1, dtype=np.int64)
    done = 0
    while done < count:
        take = min(_CHUNK, count - done)
        values, revealed = oracle.block_arrays(start + done, take)
        hits = (values[:, :ell] != a_arr) & revealed[:, :ell]
        counts += np.bincount(hits.sum(axis=1), minlength=ell + 1)
        done += take
    return CountHistogram.from_counts([int(c) for c in counts], count)


def ones_histogram(samples, a: str, coords: int) -> CountHistogram:
    """Histogram of revealed ones after masking with a, over the first
    `coords` coordinates: freq[j] = fraction of samples whose masked,
    revealed prefix had exactly j ones."""
    samples = list(samples)
    if not samples:
        raise ValidationError("empty sample list")
    validate_bitstring(a)
    if coords < 1 or coords > len(a):
        raise ValidationError(
            f"coords must be in [1, len(a)={len(a)}], got {coords}"
        )
    return masked_ones_histogram(ListOracle(samples), a[:coords], len(samples))


def histogram_dot(hist: CountHistogram, weights) -> Rational:
    """Exact dot product of inverse weights with histogram frequencies."""
    if len(weights) != len(hist.freq):
        raise ValidationError(
            f"{len(weights)} weights for {len(hist.freq)} histogram cells"
        )
    return sum((w * f for w, f in zip(weights, hist.freq)), rat(0))


def estimate_mass(
    samples, a: str, v, coords: int, *, eps=None
) -> MassEstimate:
    """Estimated mass of a (restricted to `coords` coordinates) from the
    masked ones-histogram dotted with local-inverse weights v."""
    if len(v) != coords + 1:
        raise ValidationError(
            f"weight vector has {len(v)} entries, expected coords+1 = {coords + 1}"
        )
    hist = ones_histogram(samples, a, coords)
    return MassEstimate(
        target=a,
        value=histogram_dot(hist, v),
        samples_used=hist.total_samples,
        eps_requested=None if eps is None else coerce_rational(eps),
    )


def expected_histogram(dist: SparseDistribution, a: str, mu) -> list:
    """Exact expectation of the empirical histogram under the channel."""
    mu = coerce_rational(mu)
    if not 0 < mu <= 1:
        raise ValidationError(f"mu must be in (0, 1], got {mu}")
    validate_bitstring(a)
    ell = len(a)
    if ell < 1 or ell > dist.n:
        raise ValidationError(f"prefix length must be in [1, {dist.n}], got {ell}")
    out = [rat(0)] * (ell + 1)
    for x, p in dist:
        i = sum(1 for t in range(ell) if x[t] != a[t])
        for j in range(i + 1):
            out[j] += p * math.comb(i, j) * mu**j * (1 - mu) ** (i - j)
    return out


def compute_sample_count(coords: int, sigma, eps, delta) -> int:
    """Samples guaranteeing estimate error <= eps w.p. >= 1-delta.

    With cells = coords+1 histogram cells and weights bounded by sigma, the
    estimate errs by at most sigma * cells * max-cell-deviation; Hoeffding
    plus a union bound over cells gives

        m = ceil( ln(2*cells/delta) * (cells*sigma/eps)^2 / 2 ).

    The log is taken as the upper end of an interval enclosure, so rounding
    can only increase m, never cheat it downward.
    """
    if coords < 0:
        raise ValidationError("coords must be nonnegative")
    sigma = coerce_rational(sigma)
    eps = coerce_rational(eps)
    delta = coerce_rational(delta)
    if not sigma > 0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    if not eps > 0:
        raise ValidationError(f"eps must be positive, got {eps}")
    if not 0 < delta < 1:
        raise ValidationError(f"delta must be in (0, 1), got {delta}")
    cells = coords + 1
    ratio = rat(2 * cells) / delta  # > 2, so the log is positive
    iv = mpmath.iv
    old_prec = iv.prec
    try:
        iv.prec = 128
        log_iv = iv.log(
            iv.mpf(int(ratio.numerator)) / iv.mpf(int(ratio.denominator))
        )
        _, hi_t = log_iv._mpi_
    finally:
        iv.prec = old_prec
    sign, man, exp, _ = hi_t
    man = int(man)
    log_hi = rat(man, 1 << -exp) if exp < 0 else rat(man * (1 << exp))
    if sign:
        log_hi = -log_hi
    m = log_hi * (rat(cells) * sigma / eps) ** 2 / 2
    return max(1, rat_ceil(m))

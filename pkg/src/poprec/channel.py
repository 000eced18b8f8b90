"""Random-access sampling from the bit-erasure channel.

A sample is drawn by picking a string from a rational-weighted distribution
and then independently revealing each coordinate with probability mu
(erased coordinates print as '?'). All randomness comes from a counter-based
SplitMix64 generator: sample i is a pure function of (seed, i), because each
index owns a private subsequence of the stream. Consequences:

* any batch partition - or per-sample scalar draws - produces the same bits;
* a run can be replayed, or a prefix of a stream re-read, in O(1) memory;
* every probability is hit exactly (integer rejection sampling, no floats).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from itertools import accumulate

import numpy as np

from .core import (
    OracleExhausted,
    PoprecError,
    SparseDistribution,
    ValidationError,
    coerce_rational,
    validate_bitstring,
    validate_distribution,
    validate_sample,
)

__all__ = [
    "GOLDEN",
    "ListOracle",
    "SampleOracle",
    "decode_sample",
    "encode_sample",
    "erase",
    "erase_block",
    "mix64",
    "stream_word",
]

GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_SPLIT_SALT = 0xD6E8FEB86659FD93  # domain tag: child seeds, not sample lanes
_MAX_ATTEMPTS = 1024  # acceptance > 1/2 per attempt; cap only guards bugs

_NP_GOLDEN = np.uint64(GOLDEN)
_NP_MUL1 = np.uint64(_MUL1)
_NP_MUL2 = np.uint64(_MUL2)
_NP_ONE = np.uint64(1)

# largest modulus handled by the single-word vectorized path
_VEC_LIMIT = 1 << 63


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a fixed 64-bit bijective scrambler."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MUL1) & _MASK
    z = ((z ^ (z >> 27)) * _MUL2) & _MASK
    return z ^ (z >> 31)


def stream_word(seed: int, k: int) -> int:
    """Word k of the SplitMix64 stream for `seed` (random access)."""
    return mix64((seed + (k + 1) * GOLDEN) & _MASK)


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _NP_MUL1
    z = (z ^ (z >> np.uint64(27))) * _NP_MUL2
    return z ^ (z >> np.uint64(31))


def _stream_words_np(seeds, ks):
    return _mix64_np(seeds + (ks + _NP_ONE) * _NP_GOLDEN)


class _Lane:
    """Sequential view of one substream: words are consumed in order."""

    __slots__ = ("seed", "cursor")

    def __init__(self, seed: int) -> None:
        self.seed = seed
        self.cursor = 0

    def word(self) -> int:
        w = stream_word(self.seed, self.cursor)
        self.cursor += 1
        return w

    def uniform_below(self, d: int) -> int:
        """Exact uniform draw from {0, ..., d-1} by top-bit rejection."""
        if d == 1:
            return 0
        k = (d - 1).bit_length()
        nwords = (k + 63) // 64
        shift = nwords * 64 - k
        for _ in range(_MAX_ATTEMPTS):
            acc = 0
            for _ in range(nwords):
                acc = (acc << 64) | self.word()
            u = acc >> shift
            if u < d:
                return u
        raise PoprecError("rejection sampling failed to terminate")


def _uniform_below_np(lane_seeds, cursors, d: int):
    """Vectorized `uniform_below` for 2 <= d <= 2**63.

    Consumes exactly one word per attempt per still-pending lane, matching
    the scalar path word for word. `cursors` is advanced in place.
    """
    k = (d - 1).bit_length()
    shift = np.uint64(64 - k)
    d64 = np.uint64(d)
    out = np.zeros(lane_seeds.shape, dtype=np.uint64)
    pending = np.arange(lane_seeds.shape[0])
    for _ in range(_MAX_ATTEMPTS):
        if pending.size == 0:
            return out
        w = _stream_words_np(lane_seeds[pending], cursors[pending])
        cursors[pending] += _NP_ONE
        u = w >> shift
        ok = u < d64
        out[pending[ok]] = u[ok]
        pending = pending[~ok]
    raise PoprecError("rejection sampling failed to terminate")


def encode_sample(bits, revealed) -> str:
    """Render (values, revealed-mask) as a {0,1,?} string."""
    return "".join(
        ("1" if b else "0") if r else "?" for b, r in zip(bits, revealed)
    )


def decode_sample(s: str):
    """Parse a {0,1,?} string into (values uint8, revealed bool) arrays.

    Erased positions decode to value 0, so the pair determines the string.
    """
    validate_sample(s)
    codes = np.frombuffer(s.encode("ascii"), dtype=np.uint8)
    revealed = codes != ord("?")
    values = (codes == ord("1")).astype(np.uint8)
    return values, revealed


def _check_mu_seed(mu, seed: int):
    mu = coerce_rational(mu)
    if not 0 < mu <= 1:
        raise ValidationError(f"mu must be in (0, 1], got {mu}")
    if not isinstance(seed, int) or not 0 <= seed < (1 << 64):
        raise ValidationError(f"seed must be a 64-bit integer, got {seed!r}")
    return mu


def erase_block(rows, mu, seed: int, start: int = 0) -> list:
    """Push explicit bitstrings through the erasure channel.

    Each coordinate of row i is kept with probability mu, independently,
    using the lane keyed by start+i; the same (seed, index) always erases
    the same positions, so any slice of rows can be reproduced in isolation.
    """
    mu = _check_mu_seed(mu, seed)
    rows = list(rows)
    if not rows:
        return []
    n = len(rows[0])
    for row in rows:
        validate_bitstring(row, n)
    if start < 0:
        raise ValidationError("row indices must be nonnegative")
    if start + len(rows) > (1 << 64):
        raise OracleExhausted("row index space is 64-bit")
    p, q = int(mu.numerator), int(mu.denominator)
    values = np.array(
        [[1 if c == "1" else 0 for c in row] for row in rows], dtype=np.uint8
    )
    if q == 1:
        return rows
    count = len(rows)
    revealed = np.empty((count, n), dtype=bool)
    if q <= _VEC_LIMIT:
        indices = np.arange(start, start + count, dtype=np.uint64)
        lanes = _stream_words_np(np.uint64(seed), indices)
        cursors = np.zeros(count, dtype=np.uint64)
        p64 = np.uint64(p)
        for j in range(n):
            u = _uniform_below_np(lanes, cursors, q)
            revealed[:, j] = u < p64
    else:
        for i in range(count):
            lane = _Lane(stream_word(seed, start + i))
            for j in range(n):
                revealed[i, j] = lane.uniform_below(q) < p
    return [encode_sample(v, r) for v, r in zip(values, revealed)]


def erase(row: str, mu, seed: int, index: int = 0) -> str:
    """Channel output for one bitstring; row `index` of the same stream."""
    return erase_block([row], mu, seed, start=index)[0]


class SampleOracle:
    """Deterministic, randomly accessible channel-sample stream.

    `block_arrays(start, count)` returns samples [start, start+count) as a
    (values, revealed) array pair; values are zero at erased positions.
    The same indices always return the same samples, so re-reading a prefix
    (instead of storing it) costs no memory and no statistical freshness.
    """

    def __init__(self, distribution: SparseDistribution, mu, seed: int) -> None:
        mu = coerce_rational(mu)
        if not 0 < mu <= 1:
            raise ValidationError(f"mu must be in (0, 1], got {mu}")
        if not isinstance(seed, int) or not 0 <= seed < (1 << 64):
            raise ValidationError(f"seed must be a 64-bit integer, got {seed!r}")
        n = distribution.n
        validate_distribution(distribution, n)
        self.distribution = distribution
        self.mu = mu
        self.seed = seed
        self.n = n
        self.limit = None  # generative: any index is available
        self.samples_drawn = 0  # cursor for the sequential draw interface
        den = 1
        for _, p in distribution:
            den = den * int(p.denominator) // math.gcd(den, int(p.denominator))
        weights = [
            int(p.numerator) * (den // int(p.denominator)) for _, p in distribution
        ]
        self._den = den
        self._cum = list(accumulate(weights))
        self._bits = np.array(
            [[1 if c == "1" else 0 for c in s] for s in distribution.support],
            dtype=np.uint8,
        )
        self._p = int(mu.numerator)
        self._q = int(mu.denominator)

    # -- scalar reference path ------------------------------------------------

    def _arrays_at(self, index: int):
        lane = _Lane(stream_word(self.seed, index))
        u = lane.uniform_below(self._den)
        row = bisect_right(self._cum, u)
        values = self._bits[row].copy()
        revealed = np.empty(self.n, dtype=bool)
        for j in range(self.n):
            revealed[j] = lane.uniform_below(self._q) < self._p
        values[~revealed] = 0
        return values, revealed

    # -- vectorized path (bit-identical to the scalar one) ---------------------

    def _arrays_vec(self, start: int, count: int):
        indices = np.arange(start, start + count, dtype=np.uint64)
        lanes = _stream_words_np(np.uint64(self.seed), indices)
        cursors = np.zeros(count, dtype=np.uint64)
        if self._den > 1:
            u = _uniform_below_np(lanes, cursors, self._den)
            rows = np.searchsorted(
                np.asarray(self._cum, dtype=np.uint64), u, side="right"
            )
        else:
            rows = np.zeros(count, dtype=np.intp)
        values = self._bits[rows]
        revealed = np.empty((count, self.n), dtype=bool)
        if self._q == 1:
            revealed[:] = True
        else:
            p64 = np.uint64(self._p)
            for j in range(self.n):
                u = _uniform_below_np(lanes, cursors, self._q)
                revealed[:, j] = u < p64
        values[~revealed] = 0
        return values, revealed

    # -- public API -------------------------------------------------------------

    def block_arrays(self, start: int, count: int):
        if start < 0 or count < 0:
            raise ValidationError("sample indices must be nonnegative")
        if start + count > (1 << 64):
            raise OracleExhausted("sample index space is 64-bit")
        if count == 0:
            return (
                np.zeros((0, self.n), dtype=np.uint8),
                np.zeros((0, self.n), dtype=bool),
            )
        if self._den <= _VEC_LIMIT and self._q <= _VEC_LIMIT:
            return self._arrays_vec(start, count)
        values = np.empty((count, self.n), dtype=np.uint8)
        revealed = np.empty((count, self.n), dtype=bool)
        for i in range(count):
            values[i], revealed[i] = self._arrays_at(start + i)
        return values, revealed

    def sample_at(self, index: int) -> str:
        if index < 0:
            raise ValidationError("sample indices must be nonnegative")
        return encode_sample(*self._arrays_at(index))

    def block(self, start: int, count: int) -> list:
        values, revealed = self.block_arrays(start, count)
        return [encode_sample(v, r) for v, r in zip(values, revealed)]

    def draw(self) -> str:
        """Next sample in sequence (sample index = samples_drawn)."""
        s = self.sample_at(self.samples_drawn)
        self.samples_drawn += 1
        return s

    def draw_batch(self, m: int) -> list:
        """m consecutive draws; identical to m calls of draw()."""
        if m < 0:
            raise ValidationError(f"batch size must be nonnegative, got {m}")
        out = self.block(self.samples_drawn, m)
        self.samples_drawn += m
        return out

    def split(self, key: int) -> "SampleOracle":
        """Independent child oracle over the same distribution.

        Children are keyed deterministically and draw from substreams
        disjoint from the parent's sample lanes (separate seed domain), so
        parallel workers can each own a child without coordination.
        """
        if not isinstance(key, int) or not 0 <= key < (1 << 64):
            raise ValidationError(f"split key must be a 64-bit integer, got {key!r}")
        child_seed = stream_word(self.seed ^ _SPLIT_SALT, key)
        return SampleOracle(self.distribution, self.mu, child_seed)


class ListOracle:
    """The same block interface over a fixed list of existing samples."""

    def __init__(self, samples, n: int | None = None) -> None:
        samples = list(samples)
        if not samples and n is None:
            raise ValidationError("an empty sample list needs an explicit n")
        self.n = len(samples[0]) if n is None else n
        for s in samples:
            validate_sample(s, self.n)
        self.limit = len(samples)
        if samples:
            codes = np.frombuffer(
                "".join(samples).encode("ascii"), dtype=np.uint8
            ).reshape(self.limit, self.n)
            self._values = (codes == ord("1")).astype(np.uint8)
            self._revealed = codes != ord("?")
        else:
            self._values = np.zeros((0, self.n), dtype=np.uint8)
            self._revealed = np.zeros((0, self.n), dtype=bool)

    def block_arrays(self, start: int, count: int):
        if start < 0 or count < 0:
            raise ValidationError("sample indices must be nonnegative")
        if start + count > self.limit:
            raise OracleExhausted(
                f"requested samples [{start}, {start + count}) "
                f"but only {self.limit} are available"
            )
        stop = start + count
        return self._values[start:stop].copy(), self._revealed[start:stop].copy()

    def block(self, start: int, count: int) -> list:
        values, revealed = self.block_arrays(start, count)
        return [encode_sample(v, r) for v, r in zip(values, revealed)]

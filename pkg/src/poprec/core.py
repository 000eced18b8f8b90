"""Domain types, exact rational helpers, and the on-disk file formats.

Probabilities, matrix entries, and solver data are exact rationals end to
end; floating point appears only in the numerical analysis lab and in
printed output. The rational backend is gmpy2.mpq when installed (much
faster simplex pivots) and fractions.Fraction otherwise; set the
environment variable POPREC_RATIONAL=fraction to force the stdlib backend.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Iterator, Sequence

# gmpy2.mpq or fractions.Fraction, chosen once at import time
Rational = Any

__all__ = [
    "CountHistogram",
    "OracleExhausted",
    "Params",
    "PoprecError",
    "Rational",
    "SparseDistribution",
    "ValidationError",
    "coerce_rational",
    "format_rational",
    "format_rational_pair",
    "load_distribution",
    "load_samples",
    "parse_rational",
    "rat",
    "rat_ceil",
    "rational_backend",
    "save_distribution",
    "save_samples",
    "validate_bitstring",
    "validate_distribution",
    "validate_sample",
    "xor_mask",
]


class PoprecError(Exception):
    """Base class for every error this package raises on purpose."""


class ValidationError(PoprecError, ValueError):
    """An input violates one of the documented invariants."""


class OracleExhausted(PoprecError, RuntimeError):
    """A finite sample source ran out before the requested count."""


if os.environ.get("POPREC_RATIONAL", "").lower() == "fraction":
    _backend = Fraction
    _backend_name = "fraction"
else:
    try:
        from gmpy2 import mpq as _backend

        _backend_name = "gmpy2"
    except ImportError:  # pragma: no cover - depends on environment
        _backend = Fraction
        _backend_name = "fraction"


def rational_backend() -> str:
    """Name of the active rational backend: 'gmpy2' or 'fraction'."""
    return _backend_name


def rat(num: int = 0, den: int = 1) -> Rational:
    """Exact rational num/den."""
    return _backend(num, den)


def parse_rational(text: str) -> Rational:
    """Parse 'p/q', decimal ('0.25'), or scientific ('3e-2') text exactly."""
    try:
        f = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational: {text!r}") from exc
    return rat(f.numerator, f.denominator)


def coerce_rational(value: Any) -> Rational:
    """Convert int/str/float/rational-like input to the exact backend type.

    Floats go through their shortest decimal repr, so 0.1 means 1/10.
    """
    if isinstance(value, bool):
        raise ValidationError(f"cannot interpret {value!r} as a rational")
    if isinstance(value, int):
        return rat(value)
    if isinstance(value, float):
        return parse_rational(repr(value))
    if isinstance(value, str):
        return parse_rational(value)
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if num is not None and den is not None:
        return rat(int(num), int(den))
    raise ValidationError(f"cannot interpret {value!r} as a rational")


def format_rational(x: Rational) -> str:
    """Render as 'p/q', or plain 'p' for integers."""
    num, den = int(x.numerator), int(x.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_rational_pair(x: Rational) -> str:
    """Render as 'p/q (decimal)' with a 12-digit decimal."""
    try:
        dec = f"{float(x):.12g}"
    except OverflowError:
        dec = "overflow"
    return f"{format_rational(x)} ({dec})"


def rat_ceil(x: Rational) -> int:
    """Exact ceiling of a rational."""
    num, den = int(x.numerator), int(x.denominator)
    return -((-num) // den)


# ---------------------------------------------------------------------------
# strings over {0,1} and {0,1,?}
# ---------------------------------------------------------------------------

_BITS = frozenset("01")
_SYMS = frozenset("01?")


def validate_bitstring(a: str, n: int | None = None) -> None:
    """Check a is a {0,1} string, optionally of length n."""
    if not isinstance(a, str) or not set(a) <= _BITS:
        raise ValidationError(f"not a bitstring: {a!r}")
    if n is not None and len(a) != n:
        raise ValidationError(f"expected length {n}, got {len(a)}: {a!r}")


def validate_sample(s: str, n: int | None = None) -> None:
    """Check s is a {0,1,?} string, optionally of length n."""
    if not isinstance(s, str) or not set(s) <= _SYMS:
        raise ValidationError(f"not a lossy sample: {s!r}")
    if n is not None and len(s) != n:
        raise ValidationError(f"expected length {n}, got {len(s)}: {s!r}")


def xor_mask(s: str, a: str) -> str:
    """XOR the revealed symbols of s with bitstring a; '?' stays '?'."""
    validate_sample(s)
    validate_bitstring(a)
    if len(s) != len(a):
        raise ValidationError(
            f"length mismatch: sample {len(s)}, mask {len(a)}"
        )
    return "".join(
        "?" if cs == "?" else ("1" if cs != ca else "0")
        for cs, ca in zip(s, a)
    )


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Params:
    """Problem parameters shared by the sampling and recovery pipeline.

    n: number of coordinates; mu: per-coordinate survival probability;
    eps: target accuracy; delta: failure probability; seed: stream seed.
    """

    n: int
    mu: Rational
    eps: Rational
    delta: Rational
    seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "mu", coerce_rational(self.mu))
        object.__setattr__(self, "eps", coerce_rational(self.eps))
        object.__setattr__(self, "delta", coerce_rational(self.delta))
        if not 0 < self.mu <= 1:
            raise ValidationError(f"mu must be in (0, 1], got {self.mu}")
        if not 0 < self.eps < 1:
            raise ValidationError(f"eps must be in (0, 1), got {self.eps}")
        if not 0 < self.delta < 1:
            raise ValidationError(f"delta must be in (0, 1), got {self.delta}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < (1 << 64):
            raise ValidationError(f"seed must be a 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True)
class SparseDistribution:
    """A finitely supported distribution over {0,1}^n with rational masses."""

    entries: tuple

    def __post_init__(self) -> None:
        index = {}
        for s, p in self.entries:
            index[s] = p
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[str, Any]], n: int | None = None
    ) -> "SparseDistribution":
        entries = tuple((s, coerce_rational(p)) for s, p in pairs)
        dist = cls(entries)
        validate_distribution(dist, n if n is not None else dist.n)
        return dist

    @property
    def n(self) -> int:
        if not self.entries:
            raise ValidationError("empty distribution has no length")
        return len(self.entries[0][0])

    @property
    def support(self) -> list[str]:
        return [s for s, _ in self.entries]

    def mass(self, a: str) -> Rational:
        return self._index.get(a, rat(0))

    def __iter__(self) -> Iterator[tuple[str, Rational]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def validate_distribution(dist: SparseDistribution, n: int) -> None:
    """Raise ValidationError on the first violated invariant."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    if not dist.entries:
        raise ValidationError("distribution has no entries")
    seen = set()
    for s, p in dist.entries:
        validate_bitstring(s, n)
        if s in seen:
            raise ValidationError(f"duplicate support string: {s}")
        seen.add(s)
        if not p > 0:
            raise ValidationError(f"probability of {s} must be positive, got {p}")
    total = sum((p for _, p in dist.entries), rat(0))
    if total != 1:
        raise ValidationError(f"probabilities sum to {total}, expected 1")


@dataclass(frozen=True)
class CountHistogram:
    """Empirical ones-count frequencies: freq[j] is the fraction of samples
    whose masked, revealed prefix had exactly j ones."""

    freq: tuple
    total_samples: int

    def __post_init__(self) -> None:
        if self.total_samples < 0:
            raise ValidationError("total_samples must be nonnegative")
        for f in self.freq:
            if f < 0:
                raise ValidationError("histogram frequencies must be nonnegative")
        if self.total_samples > 0:
            total = sum(self.freq, rat(0))
            if total != 1:
                raise ValidationError(f"frequencies sum to {total}, expected 1")

    @classmethod
    def from_counts(cls, counts: Sequence[int], total: int) -> "CountHistogram":
        if total <= 0:
            raise ValidationError("sample count must be positive")
        if sum(counts) != total:
            raise ValidationError("counts do not sum to the sample total")
        return cls(tuple(rat(int(c), total) for c in counts), total)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------
#
# Distribution file: one "<bitstring> <rational-or-decimal>" per line,
# '#' starts a comment. Sample file: one {0,1,?} string per line.


def _data_lines(path: Path) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def load_distribution(path: str | Path) -> SparseDistribution:
    """Read a distribution file and validate it."""
    path = Path(path)
    pairs = []
    for lineno, line in _data_lines(path):
        fields = line.split()
        if len(fields) != 2:
            raise ValidationError(
                f"{path}:{lineno}: expected '<bitstring> <probability>', got {line!r}"
            )
        pairs.append((fields[0], parse_rational(fields[1])))
    if not pairs:
        raise ValidationError(f"{path}: no distribution entries")
    return SparseDistribution.from_pairs(pairs)


def save_distribution(dist: SparseDistribution, path: str | Path) -> None:
    path = Path(path)
    lines = [f"{s} {format_rational(p)}" for s, p in dist]
    path.write_text("\n".join(lines) + "\n")


def load_samples(path: str | Path) -> list[str]:
    """Read a sample file; all lines must share one length and alphabet."""
    path = Path(path)
    samples = []
    n = None
    for lineno, line in _data_lines(path):
        try:
            validate_sample(line, n)
        except ValidationError as exc:
            raise ValidationError(f"{path}:{lineno}: {exc}") from None
        if n is None:
            n = len(line)
        samples.append(line)
    if not samples:
        raise ValidationError(f"{path}: no samples")
    return samples


def save_samples(samples: Iterable[str], path: str | Path) -> None:
    path = Path(path)
    path.write_text("\n".join(samples) + "\n")

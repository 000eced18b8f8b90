"""Exact dense matrices for the erasure channel.

The count matrix A maps ones-count statistics of the source to ones-count
statistics of the observed samples; V collects geometric columns at chosen
nodes, and B = A V has the closed form B[i][j] = (1 + mu*(alpha_j - 1))^i.
All entries are exact rationals.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .core import Rational, ValidationError, coerce_rational, rat

__all__ = [
    "RationalMatrix",
    "apply",
    "basis_vector",
    "binomial_row",
    "build_channel_matrix",
    "build_transformed",
    "build_vandermonde",
    "default_alphas",
    "geometric_vector",
    "inf_norm",
]


class RationalMatrix:
    """Dense row-major matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Rational]]):
        entries = [list(row) for row in entries]
        if not entries or not entries[0]:
            raise ValidationError("matrix must have at least one row and column")
        cols = len(entries[0])
        for row in entries:
            if len(row) != cols:
                raise ValidationError("ragged matrix rows")
        self.entries = entries
        self.rows = len(entries)
        self.cols = cols

    @classmethod
    def identity(cls, k: int) -> "RationalMatrix":
        return cls(
            [[rat(1) if i == j else rat(0) for j in range(k)] for i in range(k)]
        )

    def at(self, i: int, j: int) -> Rational:
        return self.entries[i][j]

    def row(self, i: int) -> list:
        return list(self.entries[i])

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def mul_vec(self, v: Sequence[Rational]) -> list:
        if len(v) != self.cols:
            raise ValidationError(
                f"dimension mismatch: {self.rows}x{self.cols} times length {len(v)}"
            )
        return [
            sum((row[j] * v[j] for j in range(self.cols)), rat(0))
            for row in self.entries
        ]

    def mul_mat(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValidationError(
                f"dimension mismatch: {self.rows}x{self.cols} times "
                f"{other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                row.append(
                    sum(
                        (self.entries[i][k] * other.entries[k][j]
                         for k in range(self.cols)),
                        rat(0),
                    )
                )
            out.append(row)
        return RationalMatrix(out)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def dump(self) -> str:
        """Space-separated p/q entries, one row per line."""
        from .core import format_rational

        return "\n".join(
            " ".join(format_rational(x) for x in row) for row in self.entries
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


@lru_cache(maxsize=None)
def _pascal_row(i: int) -> tuple:
    if i == 0:
        return (1,)
    prev = _pascal_row(i - 1)
    return tuple(
        (prev[j - 1] if j > 0 else 0) + (prev[j] if j < i else 0)
        for j in range(i + 1)
    )


def binomial_row(i: int) -> tuple:
    """Row i of Pascal's triangle as plain integers."""
    if i < 0:
        raise ValidationError("binomial row index must be nonnegative")
    return _pascal_row(i)


def build_channel_matrix(n: int, mu) -> RationalMatrix:
    """(n+1)x(n+1) matrix with A[i][j] = C(i,j) mu^j (1-mu)^(i-j).

    Row i gives the distribution of the number of surviving ones when a
    string with i ones passes the erasure channel. Lower triangular,
    row-stochastic, diagonal mu^i.
    """
    mu = coerce_rational(mu)
    if not 0 < mu <= 1:
        raise ValidationError(f"mu must be in (0, 1], got {mu}")
    if n < 0:
        raise ValidationError("n must be nonnegative")
    one_minus = 1 - mu
    mu_pow = [mu**j for j in range(n + 1)]
    om_pow = [one_minus**j for j in range(n + 1)]
    entries = []
    for i in range(n + 1):
        binom = binomial_row(i)
        row = [
            binom[j] * mu_pow[j] * om_pow[i - j] if j <= i else rat(0)
            for j in range(n + 1)
        ]
        entries.append(row)
    return RationalMatrix(entries)


def geometric_vector(alpha, n: int) -> list:
    """[1, alpha, alpha^2, ..., alpha^n]."""
    alpha = coerce_rational(alpha)
    out = [rat(1)]
    for _ in range(n):
        out.append(out[-1] * alpha)
    return out


def build_vandermonde(alphas: Sequence, rows: int | None = None) -> RationalMatrix:
    """Matrix whose column j is the geometric vector of alphas[j].

    Square with rows = len(alphas) by default; nodes must be distinct.
    """
    alphas = [coerce_rational(a) for a in alphas]
    if not alphas:
        raise ValidationError("need at least one node")
    if len(set(alphas)) != len(alphas):
        raise ValidationError("nodes must be distinct")
    if rows is None:
        rows = len(alphas)
    cols = [geometric_vector(a, rows - 1) for a in alphas]
    return RationalMatrix([[col[i] for col in cols] for i in range(rows)])


def build_transformed(n: int, mu, alphas: Sequence) -> RationalMatrix:
    """(n+1) x len(alphas) matrix with entries (1 + mu*(alpha_j - 1))^i.

    Equals build_channel_matrix(n, mu) times the Vandermonde of the same
    nodes when len(alphas) == n+1.
    """
    mu = coerce_rational(mu)
    if not 0 < mu <= 1:
        raise ValidationError(f"mu must be in (0, 1], got {mu}")
    alphas = [coerce_rational(a) for a in alphas]
    if not alphas:
        raise ValidationError("need at least one node")
    if len(set(alphas)) != len(alphas):
        raise ValidationError("nodes must be distinct")
    bases = [1 + mu * (a - 1) for a in alphas]
    cols = [geometric_vector(b, n) for b in bases]
    return RationalMatrix([[col[i] for col in cols] for i in range(n + 1)])


def default_alphas(n: int) -> list:
    """n+1 equispaced rational nodes in [-1, 1] (just 0 when n == 0)."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if n == 0:
        return [rat(0)]
    return [rat(-n + 2 * j, n) for j in range(n + 1)]


def apply(matrix: RationalMatrix, v: Sequence) -> list:
    """Exact matrix-vector product."""
    return matrix.mul_vec([coerce_rational(x) for x in v])


def basis_vector(k: int, size: int) -> list:
    if not 0 <= k < size:
        raise ValidationError("basis index out of range")
    return [rat(1) if i == k else rat(0) for i in range(size)]


def inf_norm(v: Sequence) -> Rational:
    """Max absolute entry (0 for the empty vector)."""
    out = rat(0)
    for x in v:
        ax = abs(coerce_rational(x))
        if ax > out:
            out = ax
    return out

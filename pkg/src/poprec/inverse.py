"""Minimum-sensitivity local inverses of the channel count matrix.

The exact inverse row A^{-1} e0 is geometric with ratio -(1-mu)/mu, so its
largest coordinate explodes once fewer than half the coordinates survive.
Allowing an eps residual and minimizing the max coordinate instead turns
the inversion into a linear program whose optimum grows only like
(1/eps)^((1/mu) ln(2/mu)) - polynomial in 1/eps for every fixed mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .core import (
    Rational,
    ValidationError,
    coerce_rational,
    rat,
)
from .lp import LinearProgram, LpInternalError, LpSolution, solve
from .matrices import (
    RationalMatrix,
    basis_vector,
    build_channel_matrix,
    geometric_vector,
    inf_norm,
)

__all__ = [
    "LocalInverseCertificate",
    "local_inverse_program",
    "natural_estimator",
    "sensitivity_bound_enclosure",
    "sensitivity_bound_holds",
    "sensitivity_report",
    "solve_local_inverse",
]


@dataclass(frozen=True)
class LocalInverseCertificate:
    """An eps-local inverse: weights v with ||A v - e0||_inf <= eps,
    together with its sensitivity sigma = max |v_i| (the LP optimum)."""

    n: int
    mu: Rational
    eps: Rational
    v: tuple
    sigma: Rational
    residual: Rational
    pivots: int = 0


def natural_estimator(n: int, mu) -> list:
    """The exact inverse weights [1, alpha, ..., alpha^n], alpha = -(1-mu)/mu."""
    mu = coerce_rational(mu)
    if not 0 < mu <= 1:
        raise ValidationError(f"mu must be in (0, 1], got {mu}")
    if n < 0:
        raise ValidationError("n must be nonnegative")
    alpha = -(1 - mu) / mu
    return geometric_vector(alpha, n)


def local_inverse_program(n: int, mu, eps) -> LinearProgram:
    """LP over (v, sigma): min sigma s.t. |A v - e0| <= eps, |v_i| <= sigma.

    v is free; sigma is the last variable and nonnegative.
    """
    mu = coerce_rational(mu)
    eps = coerce_rational(eps)
    if not 0 < mu <= 1:
        raise ValidationError(f"mu must be in (0, 1], got {mu}")
    if eps < 0:
        raise ValidationError(f"eps must be nonnegative, got {eps}")
    if n < 0:
        raise ValidationError("n must be nonnegative")
    k = n + 1
    A = build_channel_matrix(n, mu)
    e0 = basis_vector(0, k)
    zero, one = rat(0), rat(1)
    rows, rhs = [], []
    for i in range(k):  # A v >= e0 - eps
        rows.append(A.row(i) + [zero])
        rhs.append(e0[i] - eps)
    for i in range(k):  # -A v >= -e0 - eps
        rows.append([-x for x in A.row(i)] + [zero])
        rhs.append(-e0[i] - eps)
    for i in range(k):  # v_i + sigma >= 0
        row = [zero] * (k + 1)
        row[i] = one
        row[k] = one
        rows.append(row)
        rhs.append(zero)
    for i in range(k):  # -v_i + sigma >= 0
        row = [zero] * (k + 1)
        row[i] = -one
        row[k] = one
        rows.append(row)
        rhs.append(zero)
    objective = [zero] * k + [one]
    return LinearProgram(
        objective=tuple(objective),
        constraints=RationalMatrix(rows),
        rhs=tuple(rhs),
        free_vars=frozenset(range(k)),
    )


def solve_local_inverse(n: int, mu, eps) -> LocalInverseCertificate:
    """Minimize sensitivity subject to an eps-accurate inversion of e0."""
    mu = coerce_rational(mu)
    eps = coerce_rational(eps)
    lp = local_inverse_program(n, mu, eps)
    sol = solve(lp)
    if sol.status != "optimal":
        raise LpInternalError(
            f"local inverse LP came back {sol.status} for n={n}, mu={mu}, eps={eps}"
        )
    v = list(sol.primal[: n + 1])
    sigma = sol.objective_value
    if sigma != inf_norm(v):
        raise LpInternalError("optimal sigma is not the max coordinate")
    A = build_channel_matrix(n, mu)
    Av = A.mul_vec(v)
    e0 = basis_vector(0, n + 1)
    residual = inf_norm([a - b for a, b in zip(Av, e0)])
    if residual > eps:
        raise LpInternalError("optimal point violates the residual bound")
    return LocalInverseCertificate(
        n=n,
        mu=mu,
        eps=eps,
        v=tuple(v),
        sigma=sigma,
        residual=residual,
        pivots=sol.pivots,
    )


def _mpf_endpoint_to_rat(t) -> Rational:
    sign, man, exp, _ = t
    man = int(man)
    if man == 0:
        return rat(0)
    val = rat(man, 1 << -exp) if exp < 0 else rat(man * (1 << exp))
    return -val if sign else val


def sensitivity_bound_enclosure(mu, eps, prec: int = 256) -> tuple:
    """Rigorous rational enclosure (lo, hi) of (1/eps)^((1/mu) ln(2/mu))."""
    mu = coerce_rational(mu)
    eps = coerce_rational(eps)
    if not 0 < mu <= 1:
        raise ValidationError(f"mu must be in (0, 1], got {mu}")
    if not eps > 0:
        raise ValidationError(f"eps must be positive, got {eps}")
    iv = mpmath.iv
    old_prec = iv.prec
    try:
        iv.prec = prec
        mu_iv = iv.mpf(int(mu.numerator)) / iv.mpf(int(mu.denominator))
        inv_eps = iv.mpf(int(eps.denominator)) / iv.mpf(int(eps.numerator))
        exponent = (1 / mu_iv) * iv.log(2 / mu_iv)
        bound = iv.exp(exponent * iv.log(inv_eps))
        lo_t, hi_t = bound._mpi_
    finally:
        iv.prec = old_prec
    return _mpf_endpoint_to_rat(lo_t), _mpf_endpoint_to_rat(hi_t)


def sensitivity_bound_holds(cert: LocalInverseCertificate) -> bool:
    """Exact, conservative check of sigma <= (1/eps)^((1/mu) ln(2/mu)).

    The transcendental bound is enclosed at 256-bit precision and the
    comparison uses its lower endpoint, so rounding error can only produce
    a spurious failure, never a spurious pass.
    """
    lo, _ = sensitivity_bound_enclosure(cert.mu, cert.eps)
    return cert.sigma <= lo


def _log10_rat(x: Rational) -> float:
    num, den = int(x.numerator), int(x.denominator)
    if num <= 0:
        raise ValidationError("log of a nonpositive rational")
    return (
        math.log10(num >> max(0, num.bit_length() - 900))
        + max(0, num.bit_length() - 900) * math.log10(2)
        - math.log10(den >> max(0, den.bit_length() - 900))
        - max(0, den.bit_length() - 900) * math.log10(2)
    )


def sensitivity_report(cert: LocalInverseCertificate) -> dict:
    """Bound comparison with a log10 margin (positive means sigma is below)."""
    lo, hi = sensitivity_bound_enclosure(cert.mu, cert.eps)
    holds = cert.sigma <= lo
    return {
        "holds": holds,
        "sigma_log10": _log10_rat(cert.sigma) if cert.sigma > 0 else float("-inf"),
        "bound_log10": _log10_rat(lo),
        "margin_log10": (
            _log10_rat(lo) - _log10_rat(cert.sigma)
            if cert.sigma > 0
            else float("inf")
        ),
    }

"""Numerical lab for the duality and complex-analysis side of the inverse LP.

The minimum-sensitivity LP has an equivalent polynomial formulation: a dual
solution is a real polynomial p whose translate q(x) = p(1 + mu(x-1)) has
small coefficient l1-norm while p(0) is large. Everything here exists to
state and check that chain concretely:

* transformed primal LP over a Vandermonde basis (same optimum, any basis);
* mechanical LP dualization plus reconstruction of (p, q) from multipliers;
* coefficient norms and restricted sup-norms on circles (grid + refinement,
  with a rigorous Lipschitz slack bound);
* the family (1/C)(1 - x^2)^(n/2) witnessing that without the accuracy term
  the inversion blows up exponentially;
* disk automorphisms, the three-circle log-convexity inequality, the
  disk-growth lower bound, and the relaxation-gap bound they imply.

Polynomials are plain coefficient sequences, constant term first. Exact
checks want rational coefficients; sup-norm checks run in double precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .core import Rational, ValidationError, coerce_rational, rat
from .lp import LinearProgram, LpInternalError, solve
from .matrices import (
    RationalMatrix,
    basis_vector,
    build_transformed,
    build_vandermonde,
    default_alphas,
)

__all__ = [
    "DiskSpec",
    "DualWitness",
    "SupEstimate",
    "bad_polynomial",
    "check_disk_growth",
    "check_dual_witness",
    "coeff_l1",
    "dual_of",
    "dual_optimum",
    "dual_witness",
    "eval_poly",
    "mobius",
    "relaxation_gap_check",
    "sup_on_circle",
    "three_circle_check",
    "transformed_program",
    "translate_poly",
]


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


def eval_poly(coeffs, x):
    """Horner evaluation; exact when coefficients and x are exact."""
    acc = 0 * x
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def coeff_l1(coeffs):
    """Sum of absolute coefficient values (exact for rationals)."""
    return sum(abs(c) for c in coeffs)


def _all_exact(coeffs) -> bool:
    return all(hasattr(c, "numerator") for c in coeffs)


def translate_poly(coeffs, mu) -> list:
    """Coefficients of q(x) = p(1 + mu(x-1)), by binomial expansion.

    Exact when the coefficients are rational; follows the input arithmetic
    otherwise. This is the transpose action of the channel count matrix on
    coefficient vectors: q_j = sum_i p_i C(i,j) mu^j (1-mu)^(i-j).
    """
    coeffs = list(coeffs)
    mu = coerce_rational(mu) if _all_exact(coeffs) else float(mu)
    deg = len(coeffs) - 1
    if deg < 0:
        return []
    out = [0 * mu] * (deg + 1)
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        for j in range(i + 1):
            out[j] += c * math.comb(i, j) * mu**j * (1 - mu) ** (i - j)
    return out


def bad_polynomial(n: int, mu) -> list:
    """(1/C)(1 - x^2)^(n/2), C = (4 mu (1-mu))^(n/2): unit sup on the real
    segment [1-2mu, 1] (attained at its left end) yet exponentially large
    at 0 - the witness that exact inversion has exploding sensitivity."""
    if n < 2 or n % 2:
        raise ValidationError(f"n must be a positive even integer, got {n}")
    mu = coerce_rational(mu)
    if not 0 < mu < 1:
        raise ValidationError(f"mu must be in (0, 1), got {mu}")
    half = n // 2
    c = (4 * mu * (1 - mu)) ** half
    coeffs = [rat(0)] * (n + 1)
    for k in range(half + 1):
        coeffs[2 * k] = rat((-1) ** k * math.comb(half, k)) / c
    return coeffs


# ---------------------------------------------------------------------------
# transformed LP and mechanical duals
# ---------------------------------------------------------------------------


def transformed_program(n: int, mu, eps, alphas) -> LinearProgram:
    """Basis-changed sensitivity LP over (lambda, sigma): minimize sigma
    subject to |B lambda - e0| <= eps and |(V lambda)_i| <= sigma, where
    column j of V is the geometric vector of alphas[j] and B maps it through
    the channel (closed form, base 1 + mu(alphas[j]-1))."""
    mu = coerce_rational(mu)
    eps = coerce_rational(eps)
    if eps < 0:
        raise ValidationError(f"eps must be nonnegative, got {eps}")
    alphas = [coerce_rational(a) for a in alphas]
    k = len(alphas)
    rows_n = n + 1
    B = build_transformed(n, mu, alphas)
    V = build_vandermonde(alphas, rows=rows_n)
    e0 = basis_vector(0, rows_n)
    zero, one = rat(0), rat(1)
    rows, rhs = [], []
    for i in range(rows_n):  # B lambda >= e0 - eps
        rows.append(B.row(i) + [zero])
        rhs.append(e0[i] - eps)
    for i in range(rows_n):  # -B lambda >= -e0 - eps
        rows.append([-x for x in B.row(i)] + [zero])
        rhs.append(-e0[i] - eps)
    for i in range(rows_n):  # V lambda + sigma >= 0
        rows.append(V.row(i) + [one])
        rhs.append(zero)
    for i in range(rows_n):  # -V lambda + sigma >= 0
        rows.append([-x for x in V.row(i)] + [one])
        rhs.append(zero)
    objective = [zero] * k + [one]
    return LinearProgram(
        objective=tuple(objective),
        constraints=RationalMatrix(rows),
        rhs=tuple(rhs),
        free_vars=frozenset(range(k)),
    )


def dual_optimum(n: int, mu, eps, alphas=None) -> Rational:
    """Optimum of the transformed LP; equals the plain sensitivity optimum
    whenever the alphas span the full degree-n space (basis invariance)."""
    if alphas is None:
        alphas = default_alphas(n)
    sol = solve(transformed_program(n, mu, eps, alphas))
    if sol.status != "optimal":
        raise LpInternalError(f"transformed LP came back {sol.status}")
    return sol.objective_value


def dual_of(lp: LinearProgram) -> LinearProgram:
    """Mechanical dual, re-expressed in the same min-form.

    Primal min c.x, G x >= h, x_F free, rest >= 0 has dual
    max h.y, y >= 0, (G^T y)_F = c_F, (G^T y)_notF <= c_N; we return it as
    min (-h).y, so the primal optimum equals minus the returned optimum.
    """
    n = lp.constraints.cols
    gt = lp.constraints.transpose()
    rows, rhs = [], []
    for j in range(n):
        col = gt.row(j)
        if j in lp.free_vars:
            rows.append(list(col))
            rhs.append(lp.objective[j])
            rows.append([-x for x in col])
            rhs.append(-lp.objective[j])
        else:
            rows.append([-x for x in col])
            rhs.append(-lp.objective[j])
    objective = [-h for h in lp.rhs]
    return LinearProgram(
        objective=tuple(objective),
        constraints=RationalMatrix(rows),
        rhs=tuple(rhs),
        free_vars=frozenset(),
    )


@dataclass(frozen=True)
class DualWitness:
    """Optimal multipliers of the sensitivity LP read back as polynomials.

    p collects the residual-constraint multipliers, q the sensitivity-
    constraint ones; optimality forces q to be exactly the translate of p,
    coeff_l1(q) <= 1, and sigma = p(0) - eps * coeff_l1(p).
    """

    n: int
    mu: Rational
    eps: Rational
    sigma: Rational
    p: tuple
    q: tuple


def dual_witness(n: int, mu, eps) -> DualWitness:
    """Solve the sensitivity LP and reconstruct its dual polynomial pair."""
    from .inverse import local_inverse_program

    mu = coerce_rational(mu)
    eps = coerce_rational(eps)
    lp = local_inverse_program(n, mu, eps)
    sol = solve(lp)
    if sol.status != "optimal":
        raise LpInternalError(f"sensitivity LP came back {sol.status}")
    k = n + 1
    y = sol.dual
    y1, y2, y3, y4 = (y[i * k : (i + 1) * k] for i in range(4))
    p = tuple(a - b for a, b in zip(y1, y2))
    q = tuple(b - a for a, b in zip(y3, y4))
    return DualWitness(n=n, mu=mu, eps=eps, sigma=sol.objective_value, p=p, q=q)


def check_dual_witness(w: DualWitness) -> dict:
    """Exact verification of the polynomial identities behind the witness."""
    translate_matches = translate_poly(w.p, w.mu) == list(w.q)
    objective_matches = w.p[0] - w.eps * coeff_l1(w.p) == w.sigma
    translate_bounded = coeff_l1(w.q) <= 1
    return {
        "translate_matches": translate_matches,
        "objective_matches": objective_matches,
        "translate_l1_bounded": translate_bounded,
        "ok": translate_matches and objective_matches and translate_bounded,
    }


# ---------------------------------------------------------------------------
# circles, sup-norms, and the growth/convexity checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiskSpec:
    """Closed disk |z - center| <= radius."""

    center: complex
    radius: float

    def __post_init__(self) -> None:
        c = complex(self.center)
        object.__setattr__(self, "center", c)
        r = float(self.radius)
        object.__setattr__(self, "radius", r)
        if not (math.isfinite(r) and r > 0 and math.isfinite(abs(c))):
            raise ValidationError(f"bad disk: center {c}, radius {r}")

    @property
    def reach(self) -> float:
        """Largest |z| on the disk."""
        return abs(self.center) + self.radius


@dataclass(frozen=True)
class SupEstimate:
    """Grid estimate of a circle sup: refined max, plus a rigorous
    upper bound grid_max + slack from a Lipschitz argument."""

    value: float
    grid_max: float
    slack: float
    points: int

    @property
    def upper(self) -> float:
        return self.grid_max + self.slack

    def __float__(self) -> float:
        return self.value


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo: float, hi: float, iters: int = 70) -> float:
    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = f(x1)
    return max(f1, f2)


def sup_on_circle(
    coeffs,
    disk: DiskSpec,
    grid_points: int = 4096,
    *,
    rel_tol: float = 1e-6,
    max_grid: int = 1 << 17,
    refine: bool = True,
) -> SupEstimate:
    """Maximum of |p| over the circle bounding `disk` (= the disk sup, by
    the maximum principle).

    Evaluates on an equispaced grid, doubling it until the rigorous slack
    bound lip * (arc step / 2) drops below rel_tol of the running max or the
    grid cap is reached, then sharpens the leading local maxima by golden-
    section search. `value` is the sharpened estimate (a lower bound up to
    float rounding); `grid_max + slack` is a rigorous upper bound.
    """
    if grid_points < 64:
        raise ValidationError(f"grid_points must be >= 64, got {grid_points}")
    cf = np.array([float(c) for c in coeffs], dtype=float)
    if cf.size == 0:
        cf = np.zeros(1)
    center = complex(disk.center)
    radius = float(disk.radius)
    reach = disk.reach
    lip = sum(
        j * abs(c) * reach ** (j - 1) for j, c in enumerate(cf) if j >= 1
    )
    g = grid_points
    while True:
        theta = np.linspace(0.0, 2.0 * math.pi, g, endpoint=False)
        z = center + radius * np.exp(1j * theta)
        vals = np.abs(npoly.polyval(z, cf))
        grid_max = float(vals.max())
        slack = lip * (math.pi * radius / g)
        if slack <= rel_tol * max(grid_max, 1e-300) or g >= max_grid:
            break
        g *= 2
    value = grid_max
    if refine and lip > 0 and g >= 3:
        step = 2.0 * math.pi / g

        def modulus(t: float) -> float:
            return abs(eval_poly(cf, center + radius * cmath.exp(1j * t)))

        prev = np.roll(vals, 1)
        nxt = np.roll(vals, -1)
        local = np.nonzero((vals >= prev) & (vals >= nxt))[0]
        keep = local[vals[local] >= grid_max - 2.0 * slack]
        if keep.size > 16:
            keep = keep[np.argsort(vals[keep])][-16:]
        for i in keep:
            t = theta[int(i)]
            value = max(value, _golden_max(modulus, t - step, t + step))
    return SupEstimate(value=value, grid_max=grid_max, slack=slack, points=g)


def mobius(beta: complex, x: complex) -> complex:
    """The disk automorphism (beta + x) / (1 + conj(beta) x); |beta| < 1."""
    beta = complex(beta)
    if not abs(beta) < 1:
        raise ValidationError(f"|beta| must be < 1, got {abs(beta)}")
    x = complex(x)
    return (beta + x) / (1 + beta.conjugate() * x)


def three_circle_check(
    coeffs, a: float, b: float, c: float, grid_points: int = 4096, *,
    tolerance: float = 1e-6,
) -> dict:
    """Log-convexity of circle sups M_r (centered at 0) in log r:

        log(c/a) log M_b <= log(c/b) log M_a + log(b/a) log M_c

    for 0 < a <= b <= c, checked within `tolerance` (scaled by magnitude).
    """
    a, b, c = float(a), float(b), float(c)
    if not 0 < a <= b <= c:
        raise ValidationError(f"need 0 < a <= b <= c, got {a}, {b}, {c}")
    sups = [
        sup_on_circle(coeffs, DiskSpec(0.0, r), grid_points) for r in (a, b, c)
    ]
    ma, mb, mc = (s.value for s in sups)
    if min(ma, mb, mc) <= 0.0:
        return {
            "holds": True,
            "degenerate": True,
            "sups": (ma, mb, mc),
            "lhs": None,
            "rhs": None,
            "margin": None,
        }
    lhs = math.log(c / a) * math.log(mb)
    rhs = math.log(c / b) * math.log(ma) + math.log(b / a) * math.log(mc)
    tol = tolerance * max(1.0, abs(lhs), abs(rhs))
    return {
        "holds": lhs <= rhs + tol,
        "degenerate": False,
        "sups": (ma, mb, mc),
        "lhs": lhs,
        "rhs": rhs,
        "margin": rhs - lhs,
    }


def check_disk_growth(
    coeffs, disk: DiskSpec, grid_points: int = 4096, *,
    tolerance: float = 1e-6,
) -> dict:
    """Growth lower bound from a subdisk to the unit circle, scale-free form.

    For a disk D of radius rho centered at beta with |beta| + rho <= 1, let
    S be the sup of |p| over D and d = (1 - |beta|) / ln(2/rho). Whenever
    |p(0)| > S, the sup over the unit circle must be at least
    S * (|p(0)|/S)^(1+d). (Normalizing p by S gives the unit-sup special
    case, so the check is independent of any scaling convention.)
    """
    beta = complex(disk.center)
    rho = float(disk.radius)
    if abs(beta) + rho > 1 + 1e-12:
        raise ValidationError(
            f"disk must sit inside the unit disk: |beta|+rho = {abs(beta) + rho}"
        )
    inner = sup_on_circle(coeffs, disk, grid_points)
    p0 = abs(complex(eval_poly([float(x) for x in coeffs], 0.0)))
    if inner.value <= 0.0 or p0 <= inner.value:
        return {
            "applicable": False,
            "holds": None,
            "inner_sup": inner.value,
            "center_value": p0,
            "exponent": None,
            "bound": None,
            "outer_sup": None,
            "margin": None,
        }
    d = (1.0 - abs(beta)) / math.log(2.0 / rho)
    bound = inner.value * (p0 / inner.value) ** (1.0 + d)
    outer = sup_on_circle(coeffs, DiskSpec(0.0, 1.0), grid_points)
    holds = outer.value >= bound * (1.0 - tolerance)
    return {
        "applicable": True,
        "holds": holds,
        "inner_sup": inner.value,
        "center_value": p0,
        "exponent": d,
        "bound": bound,
        "outer_sup": outer.value,
        "margin": outer.value - bound,
    }


def relaxation_gap_check(
    coeffs, mu, eps, grid_points: int = 4096, *, tolerance: float = 1e-6
) -> dict:
    """Bound on the sup-norm relaxation of the dual objective.

    After renormalizing p to unit sup over the disk of radius mu centered at
    1-mu, the quantity p(0) - eps * sup_{unit disk} |p| cannot exceed
    (1/eps)^(1/d) with d = mu / ln(2/mu); this is the growth bound traded
    against the eps term, and is exactly why the sensitivity optimum stays
    polynomial in 1/eps.
    """
    mu_f = float(coerce_rational(mu))
    eps_f = float(coerce_rational(eps))
    if not 0 < mu_f < 1:
        raise ValidationError(f"mu must be in (0, 1), got {mu_f}")
    if not 0 < eps_f < 1:
        raise ValidationError(f"eps must be in (0, 1), got {eps_f}")
    disk = DiskSpec(1.0 - mu_f, mu_f)
    inner = sup_on_circle(coeffs, disk, grid_points)
    if inner.value <= 0.0:
        return {
            "applicable": False,
            "holds": True,
            "inner_sup": inner.value,
            "objective": 0.0,
            "bound": None,
            "margin": None,
        }
    p0 = float(eval_poly([float(x) for x in coeffs], 0.0))
    outer = sup_on_circle(coeffs, DiskSpec(0.0, 1.0), grid_points)
    objective = (p0 - eps_f * outer.value) / inner.value
    d = mu_f / math.log(2.0 / mu_f)
    bound = (1.0 / eps_f) ** (1.0 / d)
    tol = tolerance * max(1.0, bound)
    return {
        "applicable": True,
        "holds": objective <= bound + tol,
        "inner_sup": inner.value,
        "objective": objective,
        "bound": bound,
        "margin": bound - objective,
    }

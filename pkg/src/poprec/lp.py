"""Two-phase primal simplex over exact rationals with Bland's rule.

Solves min c.x subject to G x >= h, where variables listed in free_vars
range over all rationals and the rest are nonnegative. Free variables are
split into positive/negative parts, each constraint gets a surplus
variable, and phase 1 drives explicit artificial variables to zero. Bland's
rule (smallest eligible index enters, smallest-index basic variable leaves
on ratio ties) guarantees termination without cycling.

Every optimal solve returns both a primal vector and a dual vector whose
objectives agree exactly; that equality is asserted before returning, and
check_certificate re-verifies feasibility of both sides independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import PoprecError, Rational, ValidationError, rat
from .matrices import RationalMatrix

__all__ = [
    "LinearProgram",
    "LpInternalError",
    "LpSolution",
    "certificate_violations",
    "check_certificate",
    "solve",
]

_MAX_PIVOTS = 200_000


class LpInternalError(PoprecError, RuntimeError):
    """The solver reached a state that should be impossible."""


@dataclass(frozen=True)
class LinearProgram:
    """min objective . x  subject to  constraints x >= rhs.

    Variables in free_vars are sign-unrestricted; all others are >= 0.
    """

    objective: tuple
    constraints: RationalMatrix
    rhs: tuple
    free_vars: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "objective", tuple(self.objective))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        object.__setattr__(self, "free_vars", frozenset(self.free_vars))
        G = self.constraints
        if not isinstance(G, RationalMatrix):
            raise ValidationError("constraints must be a RationalMatrix")
        if G.cols != len(self.objective):
            raise ValidationError(
                f"objective length {len(self.objective)} does not match "
                f"{G.cols} columns"
            )
        if G.rows != len(self.rhs):
            raise ValidationError(
                f"rhs length {len(self.rhs)} does not match {G.rows} rows"
            )
        for i in range(G.rows):
            if all(x == 0 for x in G.entries[i]):
                raise ValidationError(f"constraint row {i} is identically zero")
        for j in self.free_vars:
            if not 0 <= j < G.cols:
                raise ValidationError(f"free variable index {j} out of range")


@dataclass(frozen=True)
class LpSolution:
    """Solver outcome. primal/dual/objective_value are set when optimal."""

    status: str  # "optimal" | "infeasible" | "unbounded"
    primal: tuple | None = None
    dual: tuple | None = None
    objective_value: Rational | None = None
    pivots: int = 0


def _pivot(tableau, cost_rows, basis, r, col):
    piv = tableau[r][col]
    if piv == 0:
        raise LpInternalError("zero pivot")
    row_r = tableau[r]
    if piv != 1:
        inv = 1 / piv
        row_r = [x * inv for x in row_r]
        tableau[r] = row_r
    for i, row in enumerate(tableau):
        if i == r:
            continue
        f = row[col]
        if f != 0:
            tableau[i] = [a - f * b for a, b in zip(row, row_r)]
    for cr in cost_rows:
        f = cr[col]
        if f != 0:
            cr[:] = [a - f * b for a, b in zip(cr, row_r)]
    basis[r] = col


def _run_phase(tableau, cost, other_cost, basis, eligible, pivots):
    """Bland iterations until no eligible column prices negative.

    Returns (pivots, entering_col_or_None); entering is not None only when
    the phase detected an unbounded direction.
    """
    width = len(tableau[0]) - 1
    while True:
        enter = None
        for j in range(width):
            if eligible(j) and cost[j] < 0:
                enter = j
                break
        if enter is None:
            return pivots, None
        leave = None
        best_ratio = None
        for i, row in enumerate(tableau):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            return pivots, enter
        _pivot(tableau, [cost, other_cost], basis, leave, enter)
        pivots += 1
        if pivots > _MAX_PIVOTS:
            raise LpInternalError("pivot limit exceeded")


def solve(lp: LinearProgram) -> LpSolution:
    """Solve to optimality, infeasibility, or unboundedness.

    On "optimal" the returned primal and dual are exact certificates:
    G x >= h, sign constraints hold, the dual is feasible for the
    conjugate program, and c.x == h.y exactly.
    """
    zero, one = rat(0), rat(1)
    G, h, c = lp.constraints, lp.rhs, lp.objective
    m, nv = G.rows, G.cols

    # column layout: structural (free vars split) | surplus | artificial
    colmap = []
    ncols = 0
    for j in range(nv):
        if j in lp.free_vars:
            colmap.append((ncols, ncols + 1))
            ncols += 2
        else:
            colmap.append((ncols, None))
            ncols += 1
    surplus0 = ncols
    art0 = surplus0 + m
    total = art0 + m

    tableau = []
    for i in range(m):
        flip = h[i] < 0
        row = [zero] * (total + 1)
        for j in range(nv):
            g = -G.entries[i][j] if flip else G.entries[i][j]
            if g == 0:
                continue
            pos, neg = colmap[j]
            row[pos] = g
            if neg is not None:
                row[neg] = -g
        row[surplus0 + i] = one if flip else -one
        row[art0 + i] = one
        row[total] = -h[i] if flip else h[i]
        tableau.append(row)
    basis = [art0 + i for i in range(m)]

    # phase-2 costs, already reduced (artificial basis has zero real cost)
    cost2 = [zero] * (total + 1)
    for j in range(nv):
        pos, neg = colmap[j]
        cost2[pos] = c[j]
        if neg is not None:
            cost2[neg] = -c[j]
    # phase-1 costs reduced against the artificial basis
    cost1 = [zero] * (total + 1)
    for j in range(total + 1):
        if art0 <= j < total:
            continue
        s = zero
        for row in tableau:
            s += row[j]
        cost1[j] = -s

    pivots = 0
    pivots, _ = _run_phase(
        tableau, cost1, cost2, basis, lambda j: j < art0, pivots
    )
    if -cost1[total] > 0:
        return LpSolution(status="infeasible", pivots=pivots)

    # drive leftover artificials out of the (degenerate) basis
    drop_rows = []
    for r in range(m):
        if basis[r] < art0:
            continue
        col = next(
            (j for j in range(art0) if tableau[r][j] != 0),
            None,
        )
        if col is None:
            drop_rows.append(r)  # redundant constraint
        else:
            _pivot(tableau, [cost1, cost2], basis, r, col)
            pivots += 1
    for r in reversed(drop_rows):
        del tableau[r]
        del basis[r]

    # artificial columns are no longer needed
    tableau = [row[:art0] + [row[total]] for row in tableau]
    cost2 = cost2[:art0] + [cost2[total]]
    cost1 = cost1[:art0] + [cost1[total]]

    pivots, entering = _run_phase(
        tableau, cost2, cost1, basis, lambda j: True, pivots
    )
    if entering is not None:
        return LpSolution(status="unbounded", pivots=pivots)

    xstd = [zero] * art0
    for r, b in enumerate(basis):
        xstd[b] = tableau[r][-1]
    primal = []
    for j in range(nv):
        pos, neg = colmap[j]
        primal.append(xstd[pos] - xstd[neg] if neg is not None else xstd[pos])
    dual = [cost2[surplus0 + i] for i in range(m)]

    objective = sum((cj * xj for cj, xj in zip(c, primal)), zero)
    dual_objective = sum((hi * yi for hi, yi in zip(h, dual)), zero)
    if objective != dual_objective:
        raise LpInternalError(
            f"duality gap: primal {objective} vs dual {dual_objective}"
        )
    if objective != -cost2[-1]:
        raise LpInternalError("tableau objective disagrees with primal value")

    return LpSolution(
        status="optimal",
        primal=tuple(primal),
        dual=tuple(dual),
        objective_value=objective,
        pivots=pivots,
    )


def certificate_violations(lp: LinearProgram, sol: LpSolution) -> list[str]:
    """Independent re-check of an optimal solution; empty list means valid."""
    if sol.status != "optimal":
        return [f"status is {sol.status!r}, not optimal"]
    G, h, c = lp.constraints, lp.rhs, lp.objective
    m, nv = G.rows, G.cols
    out = []
    if sol.primal is None or len(sol.primal) != nv:
        return ["primal vector missing or wrong length"]
    if sol.dual is None or len(sol.dual) != m:
        return ["dual vector missing or wrong length"]
    x, y = sol.primal, sol.dual
    for i in range(m):
        lhs = sum((G.entries[i][j] * x[j] for j in range(nv)), rat(0))
        if lhs < h[i]:
            out.append(f"primal: row {i} has {lhs} < {h[i]}")
    for j in range(nv):
        if j not in lp.free_vars and x[j] < 0:
            out.append(f"primal: variable {j} negative: {x[j]}")
    for i in range(m):
        if y[i] < 0:
            out.append(f"dual: multiplier {i} negative: {y[i]}")
    for j in range(nv):
        t = sum((y[i] * G.entries[i][j] for i in range(m)), rat(0))
        if j in lp.free_vars:
            if t != c[j]:
                out.append(f"dual: free variable {j} has G^T y = {t} != {c[j]}")
        elif t > c[j]:
            out.append(f"dual: variable {j} has G^T y = {t} > {c[j]}")
    pobj = sum((c[j] * x[j] for j in range(nv)), rat(0))
    dobj = sum((h[i] * y[i] for i in range(m)), rat(0))
    if pobj != dobj:
        out.append(f"objectives differ: primal {pobj}, dual {dobj}")
    if sol.objective_value is None or pobj != sol.objective_value:
        out.append(
            f"stored objective {sol.objective_value} != recomputed {pobj}"
        )
    return out


def check_certificate(lp: LinearProgram, sol: LpSolution) -> bool:
    """True iff the solution is a valid primal-dual optimality certificate."""
    return not certificate_violations(lp, sol)

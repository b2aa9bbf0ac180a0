"""Dense two-phase revised simplex for small equality-form LPs.

Solves min c.x subject to A x = b, x >= 0 for problems with a handful
of rows and up to ~10^4 columns, which is the regime of the hidden-state
linear programs here.  The basis is refactorized every iteration (m is
tiny, so three m x m solves per pivot are cheaper than fighting drift),
entering variables are picked by most-negative reduced cost with a
switch to Bland's rule after a run of degenerate pivots, and ties in
the ratio test go to the smallest basic index.  Everything is
deterministic.

Phase 1 doubles as the feasibility oracle: when its optimum stays
positive the problem is infeasible and the phase-1 duals are returned
as a Farkas certificate y with y.A <= 0 and y.b > 0, which downstream
code reads as a steering witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FEAS_TOL = 1e-9
PIVOT_TOL = 1e-10
BLAND_AFTER = 60


class LpError(RuntimeError):
    """Solver failure carrying a dump of the offending problem."""

    def __init__(self, message: str, problem: "LpProblem | None" = None):
        if problem is not None:
            message += (
                f" [rows={problem.A.shape[0]}, cols={problem.A.shape[1]},"
                f" |b|_inf={np.max(np.abs(problem.b)):.3e},"
                f" |c|_inf={np.max(np.abs(problem.c)) if problem.c.size else 0:.3e}]"
            )
        super().__init__(message)
        self.problem = problem


@dataclass(frozen=True, eq=False)
class LpProblem:
    """min c.x  s.t.  A x = b, x >= 0."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        c = np.asarray(self.c, dtype=float)
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if A.shape != (b.size, c.size):
            raise ValueError(f"shape mismatch: A {A.shape}, b {b.shape}, c {c.shape}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)


@dataclass(frozen=True, eq=False)
class LpSolution:
    """Outcome of a solve.

    status is "optimal", "infeasible" or "unbounded".  ``duals`` are the
    equality multipliers y at optimality (c - A.y >= 0, y.b = objective);
    ``farkas`` is the infeasibility certificate when status is
    "infeasible".
    """

    status: str
    x: np.ndarray | None = None
    objective: float | None = None
    duals: np.ndarray | None = None
    farkas: np.ndarray | None = None
    iterations: int = 0
    phase1_objective: float = 0.0


def _pivot_loop(A, b, c, basis, *, tol, max_iter):
    """Revised simplex iterations on (A, b, c) starting from ``basis``.

    Returns (status, basis, iterations) with status "optimal" or
    "unbounded".  ``basis`` is mutated in place.
    """
    m, n = A.shape
    bland = False
    stall = 0
    for it in range(max_iter):
        B = A[:, basis]
        try:
            xb = np.linalg.solve(B, b)
            y = np.linalg.solve(B.T, c[basis])
        except np.linalg.LinAlgError as exc:
            raise LpError(f"singular basis at iteration {it}: {exc}") from exc
        reduced = c - A.T @ y
        reduced[basis] = 0.0
        if bland:
            candidates = np.flatnonzero(reduced < -tol)
            if candidates.size == 0:
                return "optimal", basis, it
            enter = int(candidates[0])
        else:
            enter = int(np.argmin(reduced))
            if reduced[enter] >= -tol:
                return "optimal", basis, it
        u = np.linalg.solve(B, A[:, enter])
        pos = np.flatnonzero(u > PIVOT_TOL)
        if pos.size == 0:
            return "unbounded", basis, it
        ratios = np.maximum(xb[pos], 0.0) / u[pos]
        theta = ratios.min()
        near = pos[ratios <= theta + 1e-12]
        # Bland-compatible leaving rule: smallest basic variable index.
        leave_row = int(near[np.argmin(np.asarray(basis)[near])])
        if theta < 1e-12:
            stall += 1
            if stall > BLAND_AFTER:
                bland = True
        else:
            stall = 0
        basis[leave_row] = enter
    raise LpError(f"simplex did not converge within {max_iter} iterations")


def solve_lp(problem: LpProblem, *, tol: float = FEAS_TOL, max_iter: int = 100_000) -> LpSolution:
    """Two-phase solve of an equality-form LP."""
    A = problem.A.copy()
    b = problem.b.copy()
    c = problem.c.copy()
    m, n = A.shape

    flip = np.where(b < 0, -1.0, 1.0)
    A *= flip[:, None]
    b *= flip

    # Phase 1: artificial basis, minimize the sum of artificials.
    A1 = np.hstack([A, np.eye(m)])
    c1 = np.concatenate([np.zeros(n), np.ones(m)])
    basis = list(range(n, n + m))
    status, basis, it1 = _pivot_loop(A1, b, c1, basis, tol=tol, max_iter=max_iter)
    if status != "optimal":
        raise LpError(f"phase 1 ended {status}", problem)
    B = A1[:, basis]
    xb = np.linalg.solve(B, b)
    z1 = float(c1[basis] @ xb)
    if z1 > tol:
        y = np.linalg.solve(B.T, c1[basis])
        farkas = flip * y
        scale = np.max(np.abs(farkas))
        if scale > 0:
            farkas = farkas / scale
        return LpSolution(
            status="infeasible", farkas=farkas, iterations=it1, phase1_objective=z1
        )

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep_rows = np.ones(m, dtype=bool)
    for row in range(m):
        if basis[row] < n:
            continue
        Binv_row = np.linalg.solve(A1[:, basis].T, np.eye(m)[row])
        pivots = Binv_row @ A  # tableau row over original columns
        pivots[[j for j in basis if j < n]] = 0.0
        j = int(np.argmax(np.abs(pivots)))
        if abs(pivots[j]) > 1e-7:
            basis[row] = j
        else:
            keep_rows[row] = False  # dependent row, remove with its artificial

    if not keep_rows.all():
        rows = np.flatnonzero(keep_rows)
        A = A[rows]
        b = b[rows]
        flip_kept = flip[rows]
        basis = [basis[r] for r in rows]
    else:
        rows = np.arange(m)
        flip_kept = flip

    if any(j >= n for j in basis):
        raise LpError("could not eliminate artificial variables", problem)

    status, basis, it2 = _pivot_loop(A, b, c, basis, tol=tol, max_iter=max_iter)
    if status == "unbounded":
        return LpSolution(status="unbounded", iterations=it1 + it2)

    B = A[:, basis]
    xb = np.linalg.solve(B, b)
    x = np.zeros(n)
    x[basis] = xb
    y_red = np.linalg.solve(B.T, c[basis])
    duals = np.zeros(m)
    duals[rows] = flip_kept * y_red
    objective = float(c @ x)
    residual = np.max(np.abs(problem.A @ x - problem.b))
    if residual > 10 * tol:
        raise LpError(f"optimal point violates constraints by {residual:.3e}", problem)
    return LpSolution(
        status="optimal",
        x=x,
        objective=objective,
        duals=duals,
        iterations=it1 + it2,
        phase1_objective=z1,
    )

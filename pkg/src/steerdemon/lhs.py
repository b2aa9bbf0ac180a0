"""Local-hidden-state models as linear programs.

A hidden-state model for two measurements is a nonnegative density over
pure hidden states lambda on the unit sphere, split into four
sub-densities mu_c indexed by the deterministic response pair
c = (c1, c2) in {-1, +1}^2.  Matching an assemblage then becomes a set
of linear moment constraints:

    sum mu = 1
    sum mu lambda = a
    sum c_j mu = n_j . b           (j = 1, 2)
    sum c_j mu lambda = T n_j      (j = 1, 2)

Feasibility of that system on a discretized sphere certifies an
unsteerable (classical) demon; a Farkas dual of an infeasible system is
a linear steering witness, which is re-validated on a finer grid before
steering is reported, since the discretization only under-approximates
the true LHS set.  Relaxing all but the normalization and correlation
rows and maximizing along two orthogonal correlation axes traces the
achievable (alpha, beta) frontier, whose analytic envelope gives the
work bound for unsteerable demons.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .machine import Assemblage, Branch
from .simplex import LpError, LpProblem, LpSolution, solve_lp

# Deterministic response classes (c1, c2); column blocks follow this order.
CLASSES = ((+1, +1), (+1, -1), (-1, +1), (-1, -1))

OCTAHEDRON = np.array(
    [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
)


# ---------------------------------------------------------------------------
# Sphere discretizations
# ---------------------------------------------------------------------------

def _fibonacci_points(count: int) -> np.ndarray:
    """Quasi-uniform spiral lattice on the unit sphere (seed-free)."""
    if count == 0:
        return np.zeros((0, 3))
    i = np.arange(count)
    z = 1.0 - (2.0 * i + 1.0) / count
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    s = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack([s * np.cos(phi), s * np.sin(phi), z])


def _octahedral_subdivision(level: int) -> np.ndarray:
    """Geodesic subdivision of the octahedron, vertices projected to the
    sphere.  Vertex lists of successive levels are nested (old points
    keep their positions at the front)."""
    verts = [tuple(v) for v in OCTAHEDRON]
    faces = [
        (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
        (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5),
    ]
    for _ in range(level):
        index = {v: i for i, v in enumerate(verts)}
        cache: dict[tuple[int, int], int] = {}

        def midpoint(i: int, j: int) -> int:
            key = (i, j) if i < j else (j, i)
            if key in cache:
                return cache[key]
            m = np.asarray(verts[i]) + np.asarray(verts[j])
            m = tuple(m / np.linalg.norm(m))
            idx = index.get(m)
            if idx is None:
                verts.append(m)
                idx = len(verts) - 1
                index[m] = idx
            cache[key] = idx
            return idx

        new_faces = []
        for (i, j, k) in faces:
            ij, jk, ki = midpoint(i, j), midpoint(j, k), midpoint(k, i)
            new_faces += [(i, ij, ki), (ij, j, jk), (ki, jk, k), (ij, jk, ki)]
        faces = new_faces
    return np.asarray(verts, dtype=float)


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Deterministic set of unit hidden-state directions.

    scheme "fibonacci": the six octahedron vertices plus an N-6 point
    spiral lattice (exactly N points).  scheme "octahedral": nested
    geodesic subdivisions, the smallest level with at least N points,
    so grid(N) is a subset of grid(2N).
    """

    points: np.ndarray
    scheme: str
    requested: int
    level: int | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        norms = np.linalg.norm(pts, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("grid points must be unit vectors")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def finer(self, factor: int = 4) -> "SphereGrid":
        return sphere_grid(factor * self.requested, scheme=self.scheme)


def sphere_grid(n: int, *, scheme: str = "fibonacci", nested: bool = False) -> SphereGrid:
    """Build a quasi-uniform grid of at least six unit vectors.

    The octahedron vertices are always included so that assemblages
    supported exactly on the coordinate axes stay representable.
    """
    if n < 6:
        raise ValueError(f"grid needs at least 6 points, got {n}")
    if nested or scheme == "octahedral":
        level = 0
        while 4 * 4**level + 2 < n:
            level += 1
        return SphereGrid(
            points=_octahedral_subdivision(level),
            scheme="octahedral",
            requested=n,
            level=level,
        )
    pts = np.vstack([OCTAHEDRON, _fibonacci_points(n - 6)])
    return SphereGrid(points=pts, scheme="fibonacci", requested=n)


# ---------------------------------------------------------------------------
# Hidden-state models
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LhsModel:
    """Discrete hidden-state ensemble with deterministic responses.

    ``weights[ci, i]`` is the mass mu_c(lambda_i) for response class
    CLASSES[ci] and grid point i.  Weights are nonnegative and sum to 1.
    """

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (4, pts.shape[0]):
            raise ValueError(f"weights must have shape (4, {pts.shape[0]}), got {w.shape}")
        if w.min() < -1e-12:
            raise ValueError(f"negative weight {w.min()}")
        if abs(w.sum() - 1.0) > 1e-10:
            raise ValueError(f"weights sum to {w.sum()}, not 1")
        pts = pts.copy()
        w = w.copy()
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    def bloch_mean(self) -> np.ndarray:
        """sum mu lambda, the marginal the model presents to Bob."""
        return self.weights.sum(axis=0) @ self.points

    def response_mean(self, j: int) -> float:
        """sum c_j mu, the model's mean outcome of measurement j."""
        signs = np.array([c[j] for c in CLASSES], dtype=float)
        return float(signs @ self.weights.sum(axis=1))

    def weighted_mean(self, j: int) -> np.ndarray:
        """sum c_j mu lambda, the model's correlation vector T n_j."""
        signs = np.array([c[j] for c in CLASSES], dtype=float)
        return (signs[:, None] * self.weights).sum(axis=0) @ self.points

    def assemblages(self, directions=None) -> tuple[Assemblage, Assemblage]:
        """The pair of assemblages this model simulates.

        ``directions`` are the nominal measurement labels (they do not
        affect the branch statistics).
        """
        if directions is None:
            directions = (np.array([1.0, 0.0, 0.0]), np.array([0.0, 0.0, 1.0]))
        a = self.bloch_mean()
        out = []
        for j, n in enumerate(directions):
            signs = np.array([c[j] for c in CLASSES], dtype=float)
            branches = []
            for outcome in (+1, -1):
                mask = signs == outcome
                p = float(self.weights[mask].sum())
                v = self.weights[mask].sum(axis=0) @ self.points
                bloch = v / p if p > 1e-14 else a
                branches.append(Branch(outcome=outcome, probability=p, bloch=bloch))
            out.append(Assemblage(measurement=np.asarray(n, dtype=float),
                                  branches=tuple(branches), marginal=a))
        return tuple(out)


# ---------------------------------------------------------------------------
# Moment matrices
# ---------------------------------------------------------------------------

def _moment_columns(points: np.ndarray) -> np.ndarray:
    """12 x 4N matrix of LHS moment contributions, one column per
    (response class, grid point).

    Row order: normalization; Bloch mean (3); response means for the two
    measurements (2); response-weighted means (3 + 3).
    """
    npts = points.shape[0]
    cols = np.zeros((12, 4 * npts))
    for ci, (c1, c2) in enumerate(CLASSES):
        sl = slice(ci * npts, (ci + 1) * npts)
        cols[0, sl] = 1.0
        cols[1:4, sl] = points.T
        cols[4, sl] = c1
        cols[5, sl] = c2
        cols[6:9, sl] = c1 * points.T
        cols[9:12, sl] = c2 * points.T
    return cols


def assemblage_moments(assemblages) -> np.ndarray:
    """Moment vector [1, a, n1.b, n2.b, Tn1, Tn2] of an assemblage pair."""
    first, second = assemblages
    out = np.zeros(12)
    out[0] = 1.0
    out[1:4] = first.marginal
    for j, asm in enumerate((first, second)):
        plus = next(br for br in asm.branches if br.outcome == +1)
        minus = next(br for br in asm.branches if br.outcome == -1)
        out[4 + j] = plus.probability - minus.probability
        tn = plus.probability * plus.bloch - minus.probability * minus.bloch
        out[6 + 3 * j: 9 + 3 * j] = tn
    return out


@dataclass(frozen=True, eq=False)
class FeasibilityResult:
    """Verdict of the LHS feasibility LP for one assemblage pair."""

    steerable: bool
    grid_n: int
    model: LhsModel | None = None
    witness: np.ndarray | None = None
    margin: float | None = None
    refinement_confirmed: bool = False
    refined_grid_n: int | None = None

    @property
    def verdict(self) -> str:
        return "steerable" if self.steerable else "lhs-feasible"


def witness_margin(witness: np.ndarray, moments: np.ndarray, grid: SphereGrid) -> float:
    """Violation of the witness: its value on the data minus its maximum
    over the discretized LHS set."""
    cols = _moment_columns(grid.points)
    return float(witness @ moments - np.max(witness @ cols))


def lhs_feasible(
    assemblages,
    grid: SphereGrid,
    *,
    tol: float = 1e-9,
    refine_factor: int = 4,
    max_rounds: int = 2,
) -> FeasibilityResult:
    """Decide whether an assemblage pair admits a hidden-state model.

    Infeasibility of the grid LP alone is not trusted: the Farkas dual
    is re-checked on a ``refine_factor`` finer grid, and if the finer
    grid refutes it the LP is re-solved there.  Only a witness that
    survives refinement yields a "steerable" verdict.
    """
    first, second = assemblages
    if np.max(np.abs(first.marginal - second.marginal)) > 1e-9:
        raise ValueError("assemblages report different marginals")
    moments = assemblage_moments((first, second))

    current = grid
    for _ in range(max_rounds):
        cols = _moment_columns(current.points)
        problem = LpProblem(c=np.zeros(cols.shape[1]), A=cols, b=moments)
        sol = solve_lp(problem, tol=tol)
        if sol.status == "optimal":
            weights = np.maximum(sol.x, 0.0).reshape(4, current.n)
            return FeasibilityResult(
                steerable=False,
                grid_n=current.n,
                model=LhsModel(points=current.points, weights=weights),
            )
        finer = current.finer(refine_factor)
        margin = witness_margin(sol.farkas, moments, finer)
        if margin > tol:
            return FeasibilityResult(
                steerable=True,
                grid_n=current.n,
                witness=sol.farkas,
                margin=margin,
                refinement_confirmed=True,
                refined_grid_n=finer.n,
            )
        current = finer
    # Refinement kept refuting the witness: treat as unresolved-feasible.
    return FeasibilityResult(steerable=False, grid_n=current.n, refinement_confirmed=False)


# ---------------------------------------------------------------------------
# Achievable (alpha, beta) frontier
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FrontierPoint:
    weight: tuple[float, float]
    angle: float
    alpha: float
    beta: float
    alpha_ref: float
    beta_ref: float
    model: LhsModel | None = None


@dataclass(frozen=True, eq=False)
class FrontierCertificate:
    """LP sweep of the correlations (alpha, beta) reachable by LHS models.

    ``max_rbar`` is the largest average post-measurement Bloch length
    sqrt(eta^2 + alpha^2)/2 + sqrt(eta^2 + beta^2)/2 over the sweep;
    ``bound_value`` is the analytic cap min(sqrt(eta^2 + 1/2), 1).
    The reference curve alpha = cos(theta), beta = sin(theta) is what
    the LP should approach on a fine grid.
    """

    eta: float
    e1: np.ndarray
    e2: np.ndarray
    grid_n: int
    points: tuple[FrontierPoint, ...]
    max_rbar: float
    bound_value: float


def rbar(eta: float, k, tn1, tn2) -> float:
    """Average Bloch length after either of two measurements:
    (|{-eta k + tn1}| + |{-eta k - tn1}| + |{-eta k + tn2}| + |{-eta k - tn2}|)/4.
    """
    k = np.asarray(k, dtype=float)
    if abs(np.linalg.norm(k) - 1.0) > 1e-12:
        raise ValueError("k must be a unit vector")
    tn1 = np.asarray(tn1, dtype=float)
    tn2 = np.asarray(tn2, dtype=float)
    base = -eta * k
    return 0.25 * (
        np.linalg.norm(base + tn1)
        + np.linalg.norm(base - tn1)
        + np.linalg.norm(base + tn2)
        + np.linalg.norm(base - tn2)
    )


def analytic_bound(eta: float, omega0: float = 1.0) -> tuple[float, float]:
    """Work and concurrence-gain caps for an unsteerable demon:
    (omega0/2)(eta + min(sqrt(eta^2 + 1/2), 1)) and the same over omega0.
    """
    if abs(eta) > 1:
        raise ValueError(f"eta must lie in [-1, 1], got {eta}")
    cap = min(np.sqrt(eta * eta + 0.5), 1.0)
    work = 0.5 * omega0 * (eta + cap)
    return float(work), float(work / omega0)


def _frontier_problem(points: np.ndarray, e1, e2, k) -> np.ndarray:
    """7 x (4N + 2) constraint matrix for the relaxed frontier LP.

    Variables: mu (4N blocks), then alpha, beta.  Rows: normalization;
    the response-1 weighted mean pinned to alpha e1 (components along
    e1, e2, k); the response-2 weighted mean pinned to beta e2.
    """
    npts = points.shape[0]
    A = np.zeros((7, 4 * npts + 2))
    for ci, (c1, c2) in enumerate(CLASSES):
        sl = slice(ci * npts, (ci + 1) * npts)
        A[0, sl] = 1.0
        A[1, sl] = c1 * (points @ e1)
        A[2, sl] = c1 * (points @ e2)
        A[3, sl] = c1 * (points @ k)
        A[4, sl] = c2 * (points @ e2)
        A[5, sl] = c2 * (points @ e1)
        A[6, sl] = c2 * (points @ k)
    A[1, 4 * npts] = -1.0  # alpha
    A[4, 4 * npts + 1] = -1.0  # beta
    return A


def lhs_frontier(
    eta: float,
    e1,
    e2,
    grid: SphereGrid,
    weights=None,
    *,
    keep_models: bool = False,
) -> FrontierCertificate:
    """Sweep the reachable (alpha, beta) pairs with T n1 = alpha e1 and
    T n2 = beta e2 over a set of objective weights.

    Each weight w solves max w1 alpha + w2 beta over hidden-state models
    constrained only by normalization and the two correlation
    directions.  The optimum for w = (cos t, sin t) approaches the
    quarter-circle point (cos t, sin t) as the grid refines.
    """
    e1 = np.asarray(e1, dtype=float)
    e2 = np.asarray(e2, dtype=float)
    if abs(np.linalg.norm(e1) - 1) > 1e-12 or abs(np.linalg.norm(e2) - 1) > 1e-12:
        raise ValueError("e1 and e2 must be unit vectors")
    if abs(e1 @ e2) > 1e-12:
        raise ValueError("e1 and e2 must be orthogonal")
    k = np.cross(e1, e2)
    if weights is None:
        weights = [(np.cos(t), np.sin(t)) for t in np.linspace(0.0, np.pi / 2, 21)]
    weights = [np.asarray(w, dtype=float) for w in weights]
    for w in weights:
        if w.shape != (2,) or w.min() < 0 or np.linalg.norm(w) == 0:
            raise ValueError("objective weights must be nonnegative, nonzero pairs")

    npts = grid.n
    A = _frontier_problem(grid.points, e1, e2, k)
    b = np.zeros(7)
    b[0] = 1.0
    points = []
    for w in weights:
        c = np.zeros(4 * npts + 2)
        c[-2] = -w[0]
        c[-1] = -w[1]
        sol = solve_lp(LpProblem(c=c, A=A, b=b))
        if sol.status != "optimal":
            raise LpError(f"frontier LP ended {sol.status} for weight {tuple(w)}",
                          LpProblem(c=c, A=A, b=b))
        # LP variables are sign-constrained; strip roundoff negatives.
        alpha, beta = max(0.0, float(sol.x[-2])), max(0.0, float(sol.x[-1]))
        angle = float(np.arctan2(w[1], w[0]))
        model = None
        if keep_models:
            model = LhsModel(points=grid.points,
                             weights=np.maximum(sol.x[:-2], 0.0).reshape(4, npts))
        points.append(
            FrontierPoint(
                weight=(float(w[0]), float(w[1])),
                angle=angle,
                alpha=alpha,
                beta=beta,
                alpha_ref=float(np.cos(angle)),
                beta_ref=float(np.sin(angle)),
                model=model,
            )
        )
    max_rbar = max(
        0.5 * (np.sqrt(eta * eta + p.alpha**2) + np.sqrt(eta * eta + p.beta**2))
        for p in points
    )
    return FrontierCertificate(
        eta=float(eta),
        e1=e1,
        e2=e2,
        grid_n=npts,
        points=tuple(points),
        max_rbar=float(max_rbar),
        bound_value=float(min(np.sqrt(eta * eta + 0.5), 1.0)),
    )

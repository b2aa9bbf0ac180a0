"""Seeded generators for the randomized property suites.

Everything here is driven by an explicit numpy Generator so sweeps and
acceptance runs are reproducible from a single integer seed.
"""

from __future__ import annotations

import numpy as np

from .lhs import LhsModel
from .qubit import TwoQubitState, pauli_decompose, rotation_matrix


def random_density_matrix(rng: np.random.Generator, dim: int = 4, rank: int | None = None) -> np.ndarray:
    """Ginibre-induced random density matrix."""
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_two_qubit_state(rng: np.random.Generator, *, align_a_to_z: bool = False) -> TwoQubitState:
    """Random full-rank two-qubit state in Pauli form.

    With ``align_a_to_z`` the system marginal is rotated onto the z axis
    (sign chosen at random), which is the regime where the closed-form
    work expressions apply.
    """
    state = pauli_decompose(random_density_matrix(rng, 4))
    if not align_a_to_z:
        return state
    a = state.a
    norm = np.linalg.norm(a)
    target = np.array([0.0, 0.0, 1.0 if rng.random() < 0.5 else -1.0])
    if norm < 1e-12:
        return TwoQubitState(np.zeros(3), state.b, state.T)
    ahat = a / norm
    axis = np.cross(ahat, target)
    if np.linalg.norm(axis) < 1e-12:
        R = np.eye(3) if ahat @ target > 0 else rotation_matrix([1.0, 0.0, 0.0], np.pi)
    else:
        angle = np.arccos(np.clip(ahat @ target, -1.0, 1.0))
        R = rotation_matrix(axis, angle)
    # Local rotation on the system: a -> Ra, T -> RT, b fixed; positivity
    # is preserved, so snap a exactly onto the axis.
    return TwoQubitState(norm * target, state.b, R @ state.T)


def random_direction(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_symmetric_lhs_model(
    rng: np.random.Generator,
    e1,
    e2,
    *,
    n_base: int = 8,
) -> LhsModel:
    """Hidden-state model symmetric under reflections of the e1 and e2
    components, with sign responses c_j = sgn(lambda . e_j).

    Base points are drawn in the open quadrant (positive e1 and e2
    components, free component along e1 x e2); each contributes its
    four-point reflection orbit with equal weight.  By construction the
    Bloch mean is parallel to e1 x e2 and the response-weighted means
    line up with e1 and e2, the regime of the analytic work bound.
    """
    e1 = np.asarray(e1, dtype=float)
    e2 = np.asarray(e2, dtype=float)
    k = np.cross(e1, e2)
    raw = rng.normal(size=(n_base, 3))
    raw[:, :2] = np.abs(raw[:, :2]) + 1e-6
    raw /= np.linalg.norm(raw, axis=1)[:, None]
    base_weights = rng.random(n_base)
    base_weights /= base_weights.sum()

    points = []
    weights = {cls: [] for cls in range(4)}  # class order (+,+), (+,-), (-,+), (-,-)
    for (u, v, w), mass in zip(raw, base_weights):
        for s1 in (+1.0, -1.0):
            for s2 in (+1.0, -1.0):
                lam = s1 * u * e1 + s2 * v * e2 + w * k
                points.append(lam / np.linalg.norm(lam))
                cls = {(1.0, 1.0): 0, (1.0, -1.0): 1, (-1.0, 1.0): 2, (-1.0, -1.0): 3}[(s1, s2)]
                for c in range(4):
                    weights[c].append(mass / 4.0 if c == cls else 0.0)
    pts = np.asarray(points)
    w = np.asarray([weights[c] for c in range(4)])
    return LhsModel(points=pts, weights=w)

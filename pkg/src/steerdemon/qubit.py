"""Exact one- and two-qubit linear algebra in Bloch/Pauli form.

Single-qubit states are parametrized by a real Bloch vector r with
rho = (1 + r.sigma)/2.  Two-qubit states are kept in Pauli form
(a, b, T) with a_i = <sigma_i x 1>, b_j = <1 x sigma_j> and
T_ij = <sigma_i x sigma_j>; the dense 4x4 matrix is derived on demand
and cached.  The first tensor factor is the system qubit, the second
the environment (or ancilla).  |0> is the sigma_z = +1 eigenstate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

ATOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out


def as_bloch(r, *, atol: float = ATOL) -> np.ndarray:
    """Validate and return a Bloch vector as a read-only float array.

    Rejects vectors longer than 1 (beyond tolerance): those do not
    correspond to any qubit state.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError(f"Bloch vector must have shape (3,), got {r.shape}")
    if np.linalg.norm(r) > 1.0 + atol:
        raise ValueError(f"unphysical Bloch vector |r| = {np.linalg.norm(r)} > 1")
    return _readonly(r)


def as_unit_vector(n, *, atol: float = ATOL) -> np.ndarray:
    """Validate a measurement direction: a real unit 3-vector."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise ValueError(f"direction must have shape (3,), got {n.shape}")
    if abs(np.linalg.norm(n) - 1.0) > atol:
        raise ValueError(f"direction must be unit norm, |n| = {np.linalg.norm(n)}")
    return _readonly(n)


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Qubit Hamiltonian H = -omega0 sigma_z / 2 (hbar = 1), omega0 > 0."""

    omega0: float

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")

    @cached_property
    def matrix(self) -> np.ndarray:
        return _readonly(-0.5 * self.omega0 * SIGMA_Z)

    def energy(self, rho: "QubitState") -> float:
        """<H> = -omega0 r_z / 2."""
        return -0.5 * self.omega0 * rho.bloch[2]


@dataclass(frozen=True, eq=False)
class QubitState:
    """A single-qubit state held as a Bloch vector; |0> is sigma_z = +1."""

    bloch: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bloch", as_bloch(self.bloch))

    @classmethod
    def from_matrix(cls, rho: np.ndarray, *, atol: float = ATOL) -> "QubitState":
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        _check_density(rho, atol=atol)
        r = np.array([np.trace(rho @ s).real for s in PAULI])
        return cls(r)

    @cached_property
    def matrix(self) -> np.ndarray:
        r = self.bloch
        return _readonly(0.5 * (ID2 + r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z))

    @property
    def purity_radius(self) -> float:
        return float(np.linalg.norm(self.bloch))

    def eigenvalues(self) -> np.ndarray:
        """(1 + |r|)/2 and (1 - |r|)/2, descending."""
        r = self.purity_radius
        return np.array([(1 + r) / 2, (1 - r) / 2])


def bloch_to_density(r) -> QubitState:
    """Build the qubit state with Pauli expectations r = (r_x, r_y, r_z)."""
    return QubitState(r)


def _check_hermitian(m: np.ndarray, *, atol: float = ATOL) -> None:
    if np.max(np.abs(m - m.conj().T)) > atol:
        raise ValueError("matrix is not Hermitian within tolerance")


def _check_density(m: np.ndarray, *, atol: float = ATOL) -> None:
    _check_hermitian(m, atol=atol)
    if abs(np.trace(m).real - 1.0) > atol:
        raise ValueError(f"trace must be 1, got {np.trace(m)}")
    low = np.linalg.eigvalsh(m)[0]
    if low < -atol:
        raise ValueError(f"matrix is not PSD, min eigenvalue {low}")


def positivity_check(matrix, *, atol: float = ATOL) -> float:
    """Smallest eigenvalue of a Hermitian matrix; caller compares to -tol."""
    m = np.asarray(matrix, dtype=complex)
    _check_hermitian(m, atol=atol)
    return float(np.linalg.eigvalsh(m)[0])


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Two-qubit state in Pauli form: local vectors a (system), b
    (environment) and 3x3 correlation matrix T_ij = <sigma_i x sigma_j>.

    The Pauli form is the source of truth; ``matrix`` reconstructs the
    dense 4x4 lazily.  Construction validates positivity of the
    reconstruction and the local constraints |a|, |b| <= 1 and
    singular values of T <= 1.
    """

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        T = np.asarray(self.T, dtype=float)
        if a.shape != (3,) or b.shape != (3,) or T.shape != (3, 3):
            raise ValueError("expected a, b of shape (3,) and T of shape (3, 3)")
        object.__setattr__(self, "a", _readonly(a))
        object.__setattr__(self, "b", _readonly(b))
        object.__setattr__(self, "T", _readonly(T))
        if self.validate:
            if np.linalg.norm(a) > 1 + ATOL or np.linalg.norm(b) > 1 + ATOL:
                raise ValueError("local Bloch vectors must have norm <= 1")
            if np.linalg.svd(T, compute_uv=False)[0] > 1 + ATOL:
                raise ValueError("correlation matrix has singular value > 1")
            low = np.linalg.eigvalsh(self.matrix)[0]
            if low < -ATOL:
                raise ValueError(f"reconstructed state is not PSD, min eigenvalue {low}")

    @classmethod
    def from_matrix(cls, rho4, *, atol: float = ATOL) -> "TwoQubitState":
        return pauli_decompose(rho4, atol=atol)

    @cached_property
    def matrix(self) -> np.ndarray:
        return _readonly(pauli_reconstruct(self.a, self.b, self.T))


def pauli_reconstruct(a, b, T) -> np.ndarray:
    """Dense 4x4 from Pauli form: (1/4)(1x1 + a.sigma x 1 + 1 x b.sigma + sum T_ij sigma_i x sigma_j)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    T = np.asarray(T, dtype=float)
    rho = np.kron(ID2, ID2).astype(complex)
    for i in range(3):
        rho += a[i] * np.kron(PAULI[i], ID2)
        rho += b[i] * np.kron(ID2, PAULI[i])
        for j in range(3):
            rho += T[i, j] * np.kron(PAULI[i], PAULI[j])
    return rho / 4.0


def pauli_decompose(rho4, *, atol: float = ATOL) -> TwoQubitState:
    """Extract (a, b, T) from a dense two-qubit density matrix.

    Round-trips with ``pauli_reconstruct`` to 1e-12.  Rejects
    non-Hermitian, non-unit-trace or non-PSD input.
    """
    rho = np.asarray(rho4, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    _check_density(rho, atol=atol)
    a = np.array([np.trace(rho @ np.kron(s, ID2)).real for s in PAULI])
    b = np.array([np.trace(rho @ np.kron(ID2, s)).real for s in PAULI])
    T = np.array(
        [[np.trace(rho @ np.kron(si, sj)).real for sj in PAULI] for si in PAULI]
    )
    return TwoQubitState(a, b, T)


def partial_trace_env(rho: TwoQubitState) -> QubitState:
    """System marginal: the unconditioned reduced state, Bloch vector a."""
    return QubitState(rho.a)


def partial_trace_env_dense(rho4: np.ndarray) -> np.ndarray:
    """Dense partial trace over the second qubit (oracle path)."""
    rho = np.asarray(rho4, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("ikjk->ij", rho)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation by ``angle`` about unit ``axis`` (right-handed)."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    K = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * (K @ K)


def spin_rotation(axis, angle: float) -> np.ndarray:
    """SU(2) element exp(-i angle axis.sigma / 2).

    Conjugation by it rotates Bloch vectors by ``rotation_matrix(axis, angle)``.
    """
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    ns = axis[0] * SIGMA_X + axis[1] * SIGMA_Y + axis[2] * SIGMA_Z
    return np.cos(angle / 2) * ID2 - 1j * np.sin(angle / 2) * ns

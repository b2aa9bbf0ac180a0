"""Thermal-machine functionals on one and two qubits.

Covers the two uses of a thermal qubit: extracting work against
H = -omega0 sigma_z / 2 with an optimal local unitary, and preparing
entanglement with a pure ancilla.  On the two-qubit side it computes
steering assemblages, demon-assisted work and concurrence gain
(averaged over the demon's measurement choices), the restricted
Pauli-conjugation baseline scheme, and the mixed entangled/separable
state family used in the sweeps.

Scalar conventions: a qubit with Bloch vector r has energy
-omega0 r_z / 2, extractable work omega0 (|r| - r_z)/2 and maximal
preparable concurrence (1 + |r|)/2.  For a two-qubit state in Pauli
form (a, b, T), measuring n.sigma on the environment yields branches
p_pm = (1 +- n.b)/2 with Bloch vectors (a +- Tn)/(1 +- n.b).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .qubit import (
    ATOL,
    ID2,
    KET0,
    KET1,
    KET_MINUS,
    KET_PLUS,
    PAULI,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    Hamiltonian,
    QubitState,
    TwoQubitState,
    as_unit_vector,
    pauli_decompose,
    spin_rotation,
)

Z = np.array([0.0, 0.0, 1.0])

BELL_PHI_PLUS = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
BELL_PHI_MINUS = np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) / np.sqrt(2.0)


class Scheme(str, enum.Enum):
    """Feedback unitaries allowed per branch."""

    GENERAL_UNITARY = "general-unitary"
    PAULI_RESTRICTED = "pauli-restricted"


def thermal_state(eta: float) -> QubitState:
    """Thermal qubit with populations (1+eta)/2 on |1> and (1-eta)/2 on |0>.

    Its Bloch vector is -eta z; eta <= 0 is the physically thermal
    regime for H = -omega0 sigma_z / 2.
    """
    if abs(eta) > 1:
        raise ValueError(f"eta must lie in [-1, 1], got {eta}")
    return QubitState(np.array([0.0, 0.0, -eta]))


def extraction_unitary(rho: QubitState) -> np.ndarray:
    """2x2 unitary rotating the Bloch vector onto the +z axis.

    U rho U+ has Bloch vector (0, 0, |r|), the passive (lowest-energy)
    state of the same spectrum.  For r = 0 every unitary is optimal and
    the identity is returned.
    """
    r = rho.bloch
    norm = np.linalg.norm(r)
    if norm < ATOL:
        return ID2.copy()
    rhat = r / norm
    cos_angle = np.clip(rhat[2], -1.0, 1.0)
    angle = np.arccos(cos_angle)
    axis = np.cross(rhat, Z)
    if np.linalg.norm(axis) < 1e-14:
        if cos_angle > 0:  # already aligned
            return ID2.copy()
        axis = np.array([1.0, 0.0, 0.0])  # r along -z: pi pulse about x
    return spin_rotation(axis, angle)


def extractable_work(rho: QubitState, H: Hamiltonian) -> float:
    """Ergotropy of a qubit against H: omega0 (|r| - r_z) / 2, >= 0."""
    r = rho.bloch
    return 0.5 * H.omega0 * (np.linalg.norm(r) - r[2])


def max_entanglement(rho: QubitState) -> float:
    """Largest concurrence preparable with a pure ancilla: (1 + |r|)/2."""
    return 0.5 * (1.0 + rho.purity_radius)


def _eigenbasis_descending(rho: QubitState) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvectors of rho sorted by descending eigenvalue.

    Deterministic: for r = 0 the computational basis is used, otherwise
    the phase is fixed by making the largest-magnitude component real
    positive.
    """
    if rho.purity_radius < ATOL:
        return KET0.copy(), KET1.copy()
    vals, vecs = np.linalg.eigh(rho.matrix)
    order = np.argsort(vals)[::-1]
    out = []
    for idx in order:
        v = vecs[:, idx]
        k = int(np.argmax(np.abs(v)))
        phase = v[k] / abs(v[k])
        out.append(v / phase)
    return out[0], out[1]


def entangling_unitary(rho: QubitState) -> np.ndarray:
    """4x4 unitary turning rho x |1><1| into the maximally entangled mixture.

    Maps |phi0 1> -> |Phi+>, |phi1 0> -> |Phi->, |phi0 0> -> |01>,
    |phi1 1> -> |10>, where phi0, phi1 are the eigenvectors of rho in
    descending order.  The image of rho x |1><1| is
    (1+|r|)/2 |Phi+><Phi+| + (1-|r|)/2 |10><10|.
    """
    phi0, phi1 = _eigenbasis_descending(rho)
    ket_01 = np.kron(KET0, KET1)
    ket_10 = np.kron(KET1, KET0)
    U = np.outer(BELL_PHI_PLUS, np.kron(phi0, KET1).conj())
    U += np.outer(BELL_PHI_MINUS, np.kron(phi1, KET0).conj())
    U += np.outer(ket_01, np.kron(phi0, KET0).conj())
    U += np.outer(ket_10, np.kron(phi1, KET1).conj())
    return U


def concurrence(rho4) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The lambda_i (square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), descending) are computed as the
    singular values of the symmetric matrix L^T (sy x sy) L, where
    rho = L L+ keeps only eigenvalues above 1e-13 of the largest.
    Rank truncation matters: a roundoff eigenvalue eps would otherwise
    enter the lambdas as sqrt(eps) and bias the result by ~1e-8.
    """
    rho = np.asarray(rho4, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise ValueError("density matrix must be Hermitian")
    vals, vecs = np.linalg.eigh(rho)
    if vals[0] < -ATOL:
        raise ValueError(f"density matrix must be PSD, min eigenvalue {vals[0]}")
    keep = vals > 1e-13 * vals[-1]
    L = vecs[:, keep] * np.sqrt(vals[keep])
    yy = np.kron(SIGMA_Y, SIGMA_Y).real
    tau = L.T @ yy @ L
    lam = np.sort(np.linalg.svd(tau, compute_uv=False))[::-1]
    lam = np.pad(lam, (0, 4 - lam.size))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


# ---------------------------------------------------------------------------
# Steering assemblages
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Branch:
    """One conditional state: outcome label, probability, Bloch vector."""

    outcome: int
    probability: float
    bloch: np.ndarray


@dataclass(frozen=True, eq=False)
class Assemblage:
    """Conditional ensemble of the system after measuring the environment.

    ``marginal`` is the unconditioned system Bloch vector; the branches
    satisfy sum_a p_a = 1 and sum_a p_a r_a = marginal (no signaling).
    """

    measurement: np.ndarray
    branches: tuple[Branch, ...]
    marginal: np.ndarray

    def __post_init__(self):
        probs = np.array([br.probability for br in self.branches])
        if np.any(probs < -ATOL):
            raise ValueError("branch probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > ATOL:
            raise ValueError(f"branch probabilities sum to {probs.sum()}, not 1")
        for br in self.branches:
            if np.linalg.norm(br.bloch) > 1.0 + ATOL:
                raise ValueError("branch Bloch vector leaves the unit ball")
        mix = sum(br.probability * br.bloch for br in self.branches)
        if np.max(np.abs(mix - self.marginal)) > 1e-9:
            raise ValueError("assemblage branches do not average to the marginal")


def assemblage(rho: TwoQubitState, n) -> Assemblage:
    """Conditional ensemble after measuring n.sigma on the environment.

    p_pm = (1 +- n.b)/2 and r_pm = (a +- Tn)/(2 p_pm).  A branch with
    probability 0 is kept with weight 0 and the marginal as placeholder
    Bloch vector (the update is singular there and the branch never
    occurs).
    """
    n = as_unit_vector(n)
    tn = rho.T @ n
    nb = float(n @ rho.b)
    branches = []
    for sign, outcome in ((+1.0, +1), (-1.0, -1)):
        p = 0.5 * (1.0 + sign * nb)
        v = 0.5 * (rho.a + sign * tn)
        if p > 1e-14:
            r = v / p
        else:
            p = 0.0
            r = rho.a
        branches.append(Branch(outcome=outcome, probability=p, bloch=np.array(r)))
    return Assemblage(measurement=n, branches=tuple(branches), marginal=np.array(rho.a))


def assemblage_dense(rho4: np.ndarray, n) -> list[tuple[float, np.ndarray]]:
    """Oracle route: project the dense state on (1 x (1 +- n.sigma)/2).

    Returns [(p_+, rho_+), (p_-, rho_-)] with normalized 2x2 branches.
    """
    n = as_unit_vector(n)
    rho = np.asarray(rho4, dtype=complex)
    nsigma = n[0] * PAULI[0] + n[1] * PAULI[1] + n[2] * PAULI[2]
    out = []
    for sign in (+1.0, -1.0):
        proj = np.kron(ID2, 0.5 * (ID2 + sign * nsigma))
        sub = (rho @ proj).reshape(2, 2, 2, 2)
        reduced = np.einsum("ikjk->ij", sub)
        p = float(np.trace(reduced).real)
        out.append((p, reduced / p if p > 1e-14 else reduced))
    return out


# ---------------------------------------------------------------------------
# Demon protocols
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DemonProtocol:
    """Measurement directions for the demon, each used with equal probability."""

    measurements: tuple[np.ndarray, ...]
    scheme: Scheme = Scheme.GENERAL_UNITARY

    def __post_init__(self):
        if len(self.measurements) == 0:
            raise ValueError("protocol needs at least one measurement")
        object.__setattr__(
            self, "measurements", tuple(as_unit_vector(n) for n in self.measurements)
        )
        object.__setattr__(self, "scheme", Scheme(self.scheme))


@dataclass(frozen=True, eq=False)
class BranchWork:
    outcome: int
    probability: float
    bloch: np.ndarray
    work: float


@dataclass(frozen=True, eq=False)
class MeasurementWork:
    direction: np.ndarray
    branches: tuple[BranchWork, ...]
    work: float


@dataclass(frozen=True, eq=False)
class WorkReport:
    """Demon-assisted extractable work with per-branch detail.

    ``total_work`` is the measurement-averaged extracted energy;
    ``baseline_work`` is what the same scheme extracts from the
    unconditioned marginal.  Both carry omega0 units.
    """

    scheme: Scheme
    omega0: float
    total_work: float
    baseline_work: float
    measurements: tuple[MeasurementWork, ...]

    @property
    def gain(self) -> float:
        return self.total_work - self.baseline_work


@dataclass(frozen=True, eq=False)
class EntanglementReport:
    """Preparable concurrence, demon-averaged, against the no-demon baseline.

    ``baseline_concurrence`` is (1 + |a|)/2 from the marginal.  For a
    thermal marginal with -a_z = eta > 0 this differs from the (1-eta)/2
    baseline quoted for the thermal machine; ``thermal_baseline`` records
    that value so the discrepancy stays visible instead of being folded in.
    """

    baseline_concurrence: float
    average_concurrence: float
    gain: float
    thermal_baseline: float


def branch_work(bloch, omega0: float, scheme: Scheme) -> float:
    """Work one branch yields under the given scheme.

    General unitaries give the ergotropy omega0 (|r| - r_z)/2; the
    restricted scheme conjugates by {1, sx, sy, sz} only, whose best is
    omega0 max(0, -r_z) (a pi pulse when the branch points below the
    equator, nothing otherwise).
    """
    r = np.asarray(bloch, dtype=float)
    if scheme == Scheme.GENERAL_UNITARY:
        return 0.5 * omega0 * (np.linalg.norm(r) - r[2])
    # Pauli conjugations map r_z to +-r_z; work = omega0 (rz' - rz)/2.
    best = max(r[2], -r[2])
    return 0.5 * omega0 * (best - r[2])


def work_from_assemblages(
    assemblages: list[Assemblage] | tuple[Assemblage, ...],
    H: Hamiltonian,
    scheme: Scheme = Scheme.GENERAL_UNITARY,
) -> WorkReport:
    """Average the per-branch work over equally likely measurement choices."""
    scheme = Scheme(scheme)
    details = []
    for asm in assemblages:
        branches = tuple(
            BranchWork(
                outcome=br.outcome,
                probability=br.probability,
                bloch=br.bloch,
                work=branch_work(br.bloch, H.omega0, scheme),
            )
            for br in asm.branches
        )
        work = sum(bw.probability * bw.work for bw in branches)
        details.append(
            MeasurementWork(direction=asm.measurement, branches=branches, work=work)
        )
    total = float(np.mean([d.work for d in details]))
    baseline = branch_work(assemblages[0].marginal, H.omega0, scheme)
    return WorkReport(
        scheme=scheme,
        omega0=H.omega0,
        total_work=total,
        baseline_work=float(baseline),
        measurements=tuple(details),
    )


def demon_work(rho: TwoQubitState, protocol: DemonProtocol, H: Hamiltonian) -> WorkReport:
    """Extractable work when the demon announces measurement outcomes.

    Branch-wise computation: mean over measurements of
    sum_a p_a . work(branch_a) under the protocol's scheme.
    """
    asms = [assemblage(rho, n) for n in protocol.measurements]
    return work_from_assemblages(asms, H, protocol.scheme)


def concurrence_gain_from_assemblages(
    assemblages: list[Assemblage] | tuple[Assemblage, ...],
) -> EntanglementReport:
    avg = float(
        np.mean(
            [
                sum(
                    br.probability * 0.5 * (1.0 + np.linalg.norm(br.bloch))
                    for br in asm.branches
                )
                for asm in assemblages
            ]
        )
    )
    a = assemblages[0].marginal
    baseline = 0.5 * (1.0 + np.linalg.norm(a))
    eta = -a[2]
    return EntanglementReport(
        baseline_concurrence=float(baseline),
        average_concurrence=avg,
        gain=float(avg - baseline),
        thermal_baseline=float(0.5 * (1.0 - eta)),
    )


def demon_concurrence_gain(rho: TwoQubitState, protocol: DemonProtocol) -> EntanglementReport:
    """Preparable-concurrence gain from the demon's announced outcomes."""
    asms = [assemblage(rho, n) for n in protocol.measurements]
    return concurrence_gain_from_assemblages(asms)


def beyer_baseline_work(
    rho: TwoQubitState, protocol: DemonProtocol, H: Hamiltonian
) -> WorkReport:
    """Restricted scheme: per branch, best of the four Pauli conjugations."""
    asms = [assemblage(rho, n) for n in protocol.measurements]
    return work_from_assemblages(asms, H, Scheme.PAULI_RESTRICTED)


def closed_form_work(eta: float, k, tns, omega0: float) -> float:
    """Measurement-averaged work in closed form for a marginal a = -eta k.

    omega0 (eta/2 + (1/4M) sum_j |{-eta k + T n_j}| + |{-eta k - T n_j}|)
    over M measurement directions; the branch-wise average reproduces it
    whenever a is parallel to z.
    """
    k = as_unit_vector(k)
    m = len(tns)
    acc = 0.0
    for tn in tns:
        tn = np.asarray(tn, dtype=float)
        acc += np.linalg.norm(-eta * k + tn) + np.linalg.norm(-eta * k - tn)
    return omega0 * (0.5 * eta + acc / (4.0 * m))


def closed_form_concurrence_gain(eta: float, k, tns) -> float:
    """Closed-form concurrence gain, equal to closed_form_work / omega0.

    Valid as a gain over the (1+|eta|)/2 baseline when eta <= 0.
    """
    return closed_form_work(eta, k, tns, 1.0)


# ---------------------------------------------------------------------------
# The mixed entangled/separable state family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StateFamilyParams:
    """Mixing weight p in [0, 1] and thermal parameter eta in [-1, 1]."""

    p: float
    eta: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if abs(self.eta) > 1.0:
            raise ValueError(f"eta must lie in [-1, 1], got {self.eta}")


def state_family(params: StateFamilyParams) -> TwoQubitState:
    """p-weighted mix of an entangled pure state and a classically
    correlated state, both with the thermal marginal on the system.

    The pure component is sqrt((1+eta)/2)|11> + sqrt((1-eta)/2)|00>; the
    separable one correlates |1>,|0> of the system with the sigma_x
    eigenstates |->,|+> of the environment.
    """
    p, eta = params.p, params.eta
    hi = 0.5 * (1.0 + eta)
    lo = 0.5 * (1.0 - eta)
    psi = np.sqrt(hi) * np.kron(KET1, KET1) + np.sqrt(lo) * np.kron(KET0, KET0)
    rho_qu = np.outer(psi, psi.conj())
    rho_cl = hi * np.kron(np.outer(KET1, KET1.conj()), np.outer(KET_MINUS, KET_MINUS.conj()))
    rho_cl += lo * np.kron(np.outer(KET0, KET0.conj()), np.outer(KET_PLUS, KET_PLUS.conj()))
    return pauli_decompose(p * rho_qu + (1.0 - p) * rho_cl)

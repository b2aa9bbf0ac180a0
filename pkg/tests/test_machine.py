import numpy as np
import pytest

from steerdemon.qubit import (
    Hamiltonian,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    bloch_to_density,
    pauli_decompose,
    rotation_matrix,
)
from steerdemon.machine import (
    BELL_PHI_PLUS,
    DemonProtocol,
    Scheme,
    StateFamilyParams,
    assemblage,
    assemblage_dense,
    beyer_baseline_work,
    branch_work,
    closed_form_work,
    concurrence,
    demon_concurrence_gain,
    demon_work,
    entangling_unitary,
    extractable_work,
    extraction_unitary,
    max_entanglement,
    state_family,
    thermal_state,
)
from steerdemon.sampling import random_direction, random_two_qubit_state

H1 = Hamiltonian(1.0)
XZ = DemonProtocol((X_AXIS, Z_AXIS))


def apply(U, rho):
    return U @ rho @ U.conj().T


def random_bloch(rng):
    return random_direction(rng) * rng.random() ** (1 / 3)


# ---------------------------------------------------------------------------
# Single-qubit machine: work extraction
# ---------------------------------------------------------------------------

def test_thermal_state_cases():
    assert np.allclose(thermal_state(0.0).matrix, np.eye(2) / 2)
    assert np.allclose(thermal_state(-1.0).bloch, [0, 0, 1])
    assert np.allclose(thermal_state(-0.5).matrix, np.diag([0.75, 0.25]))
    with pytest.raises(ValueError):
        thermal_state(1.2)


def test_extraction_unitary_aligned_is_identity():
    assert np.allclose(extraction_unitary(bloch_to_density([0, 0, 1])), np.eye(2))


def test_extraction_unitary_inverted_is_pi_pulse():
    U = extraction_unitary(bloch_to_density([0, 0, -1]))
    out = pauli_decompose_qubit(apply(U, bloch_to_density([0, 0, -1]).matrix))
    assert np.allclose(out, [0, 0, 1], atol=1e-12)


def pauli_decompose_qubit(rho):
    from steerdemon.qubit import PAULI

    return np.array([np.trace(rho @ s).real for s in PAULI])


def test_extraction_unitary_transverse_case():
    rho = bloch_to_density([0.7, 0.0, 0.0])
    U = extraction_unitary(rho)
    assert np.max(np.abs(U @ U.conj().T - np.eye(2))) < 1e-12
    out = apply(U, rho.matrix)
    assert np.allclose(pauli_decompose_qubit(out), [0, 0, 0.7], atol=1e-12)
    assert np.trace(H1.matrix @ out).real == pytest.approx(-0.35, abs=1e-12)


def test_extraction_unitary_degenerate_returns_identity():
    assert np.allclose(extraction_unitary(bloch_to_density([0, 0, 0])), np.eye(2))


def test_extractable_work_simple_cases():
    assert extractable_work(bloch_to_density([0, 0, 1]), H1) == pytest.approx(0.0)
    assert extractable_work(bloch_to_density([0, 0, -1]), H1) == pytest.approx(1.0)


def test_extractable_work_matches_unitary_orbit_oracle():
    # Oracle: maximize tr[H(rho - U rho U+)] over a dense grid of
    # rotations; the optimum aligns the Bloch vector with +z.
    r = np.array([0.6, 0.0, -0.8])
    rho = bloch_to_density(r)
    axes = [random_direction(np.random.default_rng(7 + i)) for i in range(300)]
    best = 0.0
    for axis in axes:
        for angle in np.linspace(0, np.pi, 91):
            rotated = rotation_matrix(axis, angle) @ r
            best = max(best, 0.5 * (rotated[2] - r[2]))
    work = extractable_work(rho, H1)
    assert work == pytest.approx(0.9, abs=1e-12)
    assert best <= work + 1e-12
    assert best == pytest.approx(work, abs=5e-3)


def test_extractable_work_equals_unitary_energy_drop(rng):
    for _ in range(100):
        rho = bloch_to_density(random_bloch(rng))
        U = extraction_unitary(rho)
        drop = np.trace(H1.matrix @ (rho.matrix - apply(U, rho.matrix))).real
        assert extractable_work(rho, H1) == pytest.approx(drop, abs=1e-12)
        assert extractable_work(rho, H1) >= -1e-15


# ---------------------------------------------------------------------------
# Entanglement preparation
# ---------------------------------------------------------------------------

def test_max_entanglement_values():
    assert max_entanglement(bloch_to_density([0, 0, 0])) == pytest.approx(0.5)
    assert max_entanglement(bloch_to_density([0, 0, 1])) == pytest.approx(1.0)
    assert max_entanglement(thermal_state(-0.5)) == pytest.approx(0.75)


def ancilla_one():
    anc = np.zeros((2, 2), dtype=complex)
    anc[1, 1] = 1.0
    return anc


def test_entangling_unitary_pure_input_gives_bell():
    rho = bloch_to_density([0, 0, 1])
    U = entangling_unitary(rho)
    out = apply(U, np.kron(rho.matrix, ancilla_one()))
    assert np.max(np.abs(out - np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj()))) < 1e-12
    assert concurrence(out) == pytest.approx(1.0, abs=1e-10)


def test_entangling_unitary_mixed_input_structure():
    rho = bloch_to_density([0, 0, 0])
    U = entangling_unitary(rho)
    out = apply(U, np.kron(rho.matrix, ancilla_one()))
    ket10 = np.zeros(4, dtype=complex)
    ket10[2] = 1.0
    expected = 0.5 * np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj())
    expected += 0.5 * np.outer(ket10, ket10.conj())
    assert np.max(np.abs(out - expected)) < 1e-12


def test_entangling_unitary_thermal_concurrence():
    rho = thermal_state(-0.5)
    U = entangling_unitary(rho)
    out = apply(U, np.kron(rho.matrix, ancilla_one()))
    assert concurrence(out) == pytest.approx(0.75, abs=1e-10)


def test_entangling_unitary_eq7_form(rng):
    # U (rho x |1><1|) U+ must be |r|-weighted Bell plus |10><10|.
    for _ in range(100):
        r = random_bloch(rng)
        rho = bloch_to_density(r)
        U = entangling_unitary(rho)
        assert np.max(np.abs(U @ U.conj().T - np.eye(4))) < 1e-12
        out = apply(U, np.kron(rho.matrix, ancilla_one()))
        norm = np.linalg.norm(r)
        ket10 = np.zeros(4, dtype=complex)
        ket10[2] = 1.0
        expected = 0.5 * (1 + norm) * np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj())
        expected += 0.5 * (1 - norm) * np.outer(ket10, ket10.conj())
        assert np.max(np.abs(out - expected)) < 1e-10


def test_concurrence_bell_and_product():
    assert concurrence(np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj())) == pytest.approx(1.0)
    prod = np.kron(np.diag([0.7, 0.3]), np.diag([0.2, 0.8])).astype(complex)
    assert concurrence(prod) == pytest.approx(0.0, abs=1e-12)


def test_concurrence_bell_mixture():
    ket10 = np.zeros(4, dtype=complex)
    ket10[2] = 1.0
    for F in (0.75, 0.5, 0.3):
        rho = F * np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj())
        rho += (1 - F) * np.outer(ket10, ket10.conj())
        assert concurrence(rho) == pytest.approx(F, abs=1e-12)


def test_concurrence_rejects_non_psd():
    with pytest.raises(ValueError):
        concurrence(np.diag([1.5, -0.5, 0.0, 0.0]).astype(complex))


# ---------------------------------------------------------------------------
# Assemblages
# ---------------------------------------------------------------------------

def test_assemblage_product_state_does_not_update(rng):
    sys = bloch_to_density([0.1, 0.2, 0.5])
    env = bloch_to_density([0.4, -0.3, 0.2])
    state = pauli_decompose(np.kron(sys.matrix, env.matrix))
    for _ in range(20):
        asm = assemblage(state, random_direction(rng))
        for br in asm.branches:
            assert np.allclose(br.bloch, sys.bloch, atol=1e-12)


@pytest.mark.parametrize(
    "n, expected",
    [(Z_AXIS, [0, 0, 1.0]), (X_AXIS, [1.0, 0, 0])],
)
def test_assemblage_bell_like_sharp_branches(n, expected):
    state = state_family(StateFamilyParams(p=1.0, eta=0.0))
    asm = assemblage(state, n)
    for br, sign in zip(asm.branches, (+1, -1)):
        assert br.probability == pytest.approx(0.5, abs=1e-12)
        assert np.allclose(br.bloch, sign * np.asarray(expected), atol=1e-12)


def test_assemblage_matches_dense_projection_oracle(rng):
    for _ in range(100):
        state = random_two_qubit_state(rng)
        n = random_direction(rng)
        asm = assemblage(state, n)
        oracle = assemblage_dense(state.matrix, n)
        for br, (p, reduced) in zip(asm.branches, oracle):
            assert br.probability == pytest.approx(p, abs=1e-12)
            if p > 1e-12:
                assert np.allclose(br.bloch, pauli_decompose_qubit(reduced), atol=1e-10)


def test_assemblage_zero_probability_branch():
    # Environment pinned to +z makes the n = z minus branch impossible.
    sys = bloch_to_density([0.0, 0.0, 0.5])
    env = bloch_to_density([0.0, 0.0, 1.0])
    state = pauli_decompose(np.kron(sys.matrix, env.matrix))
    asm = assemblage(state, Z_AXIS)
    plus, minus = asm.branches
    assert plus.probability == pytest.approx(1.0)
    assert minus.probability == 0.0
    assert np.allclose(minus.bloch, state.a)


def test_monotone_information_gain(rng):
    # sum_a p_a |r_a| >= |a| by convexity of the norm.
    for _ in range(200):
        state = random_two_qubit_state(rng)
        asm = assemblage(state, random_direction(rng))
        gained = sum(br.probability * np.linalg.norm(br.bloch) for br in asm.branches)
        assert gained >= np.linalg.norm(state.a) - 1e-12


# ---------------------------------------------------------------------------
# Demon protocols
# ---------------------------------------------------------------------------

def test_demon_work_product_state_gains_nothing(rng):
    sys = thermal_state(-0.5)
    env = bloch_to_density([0.2, 0.1, -0.4])
    state = pauli_decompose(np.kron(sys.matrix, env.matrix))
    for protocol in (XZ, DemonProtocol((random_direction(rng),))):
        report = demon_work(state, protocol, H1)
        assert report.total_work == pytest.approx(0.0, abs=1e-12)
        assert report.baseline_work == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize(
    "p, eta, expected",
    [(1.0, 0.0, 0.5), (0.0, -0.5, 0.125), (1.0, -0.5, 0.25)],
)
def test_demon_work_family_values(p, eta, expected):
    state = state_family(StateFamilyParams(p=p, eta=eta))
    report = demon_work(state, XZ, H1)
    assert report.total_work == pytest.approx(expected, abs=1e-12)


def test_demon_work_matches_closed_form_on_family():
    for p in np.linspace(0, 1, 11):
        for eta in (-0.8, -0.5, -0.2, 0.0, 0.4):
            state = state_family(StateFamilyParams(p=float(p), eta=float(eta)))
            tns = [state.T @ X_AXIS, state.T @ Z_AXIS]
            closed = closed_form_work(eta, Z_AXIS, tns, 1.0)
            report = demon_work(state, XZ, H1)
            assert report.total_work == pytest.approx(closed, abs=1e-12)


def test_demon_work_closed_form_random_aligned(rng):
    for _ in range(200):
        state = random_two_qubit_state(rng, align_a_to_z=True)
        eta = -state.a[2]
        n1, n2 = random_direction(rng), random_direction(rng)
        report = demon_work(state, DemonProtocol((n1, n2)), H1)
        closed = closed_form_work(eta, Z_AXIS, [state.T @ n1, state.T @ n2], 1.0)
        assert report.total_work == pytest.approx(closed, abs=1e-12)
        single = demon_work(state, DemonProtocol((n1,)), H1)
        closed_single = closed_form_work(eta, Z_AXIS, [state.T @ n1], 1.0)
        assert single.total_work == pytest.approx(closed_single, abs=1e-12)


def test_work_gain_equals_concurrence_gain(rng):
    omega0 = 1.7
    H = Hamiltonian(omega0)
    for _ in range(200):
        state = random_two_qubit_state(rng, align_a_to_z=True)
        protocol = DemonProtocol((random_direction(rng), random_direction(rng)))
        work = demon_work(state, protocol, H)
        ent = demon_concurrence_gain(state, protocol)
        assert work.gain == pytest.approx(omega0 * ent.gain, abs=1e-12)


def test_work_report_beats_baseline(rng):
    for _ in range(100):
        state = random_two_qubit_state(rng)
        protocol = DemonProtocol((random_direction(rng), random_direction(rng)))
        report = demon_work(state, protocol, H1)
        assert report.total_work >= report.baseline_work - 1e-12


@pytest.mark.parametrize(
    "p, eta, expected",
    [(1.0, 0.0, 0.5), (0.0, -0.5, 0.125)],
)
def test_concurrence_gain_family_values(p, eta, expected):
    state = state_family(StateFamilyParams(p=p, eta=eta))
    report = demon_concurrence_gain(state, XZ)
    assert report.gain == pytest.approx(expected, abs=1e-12)
    assert report.baseline_concurrence == pytest.approx(0.5 * (1 + abs(eta)), abs=1e-12)
    assert report.average_concurrence - report.baseline_concurrence == pytest.approx(
        report.gain, abs=1e-12
    )


def test_concurrence_gain_product_state():
    sys = thermal_state(-0.5)
    env = bloch_to_density([0.2, 0.1, -0.4])
    state = pauli_decompose(np.kron(sys.matrix, env.matrix))
    report = demon_concurrence_gain(state, XZ)
    assert report.gain == pytest.approx(0.0, abs=1e-12)
    assert report.thermal_baseline == pytest.approx(report.baseline_concurrence)


def test_thermal_baseline_diverges_for_negative_temperature():
    # eta > 0 (population inversion): the (1 - eta)/2 figure disagrees
    # with (1 + |r|)/2 and is reported separately.
    state = state_family(StateFamilyParams(p=0.4, eta=0.6))
    report = demon_concurrence_gain(state, XZ)
    assert report.baseline_concurrence == pytest.approx(0.8)
    assert report.thermal_baseline == pytest.approx(0.2)


def test_branch_work_restricted_cases():
    assert branch_work([0, 0, -0.8], 1.0, Scheme.PAULI_RESTRICTED) == pytest.approx(0.8)
    assert branch_work([0.8, 0, 0], 1.0, Scheme.PAULI_RESTRICTED) == pytest.approx(0.0)


def test_restricted_matches_explicit_pauli_maximization(rng):
    from steerdemon.qubit import ID2, PAULI

    for _ in range(50):
        r = random_bloch(rng)
        rho = bloch_to_density(r)
        best = max(
            np.trace(H1.matrix @ (rho.matrix - apply(U, rho.matrix))).real
            for U in (ID2, *PAULI)
        )
        assert branch_work(r, 1.0, Scheme.PAULI_RESTRICTED) == pytest.approx(best, abs=1e-12)


def test_beyer_baseline_strictly_below_general():
    state = state_family(StateFamilyParams(p=0.5, eta=-0.5))
    general = demon_work(state, XZ, H1)
    restricted = beyer_baseline_work(state, XZ, H1)
    assert restricted.scheme == Scheme.PAULI_RESTRICTED
    assert restricted.total_work < general.total_work - 1e-3


def test_scheme_dominance_over_family_grid():
    for p in np.linspace(0, 1, 9):
        for eta in (-0.8, -0.5, -0.2):
            state = state_family(StateFamilyParams(p=float(p), eta=float(eta)))
            general = demon_work(state, XZ, H1).total_work
            restricted = beyer_baseline_work(state, XZ, H1).total_work
            assert general >= restricted - 1e-12
            assert restricted >= -1e-12


def test_entanglement_oracle_equality(rng):
    # concurrence(entangling output) == max_entanglement(input)
    for _ in range(200):
        rho = bloch_to_density(random_bloch(rng))
        U = entangling_unitary(rho)
        out = apply(U, np.kron(rho.matrix, ancilla_one()))
        assert concurrence(out) == pytest.approx(max_entanglement(rho), abs=1e-10)


def test_state_family_validates_params():
    with pytest.raises(ValueError):
        StateFamilyParams(p=1.2, eta=0.0)
    with pytest.raises(ValueError):
        StateFamilyParams(p=0.5, eta=-2.0)


def test_demon_protocol_validation():
    with pytest.raises(ValueError):
        DemonProtocol(())
    with pytest.raises(ValueError):
        DemonProtocol((np.array([1.0, 1.0, 0.0]),))

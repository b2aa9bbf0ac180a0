"""Steering-assisted two-qubit thermal machines.

Demon-assisted work extraction and entanglement preparation for a
thermal qubit whose environment is measured by a demon, plus
linear-programming certification of what local-hidden-state (classical)
demons can achieve.
"""

__version__ = "0.1.0"

from .qubit import (
    Hamiltonian,
    QubitState,
    TwoQubitState,
    as_bloch,
    as_unit_vector,
    bloch_to_density,
    partial_trace_env,
    pauli_decompose,
    pauli_reconstruct,
    positivity_check,
)
from .machine import (
    Assemblage,
    DemonProtocol,
    EntanglementReport,
    Scheme,
    StateFamilyParams,
    WorkReport,
    assemblage,
    beyer_baseline_work,
    closed_form_concurrence_gain,
    closed_form_work,
    concurrence,
    concurrence_gain_from_assemblages,
    demon_concurrence_gain,
    demon_work,
    entangling_unitary,
    extractable_work,
    extraction_unitary,
    max_entanglement,
    state_family,
    thermal_state,
    work_from_assemblages,
)
from .lhs import (
    FeasibilityResult,
    FrontierCertificate,
    LhsModel,
    SphereGrid,
    analytic_bound,
    assemblage_moments,
    lhs_feasible,
    lhs_frontier,
    rbar,
    sphere_grid,
)
from .simplex import LpError, LpProblem, LpSolution, solve_lp

__all__ = [
    "Hamiltonian",
    "QubitState",
    "TwoQubitState",
    "as_bloch",
    "as_unit_vector",
    "bloch_to_density",
    "partial_trace_env",
    "pauli_decompose",
    "pauli_reconstruct",
    "positivity_check",
    "Assemblage",
    "DemonProtocol",
    "EntanglementReport",
    "Scheme",
    "StateFamilyParams",
    "WorkReport",
    "assemblage",
    "beyer_baseline_work",
    "closed_form_concurrence_gain",
    "closed_form_work",
    "concurrence",
    "concurrence_gain_from_assemblages",
    "demon_concurrence_gain",
    "demon_work",
    "entangling_unitary",
    "extractable_work",
    "extraction_unitary",
    "max_entanglement",
    "state_family",
    "thermal_state",
    "work_from_assemblages",
    "FeasibilityResult",
    "FrontierCertificate",
    "LhsModel",
    "SphereGrid",
    "analytic_bound",
    "assemblage_moments",
    "lhs_feasible",
    "lhs_frontier",
    "rbar",
    "sphere_grid",
    "LpError",
    "LpProblem",
    "LpSolution",
    "solve_lp",
    "__version__",
]

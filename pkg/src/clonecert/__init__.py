"""LOCC-infeasibility certificates for nonlocally assisted quantum cloning.

Pipeline: classify a finite state set by its nonorthogonality graph, extract
an orthogonal-endpoint chain, rotate it to canonical parameters (a0, a1, a2),
construct supplementary states and the product-basis cloning unitary, then
certify that no LOCC protocol reproduces the cloning map by tracking
entanglement monotones of three probe states.
"""
from .certify import (
    LoccCertificate,
    ProbeStates,
    SweepRow,
    VerifiedStateSet,
    VERDICT_INCONCLUSIVE,
    VERDICT_INFEASIBLE,
    build_probes,
    certify,
    gamma_a_bound,
    gamma_bb_bound,
    grid_values,
    iter_grid,
    sweep,
    verify_state_set,
    witness_densities,
)
from .errors import (
    ChainError,
    CloneCertError,
    FormatError,
    LayoutError,
    LinearDependenceError,
    NonHermitianError,
    ParameterError,
    WitnessError,
    WitnessFormError,
)
from .linalg import (
    ALICE,
    BOB,
    EigenResult,
    Ket,
    Operator,
    Subsystem,
    SystemLayout,
    complete_basis,
    eig_hermitian,
    gram_schmidt,
    partial_trace,
    tensor,
)
from .monotones import (
    EnsembleTransform,
    MonotoneVector,
    Outcome,
    determinant_witness,
    kappa_witness,
    locc_feasible,
    monotone,
    monotone_vector,
    perron_witness,
)
from .protocol import (
    CloningInstance,
    build_unitary,
    compatibility_check,
    extend_supplementary,
    original_states,
    supplementary_states,
    verify_chain_supplement,
)
from .statesets import (
    CanonicalForm,
    Chain,
    GramAnalysis,
    StateSet,
    analyze,
    canonicalize,
    find_orthogonal_chain,
)
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"

__all__ = [
    "ALICE",
    "BOB",
    "CanonicalForm",
    "Chain",
    "ChainError",
    "CloneCertError",
    "CloningInstance",
    "DEFAULT",
    "EigenResult",
    "EnsembleTransform",
    "FormatError",
    "GramAnalysis",
    "Ket",
    "LayoutError",
    "LinearDependenceError",
    "LoccCertificate",
    "MonotoneVector",
    "NonHermitianError",
    "Operator",
    "Outcome",
    "ParameterError",
    "ProbeStates",
    "StateSet",
    "Subsystem",
    "SweepRow",
    "SystemLayout",
    "Tolerances",
    "VERDICT_INCONCLUSIVE",
    "VERDICT_INFEASIBLE",
    "VerifiedStateSet",
    "WitnessError",
    "WitnessFormError",
    "analyze",
    "build_probes",
    "build_unitary",
    "canonicalize",
    "certify",
    "compatibility_check",
    "complete_basis",
    "determinant_witness",
    "eig_hermitian",
    "extend_supplementary",
    "find_orthogonal_chain",
    "gamma_a_bound",
    "gamma_bb_bound",
    "gram_schmidt",
    "grid_values",
    "iter_grid",
    "kappa_witness",
    "locc_feasible",
    "monotone",
    "monotone_vector",
    "original_states",
    "partial_trace",
    "perron_witness",
    "supplementary_states",
    "sweep",
    "tensor",
    "verify_chain_supplement",
    "verify_state_set",
    "witness_densities",
]

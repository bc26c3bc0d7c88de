"""Bloch-vector decompositions of qudit states in three operator bases,
isotropic two-qudit states and Hilbert-Schmidt entanglement witnesses."""

from .angular import cg_sum_rule_check, clebsch_gordan
from .bases import (
    Family,
    OperatorBasis,
    get_basis,
    ggm_basis,
    ggm_element,
    norm_constant,
    pob_basis,
    pob_element,
    wob_basis,
    wob_element,
)
from .bloch import (
    BipartiteDecomposition,
    BlochVector,
    InvalidStateError,
    check_density_matrix,
    decompose,
    decompose_bipartite,
    expand_standard_ggb,
    expand_standard_pob,
    expand_standard_wob,
    purity,
    radius,
    radius_bound,
    reconstruct,
)
from .linalg import hermitian_eigenvalues, hs_inner, hs_norm, is_positive_semidefinite, kron
from .spin1 import a_iso_qutrit, gellmann_from_spin, spin_operators, witness_expectation_terms
from .states import (
    bell_state,
    isotropic,
    lambda_operator,
    random_density_matrix,
    random_pure_product_state,
    t_operator,
    u_operator,
)
from .witness import (
    EntanglementWitness,
    WitnessVerdict,
    eval_witness,
    guess_witness,
    hs_measure_iso,
    max_violation_iso,
    nearest_separable_iso,
    optimal_witness_iso,
    verify_witness,
)

__version__ = "0.1.0"

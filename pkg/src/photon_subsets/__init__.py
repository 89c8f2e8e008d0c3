"""What subsets of photons in a beam are doing.

Sparse multimode Fock-space states, mode-agnostic photon removal, random
q-photon subset states, correlation scaling laws, uniform loss and passive
linear optics, each paired with an independent brute-force check.
"""

from .applications import (
    StokesVector,
    bloch_of_random_photon,
    multimode_projector_series,
    projector_expectation_series,
    reduced_purity_direct,
    reduced_purity_formula,
    stokes,
)
from .combinatorics import binomial, falling_factorial, multinomial
from .correlations import (
    CorrelationIndex,
    correlation_table,
    expectation,
    g2,
    removal_forms,
    scaling_check_fixed_N,
    scaling_general,
)
from .fock import (
    BeamState,
    KetBraTerm,
    SectorDecomposition,
    apply_annihilation,
    hermitian_error,
    normalize,
    sector_decompose,
    trace,
)
from .linear_optics import ModeUnitary, apply_unitary, permanent
from .loss import (
    loss_commutes_with_network,
    loss_fixed_N_decomposition,
    loss_general_decomposition,
    loss_kraus,
)
from .random_states import random_fixed_n_state, random_state, random_two_sector_state
from .removal import RemovalResult, remove_k, remove_one_fixed_N, remove_one_general, subset_of_fixed_N
from .subsets import (
    SubsetWeights,
    mixed_sector_equivalence,
    random_subset_state,
    random_subset_state_direct,
    reconstruct_expectation,
    subset_state,
    subset_weights,
    uniqueness_counterexample,
)

__version__ = "0.1.0"

__all__ = [
    "apply_annihilation",
    "apply_unitary",
    "BeamState",
    "binomial",
    "bloch_of_random_photon",
    "correlation_table",
    "CorrelationIndex",
    "expectation",
    "falling_factorial",
    "g2",
    "hermitian_error",
    "KetBraTerm",
    "loss_commutes_with_network",
    "loss_fixed_N_decomposition",
    "loss_general_decomposition",
    "loss_kraus",
    "mixed_sector_equivalence",
    "ModeUnitary",
    "multimode_projector_series",
    "multinomial",
    "normalize",
    "permanent",
    "projector_expectation_series",
    "random_fixed_n_state",
    "random_state",
    "random_subset_state",
    "random_subset_state_direct",
    "random_two_sector_state",
    "reconstruct_expectation",
    "reduced_purity_direct",
    "reduced_purity_formula",
    "removal_forms",
    "RemovalResult",
    "remove_k",
    "remove_one_fixed_N",
    "remove_one_general",
    "scaling_check_fixed_N",
    "scaling_general",
    "sector_decompose",
    "SectorDecomposition",
    "stokes",
    "StokesVector",
    "subset_of_fixed_N",
    "subset_state",
    "subset_weights",
    "SubsetWeights",
    "trace",
    "uniqueness_counterexample",
]


"""Optimal N->M qubit superbroadcasting toolkit.

Thin wrapper around the C++ extension module; see the individual function
docstrings for the operations exposed.
"""

from ._qsb import (
    CapacityError,
    ContractError,
    DomainError,
    __version__,
    admissible_twice_spins,
    asymptotic_fit,
    broadcast_pair_state,
    concurrence,
    concurrence_curve,
    critical_purity,
    extract_alpha_beta,
    family_concurrence,
    is_entangled_family,
    max_output_copies,
    multiplicity,
    scaling,
    scaling_limit,
    scaling_phase,
    scaling_universal,
    simulated_scaling,
    superbroadcast_dense,
)

__all__ = [
    "CapacityError",
    "ContractError",
    "DomainError",
    "__version__",
    "admissible_twice_spins",
    "asymptotic_fit",
    "broadcast_pair_state",
    "concurrence",
    "concurrence_curve",
    "critical_purity",
    "extract_alpha_beta",
    "family_concurrence",
    "is_entangled_family",
    "max_output_copies",
    "multiplicity",
    "scaling",
    "scaling_limit",
    "scaling_phase",
    "scaling_universal",
    "simulated_scaling",
    "superbroadcast_dense",
]

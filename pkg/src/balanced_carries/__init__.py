"""Exact combinatorics of balanced-digit carries.

Balanced digits for an odd base b are 0, +-1, ..., +-(b-1)/2.  The package
covers the numeral codec and traced column addition, the exact transition
matrix of the carries Markov chain with its integer spectral
decomposition, the one-dependent point process of carries down a single
column with its determinantal pattern probabilities, and seeded Monte
Carlo cross-checks.  Probabilities are exact rationals throughout;
floating point appears only in trigonometric closed forms and simulation
summaries.
"""

from balanced_carries.chain import (
    CarriesMatrix,
    brute_force_matrix,
    holte_matrix,
    identity_like,
    matrix_power,
    matrix_product,
    transition_matrix,
    transition_matrix_binomial,
)
from balanced_carries.errors import BudgetError, InvariantError
from balanced_carries.numeral import (
    BalancedNumeral,
    CarryTable,
    CarryTrace,
    add_with_trace,
    carry_table,
    from_balanced,
    negate,
    to_balanced,
)
from balanced_carries.pointprocess import (
    OneDepLaw,
    SpectralData,
    TransferMatrix,
    a_closed,
    a_exact,
    bareiss_determinant,
    brute_force_string,
    one_dep_law,
    signed_pattern_probability,
    spectral_data,
    string_probability,
    transfer_matrix,
)
from balanced_carries.simulate import (
    SimCell,
    SimConfig,
    SimReport,
    Splitmix64,
    simulate_chain,
    simulate_column,
)
from balanced_carries.spectral import (
    FoulkesTable,
    SpectralTables,
    SpectrumReport,
    StationaryDist,
    conditional_expectation,
    convergence_check,
    descent_count,
    eulerian_idempotent_coeffs,
    foulkes_table,
    left_eigenvector,
    right_eigenvector,
    signed_eulerian,
    signed_eulerian_by_enumeration,
    spectral_tables,
    stationary,
    verify_spectrum,
)

__all__ = [
    "BalancedNumeral",
    "BudgetError",
    "CarriesMatrix",
    "CarryTable",
    "CarryTrace",
    "FoulkesTable",
    "InvariantError",
    "OneDepLaw",
    "SimCell",
    "SimConfig",
    "SimReport",
    "SpectralData",
    "SpectralTables",
    "SpectrumReport",
    "Splitmix64",
    "StationaryDist",
    "TransferMatrix",
    "a_closed",
    "a_exact",
    "add_with_trace",
    "bareiss_determinant",
    "brute_force_matrix",
    "brute_force_string",
    "carry_table",
    "conditional_expectation",
    "convergence_check",
    "descent_count",
    "eulerian_idempotent_coeffs",
    "foulkes_table",
    "from_balanced",
    "holte_matrix",
    "identity_like",
    "left_eigenvector",
    "matrix_power",
    "matrix_product",
    "negate",
    "one_dep_law",
    "right_eigenvector",
    "signed_eulerian",
    "signed_eulerian_by_enumeration",
    "signed_pattern_probability",
    "simulate_chain",
    "simulate_column",
    "spectral_data",
    "spectral_tables",
    "stationary",
    "string_probability",
    "to_balanced",
    "transfer_matrix",
    "transition_matrix",
    "transition_matrix_binomial",
    "verify_spectrum",
]

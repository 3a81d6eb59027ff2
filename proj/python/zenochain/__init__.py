"""Nested Mach-Zehnder chain simulator for counterfactual communication with dissipation."""

from ._core import (
    InnerCoefficients,
    IoError,
    OutcomeReport,
    PropagationTrace,
    ProtocolParams,
    SpecError,
    TransferCoefficients,
    TransferMatrix2,
    UndefinedRatio,
    balanced_kappa1,
    bs_matrix,
    chain_matrix,
    equivalent_inner_dissipation,
    eta_nb_closed_form,
    evaluate,
    inner_coefficients,
    loss_matrix,
    matrix_power,
    outer_coefficients,
    output_state,
    propagate,
    ratio_invariance_check,
    run_sweep_csv,
    splitter_count,
    table1_csv,
)

__version__ = "0.1.0"

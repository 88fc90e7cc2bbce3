"""Simulation of three-party single-qutrit communication protocols."""

from .qutrit import (
    FourierOutcome,
    PhaseGate,
    QutritState,
    apply,
    fourier_probabilities,
    gate_u,
    gate_v,
    prepare_psi,
    sample_outcome,
)
from .protocols import (
    RoundRecord,
    TritPair,
    ccp_round,
    ccp_task_value,
    dba_correlation_check,
    dba_round,
    encoding_table,
    privacy_fold,
    qter,
    required_rounds,
    secret_sharing_round,
    sift_and_extract_secret,
)
from .physical import NoiseConfig, Setting, detector_probabilities, run_setting
from .classical import evaluate_strategy, exhaustive_bound_reduced_class, paper_optimal_strategy

__version__ = "0.1.0"

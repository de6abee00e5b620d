"""Nonadditive (Tsallis) entropies, the q-conditional entropy and entanglement detection."""

from .classical import (
    compose_pseudoadditive,
    conditional_dist,
    conditional_tsallis,
    conditional_via_ratio,
    marginal_A,
    shannon_entropy,
    tsallis_entropy,
)
from .constants import DomainError, NullConditioningError, ValidationError
from .quantum_entropy import (
    ConditionalEntropyReport,
    PptVerdict,
    conditional_quantum,
    ensemble_conditional,
    ppt_test,
    quantum_tsallis,
    separable_positivity_experiment,
    von_neumann,
)
from .quantum_state import (
    BipartiteState,
    SeparableEnsemble,
    assemble_separable,
    eigenvalues,
    partial_trace,
    partial_transpose,
    tensor,
    validate,
    werner_popescu,
)
from .werner import CriterionTable, ThresholdPoint, criterion_table, threshold, threshold_scan, werner_cond_entropy

__version__ = "0.1.0"

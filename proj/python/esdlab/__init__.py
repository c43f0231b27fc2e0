"""Entanglement sudden death and robustness of two-qubit states.

Density matrices are complex 4x4 arrays in the basis (|00>, |01>, |10>, |11>),
qubit 1 being the left tensor factor.
"""

from ._esdlab import (
    BELL_ROBUSTNESS,
    SCHEMA_LINE,
    Degenerate,
    Error,
    InvalidArgument,
    InvalidState,
    RootNotFound,
    SeparableState,
    concurrence,
    depolarize,
    ensemble_csv,
    extremal,
    family_csv,
    linear_entropy,
    make_ansatz,
    negativity,
    normalized_robustness,
    partial_transpose,
    robustness_pure,
    s_crit,
    s_crit_ansatz,
)

__all__ = [name for name in dir() if not name.startswith("_")]

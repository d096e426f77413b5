"""Wigner-Yanase skew information of quantum channels and the sum-uncertainty
lower bounds built from it."""

from .bounds import (
    BoundReport,
    PermSearchPolicy,
    PermutationAssignment,
    bound_fu2,
    bound_lb1,
    bound_lb2,
    bound_lb3,
    bound_lbbar1,
    bound_lbbar2,
    bound_thm2,
    full_report,
    normalize_channels,
    sum_skew,
    unitary_bounds,
)
from .quantum import (
    DensityMatrix,
    KrausChannel,
    UnitaryChannel,
    amplitude_damping,
    apply_channel,
    as_kraus,
    bit_flip,
    bloch_state,
    pauli_rotation_unitary,
    phase_damping,
)
from .skew import fidelity_pure, skew_channel, skew_operator, unitary_variance_pure

__version__ = "0.1.0"

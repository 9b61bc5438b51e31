"""Squeezed-state calculus on a truncated right quaternionic Fock space.

The package verifies closed-form operator and state identities against
matrix-exponential oracles and records, in a machine-readable ledger, the
candidate formulas the oracles reject.
"""

from .quaternion import (
    AXIS_I,
    AXIS_J,
    AXIS_K,
    PolarForm,
    Quaternion,
    SliceAxis,
    exp_q,
    polar,
    slice_decompose,
    star_exp,
    unpolar,
)
from .fock import FockVector, QOperator, inner, left_mul, op_exp
from .ladder import LadderSet, build_ladder
from .gates import SqueezeParams, displacement, squeeze
from .states import coherent, expectations, pure_squeezed, squeezed_state

__version__ = "0.1.0"

__all__ = [
    "AXIS_I", "AXIS_J", "AXIS_K", "PolarForm", "Quaternion", "SliceAxis",
    "exp_q", "polar", "slice_decompose", "star_exp", "unpolar",
    "FockVector", "QOperator", "inner", "left_mul", "op_exp",
    "LadderSet", "build_ladder",
    "SqueezeParams", "displacement", "squeeze",
    "coherent", "expectations", "pure_squeezed", "squeezed_state",
    "__version__",
]

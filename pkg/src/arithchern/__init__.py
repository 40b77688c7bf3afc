"""Exact computations with Frobenius lifts of arithmetic Chern connections.

Series live in A[[T]] with A = Z[1/M, zeta_N], truncated at a total degree.
The main entry points are :func:`chern_lift` and the curvature functions.
"""

from .chern import (
    CheckResult,
    FormMatrix,
    FrobLift,
    InvalidForm,
    chern_lift,
    globality_check,
    load_form,
    split_form,
    trivial_lift,
    verify_bq_diagram,
    verify_hq_diagram,
)
from .curvature import (
    CurvatureReport,
    apply_lift,
    commutator_on_generators,
    curvature11,
    curvature2,
    curvature3,
    graded_piece,
)
from .scalars import CycScalar, RationalRing, RingConfig
from .series import DivisibilityViolation, Series

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "CurvatureReport",
    "CycScalar",
    "DivisibilityViolation",
    "FormMatrix",
    "FrobLift",
    "InvalidForm",
    "RationalRing",
    "RingConfig",
    "Series",
    "apply_lift",
    "chern_lift",
    "commutator_on_generators",
    "curvature11",
    "curvature2",
    "curvature3",
    "globality_check",
    "graded_piece",
    "load_form",
    "split_form",
    "trivial_lift",
    "verify_bq_diagram",
    "verify_hq_diagram",
]

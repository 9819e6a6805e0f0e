"""Computing in quaternionic hyperbolic n-space.

Quaternion and quaternionic-matrix algebra, the isometry group Sp(n,1) of
the signature-(n,1) Hermitian form, the Siegel-domain projective model with
its Bergman metric, element classification, quaternionic cross-ratios, and a
Jørgensen-type discreteness test with instrumented conjugation dynamics.
"""

from .quaternion import Quaternion, similar
from .qmatrix import QMatrix, right_eigenpairs, right_eigenvalues
from .spn1 import (
    ADMISSION_TOL,
    NormalFormParams,
    SpElement,
    StabilizerKind,
    compose,
    group_inverse,
    herm_form,
    identity_element,
    identity_residuals,
    is_member,
    make_loxodromic,
    make_normal_form,
    random_element,
    sample_elements,
)
from .geometry import (
    POINT_AT_INFINITY,
    Position,
    ProjectivePoint,
    apply,
    bergman_distance,
    from_lift,
    project,
    projectively_close,
    q_infinity,
    q_zero,
)
from .spectral import (
    Classification,
    ElementKind,
    LoxodromicData,
    classify,
    loxodromic_data,
    spectral_report,
)
from .crossratio import (
    CrossRatioValue,
    corner_bound_slacks,
    cross_ratio,
    entry_identity_check,
)
from .jorgensen import (
    Certificate,
    DegenerateOrbitError,
    IterationTrace,
    TestOutcome,
    Verdict,
    conjugation_orbit,
    elementary_certificate,
    fk_sequence,
    jorgensen_test,
)

__version__ = "0.1.0"

__all__ = [
    "ADMISSION_TOL",
    "Certificate",
    "Classification",
    "CrossRatioValue",
    "DegenerateOrbitError",
    "ElementKind",
    "IterationTrace",
    "LoxodromicData",
    "NormalFormParams",
    "POINT_AT_INFINITY",
    "Position",
    "ProjectivePoint",
    "QMatrix",
    "Quaternion",
    "SpElement",
    "StabilizerKind",
    "TestOutcome",
    "Verdict",
    "apply",
    "bergman_distance",
    "classify",
    "compose",
    "conjugation_orbit",
    "corner_bound_slacks",
    "cross_ratio",
    "elementary_certificate",
    "entry_identity_check",
    "fk_sequence",
    "from_lift",
    "group_inverse",
    "herm_form",
    "identity_element",
    "identity_residuals",
    "is_member",
    "jorgensen_test",
    "loxodromic_data",
    "make_loxodromic",
    "make_normal_form",
    "project",
    "projectively_close",
    "q_infinity",
    "q_zero",
    "random_element",
    "right_eigenpairs",
    "right_eigenvalues",
    "sample_elements",
    "similar",
    "spectral_report",
]

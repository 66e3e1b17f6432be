"""Bicomplex arithmetic and Orlicz sequence spaces over atomic measures.

The package splits every bicomplex object along the two orthogonal
idempotents of the algebra: numbers become pairs of complex
coordinates, sequences become pairs of complex sequences, operators
become pairs of complex operators, and norm or boundedness questions
reduce to componentwise ones recombined by explicit constants.
"""

from .bicomplex import (
    E,
    E_DAGGER,
    ONE,
    UNIT_I,
    UNIT_J,
    UNIT_K,
    ZERO,
    BiComplex,
    Classification,
    ComponentSet,
    HyperbolicValue,
    PolyRoots,
    classify,
    indicator,
    poly_eval,
    poly_roots,
)
from .errors import (
    BCOrliczError,
    InvalidInputError,
    InvalidMapError,
    NotInSpaceError,
    NotInvertibleError,
    NotSummableError,
    UnsupportedInstanceError,
)
from .measure import (
    AtomicMeasureSpace,
    Distortion,
    IndexMap,
    Pushforward,
    distortion_ratios,
    is_nonsingular,
    pushforward,
)
from .operators import (
    BCMatrix,
    BCOperator,
    BoundednessReport,
    ComponentOperator,
    apply_operator,
    check_composition_bounded,
    check_multiplication_bounded,
    decompose,
    empirical_operator_norm,
    empirical_ratios,
    invert_operator,
)
from .orlicz import (
    BCSequence,
    Delta2Probe,
    ModularValue,
    NFunctionProbe,
    OrliczFunction,
    PhiReport,
    classify_phi,
    default_grid,
    luxemburg_norm,
    modular,
    modular_bc,
    norm_bc,
    pairing,
    schauder_tail,
    weighted_phi_sum,
)

__version__ = "0.1.0"

__all__ = [
    "BiComplex",
    "HyperbolicValue",
    "Classification",
    "ComponentSet",
    "PolyRoots",
    "ZERO",
    "ONE",
    "UNIT_I",
    "UNIT_J",
    "UNIT_K",
    "E",
    "E_DAGGER",
    "classify",
    "indicator",
    "poly_eval",
    "poly_roots",
    "AtomicMeasureSpace",
    "IndexMap",
    "Pushforward",
    "Distortion",
    "pushforward",
    "distortion_ratios",
    "is_nonsingular",
    "OrliczFunction",
    "NFunctionProbe",
    "Delta2Probe",
    "PhiReport",
    "classify_phi",
    "default_grid",
    "BCSequence",
    "ModularValue",
    "modular",
    "modular_bc",
    "weighted_phi_sum",
    "luxemburg_norm",
    "norm_bc",
    "schauder_tail",
    "pairing",
    "BCMatrix",
    "BCOperator",
    "ComponentOperator",
    "BoundednessReport",
    "apply_operator",
    "decompose",
    "invert_operator",
    "check_composition_bounded",
    "check_multiplication_bounded",
    "empirical_ratios",
    "empirical_operator_norm",
    "BCOrliczError",
    "InvalidInputError",
    "NotInvertibleError",
    "UnsupportedInstanceError",
    "InvalidMapError",
    "NotInSpaceError",
    "NotSummableError",
]

"""Exact rational tooling for p-adic and ultrametric distance preservation.

Everything computes over fractions.Fraction; there is no floating point
anywhere, so every verdict and witness is exact and re-checkable.
"""

from .errors import (
    AsymmetricError,
    BadIntervalError,
    BadOrderError,
    BelowFloorError,
    ComparableError,
    DomainMissError,
    EquivalenceBreachError,
    NegativeEntryError,
    NegativeInputError,
    NonzeroDiagonalError,
    NoPositiveDistancesError,
    NotPreservingError,
    NotPrimeError,
    NotTotallyOrderedError,
    OrdOfZeroError,
    PadicMetricsError,
    SelfCheckError,
    SizeMismatchError,
    TooLargeError,
    TooShortError,
    TotallyOrderedError,
    ZeroDistanceError,
)
from .families import (
    FamilyExtremes,
    FinitePoset,
    OrderWitness,
    PreservationReport,
    SpaceFamily,
    SpaceWitness,
    build_extension,
    check_family_preserving,
    compare_families,
    counterexample_function,
    distance_values,
    family_poset,
    is_totally_ordered,
    isotone_for_incomparables,
    positive_extremes,
)
from .functions import (
    Canonical,
    FunctionSpec,
    PiecewiseLinear,
    PowerMap,
    PowerStep,
    PrimeShift,
    Reciprocal,
    StepFunction,
    Tabulated,
    spec_from_json_dict,
    spec_to_json_dict,
)
from .padic import (
    DigitWindow,
    PAdicAbs,
    as_fraction,
    cauchy_profile,
    digit_window,
    is_prime,
    padic_abs,
    padic_distance,
    require_prime,
    valuation,
)
from .padic_preserving import (
    DEFAULT_WINDOW,
    ExponentWindow,
    PreservationVerdict,
    WindowWitness,
    check_p_metric_preserving,
    check_p_ultrametric_preserving,
    closed_form_note,
    extend_to_ultrametric_preserving,
    parse_window,
    power_step,
    prime_shift,
    prime_swap,
    witness_triple,
)
from .preserving import (
    SufficientConditions,
    TripletVerdict,
    Witness,
    check_euclid_preserving_sampled,
    check_metric_preserving_sampled,
    check_ultra_to_metric,
    check_ultrametric_preserving,
    default_samples,
    is_strong_triplet,
    is_triangle_triplet,
    pairs_from_grid,
    samples_digest,
    sufficient_conditions,
)
from .spaces import (
    DistanceMatrixCandidate,
    FiniteUltrametricSpace,
    TriangleViolation,
    apply_function,
    distance_range,
    embedding_dimension,
    gram_rank,
    is_isometry,
    isometry_search,
    validate_ultrametric,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmetricError",
    "BadIntervalError",
    "BadOrderError",
    "BelowFloorError",
    "Canonical",
    "ComparableError",
    "DEFAULT_WINDOW",
    "DigitWindow",
    "DistanceMatrixCandidate",
    "DomainMissError",
    "EquivalenceBreachError",
    "ExponentWindow",
    "FamilyExtremes",
    "FinitePoset",
    "FiniteUltrametricSpace",
    "FunctionSpec",
    "NegativeEntryError",
    "NegativeInputError",
    "NonzeroDiagonalError",
    "NoPositiveDistancesError",
    "NotPreservingError",
    "NotPrimeError",
    "NotTotallyOrderedError",
    "OrdOfZeroError",
    "OrderWitness",
    "PAdicAbs",
    "PadicMetricsError",
    "PiecewiseLinear",
    "PowerMap",
    "PowerStep",
    "PreservationReport",
    "PreservationVerdict",
    "PrimeShift",
    "Reciprocal",
    "SelfCheckError",
    "SizeMismatchError",
    "SpaceFamily",
    "SpaceWitness",
    "StepFunction",
    "SufficientConditions",
    "Tabulated",
    "TooLargeError",
    "TooShortError",
    "TotallyOrderedError",
    "TriangleViolation",
    "TripletVerdict",
    "Witness",
    "WindowWitness",
    "ZeroDistanceError",
    "apply_function",
    "as_fraction",
    "build_extension",
    "cauchy_profile",
    "check_euclid_preserving_sampled",
    "check_family_preserving",
    "check_metric_preserving_sampled",
    "check_p_metric_preserving",
    "check_p_ultrametric_preserving",
    "check_ultra_to_metric",
    "check_ultrametric_preserving",
    "closed_form_note",
    "compare_families",
    "counterexample_function",
    "default_samples",
    "digit_window",
    "distance_range",
    "distance_values",
    "embedding_dimension",
    "extend_to_ultrametric_preserving",
    "family_poset",
    "gram_rank",
    "is_isometry",
    "is_prime",
    "is_strong_triplet",
    "is_totally_ordered",
    "is_triangle_triplet",
    "isometry_search",
    "isotone_for_incomparables",
    "padic_abs",
    "padic_distance",
    "pairs_from_grid",
    "parse_window",
    "positive_extremes",
    "power_step",
    "prime_shift",
    "prime_swap",
    "require_prime",
    "samples_digest",
    "spec_from_json_dict",
    "spec_to_json_dict",
    "sufficient_conditions",
    "validate_ultrametric",
    "valuation",
    "witness_triple",
]

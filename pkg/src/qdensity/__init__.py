"""qdensity: arithmetic density of integer sets via signed composition
counts and radial q-series limits.

The package computes cumulative signed composition counts exactly by three
independent routes (partition enumeration, composition enumeration, and a
reciprocal-series recurrence), estimates the density of a set from the
radial limit of the associated power series, certifies the zero-free-disk
hypothesis behind that formula with an argument-principle check, and
analyzes the non-alternating variant whose series blows up inside the
disk.
"""

from .kernels import BACKEND as KERNEL_BACKEND
from .oracle import (
    BudgetExceededError,
    Composition,
    Partition,
    c_signed_composition,
    c_signed_partition,
    count_compositions,
    enumerate_compositions,
    enumerate_partitions,
    multinomial_term,
)
from .density import (
    DensityReport,
    RadialPath,
    ZeroCheckResult,
    classify_limit,
    estimate_density_reciprocal,
    frobenius_mean,
    zero_check,
)
from .series import (
    EvalPoint,
    EvalResult,
    IntSeries,
    NotInvertibleError,
    PrecisionError,
    cauchy_product,
    evaluate,
    indicator_series,
    partial_sum_transform,
    reciprocal,
    suggest_truncation,
)
from .subsets import (
    IndicatorPrefix,
    SetSpecError,
    SubsetSpec,
    TruncationInsufficientError,
    all_naturals,
    arithmetic_progression,
    contains,
    counting_density,
    finite,
    from_file,
    indicator_prefix,
    multiples,
    parse_set_spec,
    primes,
    squarefree,
    union,
)
from .variant import (
    OutsideDomainError,
    VariantReport,
    analyze_variant,
    composition_count_series,
    cplus_series,
    variant_closed_form,
    variant_radius,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    # subsets
    "SubsetSpec", "IndicatorPrefix", "SetSpecError", "TruncationInsufficientError",
    "all_naturals", "arithmetic_progression", "multiples", "finite", "union",
    "squarefree", "primes", "from_file", "parse_set_spec", "contains",
    "indicator_prefix", "counting_density",
    # oracle
    "Partition", "Composition", "BudgetExceededError", "enumerate_partitions",
    "enumerate_compositions", "multinomial_term", "c_signed_partition",
    "c_signed_composition", "count_compositions",
    # series
    "IntSeries", "EvalPoint", "EvalResult", "NotInvertibleError", "PrecisionError",
    "indicator_series", "reciprocal", "cauchy_product", "partial_sum_transform",
    "evaluate", "suggest_truncation",
    # density
    "RadialPath", "DensityReport", "ZeroCheckResult", "estimate_density_reciprocal",
    "frobenius_mean", "classify_limit", "zero_check",
    # variant
    "VariantReport", "OutsideDomainError", "composition_count_series",
    "cplus_series", "variant_closed_form", "variant_radius", "analyze_variant",
]

"""Certified arithmetic for power sums, majorization and their counterexamples."""
from ._version import __version__
from .certify import (
    CounterexampleCertificate,
    build_certificate,
    find_counterexamples,
    monotonicity_scan,
    verify_certificate,
)
from .errors import DomainError, HypothesisError, InconclusiveError, UsageError
from .inequality import (
    REGISTRY,
    CheckResult,
    ClaimStatus,
    evaluate_case,
    hadamard_power,
    ratio_principle_check,
    summarize,
    sweep,
)
from .majorize import (
    Condition,
    Family,
    MajorizationKind,
    PowerOverall,
    WeightTuple,
    build_block_tuples,
    build_weight_families,
    check_condition,
    convex_witness,
    majorizes,
    normalize_ratio_pair,
    power_majorizes,
)
from .powersum import NATURALS, Direction, PowerSumQuery, SequenceSpec, P, P_limit, power_sum, ratio_R
from .scalar import (
    DEFAULT_POLICY,
    ComparisonVerdict,
    Enclosure,
    Order,
    PrecisionPolicy,
    Scalar,
    compare,
    root_compare,
)

__all__ = [
    "__version__",
    "CheckResult",
    "ClaimStatus",
    "ComparisonVerdict",
    "Condition",
    "CounterexampleCertificate",
    "DEFAULT_POLICY",
    "Direction",
    "DomainError",
    "Enclosure",
    "Family",
    "HypothesisError",
    "InconclusiveError",
    "MajorizationKind",
    "NATURALS",
    "Order",
    "P",
    "P_limit",
    "PowerOverall",
    "PowerSumQuery",
    "PrecisionPolicy",
    "REGISTRY",
    "Scalar",
    "SequenceSpec",
    "UsageError",
    "WeightTuple",
    "build_block_tuples",
    "build_certificate",
    "build_weight_families",
    "check_condition",
    "compare",
    "convex_witness",
    "evaluate_case",
    "find_counterexamples",
    "hadamard_power",
    "majorizes",
    "monotonicity_scan",
    "normalize_ratio_pair",
    "power_majorizes",
    "power_sum",
    "ratio_R",
    "ratio_principle_check",
    "root_compare",
    "summarize",
    "sweep",
    "verify_certificate",
]

"""Computable laboratory for social welfare orders on utility streams.

The package works with eventually periodic streams of utilities, so every
order it implements is decidable: stream comparison, verdict-pattern
detection, residue-selector limits, strict-compression reachability, the
condition algebra that prelinearizes a base preorder, and a dyadic-code
embedding for countable linear orders.
"""

from .embed import DyadicCode, EmbedState, dedekind_lift, embed_all, embed_insert
from .equity import (
    ChainCertificate,
    LawReport,
    LawViolation,
    ReachConfig,
    audit_order,
    interpolate_between,
    is_se,
    replay_violation,
    se_reachable,
    se_witness,
)
from .errors import (
    AlphabetMismatch,
    AlreadyAssigned,
    CoarseSelector,
    EmptyCut,
    IncompatibleConditions,
    InconsistentComparator,
    InfiniteDifference,
    NoPeriodDetected,
    NotInCylinder,
    NotOrdered,
    NotTailEquivalent,
    ParseError,
    SelectorAmbiguous,
    SwoError,
    UnknownElement,
    ValidationFailed,
    WindowTooSmall,
)
from .orders import (
    Comparison,
    OrderSpec,
    ResidueSelector,
    SignProfile,
    compare_limit,
    compare_prefix,
    compare_sea,
    compare_sea_nested,
    resolve_order,
    sign_profile,
    ultra_compare,
    verdict_sequence,
)
from .prelinearize import (
    BasePreorder,
    CompatibilityResult,
    Condition,
    CycleEdge,
    Schedule,
    common_extension,
    compatible,
    condition_dot,
    condition_extends,
    exhaustive_common_extension,
    insert_element,
    linearize,
    replay_cycle,
    restrict_condition,
    ultralimit_schedule,
    validate_condition,
)
from .streams import (
    Alphabet,
    BetweenFlag,
    ClassKey,
    FiniteSupportPermutation,
    NestedStream,
    UtilityStream,
    class_key,
    difference_set,
    dyadic_between,
    key_stream,
    lex_compare,
    lex_value,
    nested_almost_equal,
    normalize,
    parse_nested,
    parse_stream,
    permute,
    permute_nested,
    render_stream,
    sorted_prefix,
    tail_equal,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "AlreadyAssigned",
    "BasePreorder",
    "BetweenFlag",
    "ChainCertificate",
    "ClassKey",
    "CoarseSelector",
    "Comparison",
    "CompatibilityResult",
    "Condition",
    "CycleEdge",
    "DyadicCode",
    "EmbedState",
    "EmptyCut",
    "FiniteSupportPermutation",
    "IncompatibleConditions",
    "InconsistentComparator",
    "InfiniteDifference",
    "LawReport",
    "LawViolation",
    "NestedStream",
    "NoPeriodDetected",
    "NotInCylinder",
    "NotOrdered",
    "NotTailEquivalent",
    "OrderSpec",
    "ParseError",
    "ReachConfig",
    "ResidueSelector",
    "Schedule",
    "SelectorAmbiguous",
    "SignProfile",
    "SwoError",
    "UnknownElement",
    "UtilityStream",
    "ValidationFailed",
    "WindowTooSmall",
    "audit_order",
    "class_key",
    "common_extension",
    "compare_limit",
    "compare_prefix",
    "compare_sea",
    "compare_sea_nested",
    "compatible",
    "condition_dot",
    "condition_extends",
    "dedekind_lift",
    "difference_set",
    "dyadic_between",
    "embed_all",
    "embed_insert",
    "exhaustive_common_extension",
    "insert_element",
    "interpolate_between",
    "is_se",
    "key_stream",
    "lex_compare",
    "lex_value",
    "linearize",
    "nested_almost_equal",
    "normalize",
    "parse_nested",
    "parse_stream",
    "permute",
    "permute_nested",
    "render_stream",
    "replay_cycle",
    "replay_violation",
    "resolve_order",
    "restrict_condition",
    "se_reachable",
    "se_witness",
    "sign_profile",
    "sorted_prefix",
    "tail_equal",
    "ultra_compare",
    "ultralimit_schedule",
    "validate_condition",
    "verdict_sequence",
]

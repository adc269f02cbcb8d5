"""Exact Stirling-type triangles, Fubini/Bell-type sequences and their
last-digit congruences, with a brute-force oracle for small cases."""

__version__ = "0.1.0"

from .errors import (
    CapExceededError,
    GuardError,
    InvalidParameterError,
    NonIntegralError,
    OutOfRangeError,
    StirlabError,
    UnknownIdError,
    UnsupportedFamilyError,
    WindowTooSmallError,
)
from .triangles import Triangle, TriangleKind, get_triangle, iter_rows, triangle_row, triangle_value
from .sequences import (
    Family,
    FamilySpec,
    sequence_value,
    sequence_value_by_recurrence,
    sequence_values,
    sequence_window,
)
from .closed_forms import (
    eval_assoc_recursion,
    eval_closed_form,
    eval_cycle_type_sum,
    get_form,
    list_forms,
)
from .congruences import detect_period, get_claim, list_claims, verify_all, verify_claim
from .oracle import count_partitions_by_blocks, count_permutations_by_cycles

__all__ = [
    "CapExceededError",
    "GuardError",
    "InvalidParameterError",
    "NonIntegralError",
    "OutOfRangeError",
    "StirlabError",
    "UnknownIdError",
    "UnsupportedFamilyError",
    "WindowTooSmallError",
    "Triangle",
    "TriangleKind",
    "get_triangle",
    "iter_rows",
    "triangle_row",
    "triangle_value",
    "Family",
    "FamilySpec",
    "sequence_value",
    "sequence_value_by_recurrence",
    "sequence_values",
    "sequence_window",
    "eval_assoc_recursion",
    "eval_closed_form",
    "eval_cycle_type_sum",
    "get_form",
    "list_forms",
    "detect_period",
    "get_claim",
    "list_claims",
    "verify_all",
    "verify_claim",
    "count_partitions_by_blocks",
    "count_permutations_by_cycles",
]

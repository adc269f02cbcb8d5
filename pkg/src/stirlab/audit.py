"""Oracle-versus-engine audits over the small ranges where enumeration is feasible."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .errors import GuardError, InvalidParameterError
from .oracle import (
    PARTITION_GUARD,
    PERMUTATION_GUARD,
    CycleConstraint,
    PartitionConstraint,
    count_partitions_by_blocks,
    count_permutations_by_cycles,
)
from .sequences import Family, FamilySpec, sequence_value
from .triangles import Kind, TriangleKind, Variant, triangle_row

AUDIT_PARAMS = (1, 2, 3, 4)


@dataclass
class AuditCase:
    name: str
    n: int
    expected: object
    got: object

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def to_dict(self) -> dict:
        return {
            "case": self.name,
            "n": self.n,
            "ok": self.ok,
            "oracle": _jsonable(self.expected),
            "engine": _jsonable(self.got),
        }


def _jsonable(v):
    if isinstance(v, list):
        return [str(x) for x in v]
    return str(v)


def _bounds(n_max: int, perm_n_max: Optional[int]) -> int:
    if n_max < 0:
        raise InvalidParameterError("n_max must be >= 0")
    if n_max > PARTITION_GUARD:
        raise GuardError("n_max", n_max, PARTITION_GUARD)
    if perm_n_max is None:
        perm_n_max = min(n_max, PERMUTATION_GUARD)
    if perm_n_max > PERMUTATION_GUARD:
        raise GuardError("perm_n_max", perm_n_max, PERMUTATION_GUARD)
    return perm_n_max


def oracle_row(kind: TriangleKind, n: int, ordered: bool = False) -> List[int]:
    """Row ``n`` of ``kind`` counted by enumeration (times k! if ``ordered``)."""
    if kind.kind is Kind.FIRST:
        if ordered:
            raise InvalidParameterError("ordered counts apply to set partitions only")
        mc = kind.param if kind.variant is Variant.RESTRICTED else None
        return count_permutations_by_cycles(n, CycleConstraint(max_cycle=mc))
    if kind.variant is Variant.PLAIN:
        c = PartitionConstraint(ordered=ordered)
    elif kind.variant is Variant.R:
        if n < kind.param:
            return [0] * (n + 1)
        c = PartitionConstraint(distinguished_r=kind.param, ordered=ordered)
    elif kind.variant is Variant.RESTRICTED:
        c = PartitionConstraint(max_block=kind.param, ordered=ordered)
    else:
        c = PartitionConstraint(min_block=kind.param, ordered=ordered)
    return count_partitions_by_blocks(n, c)


def audit_kinds() -> List[TriangleKind]:
    kinds = [TriangleKind.stirling2(), TriangleKind.stirling1()]
    for p in AUDIT_PARAMS:
        kinds += [
            TriangleKind.r_stirling2(p),
            TriangleKind.restricted2(p),
            TriangleKind.restricted1(p),
            TriangleKind.associated2(p),
        ]
    return kinds


def audit_triangles(n_max: int = 10, perm_n_max: Optional[int] = None) -> List[AuditCase]:
    """Every supported triangle (m, r <= 4) against enumeration, row by row.

    Partition-based kinds run to ``n_max``; permutation-based kinds to
    ``perm_n_max`` (default ``min(n_max, 9)``).
    """
    perm_n_max = _bounds(n_max, perm_n_max)
    cases = []
    for kind in audit_kinds():
        top = perm_n_max if kind.kind is Kind.FIRST else n_max
        for n in range(top + 1):
            cases.append(AuditCase(str(kind), n, oracle_row(kind, n), triangle_row(kind, n)))
    return cases


def audit_specs() -> List[FamilySpec]:
    specs = [FamilySpec(Family.FUBINI), FamilySpec(Family.BELL)]
    for fam in Family:
        if fam.param_name is not None:
            specs += [FamilySpec(fam, p) for p in AUDIT_PARAMS]
    return specs


def oracle_sequence_value(spec: FamilySpec, n: int) -> int:
    return sum(oracle_row(spec.triangle_kind, n + spec.shift, ordered=spec.ordered))


def audit_sequences(n_max: int = 10, perm_n_max: Optional[int] = None) -> List[AuditCase]:
    """All nine families (m, r <= 4) against oracle row sums.

    r-families need ``n + r`` elements, so they stop at ``n_max - r``.
    """
    perm_n_max = _bounds(n_max, perm_n_max)
    cases = []
    for spec in audit_specs():
        top = perm_n_max if spec.family is Family.RESTRICTED_FACTORIAL else n_max
        top -= spec.shift
        for n in range(top + 1):
            cases.append(AuditCase(str(spec), n, oracle_sequence_value(spec, n), sequence_value(spec, n)))
    return cases

"""Derived sequences: weighted row sums of the triangles, plus direct recurrences.

Every family is a weighted row sum ``a(n) = sum_k w(k) * T(N, k)`` over one
triangle. ``w(k)`` is ``k!`` for the ordered (Fubini-type) families and 1
otherwise. For the r-families the row is ``N = n + r`` and ``k`` is the
absolute column, so the weight ``(k + r)!`` of the shifted notation is just
``K!`` of the absolute column ``K``.

Four families also have a recurrence that never touches a triangle; see
:func:`sequence_value_by_recurrence`.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import CapExceededError, InvalidParameterError, UnsupportedFamilyError
from .triangles import DEFAULT_N_MAX, TriangleKind, get_triangle, iter_rows


class Family(enum.Enum):
    FUBINI = "fubini"
    BELL = "bell"
    R_FUBINI = "r-fubini"
    R_BELL = "r-bell"
    RESTRICTED_BELL = "restricted-bell"
    RESTRICTED_FUBINI = "restricted-fubini"
    RESTRICTED_FACTORIAL = "restricted-factorial"
    ASSOCIATED_BELL = "assoc-bell"
    ASSOCIATED_FUBINI = "assoc-fubini"

    @property
    def param_name(self) -> Optional[str]:
        if self in (Family.FUBINI, Family.BELL):
            return None
        if self in (Family.R_FUBINI, Family.R_BELL):
            return "r"
        return "m"


_ORDERED = {Family.FUBINI, Family.R_FUBINI, Family.RESTRICTED_FUBINI, Family.ASSOCIATED_FUBINI}
_RECURRENT = {
    Family.RESTRICTED_BELL,
    Family.RESTRICTED_FUBINI,
    Family.RESTRICTED_FACTORIAL,
    Family.ASSOCIATED_FUBINI,
}

FAMILY_DESCRIPTIONS = {
    Family.FUBINI: "ordered set partitions (Fubini / surjection numbers)",
    Family.BELL: "set partitions (Bell numbers)",
    Family.R_FUBINI: "ordered partitions of n+r elements, 1..r in distinct blocks",
    Family.R_BELL: "partitions of n+r elements, 1..r in distinct blocks",
    Family.RESTRICTED_BELL: "set partitions, every block of size <= m",
    Family.RESTRICTED_FUBINI: "ordered set partitions, every block of size <= m",
    Family.RESTRICTED_FACTORIAL: "permutations, every cycle of length <= m",
    Family.ASSOCIATED_BELL: "set partitions, every block of size >= m",
    Family.ASSOCIATED_FUBINI: "ordered set partitions, every block of size >= m",
}


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    param: Optional[int] = None

    def __post_init__(self):
        name = self.family.param_name
        if name is None:
            if self.param is not None:
                raise InvalidParameterError(f"{self.family.value} takes no parameter")
            return
        if not isinstance(self.param, int) or isinstance(self.param, bool):
            raise InvalidParameterError(f"{self.family.value} needs integer parameter {name}")
        if self.param < 1:
            raise InvalidParameterError(f"{name} must be >= 1, got {self.param}")

    @classmethod
    def of(cls, name: str, param: Optional[int] = None) -> "FamilySpec":
        try:
            fam = Family(name)
        except ValueError:
            raise InvalidParameterError(f"unknown family {name!r}") from None
        return cls(fam, param)

    @property
    def index_offset(self) -> int:
        return 0

    @property
    def ordered(self) -> bool:
        return self.family in _ORDERED

    @property
    def has_recurrence(self) -> bool:
        return self.family in _RECURRENT

    @property
    def shift(self) -> int:
        """Triangle row of ``a(n)`` is ``n + shift``."""
        return self.param if self.family in (Family.R_FUBINI, Family.R_BELL) else 0

    @property
    def triangle_kind(self) -> TriangleKind:
        f, p = self.family, self.param
        if f in (Family.FUBINI, Family.BELL):
            return TriangleKind.stirling2()
        if f in (Family.R_FUBINI, Family.R_BELL):
            return TriangleKind.r_stirling2(p)
        if f in (Family.RESTRICTED_BELL, Family.RESTRICTED_FUBINI):
            return TriangleKind.restricted2(p)
        if f is Family.RESTRICTED_FACTORIAL:
            return TriangleKind.restricted1(p)
        return TriangleKind.associated2(p)

    def params(self) -> Dict[str, int]:
        name = self.family.param_name
        return {} if name is None else {name: self.param}

    def __str__(self) -> str:
        name = self.family.param_name
        return self.family.value if name is None else f"{self.family.value}({name}={self.param})"


@dataclass
class SequenceWindow:
    spec: FamilySpec
    start: int
    values: List[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        """Value at absolute index ``n``."""
        i = n - self.start
        if not 0 <= i < len(self.values):
            raise IndexError(n)
        return self.values[i]

    @property
    def indices(self) -> range:
        return range(self.start, self.start + len(self.values))


def weighted_row_sum(spec: FamilySpec, row) -> int:
    if not spec.ordered:
        return sum(row)
    # Horner form of sum_k k! v_k: only small-integer multiplications
    total = 0
    for k in range(len(row) - 1, 0, -1):
        total = (total + row[k]) * k
    return total + row[0]


def _check_n(n: int, cap: int = DEFAULT_N_MAX) -> None:
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    if n > cap:
        raise CapExceededError("n", n, cap)


def sequence_value(spec: FamilySpec, n: int) -> int:
    """``a(n)`` as the weighted row sum of the family's (shared, memoized) triangle."""
    _check_n(n)
    tri = get_triangle(spec.triangle_kind)
    return weighted_row_sum(spec, tri.row(n + spec.shift))


def sequence_window(spec: FamilySpec, start: int, length: int) -> SequenceWindow:
    if start < 0 or length < 0:
        raise InvalidParameterError("start and length must be >= 0")
    _check_n(start + length - 1 if length else start)
    return SequenceWindow(spec, start, [sequence_value(spec, n) for n in range(start, start + length)])


# direct recurrences ------------------------------------------------------


def _restricted_bell_gen(m: int) -> Iterator[int]:
    # B(n+1) = sum_{j<m} C(n, j) B(n-j)
    b = [1]
    yield 1
    n = 0
    while True:
        b.append(sum(math.comb(n, j) * b[n - j] for j in range(min(m - 1, n) + 1)))
        yield b[-1]
        n += 1


def _restricted_fubini_gen(m: int) -> Iterator[int]:
    # F(n) = sum_{1<=k<=m} C(n, k) F(n-k)
    f = [1]
    yield 1
    n = 1
    while True:
        f.append(sum(math.comb(n, k) * f[n - k] for k in range(1, min(m, n) + 1)))
        yield f[-1]
        n += 1


def _restricted_factorial_gen(m: int) -> Iterator[int]:
    # A(n+1) = sum_{k<m} n(n-1)...(n-k+1) A(n-k)
    a = [1]
    yield 1
    n = 0
    while True:
        total = 0
        fall = 1
        for k in range(min(m - 1, n) + 1):
            if k:
                fall *= n - k + 1
            total += fall * a[n - k]
        a.append(total)
        yield total
        n += 1


def _associated_fubini_gen(m: int) -> Iterator[int]:
    # F(n) = sum_{i<=n-m} C(n, i) F(i) for n >= m
    f = [1]
    yield 1
    pascal = [1]
    n = 1
    while True:
        pascal = [1] + [pascal[i - 1] + pascal[i] for i in range(1, n)] + [1]
        if n < m:
            f.append(0)
        else:
            f.append(sum(pascal[i] * f[i] for i in range(n - m + 1) if f[i]))
        yield f[-1]
        n += 1


def _triangle_gen(spec: "FamilySpec") -> Iterator[int]:
    shift = spec.shift
    for N, row in enumerate(iter_rows(spec.triangle_kind)):
        if N >= shift:
            yield weighted_row_sum(spec, row)


_RECURRENCES = {
    Family.RESTRICTED_BELL: _restricted_bell_gen,
    Family.RESTRICTED_FUBINI: _restricted_fubini_gen,
    Family.RESTRICTED_FACTORIAL: _restricted_factorial_gen,
    Family.ASSOCIATED_FUBINI: _associated_fubini_gen,
}


def sequence_value_by_recurrence(spec: FamilySpec, n: int) -> int:
    """``a(n)`` from the family's own recurrence, independent of any triangle.

    Only restricted Bell, restricted Fubini, restricted factorial and
    associated Fubini have one.
    """
    if not spec.has_recurrence:
        raise UnsupportedFamilyError(f"{spec} has no direct recurrence")
    _check_n(n)
    return sequence_values(spec, n, method="recurrence")[n]


# bulk evaluation ---------------------------------------------------------


class _Stream:
    """Values produced so far plus the generator that continues them."""

    def __init__(self, gen: Iterator[int]):
        self.values: List[int] = []
        self.gen = gen
        self.lock = threading.Lock()

    def fill(self, n: int) -> None:
        if len(self.values) > n:
            return
        with self.lock:
            vals, gen = self.values, self.gen
            while len(vals) <= n:
                vals.append(next(gen))


_BULK: Dict[Tuple[FamilySpec, str], _Stream] = {}
_BULK_LOCK = threading.Lock()


def _stream(spec: FamilySpec, method: str) -> _Stream:
    if method == "auto":
        method = "recurrence" if spec.has_recurrence else "triangle"
    if method not in ("triangle", "recurrence"):
        raise InvalidParameterError(f"unknown method {method!r}")
    if method == "recurrence" and not spec.has_recurrence:
        raise UnsupportedFamilyError(f"{spec} has no direct recurrence")
    key = (spec, method)
    st = _BULK.get(key)
    if st is None:
        with _BULK_LOCK:
            st = _BULK.get(key)
            if st is None:
                gen = _RECURRENCES[spec.family](spec.param) if method == "recurrence" else _triangle_gen(spec)
                st = _BULK[key] = _Stream(gen)
    return st


def bulk_value(spec: FamilySpec, n: int, method: str = "auto") -> int:
    """``a(n)`` from the cached one-pass stream (see :func:`sequence_values`)."""
    _check_n(n)
    st = _stream(spec, method)
    st.fill(n)
    return st.values[n]


def sequence_values(spec: FamilySpec, n_max: int, method: str = "auto") -> List[int]:
    """``[a(0), ..., a(n_max)]`` computed in one pass.

    ``method="triangle"`` streams triangle rows without retaining them;
    ``"recurrence"`` uses the direct recurrence; ``"auto"`` picks the
    recurrence when the family has one. Each ``(spec, method)`` stream is
    cached and resumes where it stopped.
    """
    _check_n(n_max)
    st = _stream(spec, method)
    st.fill(n_max)
    return st.values[: n_max + 1]


def clear_caches() -> None:
    with _BULK_LOCK:
        _BULK.clear()

"""Stirling-type triangles computed by exact memoized recurrences.

Six triangles are supported, identified by a :class:`TriangleKind`:

========================  ==========================================
``stirling2()``           partitions of an n-set into k blocks
``stirling1()``           permutations of n elements with k cycles
``r_stirling2(r)``        partitions keeping 1..r in distinct blocks
``restricted2(m)``        partitions whose blocks have <= m elements
``restricted1(m)``        permutations whose cycles have <= m elements
``associated2(m)``        partitions whose blocks have >= m elements
========================  ==========================================

Indices are absolute. For the r-Stirling triangle the first nonzero row is
``n = r`` with ``T(r, r) = 1``.

Binomial and falling-factorial coefficients for a row are computed once per
row with :func:`math.comb` / :func:`math.perm`.
"""

from __future__ import annotations

import enum
import math
import threading
from collections import deque
from dataclasses import dataclass
from typing import Iterator, List, Optional

from .errors import CapExceededError, InvalidParameterError

DEFAULT_N_MAX = 5000

Row = List[int]


class Kind(enum.Enum):
    SECOND = "second"
    FIRST = "first"


class Variant(enum.Enum):
    PLAIN = "plain"
    R = "r"
    RESTRICTED = "restricted"
    ASSOCIATED = "associated"


@dataclass(frozen=True)
class TriangleKind:
    kind: Kind
    variant: Variant = Variant.PLAIN
    param: Optional[int] = None

    def __post_init__(self):
        if self.variant is Variant.PLAIN:
            if self.param is not None:
                raise InvalidParameterError("plain triangles take no parameter")
            return
        if self.variant is Variant.R and self.kind is not Kind.SECOND:
            raise InvalidParameterError("r-Stirling numbers exist only for the second kind")
        if self.variant is Variant.ASSOCIATED and self.kind is not Kind.SECOND:
            raise InvalidParameterError(
                "associated Stirling numbers of the first kind are not supported"
            )
        if not isinstance(self.param, int) or isinstance(self.param, bool):
            raise InvalidParameterError(f"{self.variant.value} triangle needs an integer parameter")
        if self.param < 1:
            name = "r" if self.variant is Variant.R else "m"
            raise InvalidParameterError(f"{name} must be >= 1, got {self.param}")

    # constructors -------------------------------------------------------

    @classmethod
    def stirling2(cls) -> "TriangleKind":
        return cls(Kind.SECOND)

    @classmethod
    def stirling1(cls) -> "TriangleKind":
        return cls(Kind.FIRST)

    @classmethod
    def r_stirling2(cls, r: int) -> "TriangleKind":
        return cls(Kind.SECOND, Variant.R, r)

    @classmethod
    def restricted2(cls, m: int) -> "TriangleKind":
        return cls(Kind.SECOND, Variant.RESTRICTED, m)

    @classmethod
    def restricted1(cls, m: int) -> "TriangleKind":
        return cls(Kind.FIRST, Variant.RESTRICTED, m)

    @classmethod
    def associated2(cls, m: int) -> "TriangleKind":
        return cls(Kind.SECOND, Variant.ASSOCIATED, m)

    # --------------------------------------------------------------------

    @property
    def depth(self) -> int:
        """How many previous rows the recurrence reads."""
        if self.variant in (Variant.RESTRICTED, Variant.ASSOCIATED):
            return self.param
        return 1

    @property
    def key(self) -> str:
        """Stable text key, used for cache file names and reports."""
        base = f"{self.kind.value}-{self.variant.value}"
        return base if self.param is None else f"{base}-{self.param}"

    def __str__(self) -> str:
        return self.key


def _next_row(tk: TriangleKind, history, n: int) -> Row:
    """Row ``n`` of ``tk`` given ``history[-j]`` == row ``n - j``."""
    if n == 0:
        return [0] if tk.variant is Variant.R else [1]

    row = [0] * (n + 1)
    prev = history[-1]

    if tk.variant is Variant.PLAIN:
        mult = n - 1 if tk.kind is Kind.FIRST else None
        for k in range(1, n + 1):
            a = prev[k] if k < n else 0
            row[k] = (mult if mult is not None else k) * a + prev[k - 1]
        return row

    if tk.variant is Variant.R:
        r = tk.param
        if n < r:
            return row
        if n == r:
            row[r] = 1
            return row
        for k in range(r, n + 1):
            a = prev[k] if k < n else 0
            row[k] = k * a + prev[k - 1]
        return row

    m = tk.param
    if tk.variant is Variant.ASSOCIATED:
        # element n joins an existing block, or opens a block with m-1 chosen companions
        for k in range(1, n // m + 1):
            a = prev[k] if k < n else 0
            row[k] = k * a
        if n >= m:
            c = math.comb(n - 1, m - 1)
            base = history[-m]
            for k in range(1, (n - m) + 2):
                if k - 1 < len(base) and base[k - 1]:
                    row[k] += c * base[k - 1]
        return row

    # restricted: condition on the block (or cycle) holding element n, of size i
    top = min(m, n)
    if tk.kind is Kind.SECOND:
        coeffs = [math.comb(n - 1, i - 1) for i in range(1, top + 1)]
    else:
        coeffs = [math.perm(n - 1, i - 1) for i in range(1, top + 1)]
    lo = -(-n // m)  # ceil(n/m): fewer blocks cannot hold n elements
    for k in range(max(lo, 1), n + 1):
        total = 0
        for i in range(1, top + 1):
            src = history[-i]
            if k - 1 <= n - i:
                v = src[k - 1]
                if v:
                    total += coeffs[i - 1] * v
        row[k] = total
    return row


def iter_rows(tk: TriangleKind, n_max: Optional[int] = None) -> Iterator[Row]:
    """Yield rows ``0..n_max`` (unbounded if None) keeping only ``tk.depth``
    rows alive."""
    history: deque = deque(maxlen=max(tk.depth, 1))
    n = -1
    while n_max is None or n < n_max:
        n += 1
        row = _next_row(tk, history, n)
        history.append(row)
        yield row


class Triangle:
    """Growable memo table of one triangle.

    Rows are filled on demand, one at a time, up to ``n_max``. Reads of rows
    already present are lock-free; growth is serialized.
    """

    def __init__(self, kind: TriangleKind, n_max: int = DEFAULT_N_MAX, rows=None):
        self.kind = kind
        self.n_max = n_max
        self._rows: List[Row] = []
        self._lock = threading.Lock()
        if rows:
            self._rows.extend(list(r) for r in rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> List[Row]:
        return self._rows

    def _check(self, n: int) -> None:
        if n < 0:
            raise InvalidParameterError(f"n must be >= 0, got {n}")
        if n > self.n_max:
            raise CapExceededError("n", n, self.n_max)

    def extend_to(self, n: int) -> None:
        self._check(n)
        if n < len(self._rows):
            return
        with self._lock:
            rows = self._rows
            while len(rows) <= n:
                k = len(rows)
                depth = self.kind.depth
                rows.append(_next_row(self.kind, rows[max(0, k - depth):k], k))

    def row(self, n: int) -> Row:
        self.extend_to(n)
        return list(self._rows[n])

    def value(self, n: int, k: int) -> int:
        if k < 0:
            raise InvalidParameterError(f"k must be >= 0, got {k}")
        self.extend_to(n)
        return self._rows[n][k] if k <= n else 0


_TABLES: dict = {}
_TABLES_LOCK = threading.Lock()


def get_triangle(kind: TriangleKind) -> Triangle:
    """Process-wide shared memo for ``kind``."""
    t = _TABLES.get(kind)
    if t is None:
        with _TABLES_LOCK:
            t = _TABLES.setdefault(kind, Triangle(kind))
    return t


def clear_tables() -> None:
    with _TABLES_LOCK:
        _TABLES.clear()


def triangle_value(kind: TriangleKind, n: int, k: int) -> int:
    """Exact ``T(n, k)`` of the triangle ``kind``."""
    return get_triangle(kind).value(n, k)


def triangle_row(kind: TriangleKind, n: int) -> Row:
    """``[T(n, 0), ..., T(n, n)]``."""
    return get_triangle(kind).row(n)

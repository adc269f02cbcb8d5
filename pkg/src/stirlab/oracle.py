"""Brute-force ground truth by exhaustive enumeration.

Set partitions are generated as restricted growth strings and permutations
in cycle notation by backtracking. Constraints are applied as post-filters
on the enumerated objects; nothing here shares code with the recurrences.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from .errors import GuardError, InvalidParameterError

PARTITION_GUARD = 12
PERMUTATION_GUARD = 9


@dataclass(frozen=True)
class PartitionConstraint:
    min_block: int = 1
    max_block: Optional[int] = None
    distinguished_r: int = 0
    ordered: bool = False

    def __post_init__(self):
        if self.min_block < 1:
            raise InvalidParameterError("min_block must be >= 1")
        if self.max_block is not None and self.max_block < self.min_block:
            raise InvalidParameterError("max_block must be >= min_block")
        if self.distinguished_r < 0:
            raise InvalidParameterError("distinguished_r must be >= 0")

    def admits(self, sizes: Tuple[int, ...], separated: int) -> bool:
        if separated < self.distinguished_r:
            return False
        if sizes and sizes[0] < self.min_block:
            return False
        if self.max_block is not None and sizes and sizes[-1] > self.max_block:
            return False
        return True


@dataclass(frozen=True)
class CycleConstraint:
    max_cycle: Optional[int] = None

    def __post_init__(self):
        if self.max_cycle is not None and self.max_cycle < 1:
            raise InvalidParameterError("max_cycle must be >= 1")


def restricted_growth_strings(n: int) -> Iterator[List[int]]:
    """All RGS ``a`` of length n: a[0] = 0, a[i] <= 1 + max(a[:i]).

    The same list is yielded each time, mutated in place; copy it to keep it.
    """
    if n == 0:
        yield []
        return
    a = [0] * n
    mx = [0] * n  # mx[i] = max(a[:i+1])

    def rec(i):
        if i == n:
            yield a
            return
        for v in range(mx[i - 1] + 2):
            a[i] = v
            mx[i] = max(mx[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)


def iter_set_partitions(n: int) -> Iterator[List[List[int]]]:
    """Every partition of ``{1..n}`` as a list of blocks, each exactly once."""
    for a in restricted_growth_strings(n):
        blocks: List[List[int]] = []
        for elem, b in enumerate(a, start=1):
            if b == len(blocks):
                blocks.append([])
            blocks[b].append(elem)
        yield blocks


def iter_permutation_cycles(n: int) -> Iterator[List[List[int]]]:
    """Every permutation of ``{1..n}`` in cycle notation, each exactly once.

    A cycle starts at the smallest unused element and is then extended by any
    unused element or closed. The yielded list is reused; copy it to keep it.
    """
    used = [False] * (n + 1)
    cycles: List[List[int]] = []

    def open_cycle(remaining):
        if remaining == 0:
            yield cycles
            return
        start = used.index(False, 1)
        used[start] = True
        cycles.append([start])
        yield from extend(remaining - 1)
        cycles.pop()
        used[start] = False

    def extend(remaining):
        yield from open_cycle(remaining)  # close current cycle
        cur = cycles[-1]
        for x in range(1, n + 1):
            if not used[x]:
                used[x] = True
                cur.append(x)
                yield from extend(remaining - 1)
                cur.pop()
                used[x] = False

    yield from open_cycle(n)


@lru_cache(maxsize=None)
def _partition_profile(n: int) -> Counter:
    # (sorted block sizes, length of the pairwise-separated prefix) -> count
    profile: Counter = Counter()
    for a in restricted_growth_strings(n):
        sizes = [0] * (max(a) + 1 if a else 0)
        for b in a:
            sizes[b] += 1
        sep = 0
        while sep < n and a[sep] == sep:
            sep += 1
        profile[(tuple(sorted(sizes)), sep)] += 1
    return profile


@lru_cache(maxsize=None)
def _cycle_profile(n: int) -> Counter:
    profile: Counter = Counter()
    for cycles in iter_permutation_cycles(n):
        profile[tuple(sorted(len(c) for c in cycles))] += 1
    return profile


def count_partitions_by_blocks(n: int, c: PartitionConstraint = PartitionConstraint()) -> List[int]:
    """Entry k = number of (ordered if ``c.ordered``) partitions of {1..n}
    into k blocks satisfying ``c``."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    if n > PARTITION_GUARD:
        raise GuardError("n", n, PARTITION_GUARD)
    if c.distinguished_r > n:
        raise InvalidParameterError("distinguished_r must be <= n")
    counts = [0] * (n + 1)
    for (sizes, sep), cnt in _partition_profile(n).items():
        if c.admits(sizes, sep):
            counts[len(sizes)] += cnt
    if c.ordered:
        counts = [math.factorial(k) * v for k, v in enumerate(counts)]
    return counts


def count_permutations_by_cycles(n: int, c: CycleConstraint = CycleConstraint()) -> List[int]:
    """Entry k = number of permutations of {1..n} with k cycles, each of
    length at most ``c.max_cycle``."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    if n > PERMUTATION_GUARD:
        raise GuardError("n", n, PERMUTATION_GUARD)
    counts = [0] * (n + 1)
    for lengths, cnt in _cycle_profile(n).items():
        if c.max_cycle is None or not lengths or lengths[-1] <= c.max_cycle:
            counts[len(lengths)] += cnt
    return counts

"""Brute-force enumeration oracles over restricted partitions and compositions.

Everything here is deliberately naive and exact: partitions are enumerated
by bounded recursive descent over allowed parts, compositions by
depth-first search, and all weights use big-integer arithmetic.  These
routines are the ground truth that the fast series recurrences are tested
against; they are exponential in n and guarded by a node budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .subsets import SubsetSpec, support_upto

DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """Enumeration walked more nodes than the configured budget allows."""


class _Budget:
    __slots__ = ("remaining", "limit")

    def __init__(self, limit: int):
        self.limit = limit
        self.remaining = limit

    def tick(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetExceededError(f"enumeration exceeded the {self.limit}-node budget")


@dataclass(frozen=True)
class Partition:
    """Multiset of positive parts, stored as (part, multiplicity) runs.

    ``items`` is sorted by part value with all multiplicities >= 1; the
    empty tuple is the empty partition.
    """

    items: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        mult: dict[int, int] = {}
        for p in parts:
            if p < 1:
                raise ValueError("parts must be positive")
            mult[p] = mult.get(p, 0) + 1
        return cls(items=tuple(sorted(mult.items())))

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(self.items)

    @property
    def size(self) -> int:
        return sum(part * m for part, m in self.items)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.items)

    @property
    def largest_part(self) -> int:
        return self.items[-1][0] if self.items else 0

    def parts(self) -> tuple[int, ...]:
        out: list[int] = []
        for part, m in reversed(self.items):
            out.extend([part] * m)
        return tuple(out)


@dataclass(frozen=True)
class Composition:
    """Ordered sequence of positive parts; the empty tuple has size 0."""

    parts: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)


def multinomial_term(partition: Partition) -> tuple[int, int]:
    """Signed weight of one partition: ((-1)**length, length! / prod(m_i!)).

    The weight counts the multiset permutations of the parts, i.e. the
    compositions sharing this part multiset, and is always a positive
    integer.  Computed as a product of binomials so no division occurs.
    """
    sign = -1 if partition.length % 2 else 1
    weight = 1
    placed = 0
    for _, m in partition.items:
        placed += m
        weight *= math.comb(placed, m)
    return sign, weight


def enumerate_partitions(
    spec: SubsetSpec, n: int, budget: int = DEFAULT_BUDGET
) -> Iterator[Partition]:
    """Yield every partition with parts in S and size <= n, starting from the
    empty partition, in lexicographic order of the nondecreasing part runs."""
    if n < 0:
        raise ValueError("n must be >= 0")
    allowed = support_upto(spec, n)
    counter = _Budget(budget)

    def descend(start: int, remaining: int, runs: list[tuple[int, int]]) -> Iterator[Partition]:
        counter.tick()
        yield Partition(items=tuple(runs))
        for i in range(start, len(allowed)):
            part = allowed[i]
            if part > remaining:
                break
            count = 1
            while count * part <= remaining:
                runs.append((part, count))
                yield from descend(i + 1, remaining - count * part, runs)
                runs.pop()
                count += 1

    yield from descend(0, n, [])


def enumerate_compositions(
    spec: SubsetSpec, n: int, budget: int = DEFAULT_BUDGET
) -> Iterator[Composition]:
    """Yield every composition with parts in S and size <= n, depth first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    allowed = support_upto(spec, n)
    counter = _Budget(budget)

    def descend(remaining: int, parts: list[int]) -> Iterator[Composition]:
        counter.tick()
        yield Composition(parts=tuple(parts))
        for part in allowed:
            if part > remaining:
                break
            parts.append(part)
            yield from descend(remaining - part, parts)
            parts.pop()

    yield from descend(n, [])


# ---------------------------------------------------------------------------
# profiles: one traversal, answers for every n' <= n

def signed_partition_profile(spec: SubsetSpec, n: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Cumulative signed partition sums for 0..n.

    Entry n' is the sum over partitions with parts in S and size <= n' of
    (-1)**length * length! / prod(m_i!).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    allowed = support_upto(spec, n)
    counter = _Budget(budget)
    by_size = [0] * (n + 1)

    def descend(start: int, size: int, length: int, weight: int) -> None:
        counter.tick()
        by_size[size] += weight if length % 2 == 0 else -weight
        for i in range(start, len(allowed)):
            part = allowed[i]
            if size + part > n:
                break
            count = 1
            w = weight
            while size + count * part <= n:
                # appending a run of `count` copies multiplies the multiset-
                # permutation count by C(length + count, count)
                w = weight * math.comb(length + count, count)
                descend(i + 1, size + count * part, length + count, w)
                count += 1

    descend(0, 0, 0, 1)
    out = [0] * (n + 1)
    acc = 0
    for j in range(n + 1):
        acc += by_size[j]
        out[j] = acc
    return out


def composition_profile(
    spec: SubsetSpec, n: int, budget: int = DEFAULT_BUDGET
) -> tuple[list[int], list[int]]:
    """(signed, counts) per exact size 0..n over compositions with parts in S.

    signed[j] sums (-1)**length over compositions of size exactly j;
    counts[j] is their number.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    allowed = support_upto(spec, n)
    counter = _Budget(budget)
    signed = [0] * (n + 1)
    counts = [0] * (n + 1)

    def descend(size: int, parity: int) -> None:
        counter.tick()
        signed[size] += parity
        counts[size] += 1
        for part in allowed:
            nxt = size + part
            if nxt > n:
                break
            descend(nxt, -parity)

    descend(0, 1)
    return signed, counts


# ---------------------------------------------------------------------------
# headline quantities

def c_signed_partition(spec: SubsetSpec, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Signed partition sum over all partitions with parts in S, size <= n."""
    return signed_partition_profile(spec, n, budget=budget)[n]


def c_signed_composition(spec: SubsetSpec, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Sum of (-1)**length over compositions with parts in S, size <= n."""
    signed, _ = composition_profile(spec, n, budget=budget)
    return sum(signed)


def count_compositions(spec: SubsetSpec, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of compositions with parts in S and size exactly n."""
    _, counts = composition_profile(spec, n, budget=budget)
    return counts[n]

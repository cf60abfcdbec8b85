"""Shared fixtures and independent test oracles.

The oracles here deliberately use different algorithms from the package:
compositions come from breakpoint bitmasks, partitions from deduplicating
those compositions, and counting densities from numpy sieves.  Tests that
pit package routines against these helpers are genuine cross-checks.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

import qdensity as qd


@pytest.fixture(scope="session")
def ap23_file(tmp_path_factory):
    """Member list of the residue class 2 mod 3, truncated at 12000."""
    path = tmp_path_factory.mktemp("sets") / "ap23.txt"
    members = [k for k in range(1, 12001) if k % 3 == 2]
    path.write_text("\n".join(str(m) for m in members) + "\n")
    return str(path)


@pytest.fixture(scope="session")
def fixture_specs(ap23_file):
    """The seven-spec family used throughout the cross-method tests."""
    return [
        qd.parse_set_spec("all"),
        qd.parse_set_spec("multiples:2"),
        qd.parse_set_spec("multiples:3"),
        qd.parse_set_spec(f"file:{ap23_file}"),
        qd.parse_set_spec("finite:1,2"),
        qd.parse_set_spec("finite:1,3"),
        qd.parse_set_spec("finite:2,5"),
    ]


# ---------------------------------------------------------------------------
# independent oracles

def compositions_by_masks(total: int, allowed: set[int]) -> list[tuple[int, ...]]:
    """All compositions of `total` with parts in `allowed`, via the bijection
    between compositions of n and subsets of the n-1 possible breakpoints."""
    if total == 0:
        return [()]
    out = []
    for mask in range(2 ** (total - 1)):
        parts = []
        run = 1
        for pos in range(total - 1):
            if mask >> pos & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        if all(p in allowed for p in parts):
            out.append(tuple(parts))
    return out


def partitions_by_masks(total: int, allowed: set[int]) -> set[tuple[int, ...]]:
    """All partitions (as nonincreasing tuples) of `total` with parts in
    `allowed`, obtained by canonicalizing the mask compositions."""
    return {
        tuple(sorted(parts, reverse=True))
        for parts in compositions_by_masks(total, allowed)
    }


def squarefree_count(upper: int) -> int:
    mask = np.ones(upper + 1, dtype=bool)
    mask[0] = False
    for d in range(2, math.isqrt(upper) + 1):
        mask[d * d :: d * d] = False
    return int(mask.sum())


def prime_count(upper: int) -> int:
    mask = np.ones(upper + 1, dtype=bool)
    mask[:2] = False
    for d in range(2, math.isqrt(upper) + 1):
        if mask[d]:
            mask[d * d :: d] = False
    return int(mask.sum())


def naive_partition_count(total: int) -> int:
    """p(n) by the textbook two-variable recursion (independent of the
    package's enumerator)."""

    def count(remaining: int, largest: int) -> int:
        if remaining == 0:
            return 1
        return sum(count(remaining - k, k) for k in range(1, min(remaining, largest) + 1))

    return count(total, total)

"""Descriptions of subsets of the positive integers.

A :class:`SubsetSpec` is an immutable description of a set S of positive
integers.  Every spec answers membership queries, produces the 0/1
indicator coefficients consumed by the series machinery (index 0 always
carries the constant term 1), and counts members up to a bound as an exact
fraction.

Specs are built programmatically (:func:`multiples`, :func:`finite`, ...)
or parsed from the one-line grammar shared with the CLI::

    all | ap:<r>:<t> | multiples:<t> | finite:<n1>,<n2>,... |
    union:<spec>;<spec>;... | squarefree | primes | file:<path>

Membership for ``squarefree`` and ``primes`` uses plain trial division
(these sets are exploratory, simplicity wins); bulk indicator prefixes
switch to sieves.  The two routes are checked against each other in the
test suite.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

KINDS = ("all", "ap", "finite", "union", "squarefree", "primes", "file")


class SetSpecError(ValueError):
    """Malformed set specification.

    Carries a 1-based ``column`` (and ``line`` for file contents) pointing
    at the offending token.
    """

    def __init__(self, message: str, column: int | None = None, line: int | None = None):
        self.column = column
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class TruncationInsufficientError(RuntimeError):
    """A file-backed member list is too short to answer the query."""


@dataclass(frozen=True)
class SubsetSpec:
    """A described subset of the positive integers.

    Exactly one payload group is used, selected by ``kind``: ``residue`` and
    ``modulus`` for arithmetic progressions, ``members`` for explicit lists
    (finite or file-backed), ``children`` for unions.
    """

    kind: str
    name: str
    residue: int = 0
    modulus: int = 0
    members: tuple[int, ...] = ()
    children: tuple["SubsetSpec", ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SetSpecError(f"unknown set kind {self.kind!r}")
        if self.kind == "ap":
            if not (1 <= self.residue <= self.modulus):
                raise SetSpecError(
                    f"arithmetic progression needs 1 <= r <= t, got r={self.residue} t={self.modulus}"
                )
        if self.kind in ("finite", "file"):
            if not self.members:
                raise SetSpecError("explicit member list must be nonempty")
            if self.members[0] < 1:
                raise SetSpecError("members must be positive integers")
            if any(b <= a for a, b in zip(self.members, self.members[1:])):
                raise SetSpecError("member list must be strictly increasing")
        if self.kind == "union" and not self.children:
            raise SetSpecError("union needs at least one child spec")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class IndicatorPrefix:
    """Truncated indicator coefficients: a_0 = 1 and a_n = [n in S] for n >= 1."""

    n_max: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if len(self.coeffs) != self.n_max + 1:
            raise ValueError("coefficient vector must have length n_max + 1")
        if self.coeffs[0] != 1:
            raise ValueError("constant term must be 1")


# ---------------------------------------------------------------------------
# constructors

def all_naturals() -> SubsetSpec:
    return SubsetSpec(kind="all", name="all")


def arithmetic_progression(residue: int, modulus: int) -> SubsetSpec:
    """Positive integers congruent to `residue` modulo `modulus` (1 <= r <= t)."""
    return SubsetSpec(kind="ap", name=f"ap:{residue}:{modulus}", residue=residue, modulus=modulus)


def multiples(modulus: int) -> SubsetSpec:
    """Positive multiples of `modulus`; sugar for ap with r = t."""
    spec = arithmetic_progression(modulus, modulus)
    return SubsetSpec(kind="ap", name=f"multiples:{modulus}", residue=spec.residue, modulus=spec.modulus)


def finite(members) -> SubsetSpec:
    """Explicit finite set; members are deduplicated and sorted."""
    items = tuple(sorted(set(int(m) for m in members)))
    return SubsetSpec(kind="finite", name="finite:" + ",".join(str(m) for m in items), members=items)


def union(children) -> SubsetSpec:
    kids = tuple(children)
    return SubsetSpec(kind="union", name="union:" + ";".join(c.name for c in kids), children=kids)


def squarefree() -> SubsetSpec:
    return SubsetSpec(kind="squarefree", name="squarefree")


def primes() -> SubsetSpec:
    return SubsetSpec(kind="primes", name="primes")


def from_file(path: str) -> SubsetSpec:
    """File-backed set: one positive integer per line, strictly increasing.

    The list is understood as everything known about S up to its last
    entry; queries past that point raise TruncationInsufficientError.
    """
    members = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text:
                continue
            try:
                value = int(text)
            except ValueError:
                raise SetSpecError(f"not an integer: {text!r}", line=lineno) from None
            if value < 1:
                raise SetSpecError(f"members must be >= 1, got {value}", line=lineno)
            if members and value <= members[-1]:
                raise SetSpecError(
                    f"members must be strictly increasing, got {value} after {members[-1]}",
                    line=lineno,
                )
            members.append(value)
    if not members:
        raise SetSpecError(f"no members in {path}")
    return SubsetSpec(kind="file", name=f"file:{path}", members=tuple(members))


# ---------------------------------------------------------------------------
# grammar

def parse_set_spec(text: str, _offset: int = 0) -> SubsetSpec:
    """Parse the set-spec grammar, raising SetSpecError with a column on failure."""
    if not text:
        raise SetSpecError("empty set spec", column=_offset + 1)
    head, sep, rest = text.partition(":")
    arg_col = _offset + len(head) + 2  # 1-based column of the first argument char

    if head == "all":
        _no_args(head, sep, _offset)
        return all_naturals()
    if head == "squarefree":
        _no_args(head, sep, _offset)
        return squarefree()
    if head == "primes":
        _no_args(head, sep, _offset)
        return primes()
    if head == "ap":
        r_text, t_sep, t_text = rest.partition(":")
        if not t_sep:
            raise SetSpecError("ap needs two arguments: ap:<r>:<t>", column=arg_col)
        r = _positive_int(r_text, "residue", arg_col)
        t = _positive_int(t_text, "modulus", arg_col + len(r_text) + 1)
        if r > t:
            raise SetSpecError(f"residue {r} exceeds modulus {t}", column=arg_col)
        return arithmetic_progression(r, t)
    if head == "multiples":
        t = _positive_int(rest, "modulus", arg_col)
        return multiples(t)
    if head == "finite":
        if not rest:
            raise SetSpecError("finite needs a comma-separated member list", column=arg_col)
        values = []
        col = arg_col
        for token in rest.split(","):
            values.append(_positive_int(token, "member", col))
            col += len(token) + 1
        return finite(values)
    if head == "union":
        if not rest:
            raise SetSpecError("union needs ;-separated child specs", column=arg_col)
        children = []
        col = arg_col
        for token in rest.split(";"):
            children.append(parse_set_spec(token, _offset=col - 1))
            col += len(token) + 1
        return union(children)
    if head == "file":
        if not rest:
            raise SetSpecError("file needs a path", column=arg_col)
        return from_file(rest)
    raise SetSpecError(f"unknown set kind {head!r}", column=_offset + 1)


def _no_args(head: str, sep: str, offset: int) -> None:
    if sep:
        raise SetSpecError(f"{head!r} takes no arguments", column=offset + len(head) + 1)


def _positive_int(token: str, what: str, column: int) -> int:
    token = token.strip()
    try:
        value = int(token)
    except ValueError:
        raise SetSpecError(f"{what} must be an integer, got {token!r}", column=column) from None
    if value < 1:
        raise SetSpecError(f"{what} must be >= 1, got {value}", column=column)
    return value


# ---------------------------------------------------------------------------
# membership

def contains(spec: SubsetSpec, n: int) -> bool:
    """True iff n is a member of S; n must be >= 1."""
    if n < 1:
        raise ValueError(f"membership is defined for n >= 1, got {n}")
    if spec.kind == "all":
        return True
    if spec.kind == "ap":
        return n % spec.modulus == spec.residue % spec.modulus
    if spec.kind == "finite":
        return _in_sorted(spec.members, n)
    if spec.kind == "file":
        if n > spec.members[-1]:
            raise TruncationInsufficientError(
                f"{spec.name} only lists members up to {spec.members[-1]}, asked about {n}"
            )
        return _in_sorted(spec.members, n)
    if spec.kind == "union":
        return any(contains(child, n) for child in spec.children)
    if spec.kind == "squarefree":
        return _is_squarefree(n)
    if spec.kind == "primes":
        return _is_prime(n)
    raise AssertionError(spec.kind)


def _in_sorted(members: tuple[int, ...], n: int) -> bool:
    i = bisect_left(members, n)
    return i < len(members) and members[i] == n


def _is_squarefree(n: int) -> bool:
    # trial division by squares up to sqrt(n)
    for d in range(2, math.isqrt(n) + 1):
        if n % (d * d) == 0:
            return False
    return True


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# bulk queries

def indicator_prefix(spec: SubsetSpec, n_max: int) -> IndicatorPrefix:
    """Indicator coefficients a_0..a_{n_max} with a_0 = 1 and a_n = [n in S]."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return IndicatorPrefix(n_max=n_max, coeffs=tuple(_indicator_list(spec, n_max)))


def _indicator_list(spec: SubsetSpec, n_max: int) -> list[int]:
    a = [0] * (n_max + 1)
    a[0] = 1
    if n_max == 0:
        return a
    if spec.kind == "all":
        for n in range(1, n_max + 1):
            a[n] = 1
    elif spec.kind == "ap":
        for n in range(spec.residue, n_max + 1, spec.modulus):
            a[n] = 1
    elif spec.kind == "finite":
        for m in spec.members:
            if m <= n_max:
                a[m] = 1
    elif spec.kind == "file":
        if spec.members[-1] < n_max:
            raise TruncationInsufficientError(
                f"{spec.name} only lists members up to {spec.members[-1]}, need {n_max}"
            )
        for m in spec.members:
            if m <= n_max:
                a[m] = 1
    elif spec.kind == "union":
        for child in spec.children:
            for n, v in enumerate(_indicator_list(child, n_max)):
                if v and n >= 1:
                    a[n] = 1
    elif spec.kind == "squarefree":
        mask = _squarefree_sieve(n_max)
        for n in range(1, n_max + 1):
            a[n] = int(mask[n])
    elif spec.kind == "primes":
        mask = _prime_sieve(n_max)
        for n in range(1, n_max + 1):
            a[n] = int(mask[n])
    else:
        raise AssertionError(spec.kind)
    return a


def _squarefree_sieve(n_max: int) -> np.ndarray:
    mask = np.ones(n_max + 1, dtype=bool)
    mask[0] = False
    for d in range(2, math.isqrt(n_max) + 1):
        mask[d * d :: d * d] = False
    return mask


def _prime_sieve(n_max: int) -> np.ndarray:
    mask = np.ones(n_max + 1, dtype=bool)
    mask[:2] = False
    for d in range(2, math.isqrt(n_max) + 1):
        if mask[d]:
            mask[d * d :: d] = False
    return mask


def counting_density(spec: SubsetSpec, upper: int) -> Fraction:
    """Exact quotient #{n in S : n <= upper} / upper."""
    if upper < 1:
        raise ValueError("upper must be >= 1")
    count = sum(_indicator_list(spec, upper)[1:])
    return Fraction(count, upper)


def support_upto(spec: SubsetSpec, n_max: int) -> list[int]:
    """Sorted members of S that are <= n_max."""
    a = _indicator_list(spec, n_max)
    return [n for n in range(1, n_max + 1) if a[n]]


def is_exactly_represented(spec: SubsetSpec, n_max: int) -> bool:
    """True when the indicator prefix up to n_max captures all of S.

    Used to zero out truncation tail bounds for genuinely finite sets.
    File-backed lists are treated as prefixes of a potentially larger set.
    """
    if spec.kind == "finite":
        return spec.members[-1] <= n_max
    if spec.kind == "union":
        return all(is_exactly_represented(child, n_max) for child in spec.children)
    return False

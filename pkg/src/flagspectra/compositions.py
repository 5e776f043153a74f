"""Compositions of n into N positive parts, and the prime-driven
predicates on adjacent pairs that classify semiclassical spectra."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .arith import DomainError, PrimeSieve, default_sieve


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise DomainError("parts must be positive integers")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def merged(self, i: int) -> "Composition":
        """Fuse parts i and i+1 (1-based i < length)."""
        p = self.parts
        return Composition(p[: i - 1] + (p[i - 1] + p[i],) + p[i + 1 :])

    def reversed(self) -> "Composition":
        return Composition(self.parts[::-1])


def enumerate_compositions(n: int, N: int) -> Iterator[tuple[int, ...]]:
    """All compositions of n into N positive parts, lexicographic, lazy."""
    if n < 1 or N < 1:
        raise DomainError("n and N must be positive")
    if N > n:
        return
    if N == 1:
        yield (n,)
        return
    stack: list[int] = []

    def rec(remaining: int, parts: int) -> Iterator[tuple[int, ...]]:
        if parts == 1:
            yield tuple(stack) + (remaining,)
            return
        for v in range(1, remaining - parts + 2):
            stack.append(v)
            yield from rec(remaining - v, parts - 1)
            stack.pop()

    yield from rec(n, N)


def pair_is_exceeding(a: int, b: int, sieve: PrimeSieve | None = None) -> bool:
    """True iff p1(a+b) <= min(a,b).

    Because min + max = a + b, this single inequality is equivalent to
    the two-sided form p1(s) <= min, max <= s - p1(s); the equivalence
    is exercised by the test suite.
    """
    if a < 1 or b < 1:
        raise DomainError("parts must be positive")
    s = a + b
    return (sieve or default_sieve()).smallest_factor(s) <= min(a, b)


def pair_is_exceeding_twosided(a: int, b: int, sieve: PrimeSieve | None = None) -> bool:
    """Literal two-clause form (negation of the non-exceeding
    inequalities); kept as the independent route for the equivalence
    test."""
    s = a + b
    p = (sieve or default_sieve()).smallest_factor(s)
    return p <= min(a, b) and max(a, b) <= s - p


def is_prime_type(parts: tuple[int, ...] | Composition, sieve: PrimeSieve | None = None) -> bool:
    """True iff every adjacent pair sums to a prime (vacuous for N=1)."""
    if isinstance(parts, Composition):
        parts = parts.parts
    s = sieve or default_sieve()
    return all(s.is_prime(parts[i] + parts[i + 1]) for i in range(len(parts) - 1))


def all_pairs_nonexceeding(parts: tuple[int, ...], sieve: PrimeSieve | None = None) -> bool:
    s = sieve or default_sieve()
    return not any(pair_is_exceeding(parts[i], parts[i + 1], s) for i in range(len(parts) - 1))


def first_pair_nonexceeding(parts: tuple[int, ...], sieve: PrimeSieve | None = None) -> bool:
    if len(parts) < 2:
        return True
    return not pair_is_exceeding(parts[0], parts[1], sieve)

"""Exact integer number theory: smallest-factor sieve, prime-sum
decompositions, and Eulerian polynomials.

Everything here is pure and exact; the sieve is immutable after
construction and can be shared freely.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

import numpy as np


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


def _trial_smallest_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


class PrimeSieve:
    """Smallest-prime-factor table for 2..limit.

    Lookups beyond the limit fall back to trial division, so every
    operation is total; the limit only controls what is O(1).
    """

    def __init__(self, limit: int = 10**4):
        if limit < 2:
            raise DomainError("sieve limit must be >= 2")
        self.limit = limit
        spf = np.zeros(limit + 1, dtype=np.int64)
        for p in range(2, isqrt(limit) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        rest = np.nonzero(spf[2:] == 0)[0] + 2
        spf[rest] = rest
        self._spf = spf
        self._primes: list[int] | None = None

    def smallest_factor(self, n: int) -> int:
        """p1(n): the least prime dividing n (n >= 2)."""
        if n < 2:
            raise DomainError("smallest prime factor undefined for n < 2")
        if n <= self.limit:
            return int(self._spf[n])
        return _trial_smallest_factor(n)

    def is_prime(self, n: int) -> bool:
        if n < 2:
            return False
        return self.smallest_factor(n) == n

    def primes(self) -> list[int]:
        """All primes up to the sieve limit, ascending."""
        if self._primes is None:
            self._primes = [int(p) for p in np.nonzero(self._spf == np.arange(self.limit + 1))[0] if p >= 2]
        return self._primes

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization [(p, multiplicity), ...], p ascending."""
        if n < 1:
            raise DomainError("factorize expects n >= 1")
        out: list[tuple[int, int]] = []
        while n > 1:
            p = self.smallest_factor(n)
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    # -- arithmetic functions used by the Dirichlet-series identities --

    def divisor_count(self, n: int) -> int:
        d = 1
        for _, e in self.factorize(n):
            d *= e + 1
        return d

    def omega0(self, n: int) -> int:
        """Number of distinct prime factors (0 for n = 1)."""
        return len(self.factorize(n))

    def omega1(self, n: int) -> int:
        """Sum of the distinct prime factors (0 for n = 1)."""
        return sum(p for p, _ in self.factorize(n))

    def mobius(self, n: int) -> int:
        mu = 1
        for _, e in self.factorize(n):
            if e > 1:
                return 0
            mu = -mu
        return mu


_DEFAULT = PrimeSieve(10**4)


def default_sieve() -> PrimeSieve:
    return _DEFAULT


def smallest_prime_factor(n: int, sieve: PrimeSieve | None = None) -> int:
    return (sieve or _DEFAULT).smallest_factor(n)


def is_prime(n: int, sieve: PrimeSieve | None = None) -> bool:
    return (sieve or _DEFAULT).is_prime(n)


def is_sum_of_two_primes(n: int, sieve: PrimeSieve | None = None) -> bool:
    """True iff n = p + q with p, q prime.

    The complement of this predicate over the naturals is the
    obstruction set behind the vanishing of the length-4 prime-flag
    counts.
    """
    s = sieve or _DEFAULT
    if n < 4:
        return False
    if n % 2 == 1:
        return s.is_prime(n - 2)
    half = n // 2
    p = 2
    while p <= half:
        if s.is_prime(p) and s.is_prime(n - p):
            return True
        p += 1 if p == 2 else 2
    return False


def sum_of_k_primes_witness(n: int, k: int, sieve: PrimeSieve | None = None) -> tuple[int, ...] | None:
    """Lexicographically least nondecreasing k-tuple of primes summing
    to n, or None when no decomposition exists."""
    s = sieve or _DEFAULT
    if k < 1:
        raise DomainError("k must be >= 1")

    def rec(m: int, parts: int, lo: int) -> tuple[int, ...] | None:
        if parts == 1:
            if m >= lo and s.is_prime(m):
                return (m,)
            return None
        p = lo
        while p * parts <= m:
            if s.is_prime(p):
                rest = rec(m - p, parts - 1, p)
                if rest is not None:
                    return (p,) + rest
            p += 1 if p == 2 else 2
        return None

    return rec(n, k, 2)


def omega_set(n_max: int, sieve: PrimeSieve | None = None) -> list[int]:
    """Naturals <= n_max not expressible as a sum of two primes."""
    return [n for n in range(n_max + 1) if not is_sum_of_two_primes(n, sieve)]


class EulerianPolynomial:
    """Eulerian polynomial of degree k, exact integer coefficients.

    coefficients[j] is the coefficient of r^j; the degree-0 polynomial
    is the constant 1.
    """

    def __init__(self, degree: int, coefficients: list[int]):
        self.degree = degree
        self.coefficients = coefficients

    def __eq__(self, other):
        return (
            isinstance(other, EulerianPolynomial)
            and self.degree == other.degree
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        return f"EulerianPolynomial({self.degree}, {self.coefficients})"

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def eulerian_polynomial(k: int) -> EulerianPolynomial:
    """E_k from the recursion E_{k+1} = (k+1) r E_k + r (1-r) E_k'."""
    if k < 0:
        raise DomainError("k must be >= 0")
    coeffs = [1]
    for m in range(k):
        # (m+1) * r * E_m
        nxt = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += (m + 1) * c
        # + (r - r^2) * E_m'
        for j, c in enumerate(coeffs):
            if j == 0:
                continue
            nxt[j] += j * c
            nxt[j + 1] -= j * c
        while len(nxt) > 1 and nxt[-1] == 0:
            nxt.pop()
        coeffs = nxt
    return EulerianPolynomial(k, coeffs)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind, exact."""
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    row = [1] + [0] * n
    for i in range(1, n + 1):
        new = [0] * (n + 1)
        for j in range(1, i + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def eulerian_number_via_stirling(k: int, n: int) -> int:
    """Coefficient of r^n in E_k through the Stirling-number expansion;
    independent route used to cross-check the recursion."""
    from math import comb

    if k == 0:
        return 1 if n == 0 else 0
    total = 0
    for j in range(1, n + 1):
        total += stirling2(k, j) * _factorial(j) * comb(k - j, n - j) * (-1) ** (n - j)
    return total


def _factorial(j: int) -> int:
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def eulerian_growth_bound(N: int, x: Fraction, coeff_bound: Fraction) -> Fraction:
    """Upper bound C * E_{N-1}(x) / (1-x)^N for |sum a_n x^n| when
    0 <= a_n <= C n^{N-1}, evaluated exactly at rational 0 < x < 1."""
    if not (0 < x < 1):
        raise DomainError("x must lie in (0, 1)")
    e = eulerian_polynomial(N - 1)
    return coeff_bound * Fraction(e(x)) / (1 - x) ** N

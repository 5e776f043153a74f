"""High-precision boundary-singularity probes for the second-column
generating function: the normalized n-th root of a binomially
transformed coefficient sum, sampled at rational angles.

The angle enters only through k*theta mod 2pi, and for theta =
2 pi m / M there are at most M distinct reduced angles, so the whole
probe reduces to M exact integer partial sums followed by M
high-precision multiplications.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import mpmath as mp

from .arith import DomainError, PrimeSieve, default_sieve
from .sequences import count_first_nonexceeding_base


def _coefficients(n: int, sieve: PrimeSieve) -> list[int]:
    """a_0..a_n of the second column, with a_0 = a_1 = 0."""
    s = sieve
    if s.limit < n:
        s = PrimeSieve(n)
    return [0, 0] + [count_first_nonexceeding_base(k, s) for k in range(2, n + 1)]


def fabry_lindelof(
    n: int,
    m: int,
    M: int,
    precision_bits: int | None = None,
    sieve: PrimeSieve | None = None,
) -> mp.mpf:
    """b_n at theta = 2 pi m / M: one half times the n-th root of
    |sum_k a_k binom(n, k) e^(i k theta)|, binomials and residue-class
    sums exact, trig evaluated at the requested precision."""
    if n < 2:
        raise DomainError("n must be >= 2")
    if M < 1:
        raise DomainError("angle denominator must be >= 1")
    if precision_bits is None:
        precision_bits = n + 64
    if precision_bits < n + 64:
        raise DomainError("precision_bits must be at least n + 64")
    a = _coefficients(n, sieve or default_sieve())
    g = gcd(m % M if m % M else M, M)
    Mr = M // g
    # exact integer sums per residue class of k*m mod M
    sums = [0] * Mr
    binom = 1  # binom(n, 0)
    mr = (m // g) % Mr
    for k in range(n + 1):
        if a[k]:
            sums[(k * mr) % Mr] += a[k] * binom
        binom = binom * (n - k) // (k + 1)
    with mp.workprec(precision_bits):
        re = mp.mpf(0)
        im = mp.mpf(0)
        two_pi = 2 * mp.pi
        for r, c in enumerate(sums):
            if c:
                ang = two_pi * mp.mpf(r) / Mr
                re += c * mp.cos(ang)
                im += c * mp.sin(ang)
        mod = mp.sqrt(re * re + im * im)
        if mod == 0:
            return mp.mpf(0)
        return mp.mpf("0.5") * mp.exp(mp.log(mod) / n)


def boundary_table(
    n_list: list[int],
    M: int = 10,
    precision_bits: int | None = None,
    sieve: PrimeSieve | None = None,
) -> list[list[mp.mpf]]:
    """Rows m = 1..M, columns the requested n values."""
    out = []
    for m in range(1, M + 1):
        row = []
        for n in n_list:
            bits = precision_bits if precision_bits is not None else n + 64
            row.append(fabry_lindelof(n, m, M, bits, sieve))
        out.append(row)
    return out


def nth_prime(k: int, sieve: PrimeSieve | None = None) -> int:
    """The k-th prime (1-based), for the table's column labels."""
    if k < 1:
        raise DomainError("k must be >= 1")
    s = sieve or default_sieve()
    primes = s.primes()
    if k <= len(primes):
        return primes[k - 1]
    # grow a dedicated sieve; the need is rare and bounded in practice
    import math

    limit = max(int(k * (math.log(k) + math.log(math.log(k + 2)) + 2)), 100)
    return PrimeSieve(limit).primes()[k - 1]

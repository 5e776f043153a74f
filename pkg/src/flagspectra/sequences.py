"""The three prime-driven double sequences on compositions, their
tables, ordinary generating functions, Dirichlet-coefficient identity,
and desk-scale asymptotics.

Kinds:
  "first"  -- compositions whose leading adjacent pair is non-exceeding
              (a Pascal triangle driven by its second column),
  "all"    -- compositions all of whose adjacent pairs are non-exceeding,
  "prime"  -- compositions all of whose adjacent sums are prime.

The paper-style short aliases lcyr / tlcyr / ell are accepted wherever a
kind is passed.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, log
from typing import Callable

import numpy as np

from .arith import DomainError, PrimeSieve, default_sieve
from .compositions import (
    all_pairs_nonexceeding,
    enumerate_compositions,
    first_pair_nonexceeding,
    is_prime_type,
)

KINDS = ("first", "all", "prime")
_ALIASES = {"lcyr": "first", "tlcyr": "all", "ell": "prime"}


def canonical_kind(kind: str) -> str:
    k = _ALIASES.get(kind, kind)
    if k not in KINDS:
        raise DomainError(f"unknown sequence kind {kind!r}")
    return k


def count_first_nonexceeding_base(n: int, sieve: PrimeSieve | None = None) -> int:
    """Second column: n - 1 for prime n, 2 (p1(n) - 1) for composite n."""
    s = sieve or default_sieve()
    if n < 2:
        raise DomainError("defined for n >= 2")
    p = s.smallest_factor(n)
    return n - 1 if p == n else 2 * (p - 1)


def count_first_nonexceeding(n: int, N: int, sieve: PrimeSieve | None = None) -> int:
    """Compositions of n into N parts whose first adjacent pair is
    non-exceeding; for N >= 3 by the binomial convolution against the
    second column."""
    if N < 1 or n < 1:
        raise DomainError("n and N must be positive")
    if N > n:
        return 0
    if N == 1:
        return 1
    if N == 2:
        return count_first_nonexceeding_base(n, sieve)
    s = sieve or default_sieve()
    total = 0
    for h in range(2, n - N + 3):
        total += comb(n - h - 1, N - 3) * count_first_nonexceeding_base(h, s)
    return total


def _walk_counts_exact(kind: str, n_max: int, sieve: PrimeSieve) -> list[list[int]]:
    """table[n][N] for 0 <= N <= n <= n_max by the weighted-walk DP on
    the adjacency of {1..n_max}; exact Python integers."""
    from .walkgraphs import adjacency_matrix

    m = n_max
    adj = adjacency_matrix(kind, m, sieve)
    nbrs = [[v for v in range(m) if adj[w][v]] for w in range(m)]
    table = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    # state[v] = dense z-coefficients of walks ending at vertex v+1
    state = [[0] * (n_max + 1) for _ in range(m)]
    for v in range(m):
        if v + 1 <= n_max:
            state[v][v + 1] = 1
    N = 1
    while True:
        for v in range(m):
            row = state[v]
            for n in range(n_max + 1):
                if row[n]:
                    table[n][N] += row[n]
        if N == n_max:
            break
        N += 1
        new = [[0] * (n_max + 1) for _ in range(m)]
        for w in range(m):
            shift = w + 1
            acc = new[w]
            for v in nbrs[w]:
                row = state[v]
                for n in range(n_max + 1 - shift):
                    if row[n]:
                        acc[n + shift] += row[n]
        state = new
    return table


class SequenceTable:
    """Triangular table of one kind, entries exact non-negative ints."""

    def __init__(self, kind: str, n_max: int, sieve: PrimeSieve | None = None):
        self.kind = canonical_kind(kind)
        self.n_max = n_max
        self.sieve = sieve or default_sieve()
        self._entries: dict[tuple[int, int], int] = {}
        self._fill()

    def _fill(self):
        if self.kind == "first":
            # Pascal recursion off the second column
            col2 = {n: count_first_nonexceeding_base(n, self.sieve) for n in range(2, self.n_max + 1)}
            for n in range(1, self.n_max + 1):
                self._entries[(n, 1)] = 1
            for n in range(2, self.n_max + 1):
                self._entries[(n, 2)] = col2[n]
            for n in range(3, self.n_max + 1):
                for N in range(3, n + 1):
                    self._entries[(n, N)] = self._entries.get((n - 1, N - 1), 0) + self._entries.get(
                        (n - 1, N), 0
                    )
        else:
            walk = _walk_counts_exact(self.kind, self.n_max, self.sieve)
            for n in range(1, self.n_max + 1):
                self._entries[(n, 1)] = 1
                for N in range(2, n + 1):
                    self._entries[(n, N)] = walk[n][N]

    def value(self, n: int, N: int) -> int:
        if N > n:
            return 0
        return self._entries[(n, N)]


def count_all_nonexceeding(n: int, N: int, sieve: PrimeSieve | None = None) -> int:
    """Compositions of n into N parts, every adjacent pair non-exceeding."""
    return _count_kind("all", n, N, sieve)


def count_prime_type(n: int, N: int, sieve: PrimeSieve | None = None) -> int:
    """Compositions of n into N parts, every adjacent sum prime."""
    return _count_kind("prime", n, N, sieve)


from functools import lru_cache


@lru_cache(maxsize=8)
def _cached_table(kind: str, n_bucket: int) -> "SequenceTable":
    return SequenceTable(kind, n_bucket)


def _count_kind(kind: str, n: int, N: int, sieve: PrimeSieve | None) -> int:
    if N < 1 or n < 1:
        raise DomainError("n and N must be positive")
    if N > n:
        return 0
    if N == 1:
        return 1
    s = sieve or default_sieve()
    if kind == "prime" and N == 2:
        return n - 1 if s.is_prime(n) else 0
    if n <= 128:
        bucket = 32
        while bucket < n:
            bucket *= 2
        return _cached_table(kind, bucket).value(n, N)
    pred = all_pairs_nonexceeding if kind == "all" else is_prime_type
    return sum(1 for c in enumerate_compositions(n, N) if pred(c, s))


def seq_value(kind: str, n: int, N: int, sieve: PrimeSieve | None = None) -> int:
    k = canonical_kind(kind)
    if k == "first":
        return count_first_nonexceeding(n, N, sieve)
    if k == "all":
        return count_all_nonexceeding(n, N, sieve)
    return count_prime_type(n, N, sieve)


def count_by_enumeration(kind: str, n: int, N: int, sieve: PrimeSieve | None = None) -> int:
    """Direct enumeration route for any kind (oracle; exponential in n)."""
    k = canonical_kind(kind)
    if N > n:
        return 0
    if N == 1:
        return 1
    s = sieve or default_sieve()
    pred: Callable = {
        "first": first_pair_nonexceeding,
        "all": all_pairs_nonexceeding,
        "prime": is_prime_type,
    }[k]
    return sum(1 for c in enumerate_compositions(n, N) if pred(c, s))


def prime_type_column(N: int, n_max: int, sieve: PrimeSieve | None = None) -> list[int]:
    """[count_prime_type(n, N) for n in 0..n_max] via an int64 DP on the
    prime-sum walk graph; guarded against overflow by the composition
    bound."""
    s = sieve or default_sieve()
    if N < 2:
        raise DomainError("use N >= 2")
    if comb(max(n_max - 1, 0), N - 1) >= 2**62:
        raise DomainError("counts may overflow the fast kernel; use count_prime_type")
    m = max(n_max - N + 1, 1)
    prime_sum = np.zeros((m, m), dtype=np.int64)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if s.is_prime(i + j):
                prime_sum[i - 1][j - 1] = 1
    # state[v, n] = walks ending at v+1 with weight z^n
    state = np.zeros((m, n_max + 1), dtype=np.int64)
    for v in range(m):
        if v + 1 <= n_max:
            state[v, v + 1] = 1
    for _ in range(N - 1):
        mixed = prime_sum @ state
        new = np.zeros_like(state)
        for w in range(m):
            shift = w + 1
            if shift <= n_max:
                new[w, shift:] = mixed[w, : n_max + 1 - shift]
        state = new
    totals = state.sum(axis=0)
    return [int(totals[n]) for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# ordinary generating functions
# ---------------------------------------------------------------------------

def ogf_truncation(kind: str, N: int, degree: int, sieve: PrimeSieve | None = None) -> list[int]:
    """Coefficients of z^0..z^degree of the kind's column OGF.

    For kind "first" the product identity (column-2 OGF times the
    geometric factor to the (N-2)nd power) is verified coefficientwise
    before returning.
    """
    k = canonical_kind(kind)
    if N < 1 or degree < N:
        raise DomainError("need N >= 1 and degree >= N")
    s = sieve or default_sieve()
    out = [0] * (degree + 1)
    for n in range(N, degree + 1):
        out[n] = seq_value(k, n, N, s)
    if k == "first" and N >= 2:
        base = [0] * (degree + 1)
        for n in range(2, degree + 1):
            base[n] = count_first_nonexceeding_base(n, s)
        geo = [0] + [1] * degree  # z/(1-z)
        acc = base
        for _ in range(N - 2):
            acc = _series_mul(acc, geo, degree)
        if acc != out:
            raise AssertionError("OGF factorization identity failed")
    return out


def _series_mul(a: list[int], b: list[int], degree: int) -> list[int]:
    out = [0] * (degree + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(0, degree + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


# ---------------------------------------------------------------------------
# Pascal rules and derived identities (exposed for tests and the CLI)
# ---------------------------------------------------------------------------

def pascal_identity_holds(table: SequenceTable, n: int, N: int) -> bool:
    return table.value(n, N) + table.value(n, N + 1) == table.value(n + 1, N + 1)


def cumulative_identity_holds(table: SequenceTable, n: int, N: int) -> bool:
    return sum(table.value(k, N) for k in range(N, n + 1)) == table.value(n + 1, N + 1)


# ---------------------------------------------------------------------------
# Dirichlet coefficient identity for the second column
# ---------------------------------------------------------------------------

def dirichlet_coeff_identity_check(x_max: int, sieve: PrimeSieve | None = None) -> tuple[bool, int | None]:
    """Exact coefficientwise check, for every n <= x_max, of the
    identity relating the second-column Dirichlet series times zeta to
    divisor counts and prime-factor statistics.

    LHS coefficient: sum over divisors d >= 2 of the second-column value.
    RHS coefficient: 2 (d * g)(n) + omega0(n) - omega1(n), with g
    supported on squarefree m >= 2 where g(m) = (P-1) mu(m/P), P the
    largest prime factor of m.
    """
    if x_max < 1:
        raise DomainError("x_max must be >= 1")
    s = sieve or default_sieve()
    need = max(x_max, 2)
    if s.limit < need:
        s = PrimeSieve(need)
    base = [0, 0] + [count_first_nonexceeding_base(n, s) for n in range(2, x_max + 1)]
    lhs = [0] * (x_max + 1)
    for d in range(2, x_max + 1):
        for m in range(d, x_max + 1, d):
            lhs[m] += base[d]
    g = [0] * (x_max + 1)
    for m in range(2, x_max + 1):
        fac = s.factorize(m)
        if any(e > 1 for _, e in fac):
            continue
        P = fac[-1][0]
        g[m] = (P - 1) * s.mobius(m // P)
    dcount = [0] * (x_max + 1)
    for d in range(1, x_max + 1):
        for m in range(d, x_max + 1, d):
            dcount[m] += 1
    for n in range(1, x_max + 1):
        conv = sum(g[m] * dcount[n // m] for m in range(1, n + 1) if n % m == 0)
        rhs = 2 * conv + s.omega0(n) - s.omega1(n) if n > 1 else 0
        if lhs[n] != rhs:
            return False, n
    return True, None


def second_column_via_dirichlet(n: int, sieve: PrimeSieve | None = None) -> int:
    """Independent route to the second column: 2 sum_{b|n} g(b) plus the
    prime-indicator corrections; cross-checks the closed form."""
    s = sieve or default_sieve()
    if n < 2:
        raise DomainError("defined for n >= 2")
    total = 0
    for b in range(2, n + 1):
        if n % b:
            continue
        fac = s.factorize(b)
        if any(e > 1 for _, e in fac):
            continue
        P = fac[-1][0]
        total += (P - 1) * s.mobius(b // P)
    correction = (1 - n) if s.is_prime(n) else 0
    return 2 * total + correction


# ---------------------------------------------------------------------------
# desk-scale asymptotics
# ---------------------------------------------------------------------------

def first_nonexceeding_partial_sum(N: int, x: int, sieve: PrimeSieve | None = None) -> int:
    """sum_{n <= x} of the kind-"first" column N, computed exactly via
    the cumulative identity (it equals the (x+1, N+1) entry)."""
    if N < 1:
        raise DomainError("N must be >= 1")
    if x < N:
        return 0
    s = sieve or default_sieve()
    n1 = x + 1
    if N + 1 == 2:
        return count_first_nonexceeding_base(n1, s)
    if s.limit < n1:
        s = PrimeSieve(n1)
    total = 0
    k = N + 1
    for h in range(2, n1 - k + 3):
        total += comb(n1 - h - 1, k - 3) * count_first_nonexceeding_base(h, s)
    return total


def asymptotic_ratio(N: int, x: int, sieve: PrimeSieve | None = None) -> float:
    """rho(N, x) = (partial sum to x) * N! * log x / x^N; tends to 1."""
    if N < 2 or x < 10:
        raise DomainError("need N >= 2 and x >= 10")
    partial = first_nonexceeding_partial_sum(N, x, sieve)
    fact = 1
    for i in range(2, N + 1):
        fact *= i
    return float(Fraction(partial * fact, x**N) * Fraction(log(x)))


def column_growth_diagnostic(n: int, sieve: PrimeSieve | None = None) -> float:
    """log of the composite-indexed partial sum of the second column,
    normalized by log n; finite-n estimator of the continuation
    abscissa, reported without any convergence claim."""
    s = sieve or default_sieve()
    if s.limit < n:
        s = PrimeSieve(n)
    total = 0
    for k in range(2, n + 1):
        if not s.is_prime(k):
            total += count_first_nonexceeding_base(k, s)
    if total == 0:
        raise DomainError("no composite terms below n")
    return log(total) / log(n)

"""Weighted walk graphs on {1..m}: the non-exceeding-pair graph and the
prime-sum graph, their transfer matrices, walk polynomials, and the
rational bivariate generating function obtained through
Cayley-Hamilton."""
from __future__ import annotations

from dataclasses import dataclass

from .arith import DomainError, PrimeSieve, default_sieve
from .compositions import pair_is_exceeding
from .polyring import Poly, PolyMatrix, RationalFunction, SizeError

GRAPH_KINDS = ("gamma", "pi")
_GRAPH_ALIASES = {"nonexceeding": "gamma", "prime": "pi"}

_GENFUN_M_CAP = 16


def canonical_graph_kind(kind: str) -> str:
    k = _GRAPH_ALIASES.get(kind.lower(), kind.lower())
    if k not in GRAPH_KINDS:
        raise DomainError(f"unknown graph kind {kind!r}")
    return k


def adjacency_matrix(seq_kind: str, m: int, sieve: PrimeSieve | None = None) -> list[list[int]]:
    """0/1 adjacency for the walk graph matching a sequence kind
    ("all" -> non-exceeding pairs, "prime" -> prime sums)."""
    kind = {"all": "gamma", "prime": "pi", "gamma": "gamma", "pi": "pi"}[seq_kind]
    s = sieve or default_sieve()
    adj = [[0] * m for _ in range(m)]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if kind == "gamma":
                ok = not pair_is_exceeding(i, j, s)
            else:
                ok = s.is_prime(i + j)
            adj[i - 1][j - 1] = 1 if ok else 0
    return adj


@dataclass(frozen=True)
class WeightedWalkGraph:
    kind: str
    m: int
    adjacency: tuple[tuple[int, ...], ...]

    def is_symmetric(self) -> bool:
        a = self.adjacency
        return all(a[i][j] == a[j][i] for i in range(self.m) for j in range(self.m))

    def loops(self) -> list[int]:
        return [i + 1 for i in range(self.m) if self.adjacency[i][i]]


def build_graph(kind: str, m: int, sieve: PrimeSieve | None = None) -> WeightedWalkGraph:
    if m < 1:
        raise DomainError("m must be >= 1")
    k = canonical_graph_kind(kind)
    adj = adjacency_matrix("all" if k == "gamma" else "prime", m, sieve)
    return WeightedWalkGraph(k, m, tuple(tuple(r) for r in adj))


def transfer_matrix(g: WeightedWalkGraph) -> PolyMatrix:
    """Entry (i, j) is z^j when the arrow (i, j) exists, else 0."""
    ctx = ("z",)
    rows = []
    for i in range(g.m):
        row = []
        for j in range(g.m):
            if g.adjacency[i][j]:
                row.append(Poly.monomial(ctx, (j + 1,)))
            else:
                row.append(Poly.const(0, ctx))
        rows.append(row)
    return PolyMatrix(rows)


def walk_polynomial(g: WeightedWalkGraph, N: int) -> Poly:
    """Sum of z^(vertex weights) over walks with N vertices (length N-1),
    computed as a row vector pushed through the transfer matrix."""
    if N < 1:
        raise DomainError("N must be >= 1")
    ctx = ("z",)
    vec = [Poly.monomial(ctx, (i + 1,)) for i in range(g.m)]
    for _ in range(N - 1):
        new = [Poly.const(0, ctx) for _ in range(g.m)]
        for j in range(g.m):
            acc = Poly.const(0, ctx)
            weight = Poly.monomial(ctx, (j + 1,))
            for i in range(g.m):
                if g.adjacency[i][j]:
                    acc = acc + vec[i]
            new[j] = acc * weight
        vec = new
    total = Poly.const(0, ctx)
    for p in vec:
        total = total + p
    return total


def bivariate_genfun(g: WeightedWalkGraph) -> RationalFunction:
    """The rational function collecting all walk polynomials against
    powers of t, assembled from the transfer matrix's characteristic
    polynomial exactly as Cayley-Hamilton dictates."""
    m = g.m
    if m > _GENFUN_M_CAP:
        raise SizeError(f"rational generating function capped at m <= {_GENFUN_M_CAP}")
    T = transfer_matrix(g)
    cp = T.char_poly("_zeta_")
    # cp = zeta^m + sum_{i<m} a_i(z) zeta^i
    a = [cp.coefficient_of("_zeta_", i) for i in range(m)]
    walks = [walk_polynomial(g, N) for N in range(1, m + 1)]
    ctx = ("z", "t")
    t = Poly.var("t", ctx)
    num = Poly.const(0, ctx)
    for i in range(1, m + 1):
        num = num + walks[i - 1].extend(ctx) * t**i
    for i in range(m):
        for j in range(1, i + 1):
            num = num + a[i].extend(ctx) * walks[j - 1].extend(ctx) * t ** (m - i + j)
    den = Poly.const(1, ctx)
    for i in range(m):
        den = den + a[i].extend(ctx) * t ** (m - i)
    return RationalFunction(num, den)

"""Eventual polynomiality of the shifted diagonals N -> value(N+k, N).

Pipeline: the bivariate walk generating function F(z, t), reshaped to
the form z t Q1 / (1 - z t + Q2), has diagonal [u^k] F(u, t/u) equal to
a rational function R(t)/(1-t)^s; converting that to the binomial basis
gives the closed polynomial and its validity threshold.  The "first"
kind has an independent closed binomial formula straight from its
Pascal structure.
"""
from __future__ import annotations

from fractions import Fraction

from .arith import DomainError, PrimeSieve, default_sieve
from .polyring import (
    Poly,
    RationalFunction,
    ShapeError,
    binomial_poly,
    eval_univariate,
)
from .sequences import canonical_kind, count_first_nonexceeding, seq_value
from .walkgraphs import build_graph, bivariate_genfun


class DiagonalSeries:
    """Diagonal generating function R(t)/(1-t)^s, denominator exactly a
    power of (1-t) after normalization."""

    def __init__(self, k: int, numerator: Poly, s: int):
        if s < 1:
            raise DomainError("denominator exponent must be >= 1")
        self.k = k
        self.numerator = numerator  # univariate in t, integer coefficients
        self.s = s
        while not self.numerator.is_zero() and self._reducible():
            pass

    def _reducible(self) -> bool:
        ctx = self.numerator.vars
        one_minus_t = Poly.const(1, ctx) - Poly.var("t", ctx)
        from .polyring import _exact_poly_div  # internal exact division

        if self.s <= 1:
            return False
        try:
            q = _exact_poly_div(self.numerator, one_minus_t)
        except DomainError:
            return False
        self.numerator = q
        self.s -= 1
        return True

    def rational_form(self) -> RationalFunction:
        ctx = self.numerator.vars
        den = (Poly.const(1, ctx) - Poly.var("t", ctx)) ** self.s
        return RationalFunction(self.numerator, den)

    def coefficients(self, degree: int) -> list[int]:
        """Series coefficients a_0..a_degree of R(t)/(1-t)^s."""
        from math import comb

        num = self.numerator.univariate_coeffs("t") if not self.numerator.is_zero() else [0]
        out = []
        for n in range(degree + 1):
            acc = 0
            for j, p in enumerate(num):
                if p and j <= n:
                    acc += p * comb(n - j + self.s - 1, self.s - 1)
            out.append(acc)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, DiagonalSeries)
            and self.s == other.s
            and self.numerator == other.numerator
        )

    __hash__ = None

    def __repr__(self):
        return f"DiagonalSeries(({self.numerator.text()}) / (1 - t)^{self.s})"


def lcyr_diagonal_poly(k: int) -> Poly:
    """Closed binomial-form polynomial for the kind-"first" diagonal:
    sum_j value(k+2, 2+j) * binom(n-2, j); valid for every n >= 2."""
    if k < 0:
        raise DomainError("k must be >= 0")
    ctx = ("n",)
    out = Poly.const(0, ctx)
    for j in range(k + 1):
        c = count_first_nonexceeding(k + 2, 2 + j)
        if c:
            out = out + c * binomial_poly("n", -2, j, ctx)
    return out


first_diagonal_poly = lcyr_diagonal_poly


def _laurent_sub_u_t_over_u(p: Poly) -> dict[tuple[int, int], int]:
    """(z, t) -> (u, t/u): term z^a t^b becomes u^(a-b) t^b."""
    iz = p.vars.index("z")
    it = p.vars.index("t")
    out: dict[tuple[int, int], int] = {}
    for e, c in p.terms.items():
        key = (e[iz] - e[it], e[it])
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _laurent_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (ua, ta), ca in a.items():
        for (ub, tb), cb in b.items():
            key = (ua + ub, ta + tb)
            s = out.get(key, 0) + ca * cb
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def extract_diagonal(F: RationalFunction, k: int) -> DiagonalSeries:
    """[u^k] F(u, t/u) for F of the shape z t Q1 / (1 - z t + Q2) with
    Q2 free of constant and pure-z terms; finite alternating sum over
    the exponent window, brought over a single (1-t) power."""
    if k < 0:
        raise DomainError("k must be >= 0")
    num = F.num.extend(("z", "t")) if set(F.num.vars) <= {"z", "t"} else None
    den = F.den.extend(("z", "t")) if set(F.den.vars) <= {"z", "t"} else None
    if num is None or den is None:
        raise ShapeError("expected a rational function in (z, t)")
    c0 = den.constant_value()
    if c0 not in (1, -1):
        raise ShapeError("denominator constant term must be a unit")
    if c0 == -1:
        num, den = -num, -den
    ctx = ("z", "t")
    zt = Poly.monomial(ctx, (1, 1))
    q2 = den - Poly.const(1, ctx) + zt
    for e, _ in q2.terms.items():
        if e[1] == 0:
            raise ShapeError("denominator has a pure-z term; not of transfer shape")
        if e == (1, 1):
            raise ShapeError("denominator t-linear part is not exactly -z t")
    if q2.terms and min(e[1] for e in q2.terms) < 2:
        raise ShapeError("denominator t-linear part is not exactly -z t")
    try:
        q1 = num.divide_by_monomial((1, 1))
    except DomainError as exc:
        raise ShapeError("numerator is not divisible by z t") from exc

    A = _laurent_sub_u_t_over_u(q1)
    B = _laurent_sub_u_t_over_u(q2)
    if not A:
        return DiagonalSeries(k, Poly.const(0, ("t",)), 1)
    alpha_min = min(u for u, _ in A)
    alpha_max = max(u for u, _ in A)
    contributions: list[tuple[int, dict]] = []  # (r, [u^k](A B^r) as t-dict)
    power = {(0, 0): 1}
    r = 0
    while True:
        prod = _laurent_mul(A, power) if r else dict(A)
        sel: dict[tuple[int], int] = {}
        for (u, t), c in prod.items():
            if u == k:
                sel[(t,)] = sel.get((t,), 0) + c
        sel = {e: c for e, c in sel.items() if c}
        if sel:
            contributions.append((r, sel))
        if not B:
            break
        beta_min = min(u for u, _ in B)
        beta_max = max(u for u, _ in B)
        # window: alpha_min + r beta_min <= k <= alpha_max + r beta_max
        if beta_min >= 0 and alpha_min + (r + 1) * beta_min > k:
            break
        if beta_max <= 0 and alpha_max + (r + 1) * beta_max < k:
            break
        if r > 4 * (k + 4) + len(B) * (k + 4):
            raise AssertionError("diagonal window failed to close")
        power = _laurent_mul(power, B)
        r += 1
    if not contributions:
        return DiagonalSeries(k, Poly.const(0, ("t",)), 1)
    s = 1 + max(r for r, _ in contributions)
    tctx = ("t",)
    t = Poly.var("t", tctx)
    one_minus_t = Poly.const(1, tctx) - t
    numerator = Poly.const(0, tctx)
    for r, sel in contributions:
        part = Poly(tctx, sel)
        numerator = numerator + (-1) ** r * t * part * one_minus_t ** (s - 1 - r)
    return DiagonalSeries(k, numerator, s)


def diagonal_series(kind: str, k: int, m: int | None = None, sieve: PrimeSieve | None = None) -> DiagonalSeries:
    """Diagonal N -> value(N+k, N) for kinds "all"/"prime", through the
    walk generating function at the minimal licensed graph size m = k+1
    (larger m must give the same answer; tests cross-check m = k+3)."""
    kd = canonical_kind(kind)
    if kd == "first":
        raise DomainError('kind "first" has the closed binomial route; use first_diagonal_poly')
    if m is None:
        m = k + 1
    if m < k + 1:
        raise DomainError("graph size must be at least k+1")
    g = build_graph("gamma" if kd == "all" else "pi", m, sieve)
    return extract_diagonal(bivariate_genfun(g), k)


def eventual_polynomial(D: DiagonalSeries, var: str = "n", check_span: int = 15) -> tuple[Poly, int]:
    """Closed polynomial Q with Q(N) = a_N for large N, plus the least
    threshold from which the agreement actually starts (verified through
    threshold + check_span)."""
    ctx = (var,)
    if D.numerator.is_zero():
        return Poly.const(0, ctx), 0
    num = D.numerator.univariate_coeffs("t")
    Q = Poly.const(0, ctx)
    for j, p in enumerate(num):
        if p:
            Q = Q + p * binomial_poly(var, D.s - 1 - j, D.s - 1, ctx)
    deg_r = len(num) - 1
    seq = D.coefficients(deg_r + check_span)
    threshold = deg_r
    while threshold > 0 and eval_univariate(Q, threshold - 1) == seq[threshold - 1]:
        threshold -= 1
    for n in range(threshold, deg_r + check_span + 1):
        if eval_univariate(Q, n) != seq[n]:
            raise AssertionError("binomial conversion disagrees with the series")
    return Q, threshold


def diagonal_values_direct(kind: str, k: int, n_terms: int, sieve: PrimeSieve | None = None) -> list[int]:
    """[value(N+k, N) for N = 1..n_terms] by direct counting (oracle)."""
    s = sieve or default_sieve()
    return [seq_value(kind, N + k, N, s) for N in range(1, n_terms + 1)]

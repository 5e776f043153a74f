"""Sparse exact multivariate polynomial arithmetic, rational functions,
and polynomial-matrix linear algebra.

Representation: a polynomial is a dict mapping exponent vectors (tuples
of ints, one slot per variable in the declared order) to nonzero exact
coefficients (int or Fraction).  Negative exponents are permitted, which
gives Laurent polynomials for free; operations that require honest
polynomials assert nonnegativity where it matters.

Canonical term order is graded lexicographic in the declared variable
order; serialization and the notion of "leading coefficient" both use
it.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt, log2
from typing import Iterable, Mapping, Sequence

import numpy as np

from .arith import DomainError


class SizeError(ValueError):
    """Request exceeds a guarded problem size."""


class ShapeError(ValueError):
    """Input not of the structural shape an operation requires."""


Coeff = int | Fraction


def _norm_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


# ---------------------------------------------------------------------------
# dict-level kernels (used directly in the hot loops)
# ---------------------------------------------------------------------------

def _dadd(a: dict, b: dict) -> dict:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _diadd(acc: dict, b: dict, scale: Coeff = 1) -> None:
    """acc += scale * b, in place."""
    for e, c in b.items():
        s = acc.get(e, 0) + scale * c
        if s:
            acc[e] = s
        else:
            acc.pop(e, None)


def _dmul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _dscal(a: dict, c: Coeff) -> dict:
    if not c:
        return {}
    return {e: _norm_coeff(v * c) for e, v in a.items()}


def _dneg(a: dict) -> dict:
    return {e: -v for e, v in a.items()}


def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


class Poly:
    """Sparse exact polynomial over named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Coeff] | None = None):
        self.vars = tuple(variables)
        clean: dict = {}
        if terms:
            w = len(self.vars)
            for e, c in terms.items():
                if len(e) != w:
                    raise ValueError("exponent width does not match variable count")
                c = _norm_coeff(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c: Coeff, variables: Sequence[str] = ()) -> "Poly":
        v = tuple(variables)
        return cls(v, {(0,) * len(v): c} if c else {})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "Poly":
        v = tuple(variables)
        e = [0] * len(v)
        e[v.index(name)] = 1
        return cls(v, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Sequence[int], c: Coeff = 1) -> "Poly":
        return cls(variables, {tuple(exponents): c})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self) -> Coeff:
        return self.terms.get((0,) * len(self.vars), 0)

    def is_laurent(self) -> bool:
        return any(any(x < 0 for x in e) for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading(self) -> tuple[tuple, Coeff]:
        """Leading (exponent, coefficient) under graded lex."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def content_int(self) -> int:
        from math import gcd

        g = 0
        for c in self.terms.values():
            if isinstance(c, Fraction):
                raise DomainError("integer content of a non-integer polynomial")
            g = gcd(g, c)
        return g

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable contexts differ: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.vars)
        self._check(other)
        return Poly(self.vars, _dadd(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, _dneg(self.terms))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.vars, _dscal(self.terms, other))
        self._check(other)
        return Poly(self.vars, _dmul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result = Poly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        a, b = align(self, other)
        return a.terms == b.terms

    __hash__ = None

    # -- rebasing ----------------------------------------------------------

    def extend(self, variables: Sequence[str]) -> "Poly":
        """Re-express over a superset context (order taken from the target)."""
        tgt = tuple(variables)
        pos = []
        for v in self.vars:
            if v not in tgt:
                raise ValueError(f"target context lacks variable {v}")
            pos.append(tgt.index(v))
        w = len(tgt)
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * w
            for p, x in zip(pos, e):
                ne[p] = x
            out[tuple(ne)] = c
        return Poly(tgt, out)

    def drop_unused(self) -> "Poly":
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        tgt = tuple(self.vars[i] for i in used)
        return Poly(tgt, {tuple(e[i] for i in used): c for e, c in self.terms.items()})

    # -- calculus / extraction ----------------------------------------------

    def derivative(self, name: str) -> "Poly":
        i = self.vars.index(name)
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return Poly(self.vars, out)

    def coefficient_of(self, name: str, power: int) -> "Poly":
        """Coefficient of name^power, as a polynomial over the remaining vars."""
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1 :]
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + e[i + 1 :]] = c
        return Poly(rest, out)

    def univariate_coeffs(self, name: str) -> list[Coeff]:
        """Dense coefficient list [c0, c1, ...] for a univariate polynomial."""
        i = self.vars.index(name)
        for e in self.terms:
            for j, x in enumerate(e):
                if j != i and x != 0:
                    raise DomainError("polynomial is not univariate in " + name)
                if x < 0:
                    raise DomainError("Laurent polynomial is not univariate")
        d = self.degree_in(name) if self.terms else 0
        out: list[Coeff] = [0] * (d + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    def divide_by_monomial(self, exponents: Sequence[int]) -> "Poly":
        """Exact division by a monomial; exponents must not go negative."""
        ex = tuple(exponents)
        out: dict = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, ex))
            if any(x < 0 for x in ne):
                raise DomainError("monomial does not divide the polynomial")
            out[ne] = c
        return Poly(self.vars, out)

    def exact_scalar_div(self, k: int) -> "Poly":
        out: dict = {}
        for e, c in self.terms.items():
            if isinstance(c, int):
                q, r = divmod(c, k)
                if r:
                    raise DomainError("scalar division is not exact")
                out[e] = q
            else:
                out[e] = _norm_coeff(c / k)
        return Poly(self.vars, out)

    # -- substitution -------------------------------------------------------

    def substitute(self, bindings: Mapping[str, "Poly | RationalFunction | Coeff"]):
        """Exact substitution.  Returns a Poly unless some binding is a
        RationalFunction, in which case a RationalFunction is returned."""
        for name in bindings:
            if name not in self.vars:
                raise DomainError(f"binding targets unknown variable {name}")
        if any(isinstance(v, RationalFunction) for v in bindings.values()):
            num, den = self._substitute_rational(bindings)
            return RationalFunction(num, den)
        keep = [v for v in self.vars if v not in bindings]
        extra: list[str] = []
        for v in bindings.values():
            if isinstance(v, Poly):
                for name in v.vars:
                    if name not in keep and name not in extra:
                        extra.append(name)
        tgt = tuple(keep) + tuple(extra)
        vals = []
        for v in self.vars:
            if v in bindings:
                b = bindings[v]
                if isinstance(b, Poly):
                    vals.append(b.extend(tgt))
                else:
                    vals.append(Poly.const(b, tgt))
            else:
                vals.append(Poly.var(v, tgt))
        result = Poly.const(0, tgt)
        powers: list[dict[int, Poly]] = [dict() for _ in self.vars]
        for e, c in self.terms.items():
            term = Poly.const(c, tgt)
            for i, x in enumerate(e):
                if x == 0:
                    continue
                if x < 0:
                    raise DomainError("cannot substitute into a Laurent exponent")
                cache = powers[i]
                if x not in cache:
                    cache[x] = vals[i] ** x
                term = term * cache[x]
            result = result + term
        return result

    def _substitute_rational(self, bindings):
        tgt: list[str] = [v for v in self.vars if v not in bindings]
        for v in bindings.values():
            names = v.vars if isinstance(v, Poly) else (v.num.vars if isinstance(v, RationalFunction) else ())
            for name in names:
                if name not in tgt:
                    tgt.append(name)
        tgt = tuple(tgt)
        parts: list[tuple[Poly, Poly]] = []  # (numerator, denominator) per variable
        for v in self.vars:
            if v in bindings:
                b = bindings[v]
                if isinstance(b, RationalFunction):
                    parts.append((b.num.extend(tgt), b.den.extend(tgt)))
                elif isinstance(b, Poly):
                    parts.append((b.extend(tgt), Poly.const(1, tgt)))
                else:
                    parts.append((Poly.const(b, tgt), Poly.const(1, tgt)))
            else:
                parts.append((Poly.var(v, tgt), Poly.const(1, tgt)))
        degs = [self.degree_in(v) if self.terms else 0 for v in self.vars]
        den = Poly.const(1, tgt)
        for (nu, de), d in zip(parts, degs):
            den = den * de**d
        num = Poly.const(0, tgt)
        for e, c in self.terms.items():
            t = Poly.const(c, tgt)
            for i, x in enumerate(e):
                if x < 0:
                    raise DomainError("cannot substitute into a Laurent exponent")
                nu, de = parts[i]
                t = t * nu**x * de ** (degs[i] - x)
            num = num + t
        return num, den

    # -- text form -----------------------------------------------------------

    def text(self) -> str:
        """Canonical text: terms in graded-lex descending order."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
        chunks: list[str] = []
        for e, c in items:
            factors = []
            for name, x in zip(self.vars, e):
                if x == 0:
                    continue
                factors.append(name if x == 1 else f"{name}^{x}")
            mag = abs(c)
            body = str(mag) if not factors or mag != 1 else ""
            joined = "*".join(([body] if body else []) + factors)
            if not joined:
                joined = str(mag)
            if not chunks:
                chunks.append(joined if c > 0 else "-" + joined)
            else:
                chunks.append(("+ " if c > 0 else "- ") + joined)
        return " ".join(chunks)

    def __repr__(self):
        return f"Poly({self.text()!r})"


def align(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Bring two polynomials over the union context (a's order first)."""
    if a.vars == b.vars:
        return a, b
    tgt = list(a.vars)
    for v in b.vars:
        if v not in tgt:
            tgt.append(v)
    return a.extend(tgt), b.extend(tgt)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Normalized quotient of two polynomials.

    Normalization: integer content removed from the pair, the
    denominator's graded-lex leading coefficient made positive, and a
    common polynomial factor cancelled when the context is {t} or
    {z, t} (the cases the generating-function pipelines produce).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, cancel: bool = True):
        num, den = align(num, den)
        if den.is_zero():
            raise DomainError("zero denominator")
        if cancel and not num.is_zero() and set(den.vars) <= {"z", "t"}:
            num, den = _cancel_common(num, den)
        num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a = self.num * other.den
        b = other.num * self.den
        return a == b

    __hash__ = None

    def substitute(self, bindings):
        nu = self.num.substitute(bindings)
        de = self.den.substitute(bindings)
        if isinstance(nu, RationalFunction) or isinstance(de, RationalFunction):
            nun, nud = (nu.num, nu.den) if isinstance(nu, RationalFunction) else (nu, Poly.const(1, nu.vars))
            den, ded = (de.num, de.den) if isinstance(de, RationalFunction) else (de, Poly.const(1, de.vars))
            a, b = align(nun * ded, den * nud)
            return RationalFunction(a, b)
        return RationalFunction(nu, de)

    def text(self) -> str:
        return f"({self.num.text()}) / ({self.den.text()})"

    def __repr__(self):
        return f"RationalFunction({self.text()})"


def _to_integer_pair(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    from math import lcm

    mult = 1
    for p in (num, den):
        for c in p.terms.values():
            if isinstance(c, Fraction):
                mult = lcm(mult, c.denominator)
    if mult != 1:
        num, den = num * mult, den * mult
    return num, den


def _normalize_pair(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    from math import gcd

    num, den = _to_integer_pair(num, den)
    g = gcd(num.content_int(), den.content_int())
    if g > 1:
        num = num.exact_scalar_div(g)
        den = den.exact_scalar_div(g)
    _, lead = den.leading()
    if lead < 0:
        num, den = -num, -den
    return num, den


def _cancel_common(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    num, den = _to_integer_pair(num, den)
    main = "t" if "t" in den.vars else den.vars[-1]
    g = _gcd_recursive(num, den, main)
    if g.total_degree() > 0:
        num = _exact_poly_div(num, g)
        den = _exact_poly_div(den, g)
    return num, den


# -- generic recursive gcd over Z[...][main], small inputs only --------------

def _as_coeff_list(p: Poly, main: str) -> list[Poly]:
    d = p.degree_in(main) if p.terms else 0
    return [p.coefficient_of(main, k) for k in range(d + 1)]


def _from_coeff_list(coeffs: list[Poly], main: str, ctx: Sequence[str]) -> Poly:
    tgt = tuple(ctx)
    out = Poly.const(0, tgt)
    x = Poly.var(main, tgt)
    for k, c in enumerate(coeffs):
        out = out + c.extend(tgt) * x**k
    return out


def _poly_content_gcd(items: Iterable[Poly]) -> Poly:
    acc: Poly | None = None
    for p in items:
        if p.is_zero():
            continue
        acc = p if acc is None else _gcd_multivar(acc, p)
        if acc.is_constant() and abs(acc.constant_value()) == 1:
            break
    if acc is None:
        return Poly.const(0)
    return acc


def _gcd_multivar(a: Poly, b: Poly) -> Poly:
    a = a.drop_unused()
    b = b.drop_unused()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        from math import gcd

        return Poly.const(gcd(a.content_int(), b.content_int()))
    tgt = list(a.vars)
    for v in b.vars:
        if v not in tgt:
            tgt.append(v)
    main = tgt[-1]
    return _gcd_recursive(a.extend(tgt), b.extend(tgt), main)


def _gcd_recursive(a: Poly, b: Poly, main: str) -> Poly:
    """Primitive pseudo-remainder gcd; content recursion on the
    remaining variables.  Small inputs only."""
    cont_a = _poly_content_gcd(_as_coeff_list(a, main))
    cont_b = _poly_content_gcd(_as_coeff_list(b, main))
    cont = _gcd_multivar(cont_a, cont_b)
    pa = _primitive_part(a, cont_a, main)
    pb = _primitive_part(b, cont_b, main)
    if pa.degree_in(main) < pb.degree_in(main):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _pseudo_rem(pa, pb, main)
        if r.is_zero():
            pa, pb = pb, r
        else:
            pa, pb = pb, _primitive_part(r, _poly_content_gcd(_as_coeff_list(r, main)), main)
    return _sign_norm(cont.extend(pa.vars) * _sign_norm(pa))


def _sign_norm(p: Poly) -> Poly:
    if p.is_zero():
        return p
    _, lead = p.leading()
    return -p if lead < 0 else p


def _primitive_part(p: Poly, cont: Poly, main: str) -> Poly:
    if p.is_zero() or cont.is_zero():
        return p
    if cont.is_constant():
        c = cont.constant_value()
        return p.exact_scalar_div(int(c)) if c not in (0, 1) else p
    return _exact_poly_div(p, cont.extend(p.vars))


def _pseudo_rem(a: Poly, b: Poly, main: str) -> Poly:
    da = a.degree_in(main)
    db = b.degree_in(main)
    if da < db:
        return a
    lb = b.coefficient_of(main, db).extend(a.vars)
    r = a
    x = Poly.var(main, a.vars)
    while not r.is_zero() and r.degree_in(main) >= db:
        dr = r.degree_in(main)
        lr = r.coefficient_of(main, dr).extend(a.vars)
        r = r * lb - b.extend(a.vars) * lr * x ** (dr - db)
        if not r.is_zero() and r.degree_in(main) == dr:
            raise AssertionError("pseudo-division failed to reduce degree")
    return r


def _exact_poly_div(a: Poly, b: Poly) -> Poly:
    """Exact multivariate division (raises if not exact)."""
    a2, b2 = align(a, b)
    if b2.is_zero():
        raise DomainError("division by zero polynomial")
    if b2.is_constant():
        c = b2.constant_value()
        if isinstance(c, int):
            return a2.exact_scalar_div(c)
        return a2 * (1 / c)
    q = Poly.const(0, a2.vars)
    r = a2
    eb, cb = b2.leading()
    while not r.is_zero():
        er, cr = r.leading()
        de = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in de):
            raise DomainError("polynomial division is not exact")
        cq = Fraction(cr) / Fraction(cb)
        t = Poly.monomial(a2.vars, de, _norm_coeff(cq))
        q = q + t
        r = r - t * b2
    for c in q.terms.values():
        if isinstance(c, Fraction):
            raise DomainError("polynomial division is not exact over the integers")
    return q


# ---------------------------------------------------------------------------
# polynomial matrices and characteristic polynomials
# ---------------------------------------------------------------------------

class PolyMatrix:
    """Dense square matrix of Poly entries sharing one variable context."""

    def __init__(self, entries: Sequence[Sequence[Poly]]):
        n = len(entries)
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
        ctx = entries[0][0].vars if n else ()
        for row in entries:
            for p in row:
                if p.vars != ctx:
                    raise ValueError("entries must share one variable context")
        self.n = n
        self.vars = ctx
        self.entries = [list(row) for row in entries]

    @classmethod
    def from_rows(cls, rows, variables) -> "PolyMatrix":
        conv = []
        for row in rows:
            conv.append([x if isinstance(x, Poly) else Poly.const(x, variables) for x in row])
        return cls(conv)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.n == other.n
            and all(self.entries[i][j] == other.entries[i][j] for i in range(self.n) for j in range(self.n))
        )

    __hash__ = None

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.n
        out = [[Poly.const(0, self.vars) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for k in range(n):
                a = self.entries[i][k]
                if a.is_zero():
                    continue
                for j in range(n):
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    out[i][j] = out[i][j] + a * b
        return PolyMatrix(out)

    def substitute(self, bindings) -> "PolyMatrix":
        return PolyMatrix([[p.substitute(bindings) for p in row] for row in self.entries])

    def char_poly(self, var: str) -> Poly:
        """det(var*Id - M) by the Faddeev-LeVerrier trace recursion."""
        if var in self.vars:
            raise DomainError(f"{var} already occurs in the matrix context")
        coeffs = _fl_coefficients([[p.terms for p in row] for row in self.entries], len(self.vars))
        return _assemble_charpoly(coeffs, self.vars, var)

    def det(self) -> Poly:
        p = self.char_poly("_det_tmp_")
        c = p.coefficient_of("_det_tmp_", 0)
        return c * ((-1) ** self.n)


def _fl_coefficients(rows: list[list[dict]], width: int) -> list[dict]:
    """Faddeev-LeVerrier on dict-polynomials; returns [c0=1, c1, ..., cn]."""
    n = len(rows)
    zero_e = (0,) * width
    sparse = [[(j, rows[i][j]) for j in range(n) if rows[i][j]] for i in range(n)]
    M: list[list[dict]] = [[{zero_e: 1} if i == j else {} for j in range(n)] for i in range(n)]
    coeffs: list[dict] = [{zero_e: 1}]
    for k in range(1, n + 1):
        AM: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j0, a in sparse[i]:
                Mrow = M[j0]
                for j in range(n):
                    m = Mrow[j]
                    if m:
                        _diadd(AM[i][j], _dmul(a, m))
        tr: dict = {}
        for i in range(n):
            _diadd(tr, AM[i][i])
        ck: dict = {}
        for e, c in tr.items():
            if isinstance(c, int):
                q, r = divmod(-c, k)
                if r:
                    raise AssertionError("trace recursion division not exact")
                ck[e] = q
            else:
                ck[e] = _norm_coeff(Fraction(-c, 1) / k)
        coeffs.append(ck)
        if k < n:
            for i in range(n):
                _diadd(AM[i][i], ck)
            M = AM
    return coeffs


def _assemble_charpoly(coeffs: list[dict], ctx: tuple, var: str) -> Poly:
    n = len(coeffs) - 1
    tgt = (var,) + ctx
    out: dict = {}
    for k, ck in enumerate(coeffs):
        for e, c in ck.items():
            out[(n - k,) + e] = c
    return Poly(tgt, out)


def char_poly(matrix: PolyMatrix, var: str) -> Poly:
    if matrix.n == 0:
        return Poly.const(1, (var,))
    return matrix.char_poly(var)


# ---------------------------------------------------------------------------
# integer matrices: modular characteristic polynomial with CRT certification
# ---------------------------------------------------------------------------

def _primes_desc(start: int, count: int) -> list[int]:
    out: list[int] = []
    p = start
    while len(out) < count:
        if all(p % q for q in range(2, isqrt(p) + 1)):
            out.append(p)
        p -= 1
    return out


_CRT_PRIMES = _primes_desc(2**25 - 1, 140)


def _charpoly_mod_fl(A: np.ndarray, p: int) -> list[int]:
    """Trace-recursion characteristic polynomial mod p (O(n^4); kept as
    the cross-check for the Hessenberg route)."""
    n = A.shape[0]
    Ap = np.mod(A, p).astype(np.int64)
    M = np.eye(n, dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    out = [1]
    for k in range(1, n + 1):
        AM = np.mod(Ap @ M, p)
        t = int(np.trace(AM)) % p
        ck = (-t * pow(k, -1, p)) % p
        out.append(ck)
        if k < n:
            M = np.mod(AM + ck * eye, p)
    return out


def _charpoly_mod(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial mod p via Hessenberg reduction and the
    Hessenberg determinant recurrence; O(n^3)."""
    n = A.shape[0]
    H = np.mod(A, p).astype(np.int64)
    for m in range(1, n - 1):
        col = H[m:, m - 1]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            H[[m, i], :] = H[[i, m], :]
            H[:, [m, i]] = H[:, [i, m]]
        inv = pow(int(H[m, m - 1]), -1, p)
        t_vec = H[m + 1 :, m - 1] * inv % p
        if np.any(t_vec):
            H[m + 1 :, :] = (H[m + 1 :, :] - np.outer(t_vec, H[m, :])) % p
            H[:, m] = (H[:, m] + H[:, m + 1 :] @ t_vec) % p
    # p_k(x) = (x - H[k-1,k-1]) p_{k-1}(x)
    #          - sum_i H[k-1-i,k-1] (prod subdiagonals) p_{k-1-i}(x)
    polys: list[np.ndarray] = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] += prev
        cur[:-1] = (cur[:-1] - int(H[k - 1, k - 1]) * prev) % p
        cur %= p
        run = 1
        for i in range(1, k):
            run = run * int(H[k - i, k - i - 1]) % p
            if run == 0:
                break
            coef = int(H[k - 1 - i, k - 1]) * run % p
            if coef:
                q = polys[k - 1 - i]
                cur[: q.size] = (cur[: q.size] - coef * q) % p
        polys.append(cur)
    final = polys[n]
    # final[j] is the coefficient of x^j; return [1, c1, ..., cn]
    return [int(final[n - k]) % p for k in range(n + 1)]


def charpoly_int(M: Sequence[Sequence[int]]) -> list[int]:
    """Exact characteristic polynomial coefficients [1, c1, ..., cn] of an
    integer matrix (det(x*Id - M) = sum c_k x^{n-k}), via CRT over
    word-size primes with a Hadamard-style coefficient bound."""
    n = len(M)
    if n == 0:
        return [1]
    B = max((abs(int(x)) for row in M for x in row), default=0)
    if B == 0:
        return [1] + [0] * n
    bits = 1 + max(
        log2(comb(n, k)) + k * (0.5 * log2(n) + log2(B)) for k in range(1, n + 1)
    )
    need = int(bits) + 10
    A = np.array([[int(x) for x in row] for row in M], dtype=object)
    A64 = A.astype(np.int64) if B < 2**40 else None
    residues: list[list[int]] = []
    primes: list[int] = []
    acc_bits = 0.0
    for p in _CRT_PRIMES:
        if n * (p - 1) ** 2 >= 2**63:
            raise SizeError("matrix too large for the modular kernel")
        base = A64 if A64 is not None else np.array([[int(x) % p for x in row] for row in M], dtype=np.int64)
        residues.append(_charpoly_mod(base, p))
        primes.append(p)
        acc_bits += log2(p)
        if acc_bits > need:
            break
    else:
        raise SizeError("coefficient bound exceeds the available prime pool")
    out: list[int] = []
    for k in range(n + 1):
        x, mod = 0, 1
        for r, p in zip(residues, primes):
            # incremental CRT
            t = ((r[k] - x) * pow(mod % p, -1, p)) % p
            x += mod * t
            mod *= p
        if x > mod // 2:
            x -= mod
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# integer univariate polynomials: division, gcd, squarefreeness
# ---------------------------------------------------------------------------

def _int_poly_trim(f: list[int]) -> list[int]:
    while len(f) > 1 and f[-1] == 0:
        f = f[:-1]
    return f


def _int_poly_derivative(f: list[int]) -> list[int]:
    return _int_poly_trim([k * f[k] for k in range(1, len(f))] or [0])


def _mod_poly_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    """Monic gcd in F_p[x]; inputs dense int lists."""
    a = [x % p for x in f]
    b = [x % p for x in g]

    def trim(u):
        while u and u[-1] == 0:
            u.pop()
        return u

    a, b = trim(a[:]), trim(b[:])
    while b:
        inv = pow(b[-1], -1, p)
        bm = [(x * inv) % p for x in b]
        r = a[:]
        while len(r) >= len(bm) and trim(r[:]):
            r = trim(r)
            if len(r) < len(bm):
                break
            c = r[-1]
            shift = len(r) - len(bm)
            for i, x in enumerate(bm):
                r[shift + i] = (r[shift + i] - c * x) % p
            r = trim(r)
        a, b = bm, trim(r)
    if not a:
        return [0]
    inv = pow(a[-1], -1, p)
    return [(x * inv) % p for x in a]


def _try_exact_div_int(f: list[int], g: list[int]) -> list[int] | None:
    """Quotient f/g over Z if division is exact, else None."""
    f = _int_poly_trim(list(f))
    g = _int_poly_trim(list(g))
    if g == [0]:
        return None
    if len(f) < len(g):
        return None if f != [0] else [0]
    q = [Fraction(0)] * (len(f) - len(g) + 1)
    r = [Fraction(x) for x in f]
    lg = Fraction(g[-1])
    for k in range(len(f) - len(g), -1, -1):
        c = r[k + len(g) - 1] / lg
        q[k] = c
        if c:
            for i, x in enumerate(g):
                r[k + i] -= c * x
    if any(r):
        return None
    if any(c.denominator != 1 for c in q):
        return None
    return [int(c) for c in q]


def int_poly_gcd(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd in Z[x] via modular images with exact-division
    verification (so the answer is certified, not probabilistic)."""
    from math import gcd as igcd

    f = _int_poly_trim(list(f))
    g = _int_poly_trim(list(g))
    if f == [0]:
        return g
    if g == [0]:
        return f
    cf = 0
    for x in f:
        cf = igcd(cf, x)
    cg = 0
    for x in g:
        cg = igcd(cg, x)
    cont = igcd(cf, cg)
    fp = [x // cf for x in f]
    gp = [x // cg for x in g]
    lc_bound = igcd(fp[-1], gp[-1])
    best_deg = None
    residues: list[tuple[int, list[int]]] = []
    for p in _CRT_PRIMES:
        if fp[-1] % p == 0 or gp[-1] % p == 0:
            continue
        h = _mod_poly_gcd(fp, gp, p)
        d = len(h) - 1
        if d == 0:
            return [cont]
        if best_deg is None or d < best_deg:
            best_deg = d
            residues = []
        if d == best_deg:
            scaled = [(c * lc_bound) % p for c in h]
            residues.append((p, scaled))
            cand, mod = _crt_lists(residues)
            cc = 0
            for x in cand:
                cc = igcd(cc, x)
            if cc:
                prim = [x // cc for x in cand]
                if prim[-1] < 0:
                    prim = [-x for x in prim]
                if _try_exact_div_int(fp, prim) is not None and _try_exact_div_int(gp, prim) is not None:
                    return [cont * x for x in prim]
    raise AssertionError("integer gcd reconstruction failed")  # pragma: no cover


def _crt_lists(residues: list[tuple[int, list[int]]]) -> tuple[list[int], int]:
    width = max(len(r) for _, r in residues)
    out = []
    mod_total = 1
    for p, _ in residues:
        mod_total *= p
    for k in range(width):
        x, mod = 0, 1
        for p, r in residues:
            rk = r[k] if k < len(r) else 0
            t = ((rk - x) * pow(mod % p, -1, p)) % p
            x += mod * t
            mod *= p
        if x > mod // 2:
            x -= mod
        out.append(x)
    return out, mod_total


def is_squarefree_int(f: list[int]) -> bool:
    f = _int_poly_trim(list(f))
    if f == [0]:
        raise DomainError("zero polynomial")
    if len(f) == 1:
        return True
    g = int_poly_gcd(f, _int_poly_derivative(f))
    return len(g) == 1


def is_squarefree_univariate(f: Poly) -> bool:
    """True iff gcd(f, f') is constant, for f univariate over exact
    rationals."""
    if f.is_zero():
        raise DomainError("zero polynomial")
    f = f.drop_unused()
    if not f.vars:
        return True
    name = f.vars[0]
    coeffs = f.univariate_coeffs(name)
    from math import lcm

    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    return is_squarefree_int(ints)


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------

def _bareiss_det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    M = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def sylvester_resultant_int(f: list[int], g: list[int]) -> int:
    f = _int_poly_trim(list(f))
    g = _int_poly_trim(list(g))
    m = len(f) - 1
    n = len(g) - 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    M = [[0] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(reversed(f)):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(reversed(g)):
            M[n + i][i + j] = c
    return _bareiss_det(M)


def sylvester_resultant_poly(f: Poly, g: Poly, main: str) -> Poly:
    """Symbolic Sylvester-matrix resultant (cofactor expansion; oracle
    for small degrees only)."""
    cf = _as_coeff_list(f, main)
    cg = _as_coeff_list(g, main)
    m = len(cf) - 1
    n = len(cg) - 1
    ctx = tuple(v for v in f.vars if v != main)
    cf = [c.extend(ctx) for c in cf]
    cg = [c.extend(ctx) for c in cg]
    size = m + n
    if size == 0:
        return Poly.const(1, ctx)
    zero = Poly.const(0, ctx)
    M = [[zero for _ in range(size)] for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(reversed(cf)):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(reversed(cg)):
            M[n + i][i + j] = c
    return _det_cofactor(M, ctx)


def _det_cofactor(M: list[list[Poly]], ctx) -> Poly:
    n = len(M)
    if n == 0:
        return Poly.const(1, ctx)
    if n == 1:
        return M[0][0]
    out = Poly.const(0, ctx)
    for j in range(n):
        a = M[0][j]
        if a.is_zero():
            continue
        minor = [[M[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = a * _det_cofactor(minor, ctx)
        out = out + term if j % 2 == 0 else out - term
    return out


def _eval_coeffs_at(f: Poly, main: str, point: dict[str, int]) -> list[int]:
    """Dense integer coefficient list of f in `main` with the
    remaining variables evaluated at integer values."""
    i = f.vars.index(main)
    idx = {v: f.vars.index(v) for v in point}
    deg = f.degree_in(main)
    out = [0] * (deg + 1)
    for e, c in f.terms.items():
        val = c
        for v, j in idx.items():
            val *= point[v] ** e[j]
        out[e[i]] += val
    return [int(x) for x in out]


def _disc_from_coeffs(coeffs: list[int], d: int) -> int:
    fp = _int_poly_derivative(coeffs)
    res = sylvester_resultant_int(coeffs, fp)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    lc = coeffs[-1]
    assert res % lc == 0
    return sign * (res // lc)


def _interp_newton(xs: list[int], ys: list) -> list[Fraction]:
    """Newton divided-difference interpolation; dense coefficients."""
    n = len(xs)
    divided = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - j])
    # Horner accumulation of sum_i divided[i] * prod_{k<i} (x - xs[k])
    result = [divided[n - 1]] + [Fraction(0)] * (n - 1)
    for i in range(n - 2, -1, -1):
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += result[k]
            new[k] -= xs[i] * result[k]
        new[0] += divided[i]
        result = new
    return result


def _quasi_weights(f: Poly, main: str, others: list[str]) -> tuple[Fraction, ...] | None:
    """Weights w for the non-main variables making f quasi-homogeneous
    with the main variable of weight 1, or None."""
    im = f.vars.index(main)
    idx = [f.vars.index(v) for v in others]
    d = f.degree_in(main)
    rows = []
    for e, _ in f.terms.items():
        rows.append((tuple(e[i] for i in idx), d - e[im]))
    # solve rows . w = rhs over Q
    k = len(others)
    w: list[Fraction | None] = [None] * k
    pending = list(rows)
    changed = True
    while changed:
        changed = False
        for exps, rhs in pending:
            unknown = [i for i in range(k) if exps[i] and w[i] is None]
            if len(unknown) == 1:
                i = unknown[0]
                acc = Fraction(rhs)
                for j in range(k):
                    if j != i and exps[j]:
                        acc -= exps[j] * w[j]
                w[i] = acc / exps[i]
                changed = True
    if any(x is None for x in w):
        return None
    for exps, rhs in rows:
        if sum(Fraction(e) * ww for e, ww in zip(exps, w)) != rhs:
            return None
    if any(ww <= 0 for ww in w):
        return None
    return tuple(w)  # type: ignore[return-value]


def discriminant_bivariate(f: Poly, main: str = "zeta") -> Poly:
    """Discriminant of f (monic in `main`, coefficients polynomial in at
    most two further variables) by evaluation of integer resultants at
    rational points plus exact interpolation.

    Sign convention: (-1)^{d(d-1)/2} * Res(f, df/dmain) / lc(f).
    """
    if main not in f.vars:
        raise DomainError(f"{main} is not a variable of f")
    d = f.degree_in(main)
    if d > 12:
        raise SizeError("discriminant supported for main-variable degree <= 12")
    if f.coefficient_of(main, d) != Poly.const(1, tuple(v for v in f.vars if v != main)):
        raise DomainError("f must be monic in the main variable")
    others = [v for v in f.vars if v != main and f.degree_in(v) > 0]
    ctx = tuple(v for v in f.vars if v != main)
    if d == 0:
        return Poly.const(1, ctx)
    if not others:
        coeffs = [int(c.constant_value()) for c in _as_coeff_list(f, main)]
        return Poly.const(_disc_from_coeffs(coeffs, d), ctx)
    if len(others) > 2:
        raise SizeError("at most two coefficient variables are supported")

    if len(others) == 1:
        v = others[0]
        D = (2 * d - 1) * f.degree_in(v)
        xs = list(range(D + 1))
        ys = [_disc_from_coeffs(_eval_coeffs_at(f, main, {v: x}), d) for x in xs]
        dense = _interp_newton(xs, ys)
        return _dense_to_poly(dense, v, ctx)

    v1, v2 = others
    weights = _quasi_weights(f, main, [v1, v2])
    if weights is not None:
        return _disc_quasihomogeneous(f, main, v1, v2, weights, d, ctx)
    D1 = (2 * d - 1) * f.degree_in(v1)
    D2 = (2 * d - 1) * f.degree_in(v2)
    if (D1 + 1) * (D2 + 1) > 4000:
        raise SizeError("dense bivariate interpolation grid too large")
    cols = []
    for x in range(D1 + 1):
        ys = [_disc_from_coeffs(_eval_coeffs_at(f, main, {v1: x, v2: y}), d) for y in range(D2 + 1)]
        cols.append(_interp_newton(list(range(D2 + 1)), ys))
    out: dict = {}
    i1 = ctx.index(v1)
    i2 = ctx.index(v2)
    for k2 in range(D2 + 1):
        xs = list(range(D1 + 1))
        ys = [cols[x][k2] for x in xs]
        dense = _interp_newton(xs, ys)
        for k1, c in enumerate(dense):
            if c:
                if c.denominator != 1:
                    raise AssertionError("discriminant interpolation produced a non-integer")
                e = [0] * len(ctx)
                e[i1] = k1
                e[i2] = k2
                out[tuple(e)] = int(c)
    return Poly(ctx, out)


def _dense_to_poly(dense: list[Fraction], var: str, ctx: tuple) -> Poly:
    i = ctx.index(var)
    out: dict = {}
    for k, c in enumerate(dense):
        if c:
            if c.denominator != 1:
                raise AssertionError("interpolation produced a non-integer coefficient")
            e = [0] * len(ctx)
            e[i] = k
            out[tuple(e)] = int(c)
    return Poly(ctx, out)


def _disc_quasihomogeneous(f, main, v1, v2, weights, d, ctx) -> Poly:
    """f quasi-homogeneous (main weight 1): the discriminant is too, of
    weighted degree d(d-1), so one line of evaluations at v2=1 suffices."""
    w1, w2 = weights
    W = Fraction(d * (d - 1))
    deg1 = min((2 * d - 1) * f.degree_in(v1), int(W / w1))
    xs = list(range(1, deg1 + 2))
    ys = [_disc_from_coeffs(_eval_coeffs_at(f, main, {v1: x, v2: 1}), d) for x in xs]
    dense = _interp_newton(xs, ys)
    i1 = ctx.index(v1)
    i2 = ctx.index(v2)
    out: dict = {}
    for b, c in enumerate(dense):
        if not c:
            continue
        if c.denominator != 1:
            raise AssertionError("interpolation produced a non-integer coefficient")
        rem = W - w1 * b
        e2 = rem / w2
        if e2.denominator != 1 or e2 < 0:
            raise AssertionError("quasi-homogeneous lift failed; inconsistent support")
        e = [0] * len(ctx)
        e[i1] = b
        e[i2] = int(e2)
        out[tuple(e)] = int(c)
    return Poly(ctx, out)


# ---------------------------------------------------------------------------
# Newton forward interpolation with stabilization detection
# ---------------------------------------------------------------------------

class NewtonFit:
    """Result of fitting consecutive-integer data with a polynomial.

    conclusive is False when no finite-difference row is constant on a
    suffix of length >= 2; otherwise polynomial/start_index describe the
    fit and the first index from which it matches the data.
    """

    def __init__(self, conclusive: bool, polynomial: Poly | None = None, start_index: int | None = None):
        self.conclusive = conclusive
        self.polynomial = polynomial
        self.start_index = start_index

    def __repr__(self):
        if not self.conclusive:
            return "NewtonFit(inconclusive)"
        return f"NewtonFit({self.polynomial.text()}, from n={self.start_index})"


def binomial_poly(var: str, shift: Coeff, j: int, ctx: Sequence[str] = ("n",)) -> Poly:
    """binom(var + shift, j) as an exact polynomial."""
    x = Poly.var(var, ctx)
    out = Poly.const(Fraction(1), ctx)
    for i in range(j):
        out = out * (x + (shift - i))
    return out * Fraction(1, _fact(j))


def _fact(j: int) -> int:
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def newton_forward_polynomial(values: Sequence[Coeff], n0: int, var: str = "n") -> NewtonFit:
    """Fit the maximal suffix of `values` (samples at n0, n0+1, ...) on
    which some finite-difference order is constant; report the earliest
    index where the fitted polynomial already matches."""
    vals = [Fraction(v) for v in values]
    if len(vals) < 2:
        raise DomainError("need at least two values")
    rows = [vals]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    best: tuple[int, int] | None = None  # (start, order)
    for d, row in enumerate(rows):
        if len(row) < 2:
            break
        start = len(row) - 1
        while start > 0 and row[start - 1] == row[-1]:
            start -= 1
        if len(row) - start >= 2:
            if best is None or start < best[0]:
                best = (start, d)
    if best is None:
        return NewtonFit(False)
    start, d = best
    ctx = (var,)
    poly = Poly.const(0, ctx)
    for j in range(d + 1):
        poly = poly + rows[j][start] * binomial_poly(var, -(n0 + start), j, ctx)
    first = start
    while first > 0:
        if _eval_poly_at_int(poly, n0 + first - 1) == vals[first - 1]:
            first -= 1
        else:
            break
    return NewtonFit(True, poly, n0 + first)


def _eval_poly_at_int(p: Poly, x: int):
    """Evaluate a univariate polynomial at an integer, exactly."""
    acc = Fraction(0)
    for e, c in p.terms.items():
        acc += Fraction(c) * x ** e[0]
    return _norm_coeff(acc)


def eval_univariate(p: Poly, x) -> Coeff:
    acc = Fraction(0)
    for e, c in p.terms.items():
        acc += Fraction(c) * Fraction(x) ** e[0]
    return _norm_coeff(acc)


# ---------------------------------------------------------------------------
# univariate series helpers (used by generating-function tests and checks)
# ---------------------------------------------------------------------------

def series_coefficients(rf: RationalFunction, var: str, degree: int) -> list[Poly]:
    """Power-series coefficients of rf in `var` up to `degree`; the
    denominator's constant term (in var) must be a unit +-1."""
    num = _as_coeff_list(rf.num, var)
    den = _as_coeff_list(rf.den, var)
    d0 = den[0]
    if not d0.is_constant() or d0.constant_value() not in (1, -1):
        raise ShapeError("denominator constant term must be a unit for series expansion")
    u = d0.constant_value()
    ctx = tuple(v for v in rf.num.vars if v != var)
    num = [c.extend(ctx) for c in num]
    den = [c.extend(ctx) for c in den]
    out: list[Poly] = []
    for k in range(degree + 1):
        acc = num[k] if k < len(num) else Poly.const(0, ctx)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * u)
    return out

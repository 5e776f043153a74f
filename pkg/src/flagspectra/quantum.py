"""Weight-space bases, dynamical operators, quantum multiplication by
the first Chern class, quantum characteristic polynomials and their
semiclassical limits, and the companion matrix presenting the small
quantum cohomology of a partial flag variety.

Variable conventions: the weight-space operators use z1..zn and p1..pN
(Laurent in the p's); the quantum operators use q1..q(N-1) after the
normalization p = (1, q1, q1 q2, ...); characteristic polynomials use
"zeta".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .arith import DomainError, default_sieve
from .compositions import Composition, pair_is_exceeding
from .polyring import (
    Poly,
    PolyMatrix,
    SizeError,
    _assemble_charpoly,
    _dadd,
    _diadd,
    _dmul,
    _fl_coefficients,
    charpoly_int,
    is_squarefree_int,
)

_DIM_CAP = 10**4
_SYMBOLIC_CAP = 40
_NUMERIC_CAP = 10**3


def _as_parts(lam) -> tuple[int, ...]:
    if isinstance(lam, Composition):
        return lam.parts
    return tuple(lam)


def multinomial(lam) -> int:
    parts = _as_parts(lam)
    n = sum(parts)
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


@dataclass(frozen=True)
class OrderedSetPartition:
    """Blocks (I_1, ..., I_N) partitioning {1..n}, |I_j| = lam_j; the
    word maps each position a to the index of the block containing it."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def word(self) -> tuple[int, ...]:
        n = sum(len(b) for b in self.blocks)
        w = [0] * n
        for j, block in enumerate(self.blocks, start=1):
            for a in block:
                w[a - 1] = j
        return tuple(w)

    def block_of(self, a: int) -> int:
        for j, block in enumerate(self.blocks, start=1):
            if a in block:
                return j
        raise ValueError(a)

    def swap(self, a: int, b: int) -> "OrderedSetPartition":
        out = []
        for block in self.blocks:
            nb = []
            for x in block:
                if x == a:
                    nb.append(b)
                elif x == b:
                    nb.append(a)
                else:
                    nb.append(x)
            out.append(tuple(sorted(nb)))
        return OrderedSetPartition(tuple(out))

    def inversions(self) -> int:
        """Pairs a < b whose blocks are strictly out of order."""
        w = self.word
        n = len(w)
        return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])

    def coinversions(self) -> int:
        """Pairs a < b whose blocks are strictly in order; this is the
        complex degree of the basis class (the canonical order lists the
        top class first)."""
        w = self.word
        n = len(w)
        return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] < w[b])

    def merged(self, i: int) -> tuple[tuple[int, ...], ...]:
        """Blocks with block i and i+1 fused (1-based)."""
        b = self.blocks
        fused = tuple(sorted(b[i - 1] + b[i]))
        return b[: i - 1] + (fused,) + b[i + 1 :]


def weight_basis(lam) -> list[OrderedSetPartition]:
    """All ordered set partitions of shape lam, in the canonical order:
    lexicographic on the tuple of (sorted) blocks.  This is the order in
    which the reference 6x6 operator matrices are printed."""
    parts = _as_parts(lam)
    n = sum(parts)
    if n > 9:
        raise SizeError("weight basis guarded to n <= 9")
    dim = multinomial(parts)
    if dim > _DIM_CAP:
        raise SizeError(f"weight-space dimension {dim} exceeds {_DIM_CAP}")
    out: list[OrderedSetPartition] = []

    def rec(remaining: tuple[int, ...], chosen: list[tuple[int, ...]], k: int):
        if k == len(parts):
            out.append(OrderedSetPartition(tuple(chosen)))
            return
        for block in combinations(remaining, parts[k]):
            rest = tuple(x for x in remaining if x not in block)
            chosen.append(block)
            rec(rest, chosen, k + 1)
            chosen.pop()

    rec(tuple(range(1, n + 1)), [], 0)
    return out


def admissible(I: OrderedSetPartition, a: int, b: int) -> bool:
    """The pair condition gating the swap operators: disordered pairs
    need an empty open interval inside the spanned blocks, ordered pairs
    an empty outer complement.  Same-block pairs are never admissible
    (the operators are only ever invoked across distinct blocks)."""
    if a == b:
        raise DomainError("positions must differ")
    w = I.word
    i, j = w[a - 1], w[b - 1]
    if i == j:
        return False
    lo, hi = min(i, j), max(i, j)
    span = set()
    for r in range(lo, hi + 1):
        span.update(I.blocks[r - 1])
    lo_ab, hi_ab = min(a, b), max(a, b)
    disordered = (a < b and i > j) or (a > b and i < j)
    if disordered:
        window = set(range(lo_ab + 1, hi_ab))
    else:
        n = len(w)
        window = set(range(1, lo_ab)) | set(range(hi_ab + 1, n + 1))
    return not (window & span)


# ---------------------------------------------------------------------------
# operator assembly
# ---------------------------------------------------------------------------

def _swap_terms(lam, i: int):
    """Yield (col, row, j, a_before_b) for every admissible swap moved
    by the i-th operator: position a sits in block i, position b in
    block j != i; a_before_b tells which double sum the pair falls in."""
    basis = weight_basis(lam)
    index = {I.blocks: k for k, I in enumerate(basis)}
    for col, I in enumerate(basis):
        w = I.word
        n = len(w)
        for a in range(1, n + 1):
            if w[a - 1] != i:
                continue
            for b in range(1, n + 1):
                if b == a or w[b - 1] == i:
                    continue
                if not admissible(I, a, b):
                    continue
                row = index[I.swap(a, b).blocks]
                yield col, row, w[b - 1], a < b


def _dynamical_ctx(parts) -> tuple[str, ...]:
    n = sum(parts)
    N = len(parts)
    return tuple(f"z{a}" for a in range(1, n + 1)) + tuple(f"p{j}" for j in range(1, N + 1))


def _dynamical_entries(parts, i: int) -> dict[tuple[int, int], dict]:
    """Sparse entries of the i-th dynamical operator as dict-polynomials
    over z1..zn, p1..pN (Laurent in the p ratios)."""
    n = sum(parts)
    N = len(parts)
    ctx = _dynamical_ctx(parts)
    basis = weight_basis(parts)
    out: dict[tuple[int, int], dict] = {}
    for col, I in enumerate(basis):
        diag: dict = {}
        for a, w in enumerate(I.word, start=1):
            if w == i:
                e = [0] * len(ctx)
                e[a - 1] = 1
                diag[tuple(e)] = 1
        if diag:
            out[(col, col)] = diag
    for col, row, j, a_before_b in _swap_terms(parts, i):
        e = [0] * len(ctx)
        if a_before_b:
            if j > i:
                e[n + j - 1] = 1
                e[n + i - 1] = -1
                coeff = 1
            else:
                coeff = -1
        else:
            if j > i:
                coeff = 1
            else:
                e[n + i - 1] = 1
                e[n + j - 1] = -1
                coeff = -1
        cell = out.setdefault((row, col), {})
        _diadd(cell, {tuple(e): coeff})
        if not cell:
            del out[(row, col)]
    return out


def dynamical_matrix(lam, i: int) -> PolyMatrix:
    """Matrix of the i-th dynamical operator on the lam weight space,
    over z1..zn and p1..pN (Laurent in the p ratios)."""
    parts = _as_parts(lam)
    N = len(parts)
    if not 1 <= i <= N:
        raise DomainError("operator index out of range")
    ctx = _dynamical_ctx(parts)
    dim = multinomial(parts)
    cells = _dynamical_entries(parts, i)
    rows = [[Poly(ctx, cells.get((r, s), {})) for s in range(dim)] for r in range(dim)]
    return PolyMatrix(rows)


def dynamical_sum_rule_holds(lam) -> bool:
    """sum_i X_i = (sum_a z_a) Id on the lam weight space, checked at
    the sparse-entry level so large weight spaces stay cheap."""
    parts = _as_parts(lam)
    n = sum(parts)
    N = len(parts)
    ctx = _dynamical_ctx(parts)
    total: dict[tuple[int, int], dict] = {}
    for i in range(1, N + 1):
        for key, cell in _dynamical_entries(parts, i).items():
            acc = total.setdefault(key, {})
            _diadd(acc, cell)
            if not acc:
                del total[key]
    zsum = {}
    for a in range(n):
        e = [0] * len(ctx)
        e[a] = 1
        zsum[tuple(e)] = 1
    dim = multinomial(parts)
    if set(total) != {(r, r) for r in range(dim)}:
        return False
    return all(total[(r, r)] == zsum for r in range(dim))


def _q_exponent(i: int, j: int, N: int) -> tuple[int, ...]:
    """Exponent vector of the q-monomial for p_max/p_min between blocks."""
    lo, hi = min(i, j), max(i, j)
    e = [0] * (N - 1)
    for k in range(lo, hi):
        e[k - 1] = 1
    return tuple(e)


def _quotient_class_matrix_terms(lam, i: int) -> list[list[dict]]:
    """Quantum multiplication by the i-th quotient class at z = 0 under
    the normalization p = (1, q1, q1 q2, ...): sparse dict rows over
    q1..q(N-1)."""
    parts = _as_parts(lam)
    N = len(parts)
    dim = multinomial(parts)
    rows: list[list[dict]] = [[{} for _ in range(dim)] for _ in range(dim)]
    for col, row, j, a_before_b in _swap_terms(parts, i):
        if a_before_b:
            if j > i:
                e = _q_exponent(i, j, N)
                coeff = 1
            else:
                e = (0,) * (N - 1)
                coeff = -1
        else:
            if j > i:
                e = (0,) * (N - 1)
                coeff = 1
            else:
                e = _q_exponent(i, j, N)
                coeff = -1
        _diadd(rows[row][col], {e: coeff})
    return rows


def anticanonical_coefficients(lam) -> list[int]:
    """Weights sum_{j<i} lam_j - sum_{j>i} lam_j expressing the first
    Chern class in the quotient-class basis."""
    parts = _as_parts(lam)
    n = sum(parts)
    pref = 0
    out = []
    for p in parts:
        out.append(pref - (n - pref - p))
        pref += p
    return out


def quantum_c1_operator(lam) -> PolyMatrix:
    """Quantum multiplication by c1 on the lam weight space, entries
    exact polynomials in q1..q(N-1)."""
    parts = _as_parts(lam)
    N = len(parts)
    dim = multinomial(parts)
    if dim > _DIM_CAP:
        raise SizeError(f"dimension {dim} exceeds {_DIM_CAP}")
    ctx = tuple(f"q{j}" for j in range(1, N))
    coeffs = anticanonical_coefficients(parts)
    rows: list[list[dict]] = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(1, N + 1):
        c = coeffs[i - 1]
        if c == 0:
            continue
        part = _quotient_class_matrix_terms(parts, i)
        for r in range(dim):
            for s in range(dim):
                if part[r][s]:
                    _diadd(rows[r][s], part[r][s], c)
    return PolyMatrix([[Poly(ctx, d) for d in r] for r in rows])


def quantum_char_poly(lam) -> Poly:
    """det(zeta Id - quantum c1); exact over zeta, q1..q(N-1)."""
    parts = _as_parts(lam)
    dim = multinomial(parts)
    if dim > _SYMBOLIC_CAP:
        raise SizeError(f"symbolic characteristic polynomial capped at {_SYMBOLIC_CAP}")
    M = quantum_c1_operator(parts)
    return M.char_poly("zeta")


# ---------------------------------------------------------------------------
# graded fast path for single-parameter (Grassmannian) operators
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _grassmannian_char_poly_cached(a: int, b: int) -> tuple[tuple[int, int], ...]:
    """Char poly of quantum c1 on the (a, b) two-step space, returned as
    ((zeta_power, integer coefficient) ...) with the q-power implied by
    the grading: coefficient of zeta^(dim-k) carries q^(k/(a+b)).

    The operator is graded: entry (I, J) is a monomial c * q^e with
    (a+b) e = inv(J) + 1 - inv(I); this is verified entrywise, and the
    determinant expansion then forces the exponent pattern, so the whole
    polynomial is recovered from the q = 1 integer matrix.
    """
    parts = (a, b)
    dim = multinomial(parts)
    if dim > _NUMERIC_CAP:
        raise SizeError("fiber dimension exceeds the numeric cap")
    basis = weight_basis(parts)
    degrees = [I.coinversions() for I in basis]
    w = a + b
    M = quantum_c1_operator(parts)
    ints = [[0] * dim for _ in range(dim)]
    for r in range(dim):
        for s in range(dim):
            p = M.entries[r][s]
            if p.is_zero():
                continue
            if len(p.terms) != 1:
                raise AssertionError("graded operator has a non-monomial entry")
            (e,), (c,) = zip(*p.terms.items())
            if w * e[0] != degrees[s] + 1 - degrees[r]:
                raise AssertionError("entry violates the grading")
            ints[r][s] = c
    cp = charpoly_int(ints)
    out = []
    for k, c in enumerate(cp):
        if c == 0:
            continue
        if k % w != 0:
            raise AssertionError("graded charpoly has a coefficient off the q-lattice")
        out.append((dim - k, c))
    return tuple(out)


def grassmannian_char_poly(a: int, b: int, q_name: str = "q1") -> Poly:
    """Quantum characteristic polynomial of the two-step flag (a, b), in
    (zeta, q_name)."""
    w = a + b
    dim = multinomial((a, b))
    ctx = ("zeta", q_name)
    terms = {}
    for zp, c in _grassmannian_char_poly_cached(a, b):
        terms[(zp, (dim - zp) // w)] = c
    return Poly(ctx, terms)


# ---------------------------------------------------------------------------
# semiclassical limits
# ---------------------------------------------------------------------------

def _semiclassical_entries(lam, i: int) -> list[list[dict]]:
    """Operator entries with q_j -> 0 for j != i; dicts over (q_i,)."""
    parts = _as_parts(lam)
    N = len(parts)
    M = quantum_c1_operator(parts)
    keep = i - 1
    dim = M.n
    rows: list[list[dict]] = [[{} for _ in range(dim)] for _ in range(dim)]
    for r in range(dim):
        for s in range(dim):
            for e, c in M.entries[r][s].terms.items():
                if any(e[j] for j in range(N - 1) if j != keep):
                    continue
                _diadd(rows[r][s], {(e[keep],): c})
    return rows


def semiclassical_blocks(lam, i: int) -> list[Poly] | None:
    """Characteristic polynomials of the diagonal blocks of the i-th
    semiclassical operator with respect to the merged-partition
    grouping, or None when the group quotient is not acyclic.

    When the quotient digraph is a DAG the operator is block-triangular
    in a group-sorted basis, so the product of the returned polynomials
    is the i-th semiclassical characteristic polynomial.
    """
    parts = _as_parts(lam)
    N = len(parts)
    if not 1 <= i <= N - 1:
        raise DomainError("semiclassical index must satisfy 1 <= i <= N-1")
    basis = weight_basis(parts)
    rows = _semiclassical_entries(parts, i)
    groups: dict[tuple, list[int]] = {}
    for idx, I in enumerate(basis):
        groups.setdefault(I.merged(i), []).append(idx)
    keys = list(groups)
    key_of = {}
    for k, key in enumerate(keys):
        for idx in groups[key]:
            key_of[idx] = k
    edges: set[tuple[int, int]] = set()
    dim = len(basis)
    for r in range(dim):
        for s in range(dim):
            if rows[r][s] and key_of[r] != key_of[s]:
                edges.add((key_of[s], key_of[r]))
    # Kahn topological sort on the group quotient
    out_deg = {k: 0 for k in range(len(keys))}
    preds: dict[int, list[int]] = {k: [] for k in range(len(keys))}
    for u, v in edges:
        out_deg[u] += 1
        preds[v].append(u)
    queue = [k for k in range(len(keys)) if out_deg[k] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for u in preds[v]:
            out_deg[u] -= 1
            if out_deg[u] == 0:
                queue.append(u)
    if seen != len(keys):
        return None
    ctx = (f"q{i}",)
    out: list[Poly] = []
    for key in keys:
        members = groups[key]
        sub = [[rows[r][s] for s in members] for r in members]
        coeffs = _fl_coefficients(sub, 1)
        out.append(_assemble_charpoly(coeffs, ctx, "zeta"))
    return out


def semiclassical_char_poly(lam, i: int) -> Poly:
    """Limit of the quantum characteristic polynomial as q_j -> 0 for
    j != i, exact in (zeta, q_i)."""
    parts = _as_parts(lam)
    dim = multinomial(parts)
    if dim <= _SYMBOLIC_CAP:
        rows = _semiclassical_entries(parts, i)
        coeffs = _fl_coefficients(rows, 1)
        return _assemble_charpoly(coeffs, (f"q{i}",), "zeta")
    blocks = semiclassical_blocks(parts, i)
    if blocks is None:
        raise SizeError("semiclassical operator is not block-triangularizable; dimension too large for the direct route")
    out = Poly.const(1, blocks[0].vars)
    for b in blocks:
        out = out * b
    return out


def fiber_power_check(lam, i: int) -> bool:
    """Does the i-th semiclassical characteristic polynomial equal the
    two-step fiber polynomial raised to the merged-shape multinomial?

    Checked structurally: the semiclassical operator must be
    block-triangular over the merged grouping with every diagonal block
    carrying the fiber's characteristic polynomial.
    """
    parts = _as_parts(lam)
    a, b = parts[i - 1], parts[i]
    fiber = grassmannian_char_poly(a, b, f"q{i}")
    blocks = semiclassical_blocks(parts, i)
    if blocks is None:
        g = fiber.extend(("zeta", f"q{i}"))
        D = multinomial(parts[: i - 1] + (a + b,) + parts[i + 1 :])
        return semiclassical_char_poly(parts, i) == g**D
    D = multinomial(parts[: i - 1] + (a + b,) + parts[i + 1 :])
    if len(blocks) != D:
        return False
    return all(blk == fiber for blk in blocks)


# ---------------------------------------------------------------------------
# classification and simplicity
# ---------------------------------------------------------------------------

def _squarefree_at_points(a: int, b: int, points=(1, 2, 3)) -> bool:
    """Square-freeness of the fiber polynomial at generic rational
    points; must agree on two successive points to count as decided."""
    poly = grassmannian_char_poly(a, b)
    dim = multinomial((a, b))
    w = a + b
    verdicts = []
    for q0 in points:
        coeffs = [0] * (dim + 1)
        for (zp, qp), c in poly.terms.items():
            coeffs[zp] = c * q0**qp
        verdicts.append(is_squarefree_int(coeffs))
        if len(verdicts) >= 2 and verdicts[-1] == verdicts[-2]:
            return verdicts[-1]
    raise DomainError("square-freeness unstable across sample points")


def classify_semiclassical(lam, i: int, spectral_route: bool | None = None) -> str:
    """"exceeding" or "non-exceeding" for the i-th semiclassical
    spectrum, via the prime criterion on the adjacent pair; when
    spectral_route is requested (or left automatic within the dimension
    guard) the square-freeness route on the fiber polynomial is computed
    too and the two must agree."""
    parts = _as_parts(lam)
    N = len(parts)
    if not 1 <= i <= N - 1:
        raise DomainError("index out of range")
    a, b = parts[i - 1], parts[i]
    by_pairs = pair_is_exceeding(a, b)
    dim = multinomial((a, b))
    run_b = spectral_route if spectral_route is not None else dim <= _NUMERIC_CAP
    if run_b:
        by_spectrum = not _squarefree_at_points(a, b)
        if by_spectrum != by_pairs:
            raise AssertionError(f"classification routes disagree for {parts}, i={i}")
    return "exceeding" if by_pairs else "non-exceeding"


def simplicity_at_one(lam) -> bool:
    """Is the quantum spectrum at q = (1,...,1) simple (characteristic
    polynomial square-free)?"""
    parts = _as_parts(lam)
    dim = multinomial(parts)
    if dim > _NUMERIC_CAP:
        raise SizeError(f"numeric characteristic polynomial capped at {_NUMERIC_CAP}")
    M = quantum_c1_operator(parts)
    ints = [[0] * dim for _ in range(dim)]
    for r in range(dim):
        for s in range(dim):
            acc = 0
            for _, c in M.entries[r][s].terms.items():
                acc += c
            ints[r][s] = acc
    cp = charpoly_int(ints)
    return is_squarefree_int(list(reversed(cp)))


def classical_limit_is_nilpotent(lam) -> bool:
    """The q -> 0 matrix is multiplication by c1 in classical cohomology
    and must be nilpotent."""
    parts = _as_parts(lam)
    M = quantum_c1_operator(parts)
    dim = M.n
    A = [[0] * dim for _ in range(dim)]
    for r in range(dim):
        for s in range(dim):
            A[r][s] = M.entries[r][s].terms.get((0,) * (len(parts) - 1), 0)
    # powers until zero, at most dim
    cur = A
    for _ in range(dim):
        if all(x == 0 for row in cur for x in row):
            return True
        cur = _int_matmul(cur, A)
    return all(x == 0 for row in cur for x in row)


def _int_matmul(A, B):
    n = len(A)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(n):
            a = Ai[k]
            if a:
                Bk = B[k]
                row = out[i]
                for j in range(n):
                    if Bk[j]:
                        row[j] += a * Bk[j]
    return out


# ---------------------------------------------------------------------------
# companion matrix of the quantum cohomology presentation
# ---------------------------------------------------------------------------

def companion_matrix(lam) -> PolyMatrix:
    """The n x n matrix whose shifted determinant generates the quantum
    relations: Chern-class rows per block, -1 subdiagonal, and the
    signed quantum entry -(-1)^(lam_{i+1}) q_i at column offset
    lam_i + lam_{i+1} in each block row."""
    parts = _as_parts(lam)
    n = sum(parts)
    N = len(parts)
    ctx = tuple(f"g{i}_{j}" for i in range(1, N + 1) for j in range(1, parts[i - 1] + 1)) + tuple(
        f"q{i}" for i in range(1, N)
    )
    zero = Poly.const(0, ctx)
    rows = [[zero for _ in range(n)] for _ in range(n)]
    for r in range(2, n + 1):
        rows[r - 1][r - 2] = Poly.const(-1, ctx)
    s = 0
    for i in range(1, N + 1):
        li = parts[i - 1]
        for j in range(1, li + 1):
            rows[s][s + j - 1] = Poly.var(f"g{i}_{j}", ctx)
        if i < N:
            col = s + li + parts[i]
            sign = -((-1) ** parts[i])
            q = Poly.var(f"q{i}", ctx) * sign
            rows[s][col - 1] = rows[s][col - 1] + q
        s += li
    return PolyMatrix(rows)


def companion_shifted_det(lam, var: str = "t_shift") -> Poly:
    """det(var Id + companion) - var^n, whose coefficients generate the
    quantum relations."""
    parts = _as_parts(lam)
    n = sum(parts)
    A = companion_matrix(parts)
    negA = PolyMatrix([[-p for p in row] for row in A.entries])
    cp = negA.char_poly(var)  # det(var Id + A)
    ctx = cp.vars
    return cp - Poly.var(var, ctx) ** n


def classical_block_product(lam, var: str = "t_shift") -> Poly:
    """prod_i (var^{lam_i} + g_{i,1} var^{lam_i - 1} + ... + g_{i,lam_i});
    the q -> 0 limit of det(var Id + companion)."""
    parts = _as_parts(lam)
    N = len(parts)
    ctx = (var,) + tuple(f"g{i}_{j}" for i in range(1, N + 1) for j in range(1, parts[i - 1] + 1)) + tuple(
        f"q{i}" for i in range(1, N)
    )
    t = Poly.var(var, ctx)
    out = Poly.const(1, ctx)
    for i in range(1, N + 1):
        li = parts[i - 1]
        f = t**li
        for j in range(1, li + 1):
            f = f + Poly.var(f"g{i}_{j}", ctx) * t ** (li - j)
        out = out * f
    return out


# ---------------------------------------------------------------------------
# basis-permutation matching against externally printed matrices
# ---------------------------------------------------------------------------

def find_basis_permutation(A: PolyMatrix, B: PolyMatrix) -> list[int] | None:
    """Permutation pi with A[pi(i)][pi(j)] == B[i][j], or None.
    Backtracking with row/column signatures; intended for small
    matrices."""
    n = A.n
    if B.n != n:
        return None

    def sig(M, i):
        row = sorted(M.entries[i][j].text() for j in range(n))
        col = sorted(M.entries[j][i].text() for j in range(n))
        return (M.entries[i][i].text(), tuple(row), tuple(col))

    sig_a = [sig(A, i) for i in range(n)]
    sig_b = [sig(B, i) for i in range(n)]
    cands = [[i for i in range(n) if sig_a[i] == sig_b[k]] for k in range(n)]
    order = sorted(range(n), key=lambda k: len(cands[k]))
    perm: list[int | None] = [None] * n
    used = [False] * n

    def ok(k: int, i: int) -> bool:
        for k2 in range(n):
            i2 = perm[k2]
            if i2 is None:
                continue
            if A.entries[i][i2] != B.entries[k][k2]:
                return False
            if A.entries[i2][i] != B.entries[k2][k]:
                return False
        return True

    def bt(pos: int) -> bool:
        if pos == n:
            return True
        k = order[pos]
        for i in cands[k]:
            if not used[i] and ok(k, i):
                perm[k] = i
                used[i] = True
                if bt(pos + 1):
                    return True
                perm[k] = None
                used[i] = False
        return False

    if bt(0):
        return [int(x) for x in perm]  # type: ignore[arg-type]
    return None

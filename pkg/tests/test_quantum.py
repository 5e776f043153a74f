import pytest

from flagspectra.compositions import enumerate_compositions, pair_is_exceeding
from flagspectra.polyring import Poly, PolyMatrix, SizeError
from flagspectra.quantum import (
    OrderedSetPartition,
    admissible,
    anticanonical_coefficients,
    classical_block_product,
    classical_limit_is_nilpotent,
    classify_semiclassical,
    companion_matrix,
    companion_shifted_det,
    dynamical_matrix,
    fiber_power_check,
    find_basis_permutation,
    grassmannian_char_poly,
    multinomial,
    quantum_c1_operator,
    quantum_char_poly,
    semiclassical_blocks,
    semiclassical_char_poly,
    simplicity_at_one,
    weight_basis,
)

ZP = tuple(f"z{a}" for a in (1, 2, 3)) + tuple(f"p{j}" for j in (1, 2, 3))


def _zp(rows):
    out = []
    for row in rows:
        conv = []
        for cell in row:
            p = Poly.const(0, ZP)
            for name, e in cell:
                if name == "":
                    p = p + e
                else:
                    mono = [0] * len(ZP)
                    if name.startswith("r"):  # ratio p_a/p_b encoded "r a b"
                        _, hi, lo = name.split()
                        mono[3 + int(hi) - 1] = 1
                        mono[3 + int(lo) - 1] = -1
                        p = p + Poly.monomial(ZP, tuple(mono), e)
                    else:
                        mono[ZP.index(name)] = 1
                        p = p + Poly.monomial(ZP, tuple(mono), e)
            conv.append(p)
        out.append(conv)
    return PolyMatrix(out)


def Z(a):
    return ((f"z{a}", 1),)


def R(hi, lo, c=1):
    return ((f"r {hi} {lo}", c),)


def C(c):
    return (("", c),) if c else ()


# the printed 6x6 dynamical operator matrices for the full three-step flag
X1_PRINTED = _zp(
    [
        [Z(1), C(0), C(1), C(0), C(0), C(0)],
        [C(0), Z(1), C(0), C(1), C(1), C(0)],
        [R(2, 1), C(0), Z(2), C(0), C(1), C(0)],
        [C(0), C(0), C(0), Z(2), C(0), C(1)],
        [C(0), R(2, 1), C(0), C(0), Z(3), C(0)],
        [R(3, 1), C(0), C(0), R(2, 1), C(0), Z(3)],
    ]
)
X2_PRINTED = _zp(
    [
        [Z(2), C(1), C(-1), C(0), C(0), C(0)],
        [R(3, 2), Z(3), C(0), C(0), C(-1), C(0)],
        [R(2, 1, -1), C(0), Z(1), C(1), C(0), C(0)],
        [C(0), C(0), R(3, 2), Z(3), C(0), C(-1)],
        [C(0), R(2, 1, -1), C(0), C(0), Z(1), C(1)],
        [C(0), C(0), C(0), R(2, 1, -1), R(3, 2), Z(2)],
    ]
)
X3_PRINTED = _zp(
    [
        [Z(3), C(-1), C(0), C(0), C(0), C(0)],
        [R(3, 2, -1), Z(2), C(0), C(-1), C(0), C(0)],
        [C(0), C(0), Z(3), C(-1), C(-1), C(0)],
        [C(0), C(0), R(3, 2, -1), Z(1), C(0), C(0)],
        [C(0), C(0), C(0), C(0), Z(2), C(-1)],
        [R(3, 1, -1), C(0), C(0), C(0), R(3, 2, -1), Z(1)],
    ]
)


def test_weight_basis_printed_order_full_flag():
    basis = weight_basis((1, 1, 1))
    assert [b.blocks for b in basis] == [
        ((1,), (2,), (3,)),
        ((1,), (3,), (2,)),
        ((2,), (1,), (3,)),
        ((2,), (3,), (1,)),
        ((3,), (1,), (2,)),
        ((3,), (2,), (1,)),
    ]


def test_weight_basis_small_cases():
    assert [b.word for b in weight_basis((2, 1))] == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert len(weight_basis((4,))) == 1
    assert len(weight_basis((2, 2, 1))) == 30


def test_weight_basis_size_guard():
    with pytest.raises(SizeError):
        weight_basis((5, 5))


def test_admissible_same_block_false():
    I = OrderedSetPartition(((1, 2), (3,)))
    assert not admissible(I, 1, 2)


def test_admissible_examples():
    I = OrderedSetPartition(((1,), (2,), (3,)))
    # ordered adjacent pair, empty outer window inside the span
    assert admissible(I, 2, 1)
    assert admissible(I, 1, 2)
    # ordered pair spanning everything with empty outer complement
    assert admissible(I, 1, 3)
    assert admissible(I, 3, 1)
    # ordered pair whose outer complement {3} meets the span {1,2,3}
    K = OrderedSetPartition(((1,), (3,), (2,)))
    assert not admissible(K, 2, 1)
    # disordered adjacent pair: empty open interval
    J = OrderedSetPartition(((2,), (1,), (3,)))
    assert admissible(J, 2, 1)


def test_dynamical_matrices_printed():
    assert dynamical_matrix((1, 1, 1), 1) == X1_PRINTED
    assert dynamical_matrix((1, 1, 1), 2) == X2_PRINTED
    assert dynamical_matrix((1, 1, 1), 3) == X3_PRINTED


def test_dynamical_sum_rule():
    for n in range(2, 7):
        for N in range(1, n + 1):
            for lam in enumerate_compositions(n, N):
                if multinomial(lam) > 60:
                    continue
                mats = [dynamical_matrix(lam, i) for i in range(1, N + 1)]
                ctx = mats[0].vars
                zsum = Poly.const(0, ctx)
                for a in range(1, n + 1):
                    zsum = zsum + Poly.var(f"z{a}", ctx)
                dim = mats[0].n
                for r in range(dim):
                    for s in range(dim):
                        acc = Poly.const(0, ctx)
                        for m in mats:
                            acc = acc + m.entries[r][s]
                        assert acc == (zsum if r == s else Poly.const(0, ctx))


def test_quantum_operator_printed_111():
    ctx = ("q1", "q2")
    q1, q2 = Poly.var("q1", ctx), Poly.var("q2", ctx)
    want = PolyMatrix.from_rows(
        [
            [0, -2, -2, 0, 0, 0],
            [-2 * q2, 0, 0, -4, -2, 0],
            [-2 * q1, 0, 0, -2, -4, 0],
            [0, 0, -2 * q2, 0, 0, -2],
            [0, -2 * q1, 0, 0, 0, -2],
            [-4 * q1 * q2, 0, 0, -2 * q1, -2 * q2, 0],
        ],
        ctx,
    )
    assert quantum_c1_operator((1, 1, 1)) == want


def test_quantum_operator_point_is_zero():
    M = quantum_c1_operator((4,))
    assert M.n == 1 and M.entries[0][0].is_zero()


def test_anticanonical_coefficients():
    assert anticanonical_coefficients((1, 1, 1)) == [-2, 0, 2]
    assert anticanonical_coefficients((2, 1, 1)) == [-2, 1, 3]
    # the weighted sum against the parts vanishes (antisymmetry)
    for lam in [(1, 2), (2, 2, 2), (1, 1, 2, 1), (3, 2, 4)]:
        c = anticanonical_coefficients(lam)
        assert sum(ci * li for ci, li in zip(c, lam)) == 0


def test_classical_limit_nilpotent():
    for lam in [(1, 1, 1), (2, 1, 1), (2, 2), (1, 1, 1, 1), (2, 2, 1)]:
        assert classical_limit_is_nilpotent(lam)


def test_diagonal_vanishes_at_q_zero():
    for lam in [(1, 1, 1), (2, 1, 1), (2, 2, 1)]:
        M = quantum_c1_operator(lam)
        width = len(M.vars)
        for r in range(M.n):
            assert M.entries[r][r].terms.get((0,) * width, 0) == 0


def test_char_poly_reversal_duality():
    from flagspectra.polyring import charpoly_int

    points = [(2, 3, 5, 7), (1, 1, 1, 1), (3, 1, 4, 1)]
    for n in range(2, 6):
        for N in range(2, n + 1):
            for lam in enumerate_compositions(n, N):
                rev = tuple(reversed(lam))
                if multinomial(lam) <= 40:
                    f = quantum_char_poly(lam)
                    g = quantum_char_poly(rev)
                    swap = {f"q{i}": Poly.var(f"q{N - i}", g.vars) for i in range(1, N)}
                    assert f == g.substitute(swap).extend(f.vars)
                else:
                    # exact integer characteristic polynomials at sampled points
                    M = quantum_c1_operator(lam)
                    R = quantum_c1_operator(rev)
                    for pt in points:
                        vals = {f"q{i}": pt[i - 1] for i in range(1, N)}
                        rvals = {f"q{i}": pt[N - 1 - i] for i in range(1, N)}
                        A = [[int(e.substitute(vals).constant_value()) for e in row] for row in M.entries]
                        B = [[int(e.substitute(rvals).constant_value()) for e in row] for row in R.entries]
                        assert charpoly_int(A) == charpoly_int(B)


def test_grassmannian_low_cases():
    z = Poly.var("zeta", ("zeta", "q1"))
    q = Poly.var("q1", ("zeta", "q1"))
    assert grassmannian_char_poly(1, 1) == z**2 - 4 * q
    assert grassmannian_char_poly(2, 1) == z**3 + 27 * q
    assert grassmannian_char_poly(1, 2) == z**3 + 27 * q
    assert grassmannian_char_poly(2, 2) == z**6 - 1024 * z**2 * q


def test_grassmannian_graded_route_matches_symbolic():
    for a in range(1, 4):
        for b in range(1, 4):
            if multinomial((a, b)) > 20:
                continue
            got = grassmannian_char_poly(a, b)
            direct = quantum_char_poly((a, b))
            assert got == direct


def test_semiclassical_printed_limits():
    ctx1 = ("zeta", "q1")
    z, q1 = Poly.var("zeta", ctx1), Poly.var("q1", ctx1)
    assert semiclassical_char_poly((1, 1, 1), 1) == (z**2 - 4 * q1) ** 3
    assert semiclassical_char_poly((2, 1, 1), 1) == (27 * q1 + z**3) ** 4
    assert semiclassical_char_poly((2, 2, 1), 1) == z**10 * (z**4 - 1024 * q1) ** 5
    ctx2 = ("zeta", "q2")
    z2, q2 = Poly.var("zeta", ctx2), Poly.var("q2", ctx2)
    assert semiclassical_char_poly((1, 1, 1), 2) == (z2**2 - 4 * q2) ** 3
    assert semiclassical_char_poly((2, 1, 1), 2) == (z2**2 - 4 * q2) ** 6
    assert semiclassical_char_poly((2, 2, 1), 2) == (z2**3 + 27 * q2) ** 10


def test_semiclassical_matches_substitution():
    for lam in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2)]:
        f = quantum_char_poly(lam)
        for i in range(1, len(lam)):
            zeros = {f"q{j}": 0 for j in range(1, len(lam)) if j != i}
            sub = f.substitute(zeros)
            assert semiclassical_char_poly(lam, i) == sub.extend(("zeta", f"q{i}"))


def test_semiclassical_blocks_structure():
    blocks = semiclassical_blocks((2, 1, 1), 2)
    assert blocks is not None
    assert len(blocks) == multinomial((2, 2))
    fiber = grassmannian_char_poly(1, 1, "q2")
    assert all(b == fiber for b in blocks)


def test_fiber_power_check_examples():
    assert fiber_power_check((2, 2, 1), 2)
    assert fiber_power_check((1, 1, 1), 2)
    assert fiber_power_check((2, 1, 1), 2)


def test_classify_examples():
    assert classify_semiclassical((2, 2, 1), 1) == "exceeding"
    assert classify_semiclassical((2, 1, 1), 1) == "non-exceeding"
    for k in range(1, 8):
        assert classify_semiclassical((1, k), 1) == "non-exceeding"


def test_simplicity_examples():
    assert simplicity_at_one((1, 1, 1)) is False
    assert simplicity_at_one((2, 1, 1)) is True
    assert simplicity_at_one((2, 2, 2)) is False


def test_companion_printed_matrices():
    A = companion_matrix((1, 1, 1))
    ctx = A.vars
    g = {name: Poly.var(name, ctx) for name in ctx}
    want = PolyMatrix.from_rows(
        [
            [g["g1_1"], g["q1"], 0],
            [-1, g["g2_1"], g["q2"]],
            [0, -1, g["g3_1"]],
        ],
        ctx,
    )
    assert A == want

    B = companion_matrix((2, 2))
    ctx = B.vars
    g = {name: Poly.var(name, ctx) for name in ctx}
    want = PolyMatrix.from_rows(
        [
            [g["g1_1"], g["g1_2"], 0, -g["q1"]],
            [-1, 0, 0, 0],
            [0, -1, g["g2_1"], g["g2_2"]],
            [0, 0, -1, 0],
        ],
        ctx,
    )
    assert B == want

    Cm = companion_matrix((2, 3, 1))
    ctx = Cm.vars
    g = {name: Poly.var(name, ctx) for name in ctx}
    want = PolyMatrix.from_rows(
        [
            [g["g1_1"], g["g1_2"], 0, 0, g["q1"], 0],
            [-1, 0, 0, 0, 0, 0],
            [0, -1, g["g2_1"], g["g2_2"], g["g2_3"], g["q2"]],
            [0, 0, -1, 0, 0, 0],
            [0, 0, 0, -1, 0, 0],
            [0, 0, 0, 0, -1, g["g3_1"]],
        ],
        ctx,
    )
    assert Cm == want


def test_companion_borel_relations():
    for lam in [(1, 1, 1), (2, 2), (2, 3, 1), (1, 2, 2), (3, 2)]:
        n = sum(lam)
        N = len(lam)
        qzero = {f"q{i}": 0 for i in range(1, N)}
        lhs = companion_shifted_det(lam).substitute(qzero)
        prod = classical_block_product(lam)
        rhs = (prod - Poly.var("t_shift", prod.vars) ** n).substitute(qzero)
        assert lhs == rhs.extend(lhs.vars)


def test_find_basis_permutation_roundtrip():
    M = quantum_c1_operator((2, 1, 1))
    perm = [3, 0, 7, 1, 5, 2, 9, 4, 11, 6, 8, 10]
    shuffled = PolyMatrix([[M.entries[perm[i]][perm[j]] for j in range(12)] for i in range(12)])
    found = find_basis_permutation(M, shuffled)
    assert found is not None
    assert all(
        M.entries[found[i]][found[j]] == shuffled.entries[i][j] for i in range(12) for j in range(12)
    )

from math import comb

import pytest

from flagspectra.arith import PrimeSieve
from flagspectra.sequences import (
    SequenceTable,
    asymptotic_ratio,
    count_all_nonexceeding,
    count_by_enumeration,
    count_first_nonexceeding,
    count_first_nonexceeding_base,
    count_prime_type,
    dirichlet_coeff_identity_check,
    first_nonexceeding_partial_sum,
    ogf_truncation,
    prime_type_column,
    second_column_via_dirichlet,
    seq_value,
)


def test_base_column_examples():
    assert count_first_nonexceeding_base(5) == 4
    assert count_first_nonexceeding_base(9) == 4
    assert count_first_nonexceeding_base(12) == 2


def test_second_column_enumeration_route():
    for n in range(2, 60):
        assert count_first_nonexceeding(n, 2) == count_by_enumeration("first", n, 2)


def test_first_kind_examples():
    assert count_first_nonexceeding(6, 3) == 9
    assert count_first_nonexceeding(18, 10) == 21385
    assert count_first_nonexceeding(7, 4) == count_first_nonexceeding(6, 3) + count_first_nonexceeding(6, 4) == 18


def test_all_kind_examples():
    assert count_all_nonexceeding(7, 3) == 7
    t = SequenceTable("all", 18)
    assert t.value(18, 9) == 6799
    for n in range(2, 19):
        assert t.value(n, 2) == count_first_nonexceeding(n, 2)


def test_prime_kind_examples():
    assert count_prime_type(10, 4) == 23
    assert count_prime_type(11, 4) == 0
    t = SequenceTable("prime", 18)
    assert t.value(18, 7) == 373


def test_triangle_shape_invariants():
    for kind in ("first", "all", "prime"):
        t = SequenceTable(kind, 14)
        for n in range(1, 15):
            assert t.value(n, 1) == 1
            if n >= 2:
                assert t.value(n, n) == 1
            if n >= 3:
                assert t.value(n, n - 1) == n - 1
            assert seq_value(kind, n, n + 1) == 0


def test_pointwise_ordering_and_binomial_bound():
    tf = SequenceTable("first", 16)
    ta = SequenceTable("all", 16)
    tp = SequenceTable("prime", 16)
    for n in range(2, 17):
        for N in range(2, n + 1):
            assert 0 <= tp.value(n, N) <= ta.value(n, N) <= tf.value(n, N) <= comb(n - 1, N - 1)


def test_enumeration_equals_formula_first_kind():
    for n in range(2, 21):
        for N in range(2, n + 1):
            assert count_by_enumeration("first", n, N) == count_first_nonexceeding(n, N)


@pytest.mark.slow
def test_enumeration_equals_formula_first_kind_full_range():
    for n in range(21, 26):
        for N in range(2, n + 1):
            assert count_by_enumeration("first", n, N) == count_first_nonexceeding(n, N)


def test_enumeration_equals_walk_dp():
    ta = SequenceTable("all", 20)
    tp = SequenceTable("prime", 20)
    for n in range(2, 21):
        for N in range(2, n + 1):
            assert ta.value(n, N) == count_by_enumeration("all", n, N)
            assert tp.value(n, N) == count_by_enumeration("prime", n, N)


def test_pascal_rule_range():
    t = SequenceTable("first", 45)
    for n in range(2, 41):
        for N in range(2, n + 1):
            assert t.value(n, N) + t.value(n, N + 1) == t.value(n + 1, N + 1)


def test_weak_pascal_for_all_kind():
    t = SequenceTable("all", 33)
    for n in range(2, 31):
        assert t.value(n, n - 1) + t.value(n + 1, n - 1) == t.value(n + 2, n)


def test_derived_identities():
    t = SequenceTable("first", 46)
    V = t.value
    for k in range(0, 6):
        for N in range(2, 21):
            for n in range(N, 31):
                if N >= 3:
                    assert V(n + 1, N) - V(n, N) == V(n, N - 1)
                if N >= 2 + k:
                    assert V(n + k, N) == sum(comb(k, j) * V(n, N - j) for j in range(k + 1))
                assert V(n + k, N + k) == sum(comb(k, j) * V(n, N + j) for j in range(k + 1))
                assert V(n, N) == sum((-1) ** j * comb(k, j) * V(n + k - j, N + k) for j in range(k + 1))
    # cancellation corollary
    for k in range(1, 6):
        for N in range(2, 16):
            s1 = sum(comb(k, l) * V(N + k, N + k - l) for l in range(1, k + 1))
            s2 = sum((-1) ** j * comb(k, j) * V(N + 2 * k - j, N + k - j) for j in range(1, k + 1))
            assert s1 + s2 == 0


def test_cumulative_identity():
    t = SequenceTable("first", 42)
    for N in range(2, 12):
        for n in range(N, 40):
            assert sum(t.value(k, N) for k in range(N, n + 1)) == t.value(n + 1, N + 1)


def test_ogf_truncations():
    assert ogf_truncation("first", 3, 6)[3:] == [1, 3, 5, 9]
    assert ogf_truncation("first", 1, 6) == [0, 1, 1, 1, 1, 1, 1]
    assert ogf_truncation("all", 4, 9)[4:] == [1, 4, 7, 16, 19, 34]
    # the factorization identity is checked internally for kind "first"
    ogf_truncation("first", 6, 24)


def test_prime_type_column_bulk_matches_exact():
    col = prime_type_column(4, 60)
    for n in range(4, 61):
        assert col[n] == count_prime_type(n, 4)


def test_dirichlet_identity_small_and_medium():
    ok, fail = dirichlet_coeff_identity_check(50)
    assert ok and fail is None
    ok, fail = dirichlet_coeff_identity_check(2000)
    assert ok and fail is None


def test_second_column_dirichlet_route():
    for n in range(2, 300):
        assert second_column_via_dirichlet(n) == count_first_nonexceeding_base(n)


def test_partial_sum_telescopes():
    s = PrimeSieve(10**4)
    assert first_nonexceeding_partial_sum(2, 10**4, s) == count_first_nonexceeding(10**4 + 1, 3, s)
    t = SequenceTable("first", 30)
    for N in range(2, 6):
        for x in range(N, 29):
            assert first_nonexceeding_partial_sum(N, x) == t.value(x + 1, N + 1)


def test_asymptotic_ratio_sanity():
    r3 = asymptotic_ratio(3, 10**3)
    r6 = asymptotic_ratio(3, 10**4)
    assert abs(r6 - 1) < abs(r3 - 1)
    assert 0 < asymptotic_ratio(4, 10**4) < 2


def test_growth_bound_along_real_axis():
    # |sum value(n,N) x^n| <= C E_{N-1}(x) / (1-x)^N at rational x
    from fractions import Fraction

    from flagspectra.arith import eulerian_growth_bound

    t = SequenceTable("first", 60)
    for N in (2, 3, 4):
        for x in (Fraction(1, 2), Fraction(2, 3), Fraction(9, 10)):
            c_bound = max(Fraction(t.value(n, N), n ** (N - 1)) for n in range(N, 61))
            partial = sum(t.value(n, N) * x**n for n in range(N, 61))
            assert partial <= eulerian_growth_bound(N, x, c_bound)

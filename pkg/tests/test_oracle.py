import random

import numpy as np
import pytest

from isogauss import (
    Budget,
    BudgetExceeded,
    CycInt,
    FormClass,
    NONSQ,
    SQ,
    canonical_matrix,
    class_character_table,
    class_character_tables,
    cyc_const,
    cyc_neg,
    cyc_zero,
    gauss_restricted_bf,
    gauss_twisted_bf,
    gauss_untwisted_bf,
    g_star_one,
    iso_subspaces_bf,
    prime_context,
    qfunc,
    rep_count_bf,
)
from isogauss.oracle import clear_caches


def _zero(n):
    return tuple(tuple(0 for _ in range(n)) for _ in range(n))


def test_scalar_gauss_sum(ctx3, ctx5):
    assert gauss_twisted_bf(ctx3, ((1,),)) == g_star_one(ctx3)
    assert gauss_twisted_bf(ctx3, ((1,),)).coeffs == (-1, -2)
    assert gauss_twisted_bf(ctx5, ((1,),)) == g_star_one(ctx5)
    # omega twist negates
    assert gauss_twisted_bf(ctx3, ((2,),)) == cyc_neg(g_star_one(ctx3))


def test_zero_argument(ctx3, ctx5):
    assert gauss_twisted_bf(ctx3, ((0,),)) == cyc_zero(ctx3)
    assert gauss_twisted_bf(ctx5, _zero(2)).coeffs[0] == 20
    assert gauss_twisted_bf(ctx3, _zero(2)) == cyc_const(ctx3, -6)


def test_full_sum_frozen(ctx3, ctx5):
    assert gauss_twisted_bf(ctx3, ((1, 0), (0, 1))) == cyc_const(ctx3, 3)
    # at p=5 the rank-2 sum is -epsilon*p = -5
    assert gauss_twisted_bf(ctx5, ((1, 0), (0, 1))) == cyc_const(ctx5, -5)


def test_restricted_frozen(ctx3, ctx5):
    U21 = ((1, 0), (0, 0))
    assert gauss_restricted_bf(ctx3, U21, 2) == cyc_const(ctx3, -6)
    assert gauss_restricted_bf(ctx5, U21, 2) == cyc_const(ctx5, 20)
    assert gauss_restricted_bf(ctx3, ((1, 0), (0, 1)), 2) == cyc_const(ctx3, 3)
    # r = 0: both defining orbits are the zero matrix alone
    assert gauss_restricted_bf(ctx3, U21, 0) == cyc_zero(ctx3)
    # r = n recovers the full sum
    T = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert gauss_restricted_bf(ctx3, T, 3) == gauss_twisted_bf(ctx3, T)


def test_restricted_rejects_bad_rank(ctx3):
    with pytest.raises(ValueError):
        gauss_restricted_bf(ctx3, ((1,),), 2)


def test_class_tables_are_complete(ctx3):
    # one pass gives per-class, per-exponent counts; collapsing them
    # over classes recovers the plain enumeration count
    T = ((1, 0), (0, 2))
    tab = class_character_table(ctx3, T)
    total = sum(sum(v) for v in tab.values())
    assert total == 3 ** 3
    keys = set(tab)
    assert (0, SQ) in keys and (2, NONSQ) in keys
    assert all(len(v) == 3 for v in tab.values())


def test_parallel_equals_serial(ctx3, ctx5):
    mats3 = [canonical_matrix(ctx3, c) for c in (
        FormClass(3, 3, SQ), FormClass(3, 2, NONSQ), FormClass(3, 0, SQ),
    )]
    clear_caches()
    serial = class_character_tables(ctx3, mats3, None, None)
    parallel = class_character_tables(ctx3, mats3, None, 2)
    assert serial == parallel
    mats5 = [canonical_matrix(ctx5, FormClass(2, 2, SQ))]
    assert class_character_tables(ctx5, mats5, None, 3) == class_character_tables(
        ctx5, mats5, None, None
    )


def test_gauss_sum_is_congruence_invariant(ctx3):
    rng = random.Random(7)
    T = ((1, 2), (2, 0))
    base = gauss_twisted_bf(ctx3, T)
    A = np.array(T, dtype=np.int64)
    for _ in range(10):
        # random invertible change of basis
        while True:
            U = np.array(
                [[rng.randrange(3) for _ in range(2)] for _ in range(2)],
                dtype=np.int64,
            )
            if (U[0, 0] * U[1, 1] - U[0, 1] * U[1, 0]) % 3:
                break
        M = (U.T @ A @ U) % 3
        T2 = tuple(tuple(int(x) for x in row) for row in M)
        assert gauss_twisted_bf(ctx3, T2) == base


def test_rep_count_small(ctx3):
    I2 = ((1, 0), (0, 1))
    assert rep_count_bf(ctx3, I2, ((1,),)) == 4
    assert rep_count_bf(ctx3, I2, ((1,),), primitive=True) == 4
    assert rep_count_bf(ctx3, I2, ((0,),)) == 1  # only the zero vector
    assert rep_count_bf(ctx3, I2, ((0,),), primitive=True) == 0
    assert rep_count_bf(ctx3, I2, I2, primitive=True) == 8  # o(I_2)
    assert rep_count_bf(ctx3, I2, I2) == 8


def test_rep_count_zero_form(ctx3):
    Z2 = _zero(2)
    assert rep_count_bf(ctx3, Z2, ((0,),)) == 9
    assert rep_count_bf(ctx3, Z2, ((0,),), primitive=True) == 8
    assert rep_count_bf(ctx3, Z2, ((1,),)) == 0
    assert rep_count_bf(ctx3, Z2, Z2, primitive=True) == (9 - 1) * (9 - 3)
    # more columns than rows leaves no primitive maps
    Y3 = _zero(3)
    assert rep_count_bf(ctx3, Z2, Y3, primitive=True) == 0
    assert rep_count_bf(ctx3, Z2, Y3) == 3 ** 6


def test_rep_count_rectangular_targets(ctx3):
    # diag(1, 0) target inside the degenerate 4-dim forms
    Y = ((1, 0), (0, 0))
    X_sq = canonical_matrix(ctx3, FormClass(4, 3, SQ))
    assert rep_count_bf(ctx3, X_sq, Y, primitive=True) == 36
    X_nsq = canonical_matrix(ctx3, FormClass(4, 3, NONSQ))
    assert rep_count_bf(ctx3, X_nsq, Y, primitive=True) == 504
    # inside anisotropic I_3 the second column has nowhere to go
    I3 = canonical_matrix(ctx3, FormClass(3, 3, SQ))
    assert rep_count_bf(ctx3, I3, Y, primitive=True) == 0


def test_rep_count_gram_mismatch_rejected(ctx3):
    with pytest.raises(ValueError):
        rep_count_bf(ctx3, ((1, 0), (0, 1)), ((0, 1), (0, 0)))


def test_rep_count_memoized(ctx3):
    X = canonical_matrix(ctx3, FormClass(4, 4, SQ))
    Y = ((1, 0), (0, 1))
    a = rep_count_bf(ctx3, X, Y, primitive=True)
    b = rep_count_bf(ctx3, X, Y, primitive=True)
    assert a == b


def test_scaled_counts_tie_out(ctx3):
    # nu(j,0) * (subspace count) = primitive zero-target count: every
    # totally isotropic j-subspace carries nu(j,0) ordered bases
    for c in (FormClass(3, 3, NONSQ), FormClass(3, 2, SQ), FormClass(3, 0, SQ)):
        X = canonical_matrix(ctx3, c)
        for j in (1, 2):
            Zj = _zero(j)
            lhs = rep_count_bf(ctx3, X, Zj, primitive=True)
            assert lhs == qfunc(ctx3, "nu", j, 0) * iso_subspaces_bf(ctx3, X, j)


def test_iso_subspaces_small(ctx3, ctx5):
    I2 = ((1, 0), (0, 1))
    assert iso_subspaces_bf(ctx3, I2, 0) == 1
    assert iso_subspaces_bf(ctx3, I2, 1) == 0
    assert iso_subspaces_bf(ctx5, I2, 1) == 2
    J2 = ((1, 0), (0, 2))
    assert iso_subspaces_bf(ctx3, J2, 1) == 2
    assert iso_subspaces_bf(ctx3, _zero(2), 1) == 4
    assert iso_subspaces_bf(ctx3, _zero(2), 2) == 1
    with pytest.raises(ValueError):
        iso_subspaces_bf(ctx3, _zero(2), 3)


def test_unsigned_character_totals(ctx3):
    # dropping the determinant character, the full sum over S of
    # character(trace(TS)) collapses to 0 for T != 0 (a nontrivial
    # additive character summed over a linear space)
    from isogauss.cyclotomic import reduce_exponent_vector

    for T in (((1, 0), (0, 1)), ((1, 2), (2, 0)), ((0, 1), (1, 0))):
        tab = class_character_table(ctx3, T)
        tot = [0, 0, 0]
        for v in tab.values():
            for e, cnt in enumerate(v):
                tot[e] += cnt
        assert reduce_exponent_vector(3, tot) == (0, 0)
    tab = class_character_table(ctx3, _zero(2))
    tot = [0, 0, 0]
    for v in tab.values():
        for e, cnt in enumerate(v):
            tot[e] += cnt
    assert reduce_exponent_vector(3, tot) == (27, 0)


def test_untwisted_sums(ctx3, ctx5):
    one = ((1,),)
    om3 = ((2,),)
    assert gauss_untwisted_bf(ctx3, one, one) == g_star_one(ctx3)
    assert gauss_untwisted_bf(ctx5, ((2,),), one) == cyc_neg(g_star_one(ctx5))
    I2 = ((1, 0), (0, 1))
    assert gauss_untwisted_bf(ctx3, I2, I2) == cyc_const(ctx3, 9)
    assert gauss_untwisted_bf(ctx3, om3, om3) == g_star_one(ctx3)


def test_budget_checks(ctx3):
    with pytest.raises(ValueError):
        Budget(max_terms=0)
    with pytest.raises(BudgetExceeded):
        gauss_twisted_bf(ctx3, ((1, 0), (0, 1)), Budget(max_terms=10))
    with pytest.raises(BudgetExceeded):
        gauss_untwisted_bf(ctx3, ((1, 0), (0, 1)), ((1, 0), (0, 1)), Budget(max_terms=10))
    with pytest.raises(BudgetExceeded):
        iso_subspaces_bf(ctx3, _zero(4), 2, Budget(max_terms=5))


def test_env_budget(monkeypatch):
    monkeypatch.setenv("ISOGAUSS_MAX_TERMS", "123")
    assert Budget().max_terms == 123
    monkeypatch.setenv("ISOGAUSS_MAX_TERMS", "not a number")
    assert Budget().max_terms == 20_000_000
    monkeypatch.setenv("ISOGAUSS_MAX_TERMS", "-5")
    assert Budget().max_terms == 20_000_000
    monkeypatch.delenv("ISOGAUSS_MAX_TERMS")
    assert Budget().max_terms == 20_000_000

import random

import numpy as np
import pytest

from isogauss import (
    NONSQ,
    SQ,
    FormClass,
    all_classes,
    canonical_matrix,
    classify,
    enumerate_symmetric,
    orbit_size,
    prime_context,
    sym_matrix,
)
from isogauss.quadform import (
    block_diag,
    classify_batch,
    digits_block,
    symmetric_from_digits,
    upper_positions,
)


def _random_gl(rng, p, n):
    # unit lower triangular * upper triangular with nonzero diagonal,
    # then a row permutation: always invertible, reasonably generic
    L = np.eye(n, dtype=np.int64)
    U = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        U[i, i] = rng.randrange(1, p)
        for j in range(i + 1, n):
            L[j, i] = rng.randrange(p)
            U[i, j] = rng.randrange(p)
    perm = np.eye(n, dtype=np.int64)[rng.sample(range(n), n)]
    return (L @ U @ perm) % p


def _transform(p, T, U):
    M = (U.T @ np.array(T, dtype=np.int64) @ U) % p
    return tuple(tuple(int(x) for x in row) for row in M)


def test_all_classes_enumeration():
    assert all_classes(1) == [
        FormClass(1, 0, SQ),
        FormClass(1, 1, SQ),
        FormClass(1, 1, NONSQ),
    ]
    assert len(all_classes(4)) == 9
    for c in all_classes(3):
        assert 0 <= c.d <= 3
        if c.d == 0:
            assert c.disc == SQ


def test_canonical_matrices(ctx3):
    assert canonical_matrix(ctx3, FormClass(2, 2, SQ)) == ((1, 0), (0, 1))
    assert canonical_matrix(ctx3, FormClass(2, 2, NONSQ)) == ((1, 0), (0, 2))
    assert canonical_matrix(ctx3, FormClass(3, 1, SQ)) == (
        (1, 0, 0),
        (0, 0, 0),
        (0, 0, 0),
    )


def test_classify_round_trip():
    for p in (3, 5, 7):
        ctx = prime_context(p)
        for n in range(1, 5):
            for c in all_classes(n):
                assert classify(ctx, canonical_matrix(ctx, c)) == c


def test_classify_diagonal_cases(ctx3, ctx5):
    # diag(1,1) over F_5 is hyperbolic but still the Square class
    assert classify(ctx5, ((1, 0), (0, 1))) == FormClass(2, 2, SQ)
    # det 2 = nonsquare at p=3
    assert classify(ctx3, ((0, 1), (1, 0))) == FormClass(2, 2, NONSQ)
    # rank drops
    assert classify(ctx3, ((1, 1), (1, 1))) == FormClass(2, 1, SQ)
    assert classify(ctx3, ((0, 0), (0, 0))) == FormClass(2, 0, SQ)


def test_orbit_partition_p3_n2(ctx3):
    # the 27 symmetric 2x2 matrices split into orbits of known sizes
    found = {}
    for T in enumerate_symmetric(ctx3, 2):
        c = classify(ctx3, T)
        found[c] = found.get(c, 0) + 1
    assert found == {
        FormClass(2, 0, SQ): 1,
        FormClass(2, 1, SQ): 4,
        FormClass(2, 1, NONSQ): 4,
        FormClass(2, 2, SQ): 6,
        FormClass(2, 2, NONSQ): 12,
    }
    for c, size in found.items():
        assert orbit_size(ctx3, c) == size


def test_orbit_sizes_sum_to_symmetric_count():
    for p in (3, 5):
        ctx = prime_context(p)
        for n in range(1, 4):
            total = sum(orbit_size(ctx, c) for c in all_classes(n))
            assert total == p ** (n * (n + 1) // 2)


def test_congruence_invariance_of_classify():
    rng = random.Random(11)
    for p in (3, 5, 7):
        ctx = prime_context(p)
        for n in range(1, 5):
            for c in all_classes(n):
                T = canonical_matrix(ctx, c)
                for _ in range(5):
                    U = _random_gl(rng, p, n)
                    assert classify(ctx, _transform(p, T, U)) == c


def test_classify_batch_agrees_with_scalar():
    rng = random.Random(5)
    for p in (3, 5, 7):
        ctx = prime_context(p)
        for n in (1, 2, 3, 4):
            mats = []
            for _ in range(40):
                M = np.zeros((n, n), dtype=np.int64)
                for i in range(n):
                    for j in range(i, n):
                        M[i, j] = M[j, i] = rng.randrange(p)
                mats.append(M)
            batch = np.stack(mats)
            ranks, discs = classify_batch(ctx, batch)
            for k, M in enumerate(mats):
                c = classify(ctx, tuple(tuple(int(x) for x in row) for row in M))
                assert ranks[k] == c.d
                assert discs[k] == (-1 if c.disc == NONSQ else 1)


def test_enumerate_symmetric_is_exhaustive(ctx3):
    seen = set(enumerate_symmetric(ctx3, 2))
    assert len(seen) == 27
    assert ((0, 0), (0, 0)) in seen
    for T in seen:
        assert T[0][1] == T[1][0]


def test_digit_layout_round_trip():
    # digits_block rows must inflate to the same matrices the
    # sequential enumerator yields, in the same order
    p, n = 3, 3
    ctx = prime_context(p)
    K = n * (n + 1) // 2
    assert len(upper_positions(n)) == K
    block = digits_block(p, K, 5, 12)
    mats = list(enumerate_symmetric(ctx, n))
    for row, want in zip(block, mats[5:12]):
        assert symmetric_from_digits(n, [int(x) for x in row]) == want


def test_sym_matrix_validates(ctx3):
    assert sym_matrix(ctx3, [[4, 1], [1, 0]]) == ((1, 1), (1, 0))
    with pytest.raises(ValueError):
        sym_matrix(ctx3, [[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        sym_matrix(ctx3, [[0, 1]])


def test_block_diag():
    assert block_diag(((1,),), ((2, 0), (0, 2))) == (
        (1, 0, 0),
        (0, 2, 0),
        (0, 0, 2),
    )

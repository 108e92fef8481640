from __future__ import annotations

import itertools

import pytest

from semiexact.congruence import (
    check_inclusion_reversing,
    congruence_leq,
    discrete,
    is_congruence,
    kernel_of_span,
)
from semiexact.errors import ArgumentError
from semiexact.matrix import (
    all_matrices,
    col_space,
    enumerate_span,
    mat_mul,
    matrix,
    row_space,
    vstack,
)
from semiexact.semiring import boolean, zmod

B, Z4 = boolean(), zmod(4)


def test_kernel_examples():
    K = kernel_of_span(row_space(matrix(Z4, [[2]])))
    assert K.formatted_blocks() == [["0", "2"], ["1", "3"]]
    assert kernel_of_span(row_space(matrix(B, [[True]]))).formatted_blocks() == [["F"], ["T"]]
    assert kernel_of_span(row_space(matrix(B, [[False]]))).formatted_blocks() == [["F", "T"]]


def test_kernel_matches_definition_and_block_count():
    # oracle: v ~ v' iff A v == A v', computed with plain matrix products
    for S, shapes in ((B, [(1, 2), (2, 2), (2, 3)]), (Z4, [(1, 2), (2, 2)])):
        for m, n in shapes:
            for A in itertools.islice(all_matrices(S, m, n), 0, None, 7):
                K = kernel_of_span(row_space(A))
                vecs = list(all_matrices(S, n, 1))
                for v, w in itertools.combinations(vecs, 2):
                    assert K.related(v, w) == (mat_mul(A, v) == mat_mul(A, w))
                assert len(K) == len(enumerate_span(col_space(A)))
                assert is_congruence(K)


def test_left_kernel_of_column_space():
    A = matrix(Z4, [[1, 2], [3, 0]])
    K = kernel_of_span(col_space(A))
    assert K.side == "left" and K.length == 2
    for u, w in itertools.combinations(list(all_matrices(Z4, 1, 2)), 2):
        assert K.related(u, w) == (mat_mul(u, A) == mat_mul(w, A))
    assert is_congruence(K)


def test_congruence_leq_examples():
    K2 = kernel_of_span(row_space(matrix(Z4, [[2]])))
    K1 = kernel_of_span(row_space(matrix(Z4, [[1]])))
    assert congruence_leq(discrete(Z4, 1), K2)
    assert not congruence_leq(K2, K1)
    assert congruence_leq(K1, K2)
    assert congruence_leq(K2, K2)
    with pytest.raises(ArgumentError):
        congruence_leq(K2, discrete(Z4, 2))


def test_non_congruence_detected():
    from semiexact.congruence import VectorCongruence

    # {0,1} {2} {3} over Z/4 is not compatible with adding 1
    K = VectorCongruence(Z4, 1, "right", ((0, 1), (2,), (3,)))
    assert not is_congruence(K)


def test_inclusion_reversing_exhaustive():
    for S, shapes in ((B, [(1, 2), (2, 2)]), (Z4, [(1, 2)])):
        for (m1, n), (m2, _) in itertools.product(shapes, repeat=2):
            for A in all_matrices(S, m1, n):
                for Bm in all_matrices(S, m2, n):
                    assert check_inclusion_reversing(A, Bm)


def test_inclusion_reversing_stacked():
    A = matrix(Z4, [[2, 1]])
    x = matrix(Z4, [[1, 3]])
    Bm = vstack(A, x)
    assert check_inclusion_reversing(A, Bm)
    assert check_inclusion_reversing(A, A)

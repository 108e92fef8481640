from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiexact.errors import (
    BudgetExceeded,
    ParseError,
    ShapeError,
    UnsupportedOperation,
)
from semiexact.matrix import (
    all_matrices,
    col_space,
    enumerate_span,
    fast_mul,
    format_matrix,
    identity,
    mat_add,
    mat_leq,
    mat_mul,
    matrix,
    parse_matrix,
    parse_vector,
    row_space,
    row_vector,
    span_membership,
    span_subset,
    vstack,
)
from semiexact.semiring import boolean, tropical, tropical_complete, zmod

B, T, Z4 = boolean(), tropical(), zmod(4)
t, f = True, False


def test_mat_mul_examples():
    assert mat_mul(matrix(B, [[t, f], [f, t]]), matrix(B, [[f], [t]])) == matrix(B, [[f], [t]])
    assert mat_mul(matrix(T, [[0, 1], [1, 0]]), matrix(T, [[0], [-1]])) == matrix(T, [[0], [1]])
    assert mat_mul(matrix(Z4, [[2]]), matrix(Z4, [[3]])) == matrix(Z4, [[2]])


def test_mat_add_examples():
    assert mat_add(matrix(T, [[0, 1]]), matrix(T, [[1, 0]])) == matrix(T, [[1, 1]])
    assert mat_add(matrix(B, [[f]]), matrix(B, [[t]])) == matrix(B, [[t]])
    Z6 = zmod(6)
    assert mat_add(matrix(Z6, [[3, 3]]), matrix(Z6, [[3, 5]])) == matrix(Z6, [[0, 2]])


def test_shape_and_semiring_errors():
    with pytest.raises(ShapeError):
        mat_mul(matrix(Z4, [[1, 2]]), matrix(Z4, [[1, 2]]))
    with pytest.raises(ShapeError):
        mat_add(matrix(Z4, [[1]]), matrix(Z4, [[1, 2]]))
    with pytest.raises(Exception):
        mat_mul(matrix(Z4, [[1]]), matrix(zmod(5), [[1]]))


def test_enumerate_span_examples():
    assert [v.flat() for v in enumerate_span(row_space(matrix(Z4, [[2]])))] == [(0,), (2,)]
    got = [v.flat() for v in enumerate_span(row_space(matrix(B, [[t, f]])))]
    assert got == [(f, f), (t, f)]
    assert len(enumerate_span(row_space(identity(B, 2)))) == 4


def test_enumerate_span_errors():
    with pytest.raises(UnsupportedOperation):
        enumerate_span(row_space(matrix(T, [[0]])))
    with pytest.raises(BudgetExceeded):
        enumerate_span(row_space(matrix(Z4, [[1]] * 8)), budget=100)


def test_span_membership_examples():
    assert not span_membership(row_space(matrix(Z4, [[2]])), row_vector(Z4, [1]))
    m = span_membership(row_space(identity(B, 2)), row_vector(B, [t, t]))
    assert m and m.witness == row_vector(B, [t, t])
    r = span_membership(row_space(matrix(T, [[0, 0]])), row_vector(T, [0, 1]))
    assert not r and r.method == "closure"


def _rand(S, m, n, rng):
    return matrix(S, [[S.sample(rng) for _ in range(n)] for _ in range(m)])


@pytest.mark.parametrize("S", [B, Z4, zmod(6)], ids=lambda S: S.spec)
def test_span_contains_generators_and_witnesses_verify(S):
    rng = random.Random(3)
    for _ in range(30):
        A = _rand(S, rng.randint(1, 3), rng.randint(1, 3), rng)
        rows = {v.flat() for v in enumerate_span(row_space(A))}
        cols = {v.flat() for v in enumerate_span(col_space(A))}
        assert all(A.row(i).flat() in rows for i in range(A.m))
        assert all(A.col(j).flat() in cols for j in range(A.n))
        for v in enumerate_span(row_space(A)):
            w = span_membership(row_space(A), v)
            assert mat_mul(w.witness, A) == v
        for v in enumerate_span(col_space(A)):
            w = span_membership(col_space(A), v)
            assert mat_mul(A, w.witness) == v


def test_closure_membership_agrees_with_enumeration_boolean():
    for A in all_matrices(B, 2, 2):
        for x in all_matrices(B, 1, 2):
            a = span_membership(row_space(A), x, method="enumerate")
            b = span_membership(row_space(A), x, method="closure")
            assert a.member == b.member
            if b:
                assert mat_mul(b.witness, A) == x


def test_fast_mul_matches_mat_mul():
    rng = random.Random(0)
    for S in (B, Z4, zmod(7)):
        for _ in range(20):
            A, C = _rand(S, 2, 3, rng), _rand(S, 3, 2, rng)
            assert fast_mul(A, C) == mat_mul(A, C)


small_rat = st.integers(-9, 9).map(Fraction)


@st.composite
def trop_triples(draw):
    m, k, n, p = (draw(st.integers(1, 3)) for _ in range(4))
    mk = lambda r, c: matrix(T, [[draw(small_rat) for _ in range(c)] for _ in range(r)])  # noqa: E731
    return mk(m, k), mk(k, n), mk(n, p)


@given(trop_triples())
def test_mat_mul_associative_tropical(abc):
    A, Bm, C = abc
    assert mat_mul(mat_mul(A, Bm), C) == mat_mul(A, mat_mul(Bm, C))


@given(trop_triples(), st.integers(0, 5).map(Fraction))
def test_monotonicity_tropical(abc, bump):
    A, Bm, _ = abc
    A2 = matrix(T, [[a + bump for a in r] for r in A.rows])
    assert mat_leq(A, A2)
    assert mat_leq(mat_mul(A, Bm), mat_mul(A2, Bm))
    Bp = matrix(T, [[0] * A.m])
    assert mat_leq(mat_mul(Bp, A), mat_mul(Bp, A2))


def test_mat_mul_associative_zmod_exhaustive_small():
    Z2 = zmod(2)
    for A in all_matrices(Z2, 1, 2):
        for Bm in all_matrices(Z2, 2, 2):
            for C in all_matrices(Z2, 2, 1):
                assert mat_mul(mat_mul(A, Bm), C) == mat_mul(A, mat_mul(Bm, C))


def test_span_subset_stack():
    A = matrix(Z4, [[2, 0]])
    Bm = vstack(A, matrix(Z4, [[1, 1]]))
    assert span_subset(row_space(A), row_space(Bm))
    assert not span_subset(row_space(Bm), row_space(A))


def test_parse_and_format_roundtrip():
    TC = tropical_complete()
    A = parse_matrix("2 2\n0 -inf\n1/2 inf\n", TC)
    assert A.rows[1][0] == Fraction(1, 2)
    assert parse_matrix(format_matrix(A), TC) == A
    assert parse_vector("T F", B) == row_vector(B, [t, f])


def test_parse_matrix_errors():
    with pytest.raises(ParseError) as e:
        parse_matrix("2 2\n1 2\n3 9\n", Z4, source="m.mat")
    assert (e.value.line, e.value.column) == (3, 3)
    with pytest.raises(ParseError):
        parse_matrix("2 2\n1 2\n", Z4)
    with pytest.raises(ParseError):
        parse_matrix("x\n", Z4)
    with pytest.raises(ParseError):
        parse_matrix("1 2\n1\n", Z4)

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiexact.errors import ArgumentError, ParseError
from semiexact.matrix import matrix
from semiexact.pid import (
    brute_force_complement,
    check_unit_or_zerodivisor,
    enum_row_space,
    int_det,
    int_matmul,
    is_smith_form,
    lift,
    orthogonal_complement_row,
    parse_int_matrix,
    perp,
    row_col_isomorphism,
    scalar_complement,
    smith_normal_form,
    unit_zerodivisor_table,
    verify_double_perp,
)
from semiexact.semiring import zmod

int_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n),
                           min_size=m, max_size=m)
    )
)

def _diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0])))]

def test_snf_examples():
    assert _diag(smith_normal_form([[2, 0], [0, 3]]).D) == [1, 6]
    assert smith_normal_form([[0]]).D == [[0]]
    assert _diag(smith_normal_form([[2, 4], [6, 8]]).D) == [2, 4]

@given(int_matrices)
def test_snf_invariants(A):
    r = smith_normal_form(A)
    assert int_matmul(int_matmul(r.M, A), r.N) == r.D
    assert abs(int_det(r.M)) == 1 and abs(int_det(r.N)) == 1
    assert is_smith_form(r.D)

@given(int_matrices)
def test_snf_diagonal_matches_sympy(A):
    from sympy import ZZ, Matrix
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    ref = sympy_snf(Matrix(A), domain=ZZ)
    expect = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert _diag(smith_normal_form(A).D) == expect

def test_is_smith_form_negative():
    assert not is_smith_form([[2, 0], [0, 3]])
    assert not is_smith_form([[1, 1], [0, 2]])

def test_parse_int_matrix_errors():
    assert parse_int_matrix("2 2\n1 2\n-3 4\n") == [[1, 2], [-3, 4]]
    with pytest.raises(ParseError) as err:
        parse_int_matrix("1 2\n1 x\n")
    assert err.value.line == 2 and err.value.column == 3
    with pytest.raises(ParseError):
        parse_int_matrix("2 1\n3\n")
    with pytest.raises(ParseError):
        parse_int_matrix("")

@pytest.mark.parametrize("a,n,b", [(0, 6, 1), (2, 4, 2), (3, 6, 2), (1, 5, 0), (4, 6, 3)])
def test_scalar_complement(a, n, b):
    assert scalar_complement(a, n) == b
    ideal = {(a * t) % n for t in range(n)}
    ann = {v for v in range(n) if all((u * v) % n == 0 for u in ideal)}
    assert ann == {(b * t) % n for t in range(n)}

def test_scalar_complement_rejects_small_modulus():
    with pytest.raises(ArgumentError):
        scalar_complement(1, 1)

def test_complement_examples():
    r = orthogonal_complement_row(matrix(zmod(4), [[2]]))
    assert r.complement_span() == {(0,), (2,)}
    r = orthogonal_complement_row(matrix(zmod(6), [[2, 3]]))
    expect = {(x, y) for x in range(6) for y in range(6) if (2 * x + 3 * y) % 6 == 0}
    assert r.complement_span() == expect
    assert all(v is True for k, v in r.verification.items() if k != "cardinality_product")
    r = orthogonal_complement_row(matrix(zmod(5), [[1, 0], [0, 1]]))
    assert r.complement_span() == {(0, 0)}

def _rand_mat(rng, n, m, c):
    return matrix(zmod(n), [[rng.randrange(n) for _ in range(c)] for _ in range(m)])

def test_complement_random_against_brute_force():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(2, 12)
        A = _rand_mat(rng, n, rng.randint(1, 3), rng.randint(1, 3))
        r = orthogonal_complement_row(A)
        assert r.complement_span() == brute_force_complement(A)
        assert r.verification["cardinality_law"] and r.verification["double_perp"]

def test_lattice_path_agrees_with_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 9)
        A = _rand_mat(rng, n, rng.randint(1, 3), rng.randint(1, 3))
        r = orthogonal_complement_row(A, budget=1)
        assert r.verification["matches_lattice"]
        assert r.complement_span() == brute_force_complement(A)

def test_double_perp_and_inclusion_reversal():
    assert verify_double_perp(matrix(zmod(4), [[2]]))
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(2, 12)
        A = _rand_mat(rng, n, rng.randint(1, 3), rng.randint(1, 3))
        assert verify_double_perp(A)
        # X subset Y implies Y^perp subset X^perp
        a = lift(A)
        X = enum_row_space(a[:1], n)
        Y = enum_row_space(a, n)
        assert X <= Y
        assert perp(Y, n, A.n) <= perp(X, n, A.n)

def test_row_col_isomorphism_examples():
    iso = row_col_isomorphism(matrix(zmod(4), [[2]]))
    assert iso.ok and iso.table == {(0,): (0,), (2,): (2,)}
    rng = random.Random(5)
    for _ in range(40):
        A = _rand_mat(rng, 6, 2, 2)
        iso = row_col_isomorphism(A)
        assert iso.ok, iso.checks

@pytest.mark.parametrize("n", [2, 6, 12])
def test_unit_or_zerodivisor(n):
    assert check_unit_or_zerodivisor(n)
    t = unit_zerodivisor_table(n)
    assert sorted(t["units"] + t["zero_divisors"]) == list(range(1, n))

def test_unit_table_six():
    assert unit_zerodivisor_table(6) == {"units": [1, 5], "zero_divisors": [2, 3, 4]}

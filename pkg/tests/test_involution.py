from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiexact.errors import PreconditionError, UnsupportedOperation
from semiexact.involution import (
    antitone_dual_holds,
    antitone_holds,
    check_cycling,
    col_non_membership_witness,
    col_residuation_closure,
    conj_transpose,
    duality_maps,
    non_membership_witness,
    residuation_closure,
    residuation_multiplier,
)
from semiexact.matrix import (
    all_matrices,
    enumerate_span,
    mat_leq,
    mat_mul,
    matrix,
    row_space,
    row_vector,
)
from semiexact.semiring import boolean, tropical, zmod

T, B = tropical(), boolean()
t, f = True, False


def tmat(rows):
    return matrix(T, [[Fraction(x) for x in r] for r in rows])


def rand_tmat(rng, m, n, lo=-5, hi=5, den=(1, 2, 3)):
    return matrix(T, [[Fraction(rng.randint(lo, hi), rng.choice(den)) for _ in range(n)]
                      for _ in range(m)])


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def tmats(m, n):
    return st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=m, max_size=m).map(
        lambda rows: matrix(T, rows))


def test_conj_transpose_examples():
    assert conj_transpose(tmat([[0, 1], [2, 3]])) == tmat([[0, -2], [-1, -3]])
    assert conj_transpose(matrix(B, [[t, f]])) == matrix(B, [[f], [t]])
    with pytest.raises(UnsupportedOperation):
        conj_transpose(matrix(zmod(4), [[1]]))


def test_cycling_example_and_random():
    assert check_cycling(tmat([[1]]), tmat([[0]]), tmat([[1]]))
    rng = random.Random(1)
    for _ in range(1000):
        p, m, n = (rng.randint(1, 3) for _ in range(3))
        M, A = rand_tmat(rng, p, m), rand_tmat(rng, m, n)
        # make MA <= Bm hold half of the time
        Bm = mat_mul(M, A) if rng.random() < 0.5 else rand_tmat(rng, p, n)
        assert check_cycling(M, A, Bm)
    for M in all_matrices(B, 2, 2):
        for A in all_matrices(B, 2, 1):
            for Bm in all_matrices(B, 2, 1):
                assert check_cycling(M, A, Bm)


def test_closure_examples():
    A = tmat([[0, 1], [1, 0]])
    x = tmat([[0, 1]])
    assert residuation_multiplier(A, x) == tmat([[0, -1]])
    assert residuation_closure(A, x) == x
    assert residuation_closure(tmat([[0, 0]]), x) == tmat([[0, 0]])


@given(tmats(2, 3), tmats(1, 3))
def test_closure_idempotent_and_dominated(A, x):
    c = residuation_closure(A, x)
    assert mat_leq(c, x)
    assert residuation_closure(A, c) == c


@given(tmats(2, 3), tmats(1, 3), tmats(1, 2))
def test_closure_is_maximal(A, x, u):
    # any span element below x is below the closure
    y = mat_mul(u, A)
    if mat_leq(y, x):
        assert mat_leq(y, residuation_closure(A, x))


@given(tmats(3, 2), tmats(3, 1))
def test_col_closure_dominated(A, y):
    c = col_residuation_closure(A, y)
    assert mat_leq(c, y)
    assert col_residuation_closure(A, c) == c


def test_closure_membership_matches_integer_window():
    # with entries in [-3, 3] the principal multiplier lies in [-6, 6]
    rng = random.Random(2)
    window = [Fraction(k) for k in range(-6, 7)]
    for _ in range(60):
        A = rand_tmat(rng, 2, 3, -3, 3, (1,))
        x = rand_tmat(rng, 1, 3, -3, 3, (1,))
        member = any(mat_mul(row_vector(T, u), A) == x for u in itertools.product(window, repeat=2))
        assert (residuation_closure(A, x) == x) == member


def test_boolean_closure_matches_enumeration():
    for A in all_matrices(B, 2, 2):
        span = set(enumerate_span(row_space(A)))
        for x in all_matrices(B, 1, 2):
            assert (residuation_closure(A, x) == x) == (x in span)


def test_duality_examples():
    A = tmat([[0, 1], [1, 0]])
    phi, psi = duality_maps(A)
    x = tmat([[0, 1]])
    assert phi(x) == matrix(T, [[0], [1]])
    assert psi(phi(x)) == x
    I = matrix(B, [[t, f], [f, t]])
    phi, psi = duality_maps(I)
    for x in all_matrices(B, 1, 2):
        assert psi(phi(x)) == x


def test_duality_round_trip_random():
    rng = random.Random(4)
    for _ in range(100):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        A = rand_tmat(rng, m, n)
        phi, psi = duality_maps(A)
        for _ in range(5):
            u = rand_tmat(rng, 1, m)
            x = mat_mul(u, A)
            assert psi(phi(x)) == x
            w = rand_tmat(rng, n, 1)
            y = mat_mul(A, w)
            assert phi(psi(y)) == y


def test_antitone():
    rng = random.Random(5)
    A = rand_tmat(rng, 2, 3)
    phi, psi = duality_maps(A)
    for _ in range(200):
        x, x2 = rand_tmat(rng, 1, 3), rand_tmat(rng, 1, 3)
        a = Fraction(rng.randint(-4, 4))
        assert antitone_holds(phi, x, x2, a)
        y, y2 = rand_tmat(rng, 2, 1), rand_tmat(rng, 2, 1)
        assert antitone_dual_holds(psi, y, y2, a)


def test_non_membership_witness_example():
    A, x = tmat([[0, 0]]), tmat([[0, 1]])
    v, v2 = non_membership_witness(A, x)
    assert v == matrix(T, [[0], [-1]]) and v2 == matrix(T, [[0], [0]])
    assert mat_mul(A, v) == mat_mul(A, v2)
    assert mat_mul(x, v) == matrix(T, [[0]]) and mat_mul(x, v2) == matrix(T, [[1]])


def test_non_membership_witness_boolean():
    A, x = matrix(B, [[t, f]]), matrix(B, [[t, t]])
    v, v2 = non_membership_witness(A, x)
    assert mat_mul(A, v) == mat_mul(A, v2) and mat_mul(x, v) != mat_mul(x, v2)


def test_witness_precondition():
    A = tmat([[0, 1], [1, 0]])
    with pytest.raises(PreconditionError):
        non_membership_witness(A, tmat([[0, 1]]))
    with pytest.raises(PreconditionError):
        col_non_membership_witness(A, matrix(T, [[0], [1]]))


def test_col_witness_random():
    rng = random.Random(6)
    hits = 0
    for _ in range(100):
        A, y = rand_tmat(rng, 3, 2), rand_tmat(rng, 3, 1)
        if col_residuation_closure(A, y) == y:
            continue
        u, u2 = col_non_membership_witness(A, y)
        assert mat_mul(u, A) == mat_mul(u2, A) and mat_mul(u, y) != mat_mul(u2, y)
        hits += 1
    assert hits > 50

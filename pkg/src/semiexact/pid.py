"""Orthogonal complements over Z/nZ via integer Smith normal form.

A matrix over Z/nZ is lifted to integers in [0, n), padded with zeros to a
square, and diagonalised by unimodular M, N (so M A N = D).  Each diagonal
entry d is replaced by ``n / gcd(d, n)``, giving a diagonal B whose column
space is the annihilator of row(D); then row(A)^perp = col(N B).

Brute-force oracles enumerate (Z/nZ)^k with numpy and are deliberately
independent of the construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

import numpy as np

from .errors import ArgumentError, BudgetExceeded, DomainError, ParseError
from .matrix import Mat

ENUM_BUDGET = 10**5

IntMat = list  # list of lists of Python ints


# ---------------------------------------------------------------------------
# integer matrix helpers


def int_identity(k: int) -> IntMat:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def int_matmul(A: IntMat, B: IntMat) -> IntMat:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def int_transpose(A: IntMat) -> IntMat:
    return [list(r) for r in zip(*A)]


def int_det(A: IntMat) -> int:
    """Exact determinant by fraction-valued elimination."""
    k = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(k):
        p = next((r for r in range(c, k) if M[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, k):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return int(det)


def int_inverse(A: IntMat) -> IntMat:
    """Inverse of a unimodular integer matrix (raises if not unimodular)."""
    k = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
         for i, row in enumerate(A)]
    for c in range(k):
        p = next((r for r in range(c, k) if M[r][c] != 0), None)
        if p is None:
            raise ArgumentError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(k):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    inv = [row[k:] for row in M]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ArgumentError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


@dataclass
class SnfResult:
    """``M A N == D`` with D diagonal, non-negative, each entry dividing the next."""

    M: IntMat
    D: IntMat
    N: IntMat

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))]


def smith_normal_form(A: IntMat) -> SnfResult:
    """Smith normal form by repeated gcd reduction of rows and columns."""
    D = [list(map(int, row)) for row in A]
    m, n = len(D), len(D[0])
    M, N = int_identity(m), int_identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        M[i], M[j] = M[j], M[i]

    def swap_cols(i, j):
        for R in (D, N):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for R in (D, N):
            for row in R:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            M[t] = [-a for a in M[t]]
    return SnfResult(M, D, N)


def is_smith_form(D: IntMat) -> bool:
    m, n = len(D), len(D[0])
    if any(D[i][j] for i in range(m) for j in range(n) if i != j):
        return False
    diag = [D[i][i] for i in range(min(m, n))]
    if any(d < 0 for d in diag):
        return False
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return True


def parse_int_matrix(text: str, source: str | None = None) -> IntMat:
    """Integer matrix in the ``m n`` + rows format used for all matrix files."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file", line=1, column=1, source=source)
    lineno, head = lines[0]
    try:
        m, n = (int(t) for t in head.split())
    except ValueError:
        raise ParseError("first line must be 'm n'", line=lineno, column=1, source=source) from None
    if m < 1 or n < 1:
        raise ParseError("dimensions must be positive", line=lineno, column=1, source=source)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} rows, found {len(body)}", line=lineno, column=1,
                         source=source)
    rows = []
    for lineno, ln in body:
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", line=lineno, column=1,
                             source=source)
        row, col = [], 0
        for tok in toks:
            col = ln.index(tok, col)
            try:
                row.append(int(tok))
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", line=lineno, column=col + 1,
                                 source=source) from None
            col += len(tok)
        rows.append(row)
    return rows


def load_int_matrix(path) -> IntMat:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read matrix file: {exc.strerror}", source=str(path)) from None
    return parse_int_matrix(text, source=str(path))


# ---------------------------------------------------------------------------
# Z/nZ plumbing


def _modulus(A: Mat) -> int:
    S = A.semiring
    if S.kind != "zmod":
        raise DomainError(f"expected a matrix over Z/nZ, got {S.spec}")
    return S.modulus


def lift(A: Mat) -> IntMat:
    return [list(r) for r in A.rows]


def reduce_mod(A: IntMat, n: int) -> IntMat:
    return [[x % n for x in row] for row in A]


def pad_square(A: IntMat) -> IntMat:
    m, c = len(A), len(A[0])
    k = max(m, c)
    return [[A[i][j] if i < m and j < c else 0 for j in range(k)] for i in range(k)]


def scalar_complement(a: int, n: int) -> int:
    """``b`` with ann(Ra) = bR and ann(bR) = Ra in Z/nZ; ``b = 1`` when a = 0."""
    if n < 2:
        raise ArgumentError(f"modulus must be at least 2, got {n}")
    a %= n
    if a == 0:
        return 1
    return (n // gcd(a, n)) % n


def all_vectors(n: int, k: int, budget: int = ENUM_BUDGET) -> np.ndarray:
    if n**k > budget:
        raise BudgetExceeded(f"{n}^{k} vectors exceed budget {budget}")
    return np.array(list(itertools.product(range(n), repeat=k)), dtype=np.int64).reshape(-1, k)


def _rows_set(arr: np.ndarray) -> frozenset:
    return frozenset(map(tuple, arr.tolist()))


def enum_row_space(A: IntMat, n: int, budget: int = ENUM_BUDGET) -> frozenset:
    U = all_vectors(n, len(A), budget)
    return _rows_set((U @ np.array(A, dtype=np.int64)) % n)


def enum_col_space(A: IntMat, n: int, budget: int = ENUM_BUDGET) -> frozenset:
    V = all_vectors(n, len(A[0]), budget)
    return _rows_set((V @ np.array(A, dtype=np.int64).T) % n)


def perp(vectors, n: int, k: int, budget: int = ENUM_BUDGET) -> frozenset:
    """All length-k vectors pairing to zero with every vector in ``vectors``."""
    X = all_vectors(n, k, budget)
    vecs = list(vectors)
    if not vecs:
        return _rows_set(X)
    P = np.array(vecs, dtype=np.int64).reshape(-1, k)
    ok = ~((X @ P.T) % n).any(axis=1)
    return _rows_set(X[ok])


def brute_force_complement(A: Mat, budget: int = ENUM_BUDGET) -> frozenset:
    """row(A)^perp by enumerating every column vector v and testing A v == 0."""
    n = _modulus(A)
    return perp([list(r) for r in A.rows], n, A.n, budget)


# ---------------------------------------------------------------------------
# lattice route (no enumeration): integer kernel of [A | n I]


def integer_kernel(K: IntMat) -> IntMat:
    """Generators (as columns) of {z in Z^c : K z = 0}, by unimodular column reduction."""
    m, c = len(K), len(K[0])
    W = [list(r) for r in K]
    U = int_identity(c)
    pivot_col = 0
    for r in range(m):
        if pivot_col >= c:
            break
        while True:
            nz = [j for j in range(pivot_col, c) if W[r][j]]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(W[r][j]))
            for R in (W, U):
                for row in R:
                    row[pivot_col], row[j] = row[j], row[pivot_col]
            p = W[r][pivot_col]
            done = True
            for j in range(pivot_col + 1, c):
                if W[r][j]:
                    f = W[r][j] // p
                    for R in (W, U):
                        for row in R:
                            row[j] -= f * row[pivot_col]
                    done = done and W[r][j] == 0
            if done:
                pivot_col += 1
                break
    return [[U[i][j] for j in range(pivot_col, c)] for i in range(c)]


def lattice_complement_generators(A: Mat) -> list:
    """Generators of row(A)^perp from the integer kernel of [A | n I]."""
    n = _modulus(A)
    m, c = A.m, A.n
    K = [list(A.rows[i]) + [n * int(i == j) for j in range(m)] for i in range(m)]
    ker = integer_kernel(K)
    gens = []
    for j in range(len(ker[0]) if ker and ker[0] else 0):
        v = tuple(ker[i][j] % n for i in range(c))
        if any(v):
            gens.append(v)
    return gens


def in_column_space_mod(G: IntMat, v, n: int) -> bool:
    """Whether v is in col(G) over Z/nZ, decided through the Smith form of G."""
    snf = smith_normal_form(G)
    Mv = [sum(a * b for a, b in zip(row, v)) for row in snf.M]
    diag = snf.diagonal
    for i, x in enumerate(Mv):
        d = diag[i] if i < len(diag) else 0
        if x % gcd(d, n):
            return False
    return True


# ---------------------------------------------------------------------------
# complement construction


@dataclass
class ComplementReport:
    modulus: int
    A: IntMat
    M: IntMat
    N: IntMat
    D: IntMat
    B: IntMat
    generator: IntMat
    verification: dict = field(default_factory=dict)

    def complement_span(self, budget: int = ENUM_BUDGET) -> frozenset:
        return enum_col_space(self.generator, self.modulus, budget)

    def as_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "A": self.A,
            "M": self.M,
            "N": self.N,
            "D": self.D,
            "B": self.B,
            "generator": self.generator,
            "verification": self.verification,
        }


def orthogonal_complement_row(A: Mat, verify: bool = True,
                              budget: int = ENUM_BUDGET) -> ComplementReport:
    """Construct G with row(A)^perp = col(G) over Z/nZ.

    G is ``N B`` (mod n) restricted to the original column coordinates, where
    M A' N = D is the Smith form of the zero-padded square lift A'.
    With ``verify`` the report also carries enumeration checks (skipped,
    recorded as ``None``, when n^cols exceeds ``budget``).
    """
    n = _modulus(A)
    if n < 2:
        raise ArgumentError("complements need a modulus of at least 2")
    c = A.n
    Ap = pad_square(lift(A))
    snf = smith_normal_form(Ap)
    k = len(Ap)
    B = [[scalar_complement(snf.D[i][i], n) if i == j else 0 for j in range(k)] for i in range(k)]
    NB = reduce_mod(int_matmul(snf.N, B), n)
    G = NB[:c]
    report = ComplementReport(
        modulus=n,
        A=lift(A),
        M=reduce_mod(snf.M, n),
        N=reduce_mod(snf.N, n),
        D=reduce_mod(snf.D, n),
        B=B,
        generator=G,
    )
    ver: dict = {}
    AG = reduce_mod(int_matmul(lift(A), G), n)
    ver["annihilates"] = not any(x for row in AG for x in row)
    if verify:
        if n**c <= budget:
            row_a = enum_row_space(lift(A), n, budget)
            brute = brute_force_complement(A, budget)
            built = enum_col_space(G, n, budget)
            ver["matches_brute_force"] = brute == built
            ver["double_perp"] = perp(built, n, c, budget) == row_a
            ver["cardinality_product"] = len(brute) * len(row_a)
            ver["cardinality_law"] = len(brute) * len(row_a) == n**c
        else:
            gens = lattice_complement_generators(A)
            ver["matches_lattice"] = ver["annihilates"] and all(
                in_column_space_mod(G, g, n) for g in gens
            )
            ver["double_perp"] = None
            ver["cardinality_product"] = None
            ver["cardinality_law"] = None
    report.verification = ver
    return report


def verify_double_perp(A: Mat, budget: int = ENUM_BUDGET) -> bool:
    """``row(A)^perp^perp == row(A)`` and ``col(A)^perp^perp == col(A)``, by enumeration."""
    n = _modulus(A)
    a = lift(A)
    m, c = A.m, A.n
    row_a = enum_row_space(a, n, budget)
    col_a = enum_col_space(a, n, budget)
    row_pp = perp(perp(row_a, n, c, budget), n, c, budget)
    col_pp = perp(perp(col_a, n, m, budget), n, m, budget)
    return row_pp == row_a and col_pp == col_a


# ---------------------------------------------------------------------------
# row(A) ~ col(A)


@dataclass
class RowColIsomorphism:
    """The map x -> (x N M^{-T})^T from row(A) onto col(A), tabulated."""

    modulus: int
    conjugator: IntMat          # A' N M^{-T} for the padded lift A'
    table: dict                 # row-space vector -> column-space vector
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        fmt = lambda v: " ".join(map(str, v))  # noqa: E731
        return {
            "modulus": self.modulus,
            "conjugator": self.conjugator,
            "table": [[fmt(x), fmt(y)] for x, y in sorted(self.table.items())],
            "checks": self.checks,
        }


def row_col_isomorphism(A: Mat, budget: int = ENUM_BUDGET) -> RowColIsomorphism:
    n = _modulus(A)
    a = lift(A)
    m, c = A.m, A.n
    Ap = pad_square(a)
    k = len(Ap)
    snf = smith_normal_form(Ap)
    Minv_T = int_transpose(int_inverse(snf.M))
    C = int_matmul(snf.N, Minv_T)                 # x' -> x' C
    conj = int_matmul(Ap, C)
    checks = {
        "conjugator_symmetric": conj == int_transpose(conj),
        "conjugator_symmetric_mod_n": reduce_mod(conj, n) == int_transpose(reduce_mod(conj, n)),
    }
    row_a = sorted(enum_row_space(a, n, budget))
    col_a = enum_col_space(a, n, budget)
    Cn = np.array(C, dtype=np.int64) % n
    X = np.zeros((len(row_a), k), dtype=np.int64)
    X[:, :c] = np.array(row_a, dtype=np.int64).reshape(-1, c)
    Y = (X @ Cn) % n
    checks["padding_zero"] = not Y[:, m:].any()
    images = [tuple(r) for r in Y[:, :m].tolist()]
    table = dict(zip(row_a, images))
    checks["into_col_space"] = set(images) <= col_a
    checks["bijective"] = len(set(images)) == len(row_a) == len(col_a) and set(images) == col_a
    # additivity against every element plus every multiple of a generator row
    # (implies additivity on all pairs); homogeneity for every scalar
    add_ok = True
    for g in a:
        for s in range(n):
            sg = tuple((s * x) % n for x in g)
            if sg not in table:
                add_ok = False
                break
            for x in row_a:
                xs = tuple((p + q) % n for p, q in zip(x, sg))
                lhs = table[xs]
                rhs = tuple((p + q) % n for p, q in zip(table[x], table[sg]))
                if lhs != rhs:
                    add_ok = False
                    break
    checks["additive"] = add_ok
    checks["homogeneous"] = all(
        table[tuple((s * v) % n for v in x)] == tuple((s * v) % n for v in table[x])
        for x in row_a for s in range(n)
    )
    return RowColIsomorphism(n, conj, table, checks)


# ---------------------------------------------------------------------------


def check_unit_or_zerodivisor(n: int) -> bool:
    """Every non-zero residue mod n is a unit or a zero divisor (by direct search)."""
    if n < 2:
        raise ArgumentError(f"modulus must be at least 2, got {n}")
    for a in range(1, n):
        unit = any((a * b) % n == 1 for b in range(n))
        zero_div = any((a * b) % n == 0 for b in range(1, n))
        if not (unit or zero_div):
            return False
    return True


def unit_zerodivisor_table(n: int) -> dict:
    units = [a for a in range(1, n) if any((a * b) % n == 1 for b in range(n))]
    zds = [a for a in range(1, n) if any((a * b) % n == 0 for b in range(1, n))]
    return {"units": units, "zero_divisors": zds}

"""Green's relations L, R, D, J on matrices over a finite semiring.

A L B when each is a left multiple of the other (equal row spaces), A R B
when each is a right multiple of the other (equal column spaces), A D B when
A L C R B for some C, and A J B when each is a two-sided multiple of the
other.  Every positive answer carries multiplier witnesses that re-verify by
direct multiplication.

Span isomorphism is decided two ways: by a search for matrices realizing
the isomorphism (:func:`col_space_isomorphic`) and by a matrix-free search
over bijections of the enumerated spans (:func:`span_isomorphic`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ArgumentError, BudgetExceeded, ShapeError, UnsupportedOperation
from .matrix import (
    SPAN_BUDGET,
    Mat,
    all_matrices,
    col_space,
    decode,
    fast_mul,
    from_indices,
    row_space,
    span_code_set,
    span_membership,
)
from .modules import FiniteModule, isomorphic

SEARCH_BUDGET = 10**5


@dataclass
class GreenWitness:
    """Multipliers showing ``relation`` holds between A and B.

    L: ``M A = B``, ``P B = A``.  R: ``A N = B``, ``B Q = A``.
    D: an intermediate ``C`` with an L-witness for (A, C) and an R-witness
    for (C, B) (or R then L when ``order == 'RL'``).
    J: ``M A N = B``, ``P B Q = A``.
    """

    relation: str
    A: Mat
    B: Mat
    M: Mat | None = None
    P: Mat | None = None
    N: Mat | None = None
    Q: Mat | None = None
    C: Mat | None = None
    parts: tuple = field(default_factory=tuple)
    order: str = "LR"

    def verify(self) -> bool:
        A, B = self.A, self.B
        if self.relation == "L":
            return fast_mul(self.M, A) == B and fast_mul(self.P, B) == A
        if self.relation == "R":
            return fast_mul(A, self.N) == B and fast_mul(B, self.Q) == A
        if self.relation == "D":
            first, second = self.parts
            return (first.verify() and second.verify() and first.A == A and first.B == self.C
                    and second.A == self.C and second.B == B)
        if self.relation == "J":
            return (fast_mul(fast_mul(self.M, A), self.N) == B
                    and fast_mul(fast_mul(self.P, B), self.Q) == A)
        raise ArgumentError(f"unknown relation {self.relation!r}")

    def as_dict(self) -> dict:
        out: dict = {"relation": self.relation}
        for name in ("M", "P", "N", "Q", "C"):
            X = getattr(self, name)
            if X is not None:
                out[name] = X.format_rows()
        if self.parts:
            out["order"] = self.order
            out["parts"] = [p.as_dict() for p in self.parts]
        return out


def _finite(A: Mat, B: Mat):
    if A.semiring != B.semiring:
        raise ArgumentError("matrices over different semirings")
    if not A.semiring.is_finite:
        raise UnsupportedOperation(f"Green's relations need a finite semiring, not {A.semiring.spec}")


def _stack_rows(S, rows: list) -> Mat:
    return Mat._trusted(S, tuple(r.rows[0] for r in rows))


def _stack_cols(S, cols: list) -> Mat:
    return Mat._trusted(S, tuple(tuple(c.rows[i][0] for c in cols) for i in range(cols[0].m)))


def left_multiplier(A: Mat, B: Mat, budget: int = SPAN_BUDGET) -> Mat | None:
    """Some M with ``M A = B``, found row by row, or ``None``."""
    rows = []
    for i in range(B.m):
        w = span_membership(row_space(A), B.row(i), method="enumerate", budget=budget)
        if not w:
            return None
        rows.append(w.witness)
    return _stack_rows(A.semiring, rows)


def right_multiplier(A: Mat, B: Mat, budget: int = SPAN_BUDGET) -> Mat | None:
    """Some N with ``A N = B``, found column by column, or ``None``."""
    cols = []
    for j in range(B.n):
        w = span_membership(col_space(A), B.col(j), method="enumerate", budget=budget)
        if not w:
            return None
        cols.append(w.witness)
    return _stack_cols(A.semiring, cols)


def is_L(A: Mat, B: Mat, budget: int = SPAN_BUDGET) -> GreenWitness | None:
    _finite(A, B)
    if A.n != B.n:
        raise ShapeError("L compares matrices with the same number of columns")
    if span_code_set(row_space(A), budget) != span_code_set(row_space(B), budget):
        return None
    return GreenWitness("L", A, B, M=left_multiplier(A, B, budget), P=left_multiplier(B, A, budget))


def is_R(A: Mat, B: Mat, budget: int = SPAN_BUDGET) -> GreenWitness | None:
    _finite(A, B)
    if A.m != B.m:
        raise ShapeError("R compares matrices with the same number of rows")
    if span_code_set(col_space(A), budget) != span_code_set(col_space(B), budget):
        return None
    return GreenWitness("R", A, B, N=right_multiplier(A, B, budget), Q=right_multiplier(B, A, budget))


def is_D(A: Mat, B: Mat, order: str = "LR", budget: int = SEARCH_BUDGET) -> GreenWitness | None:
    """Search for C with ``A L C R B`` (``order='LR'``) or ``A R C L B`` (``'RL'``).

    For LR, C is p x n and row(C) = row(A), so each row of C is an element
    of row(A); the search runs over p-tuples of those elements, which covers
    every admissible C.  RL is the column-wise mirror.
    """
    _finite(A, B)
    S = A.semiring
    q = S.size
    if order == "LR":
        target_row = span_code_set(row_space(A))
        target_col = span_code_set(col_space(B))
        pool = sorted(target_row)
        count, length = B.m, A.n
    elif order == "RL":
        target_col = span_code_set(col_space(A))
        target_row = span_code_set(row_space(B))
        pool = sorted(target_col)
        count, length = B.n, A.m
    else:
        raise ArgumentError(f"order must be 'LR' or 'RL', got {order!r}")
    if len(pool) ** count > budget:
        raise BudgetExceeded(f"D search: {len(pool)}^{count} candidates exceed budget {budget}")
    for combo in itertools.product(pool, repeat=count):
        digits = [decode(c, q, length) for c in combo]
        if order == "LR":
            C = from_indices(S, [d for row in digits for d in row], count, length)
        else:
            C = from_indices(S, [digits[j][i] for i in range(length) for j in range(count)],
                             length, count)
        if span_code_set(row_space(C)) != target_row or span_code_set(col_space(C)) != target_col:
            continue
        if order == "LR":
            parts = (is_L(A, C), is_R(C, B))
        else:
            parts = (is_R(A, C), is_L(C, B))
        return GreenWitness("D", A, B, C=C, parts=parts, order=order)
    return None


def _search_pairs(S, shape_first, shape_second, budget):
    for shape in (shape_first, shape_second):
        if S.size ** (shape[0] * shape[1]) > budget:
            raise BudgetExceeded(
                f"multiplier search: {S.size}^{shape[0] * shape[1]} candidates exceed {budget}"
            )


def col_space_isomorphic(A: Mat, B: Mat, budget: int = SEARCH_BUDGET):
    """Matrices ``(M, P)`` with col(MA) = col(B), PMA = A and MPB = B, or ``None``.

    Then ``y -> M y`` is a right-linear bijection col(A) -> col(B) with
    inverse ``z -> P z``.
    """
    _finite(A, B)
    S = A.semiring
    m, p = A.m, B.m
    _search_pairs(S, (p, m), (m, p), budget)
    target = span_code_set(col_space(B))
    P_all = None
    for M in all_matrices(S, p, m):
        MA = fast_mul(M, A)
        if span_code_set(col_space(MA)) != target:
            continue
        if P_all is None:
            P_all = list(all_matrices(S, m, p))
        for P in P_all:
            if fast_mul(P, MA) == A and fast_mul(M, fast_mul(P, B)) == B:
                return M, P
    return None


def row_space_isomorphic(A: Mat, B: Mat, budget: int = SEARCH_BUDGET):
    """Matrices ``(N, Q)`` with row(AN) = row(B), ANQ = A and BQN = B, or ``None``."""
    _finite(A, B)
    S = A.semiring
    n, q = A.n, B.n
    _search_pairs(S, (n, q), (q, n), budget)
    target = span_code_set(row_space(B))
    Q_all = None
    for N in all_matrices(S, n, q):
        AN = fast_mul(A, N)
        if span_code_set(row_space(AN)) != target:
            continue
        if Q_all is None:
            Q_all = list(all_matrices(S, q, n))
        for Q in Q_all:
            if fast_mul(AN, Q) == A and fast_mul(fast_mul(B, Q), N) == B:
                return N, Q
    return None


def span_isomorphic(A: Mat, B: Mat, side: str, budget: int = SPAN_BUDGET):
    """Matrix-free check: a bijection between the enumerated spans that
    preserves addition and the scalar action, or ``None``."""
    _finite(A, B)
    if side == "col":
        D, C = col_space(A), col_space(B)
    elif side == "row":
        D, C = row_space(A), row_space(B)
    else:
        raise ArgumentError(f"side must be 'row' or 'col', got {side!r}")
    MD, MC = FiniteModule.of_span(D, budget), FiniteModule.of_span(C, budget)
    f = isomorphic(MD, MC)
    if f is None:
        return None
    return {MD.codes[i]: MC.codes[j] for i, j in enumerate(f)}


def is_J(A: Mat, B: Mat, budget: int = SEARCH_BUDGET) -> GreenWitness | None:
    """Search for ``M A N = B`` and ``P B Q = A``.

    M (resp. P) is enumerated; N (resp. Q) is then found column by column
    from the column space of MA (resp. PB).
    """
    _finite(A, B)
    S = A.semiring
    _search_pairs(S, (B.m, A.m), (A.m, B.m), budget)

    def two_sided(X, Y):
        for M in all_matrices(S, Y.m, X.m):
            N = right_multiplier(fast_mul(M, X), Y)
            if N is not None:
                return M, N
        return None

    fwd = two_sided(A, B)
    if fwd is None:
        return None
    back = two_sided(B, A)
    if back is None:
        return None
    return GreenWitness("J", A, B, M=fwd[0], N=fwd[1], P=back[0], Q=back[1])


RELATIONS = {
    "l": is_L,
    "r": is_R,
    "d": is_D,
    "j": is_J,
}


def relation_holds(rel: str, A: Mat, B: Mat) -> bool:
    rel = rel.lower()
    if rel in ("l", "r") and ((rel == "l" and A.n != B.n) or (rel == "r" and A.m != B.m)):
        return False
    return RELATIONS[rel](A, B) is not None


def d_classes(matrices: list, relation: str = "d") -> list:
    """Partition ``matrices`` (as index lists) under the given relation.

    Each matrix joins the first existing class whose representative is
    related to it in both directions; otherwise it opens a new class.  Input
    order fixes the output.
    """
    classes: list = []
    for i, X in enumerate(matrices):
        for cls in classes:
            rep = matrices[cls[0]]
            if relation_holds(relation, rep, X) and relation_holds(relation, X, rep):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def relation_table(matrices: list, relation: str = "d") -> dict:
    """The full relation on ``matrices`` with its observed properties.

    Reports reflexivity, symmetry and transitivity as found, without
    assuming any of them.
    """
    k = len(matrices)
    rel = [[relation_holds(relation, matrices[i], matrices[j]) for j in range(k)] for i in range(k)]
    reflexive = all(rel[i][i] for i in range(k))
    symmetric = all(rel[i][j] == rel[j][i] for i in range(k) for j in range(k))
    transitive = all(
        rel[i][l] for i in range(k) for j in range(k) if rel[i][j] for l in range(k) if rel[j][l]
    )
    return {"relation": rel, "reflexive": reflexive, "symmetric": symmetric,
            "transitive": transitive}

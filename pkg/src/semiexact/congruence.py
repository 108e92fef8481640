"""Kernels of row and column spaces, stored as explicit partitions.

The kernel of row(A) is the right congruence on column vectors identifying
v and v' when Av == Av'; the kernel of col(A) is the left congruence on row
vectors identifying u and u' when uA == u'A.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArgumentError, ShapeError
from .matrix import (
    Mat,
    SpanDescription,
    decode,
    encode,
    image_codes,
    row_space,
    span_subset,
    vector_from_code,
)
from .semiring import Semiring

KERNEL_BUDGET = 10**5


@dataclass(frozen=True)
class VectorCongruence:
    """A partition of all length-``length`` vectors over a finite semiring.

    ``side`` is ``'right'`` for column vectors (compatible with addition and
    the right scalar action) and ``'left'`` for row vectors.  ``code_blocks``
    holds vector codes; :attr:`blocks` decodes them to matrices.
    """

    semiring: Semiring
    length: int
    side: str
    code_blocks: tuple

    @property
    def blocks(self) -> list:
        vside = "col" if self.side == "right" else "row"
        return [
            [vector_from_code(self.semiring, c, self.length, vside) for c in blk]
            for blk in self.code_blocks
        ]

    def __len__(self):
        return len(self.code_blocks)

    def labels(self) -> dict:
        return {c: i for i, blk in enumerate(self.code_blocks) for c in blk}

    def related(self, v: Mat, w: Mat) -> bool:
        from .matrix import code_of

        lab = self.labels()
        return lab[code_of(v)] == lab[code_of(w)]

    def formatted_blocks(self) -> list:
        fmt = self.semiring.format
        return [[" ".join(fmt(a) for a in vec.flat()) for vec in blk] for blk in self.blocks]


def partition_from_labels(S: Semiring, length: int, side: str, labels) -> VectorCongruence:
    """Group vector codes ``0..len(labels)-1`` by equal label."""
    groups: dict = {}
    for code, lab in enumerate(labels):
        groups.setdefault(lab, []).append(code)
    blocks = tuple(sorted(tuple(g) for g in groups.values()))
    return VectorCongruence(S, length, side, blocks)


def kernel_of_span(X: SpanDescription, budget: int = KERNEL_BUDGET) -> VectorCongruence:
    """The kernel congruence of a row space (on column vectors) or of a column
    space (on row vectors)."""
    A = X.generator
    if X.side == "row":
        labels = image_codes(A, "col", budget)
        return partition_from_labels(A.semiring, A.n, "right", labels)
    labels = image_codes(A, "row", budget)
    return partition_from_labels(A.semiring, A.m, "left", labels)


def _same_space(K1: VectorCongruence, K2: VectorCongruence):
    if (K1.semiring != K2.semiring or K1.length != K2.length or K1.side != K2.side):
        raise ArgumentError("congruences live on different vector modules")


def congruence_leq(K1: VectorCongruence, K2: VectorCongruence) -> bool:
    """Whether K1 is contained in K2 as a relation (every K1-block lies in a K2-block)."""
    _same_space(K1, K2)
    lab2 = K2.labels()
    return all(len({lab2[c] for c in blk}) == 1 for blk in K1.code_blocks)


def is_congruence(K: VectorCongruence) -> bool:
    """Exhaustively check compatibility with vector addition and the scalar
    action on the congruence's side."""
    S, n = K.semiring, K.length
    q = S.size
    add, mul = S.add_table, S.mul_table
    lab = K.labels()
    if len(lab) != q**n or sum(len(b) for b in K.code_blocks) != q**n:
        return False
    digits = [decode(c, q, n) for c in range(q**n)]

    def vadd(c1, c2):
        return encode([add[a][b] for a, b in zip(digits[c1], digits[c2])], q)

    def act(c, s):
        if K.side == "right":
            return encode([mul[a][s] for a in digits[c]], q)
        return encode([mul[s][a] for a in digits[c]], q)

    for blk in K.code_blocks:
        rep = blk[0]
        for c in blk[1:]:
            for w in range(q**n):
                if lab[vadd(rep, w)] != lab[vadd(c, w)]:
                    return False
            for s in range(q):
                if lab[act(rep, s)] != lab[act(c, s)]:
                    return False
    return True


def check_inclusion_reversing(A: Mat, B: Mat, budget: int = KERNEL_BUDGET) -> bool:
    """Evaluate ``row(A) <= row(B)  =>  ker row(B) <= ker row(A)``.

    The implication always holds; this is a test oracle.
    """
    if A.n != B.n:
        raise ShapeError("row spaces of matrices with different column counts")
    if not span_subset(row_space(A), row_space(B)):
        return True
    return congruence_leq(kernel_of_span(row_space(B), budget), kernel_of_span(row_space(A), budget))


def discrete(S: Semiring, length: int, side: str = "right") -> VectorCongruence:
    """The equality relation on length-``length`` vectors."""
    return partition_from_labels(S, length, side, range(S.size**length))


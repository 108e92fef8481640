"""Finite one-sided modules as explicit tables, and homomorphism search.

A :class:`FiniteModule` lists its elements (vector codes), an addition table
and a scalar-action table over element indices.  :func:`homomorphisms`
enumerates every linear map between two such modules by backtracking with
constraint propagation: once a value is chosen, every value it forces through
sums and scalar multiples is filled in, and a conflict prunes the branch.
The result is the same set a naive scan over all |C|^|D| functions would
return, without visiting the non-linear ones.
"""

from __future__ import annotations

from .matrix import SpanDescription, decode, encode, span_code_set
from .semiring import Semiring


class FiniteModule:
    """Elements ``codes``; ``add[i][j]`` and ``act[i][s]`` are element indices.

    ``side`` is ``'right'`` (column vectors, action y*s) or ``'left'`` (row
    vectors, action s*x).
    """

    def __init__(self, semiring: Semiring, codes, add, act, side: str, length: int):
        self.semiring = semiring
        self.codes = list(codes)
        self.add = add
        self.act = act
        self.side = side
        self.length = length
        self.index = {c: i for i, c in enumerate(self.codes)}

    def __len__(self):
        return len(self.codes)

    @classmethod
    def from_codes(cls, S: Semiring, codes, length: int, side: str) -> "FiniteModule":
        """The submodule of S^length whose elements are ``codes`` (must be closed)."""
        q = S.size
        codes = sorted(codes)
        index = {c: i for i, c in enumerate(codes)}
        digits = [decode(c, q, length) for c in codes]
        at, mt = S.add_table, S.mul_table
        add = [
            [index[encode([at[a][b] for a, b in zip(dx, dy)], q)] for dy in digits]
            for dx in digits
        ]
        if side == "right":
            act = [[index[encode([mt[a][s] for a in dx], q)] for s in range(q)] for dx in digits]
        else:
            act = [[index[encode([mt[s][a] for a in dx], q)] for s in range(q)] for dx in digits]
        return cls(S, codes, add, act, side, length)

    @classmethod
    def of_span(cls, X: SpanDescription, budget: int = 10**6) -> "FiniteModule":
        side = "left" if X.side == "row" else "right"
        return cls.from_codes(X.semiring, span_code_set(X, budget), X.length, side)

    @classmethod
    def free(cls, S: Semiring, length: int, side: str) -> "FiniteModule":
        return cls.from_codes(S, range(S.size**length), length, side)

    @classmethod
    def scalars(cls, S: Semiring, side: str) -> "FiniteModule":
        """S as a one-sided module over itself."""
        return cls.from_codes(S, range(S.size), 1, side)


def homomorphisms(D: FiniteModule, C: FiniteModule, injective: bool = False):
    """Yield every linear map D -> C as a tuple of C-indices, in lexicographic order.

    With ``injective=True`` only injective maps are produced (bijections when
    the modules have equal size).
    """
    if D.side != C.side:
        raise ValueError("homomorphisms need modules on the same side")
    N = len(D)
    nscal = D.semiring.size
    f = [-1] * N
    assigned: list = []
    used = [0] * len(C)

    def propagate(i0, v0, trail):
        stack = [(i0, v0)]
        while stack:
            i, v = stack.pop()
            cur = f[i]
            if cur != -1:
                if cur != v:
                    return False
                continue
            if injective and used[v]:
                return False
            f[i] = v
            used[v] += 1
            trail.append(i)
            assigned.append(i)
            dact, cact = D.act[i], C.act[v]
            for s in range(nscal):
                stack.append((dact[s], cact[s]))
            dadd, cadd = D.add[i], C.add[v]
            for j in list(assigned):
                stack.append((dadd[j], cadd[f[j]]))
        return True

    def undo(trail):
        for i in trail:
            used[f[i]] -= 1
            f[i] = -1
        del assigned[len(assigned) - len(trail):]

    def search(start):
        i = start
        while i < N and f[i] != -1:
            i += 1
        if i == N:
            yield tuple(f)
            return
        for v in range(len(C)):
            trail: list = []
            if propagate(i, v, trail):
                yield from search(i + 1)
            undo(trail)

    yield from search(0)


def functionals(D: FiniteModule):
    """Every linear map from D to the scalars (acting on D's side)."""
    return homomorphisms(D, FiniteModule.scalars(D.semiring, D.side))


def isomorphic(D: FiniteModule, C: FiniteModule):
    """A module isomorphism D -> C as a tuple of C-indices, or ``None``."""
    if len(D) != len(C):
        return None
    return next(homomorphisms(D, C, injective=True), None)

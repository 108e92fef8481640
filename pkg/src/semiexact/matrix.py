"""Matrices over a semiring, row and column spaces.

Vectors are plain 1 x n or n x 1 matrices.  For finite semirings the heavy
lifting (enumerating every product uA or Av) is done on element indices by
:mod:`semiexact.kernels`; results are decoded back to :class:`Mat` values only
at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import kernels
from .errors import (
    BudgetExceeded,
    DomainError,
    ParseError,
    ShapeError,
    UnsupportedOperation,
)
from .semiring import Semiring

SPAN_BUDGET = 10**6


class Mat:
    """An m x n matrix with entries in ``semiring``.

    Entries are validated and normalised on construction; instances are
    immutable and hashable.
    """

    __slots__ = ("semiring", "rows", "m", "n", "_hash")

    def __init__(self, semiring: Semiring, rows: Iterable[Iterable]):
        rows = tuple(tuple(semiring.coerce(a) for a in r) for r in rows)
        if not rows or not rows[0]:
            raise ShapeError("matrices must have at least one row and one column")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ShapeError("ragged matrix rows")
        self._init(semiring, rows)

    def _init(self, semiring, rows):
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "m", len(rows))
        object.__setattr__(self, "n", len(rows[0]))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, semiring, rows) -> "Mat":
        obj = cls.__new__(cls)
        obj._init(semiring, rows)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @property
    def shape(self):
        return (self.m, self.n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.semiring == other.semiring
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.semiring, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        fmt = self.semiring.format
        body = "; ".join(" ".join(fmt(a) for a in r) for r in self.rows)
        return f"Mat[{self.semiring.spec}]({body})"

    def __add__(self, other):
        return mat_add(self, other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def sort_key(self):
        key = self.semiring.sort_key
        return (self.m, self.n, tuple(key(a) for r in self.rows for a in r))

    def T(self) -> "Mat":
        return Mat._trusted(self.semiring, tuple(zip(*self.rows)))

    def row(self, i) -> "Mat":
        return Mat._trusted(self.semiring, (self.rows[i],))

    def col(self, j) -> "Mat":
        return Mat._trusted(self.semiring, tuple((r[j],) for r in self.rows))

    def entries(self):
        return [a for r in self.rows for a in r]

    def flat(self) -> tuple:
        """Entries as a flat tuple (convenient for vectors)."""
        return tuple(self.entries())

    def format_rows(self):
        fmt = self.semiring.format
        return [[fmt(a) for a in r] for r in self.rows]


@dataclass(frozen=True)
class SpanDescription:
    """The row space (``side='row'``) or column space (``side='col'``) of a matrix."""

    side: str
    generator: Mat

    def __post_init__(self):
        if self.side not in ("row", "col"):
            raise ValueError(f"side must be 'row' or 'col', got {self.side!r}")

    @property
    def semiring(self):
        return self.generator.semiring

    @property
    def length(self):
        """Length of the vectors in the span."""
        return self.generator.n if self.side == "row" else self.generator.m

    @property
    def multiplier_length(self):
        return self.generator.m if self.side == "row" else self.generator.n


def row_space(A: Mat) -> SpanDescription:
    return SpanDescription("row", A)


def col_space(A: Mat) -> SpanDescription:
    return SpanDescription("col", A)


# ---------------------------------------------------------------------------
# construction helpers


def matrix(S: Semiring, rows) -> Mat:
    return Mat(S, rows)


def row_vector(S: Semiring, values) -> Mat:
    return Mat(S, [list(values)])


def col_vector(S: Semiring, values) -> Mat:
    return Mat(S, [[v] for v in values])


def identity(S: Semiring, k: int, local_to: Iterable = ()) -> Mat:
    """A k x k identity matrix; local to the entries of ``local_to`` when
    the semiring has no global identities."""
    if S.is_finite:
        z, o = S.zero, S.one
    else:
        L = list(local_to)
        if not L and not S.has_global_identities:
            raise UnsupportedOperation(f"{S.spec} needs a finite set to build a local identity")
        z, o = S.local_identities(L or [S.coerce(0)])
    return Mat._trusted(S, tuple(tuple(o if i == j else z for j in range(k)) for i in range(k)))


def vstack(*mats: Mat) -> Mat:
    _same_semiring(*mats)
    if len({A.n for A in mats}) != 1:
        raise ShapeError("vstack needs equal column counts")
    return Mat._trusted(mats[0].semiring, tuple(r for A in mats for r in A.rows))


def hstack(*mats: Mat) -> Mat:
    _same_semiring(*mats)
    if len({A.m for A in mats}) != 1:
        raise ShapeError("hstack needs equal row counts")
    return Mat._trusted(
        mats[0].semiring,
        tuple(tuple(a for A in mats for a in A.rows[i]) for i in range(mats[0].m)),
    )


def _same_semiring(*mats: Mat):
    S = mats[0].semiring
    for A in mats[1:]:
        if A.semiring != S:
            raise DomainError(f"semiring mismatch: {S.spec} vs {A.semiring.spec}")


# ---------------------------------------------------------------------------
# arithmetic


def mat_mul(A: Mat, B: Mat) -> Mat:
    """Matrix product using the semiring's addition and multiplication."""
    _same_semiring(A, B)
    if A.n != B.m:
        raise ShapeError(f"cannot multiply {A.m}x{A.n} by {B.m}x{B.n}")
    S = A.semiring
    add, mul = S._add, S._mul
    cols = list(zip(*B.rows))
    out = []
    for r in A.rows:
        new = []
        for c in cols:
            acc = mul(r[0], c[0])
            for t in range(1, len(r)):
                acc = add(acc, mul(r[t], c[t]))
            new.append(acc)
        out.append(tuple(new))
    return Mat._trusted(S, tuple(out))


def mat_add(A: Mat, B: Mat) -> Mat:
    _same_semiring(A, B)
    if A.shape != B.shape:
        raise ShapeError(f"cannot add {A.m}x{A.n} and {B.m}x{B.n}")
    add = A.semiring._add
    return Mat._trusted(
        A.semiring, tuple(tuple(add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A.rows, B.rows))
    )


def mat_leq(A: Mat, B: Mat) -> bool:
    """Entrywise natural order (idempotent semirings)."""
    _same_semiring(A, B)
    if A.shape != B.shape:
        raise ShapeError("order comparison needs equal shapes")
    leq = A.semiring.leq
    return all(leq(a, b) for ra, rb in zip(A.rows, B.rows) for a, b in zip(ra, rb))


def all_matrices(S: Semiring, m: int, n: int):
    """Every m x n matrix over a finite semiring, in canonical order."""
    elems = S.enumerate()
    q = len(elems)
    for code in range(q ** (m * n)):
        digits = decode(code, q, m * n)
        yield Mat._trusted(
            S, tuple(tuple(elems[digits[i * n + j]] for j in range(n)) for i in range(m))
        )


# ---------------------------------------------------------------------------
# index/code plumbing for finite semirings


def flat_tables(S: Semiring):
    """Flattened (add, mul) index tables, cached on the semiring."""
    cached = S.__dict__.get("_flat_tables")
    if cached is None:
        if not S.is_finite:
            raise UnsupportedOperation(f"{S.spec} has an infinite universe")
        cached = (
            [v for r in S.add_table for v in r],
            [v for r in S.mul_table for v in r],
        )
        S.__dict__["_flat_tables"] = cached
    return cached


def to_indices(A: Mat) -> list:
    index = A.semiring.index
    return [index(a) for r in A.rows for a in r]


def encode(indices: Sequence[int], q: int) -> int:
    code = 0
    for d in indices:
        code = code * q + d
    return code


def decode(code: int, q: int, length: int) -> list:
    out = [0] * length
    for t in range(length - 1, -1, -1):
        code, out[t] = divmod(code, q)
    return out


def code_of(x: Mat) -> int:
    return encode(to_indices(x), x.semiring.size)


def vector_from_code(S: Semiring, code: int, length: int, side: str) -> Mat:
    elems = S.elements
    vals = [elems[d] for d in decode(code, S.size, length)]
    if side == "row":
        return Mat._trusted(S, (tuple(vals),))
    return Mat._trusted(S, tuple((v,) for v in vals))


def from_indices(S: Semiring, flat: Sequence[int], m: int, n: int) -> Mat:
    elems = S.elements
    return Mat._trusted(S, tuple(tuple(elems[flat[i * n + j]] for j in range(n)) for i in range(m)))


def check_budget(q: int, k: int, budget: int, what: str):
    if q**k > budget:
        raise BudgetExceeded(f"{what}: {q}^{k} = {q**k} exceeds budget {budget}")


def image_codes(A: Mat, side: str, budget: int = SPAN_BUDGET) -> list:
    """Code of uA for every multiplier u (side 'row') or of Av (side 'col').

    Position i of the result belongs to the multiplier with code i.
    """
    S = A.semiring
    if not S.is_finite:
        raise UnsupportedOperation(f"span enumeration needs a finite semiring, not {S.spec}")
    q = S.size
    k = A.m if side == "row" else A.n
    check_budget(q, k, budget, f"{side} multipliers")
    add, mul = flat_tables(S)
    return kernels.image_codes(to_indices(A), A.m, A.n, add, mul, q, 0 if side == "row" else 1)


def fast_mul(A: Mat, B: Mat) -> Mat:
    """mat_mul through the index kernel (finite semirings only)."""
    _same_semiring(A, B)
    if A.n != B.m:
        raise ShapeError(f"cannot multiply {A.m}x{A.n} by {B.m}x{B.n}")
    S = A.semiring
    add, mul = flat_tables(S)
    flat = kernels.matmul(to_indices(A), to_indices(B), A.m, A.n, B.n, add, mul, S.size)
    return from_indices(S, flat, A.m, B.n)


def span_code_set(X: SpanDescription, budget: int = SPAN_BUDGET) -> frozenset:
    return frozenset(image_codes(X.generator, X.side, budget))


# ---------------------------------------------------------------------------
# spans


def enumerate_span(X: SpanDescription, budget: int = SPAN_BUDGET) -> list:
    """All elements of a row or column space over a finite semiring.

    Computed as {uA} (or {Av}) over every multiplier vector; duplicates are
    removed and the result is in canonical (lexicographic) order.
    """
    S = X.semiring
    codes = sorted(span_code_set(X, budget))
    return [vector_from_code(S, c, X.length, X.side) for c in codes]


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: Mat | None = None
    method: str = "enumerate"

    def __bool__(self):
        return self.member


def span_membership(X: SpanDescription, x: Mat, method: str = "auto",
                    budget: int = SPAN_BUDGET) -> Membership:
    """Decide ``x in X`` and return a multiplier witness for members.

    ``method`` is ``'enumerate'`` (finite semirings), ``'closure'``
    (anti-involutive semirings, via residuation) or ``'auto'`` which prefers
    enumeration when the semiring is finite.
    """
    A = X.generator
    _same_semiring(A, x)
    want = (1, A.n) if X.side == "row" else (A.m, 1)
    if x.shape != want:
        raise ShapeError(f"expected a {want[0]}x{want[1]} vector, got {x.m}x{x.n}")
    S = A.semiring
    if method == "auto":
        method = "enumerate" if S.is_finite else "closure"
    if method == "enumerate":
        target = code_of(x)
        for u_code, c in enumerate(image_codes(A, X.side, budget)):
            if c == target:
                return Membership(True, vector_from_code(S, u_code, X.multiplier_length,
                                                         "row" if X.side == "row" else "col"))
        return Membership(False, None)
    if method == "closure":
        if not S.anti_involutive:
            raise UnsupportedOperation(f"membership in spans over {S.spec} is not decidable here")
        from .involution import residuation_closure, residuation_multiplier

        if X.side == "row":
            u = residuation_multiplier(A, x)
            ok = residuation_closure(A, x) == x
        else:
            from .involution import col_residuation_closure, col_residuation_multiplier

            u = col_residuation_multiplier(A, x)
            ok = col_residuation_closure(A, x) == x
        return Membership(ok, u if ok else None, method="closure")
    raise ValueError(f"unknown membership method {method!r}")


def span_subset(X: SpanDescription, Y: SpanDescription, budget: int = SPAN_BUDGET) -> bool:
    """Whether X is contained in Y (finite semirings)."""
    if X.side != Y.side or X.length != Y.length:
        raise ShapeError("spans live in different modules")
    return span_code_set(X, budget) <= span_code_set(Y, budget)


# ---------------------------------------------------------------------------
# text format


def parse_matrix(text: str, S: Semiring, source: str | None = None) -> Mat:
    """Parse ``m n`` followed by m lines of n entry lexemes."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file", line=1, column=1, source=source)
    lineno, head = lines[0]
    toks = head.split()
    try:
        m, n = (int(t) for t in toks)
    except ValueError:
        raise ParseError("first line must be 'm n'", line=lineno, column=1, source=source) from None
    if m < 1 or n < 1:
        raise ParseError("dimensions must be positive", line=lineno, column=1, source=source)
    body = lines[1:]
    if len(body) != m:
        at = body[-1][0] + 1 if len(body) < m and body else (body[m][0] if body else lineno + 1)
        raise ParseError(f"expected {m} rows, found {len(body)}", line=at, column=1, source=source)
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
                row.append(S.parse(tok))
            except DomainError as exc:
                raise ParseError(str(exc), line=lineno, column=col + 1, source=source) from None
            col += len(tok)
        rows.append(row)
    return Mat(S, rows)


def load_matrix(path, S: Semiring) -> Mat:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read matrix file: {exc.strerror}", source=str(path)) from None
    return parse_matrix(text, S, source=str(path))


def parse_vector(text: str, S: Semiring, side: str = "row") -> Mat:
    toks = text.split()
    if not toks:
        raise ParseError("empty vector", line=1, column=1)
    vals, col = [], 0
    for tok in toks:
        col = text.index(tok, col)
        try:
            vals.append(S.parse(tok))
        except DomainError as exc:
            raise ParseError(str(exc), line=1, column=col + 1) from None
        col += len(tok)
    return row_vector(S, vals) if side == "row" else col_vector(S, vals)


def format_matrix(A: Mat) -> str:
    lines = [f"{A.m} {A.n}"]
    lines.extend(" ".join(r) for r in A.format_rows())
    return "\n".join(lines) + "\n"

"""Anti-involutive semirings: conjugate transpose, residuation and duality.

For an idempotent semiring with an order-reversing involution ``a -> conj(a)``
(negation on max-plus, ``not`` on the Booleans, ...) the map
``x -> conj(A conj(x)) A`` sends a row vector to the largest element of
row(A) below it.  Comparing the result with ``x`` decides membership exactly,
and the same two products give explicit kernel pairs separating non-members.
"""

from __future__ import annotations

from .errors import PreconditionError, ShapeError, UnsupportedOperation
from .matrix import Mat, mat_leq, mat_mul


def _require(S):
    if not S.anti_involutive:
        raise UnsupportedOperation(f"{S.spec} is not anti-involutive")


def conj_transpose(A: Mat) -> Mat:
    """``conj(A)[i][j] = conj(A[j][i])``; an n x m matrix."""
    S = A.semiring
    _require(S)
    c = S.conj
    return Mat._trusted(S, tuple(tuple(c(a) for a in col) for col in zip(*A.rows)))


def check_cycling(M: Mat, A: Mat, B: Mat) -> bool:
    """Evaluate ``MA <= B  =>  conj(B) M <= conj(A)  and  A conj(B) <= conj(M)``.

    Always true over an anti-involutive semiring; used as a test oracle.
    """
    _require(A.semiring)
    if M.n != A.m or M.m != B.m or A.n != B.n:
        raise ShapeError("need M: p x m, A: m x n, B: p x n")
    if not mat_leq(mat_mul(M, A), B):
        return True
    step1 = mat_leq(mat_mul(conj_transpose(B), M), conj_transpose(A))
    step2 = mat_leq(mat_mul(A, conj_transpose(B)), conj_transpose(M))
    return step1 and step2


def _check_row(A: Mat, x: Mat):
    _require(A.semiring)
    if x.shape != (1, A.n):
        raise ShapeError(f"expected a 1x{A.n} row vector, got {x.m}x{x.n}")


def _check_col(A: Mat, y: Mat):
    _require(A.semiring)
    if y.shape != (A.m, 1):
        raise ShapeError(f"expected a {A.m}x1 column vector, got {y.m}x{y.n}")


def residuation_multiplier(A: Mat, x: Mat) -> Mat:
    """The multiplier ``conj(A conj(x))`` (1 x m)."""
    _check_row(A, x)
    return conj_transpose(mat_mul(A, conj_transpose(x)))


def residuation_closure(A: Mat, x: Mat) -> Mat:
    """Largest element of row(A) below ``x``; equal to ``x`` iff x is in row(A)."""
    return mat_mul(residuation_multiplier(A, x), A)


def col_residuation_multiplier(A: Mat, y: Mat) -> Mat:
    _check_col(A, y)
    return conj_transpose(mat_mul(conj_transpose(y), A))


def col_residuation_closure(A: Mat, y: Mat) -> Mat:
    """Largest element of col(A) below ``y``."""
    return mat_mul(A, col_residuation_multiplier(A, y))


class DualityMaps:
    """The mutually inverse antitone maps between row(A) and col(A).

    ``phi(x) = A conj(x)`` and ``psi(y) = conj(y) A``.
    """

    def __init__(self, A: Mat):
        _require(A.semiring)
        self.A = A

    def phi(self, x: Mat) -> Mat:
        _check_row(self.A, x)
        return mat_mul(self.A, conj_transpose(x))

    def psi(self, y: Mat) -> Mat:
        _check_col(self.A, y)
        return mat_mul(conj_transpose(y), self.A)

    def __iter__(self):
        return iter((self.phi, self.psi))


def duality_maps(A: Mat):
    """Return ``(phi, psi)`` as callables."""
    d = DualityMaps(A)
    return d.phi, d.psi


def scale_left(a, x: Mat) -> Mat:
    mul = x.semiring._mul
    return Mat._trusted(x.semiring, tuple(tuple(mul(a, e) for e in r) for r in x.rows))


def scale_right(y: Mat, a) -> Mat:
    mul = y.semiring._mul
    return Mat._trusted(y.semiring, tuple(tuple(mul(e, a) for e in r) for r in y.rows))


def antitone_holds(phi, x: Mat, x2: Mat, a) -> bool:
    """``a x <= x2  =>  phi(x2) a <= phi(x)`` for a map from row vectors to columns."""
    if not mat_leq(scale_left(a, x), x2):
        return True
    return mat_leq(scale_right(phi(x2), a), phi(x))


def antitone_dual_holds(psi, y: Mat, y2: Mat, a) -> bool:
    """``y a <= y2  =>  a psi(y2) <= psi(y)`` for a map from columns to rows."""
    if not mat_leq(scale_right(y, a), y2):
        return True
    return mat_leq(scale_left(a, psi(y2)), psi(y))


def non_membership_witness(A: Mat, x: Mat):
    """Column vectors ``(v, v2)`` with ``A v == A v2`` but ``x v != x v2``.

    ``v = conj(x)`` and ``v2 = conj(closure(x))``.  Raises
    :class:`PreconditionError` if ``x`` lies in row(A).
    """
    closure = residuation_closure(A, x)
    if closure == x:
        raise PreconditionError("x lies in row(A); no separating pair exists for members")
    v = conj_transpose(x)
    v2 = conj_transpose(closure)
    if mat_mul(A, v) != mat_mul(A, v2) or mat_mul(x, v) == mat_mul(x, v2):
        raise AssertionError("residuation witness failed to verify")  # pragma: no cover
    return v, v2


def col_non_membership_witness(A: Mat, y: Mat):
    """Row vectors ``(u, u2)`` with ``u A == u2 A`` but ``u y != u2 y``.

    ``u = conj(y)`` and ``u2 = conj(col_closure(y))``; the mirror of
    :func:`non_membership_witness`.
    """
    closure = col_residuation_closure(A, y)
    if closure == y:
        raise PreconditionError("y lies in col(A); no separating pair exists for members")
    u = conj_transpose(y)
    u2 = conj_transpose(closure)
    if mat_mul(u, A) != mat_mul(u2, A) or mat_mul(u, y) == mat_mul(u2, y):
        raise AssertionError("residuation witness failed to verify")  # pragma: no cover
    return u, u2

"""Decision procedures for the exactness conditions over finite semirings.

E1/E2   a vector outside a row (column) space is separated by a kernel pair
F1/F2   kernel inclusion implies reverse span inclusion (B ranges over all
        matrices with at most ``f_bound`` rows/columns)
G1/G2   every linear functional on col(A) (row(A)) is an inner product with
        an element of row(A) (col(A))
H1/H2   every linear functional on col(A) (row(A)) extends to the whole free
        module

All checks work on element indices and vector codes; see
:mod:`semiexact.matrix` for the encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import kernels
from .errors import BudgetExceeded, UnsupportedOperation
from .matrix import (
    SPAN_BUDGET,
    Mat,
    all_matrices,
    check_budget,
    col_space,
    decode,
    flat_tables,
    image_codes,
    row_space,
)
from .modules import FiniteModule, functionals
from .semiring import Semiring

F_BOUND = 3
G_BUDGET = 2**32
H_BUDGET = 10**6
PROPERTIES = ("e1", "e2", "f1", "f2", "g1", "g2", "h1", "h2")


@dataclass
class ExactnessVerdict:
    """Outcome of one exactness check on one matrix.

    ``counterexample`` is set exactly when ``holds`` is false.  ``witnesses``
    lists, for E-checks, a separating pair for every non-member.
    """

    property: str
    holds: bool
    counterexample: dict | None = None
    scope: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        return {
            "property": self.property.upper(),
            "holds": self.holds,
            "counterexample": self.counterexample,
            "scope": self.scope,
            "witnesses": self.witnesses,
        }


def _require_finite(S: Semiring):
    if not S.is_finite:
        raise UnsupportedOperation(f"exactness checks need a finite semiring, not {S.spec}")


def _fmt_code(S, code, length):
    return " ".join(S.format(S.elements[d]) for d in decode(code, S.size, length))


def _fmt_mat(A: Mat):
    return [" ".join(r) for r in A.format_rows()]


def _pairings(S: Semiring, vec_code: int, length: int, side: str) -> list:
    """For a fixed vector x, the scalar x.v for every v (side 'row': x is a
    row vector and v runs over columns), or u.y for every u (side 'col')."""
    add, mul = flat_tables(S)
    digits = decode(vec_code, S.size, length)
    if side == "row":
        return kernels.image_codes(digits, 1, length, add, mul, S.size, 1)
    return kernels.image_codes(digits, length, 1, add, mul, S.size, 0)


# ---------------------------------------------------------------------------
# E1 / E2


def _check_E(A: Mat, side: str, budget: int) -> ExactnessVerdict:
    S = A.semiring
    _require_finite(S)
    prop = "E1" if side == "row" else "E2"
    other = "col" if side == "row" else "row"
    length = A.n if side == "row" else A.m
    q = S.size
    check_budget(q, length, budget, "vectors")
    span = set(image_codes(A, side, budget))
    # kernel labels: v -> Av (for E1) or u -> uA (for E2)
    labels = image_codes(A, other, budget)
    klen = A.n if side == "row" else A.m
    blocks: dict = {}
    for c, lab in enumerate(labels):
        blocks.setdefault(lab, []).append(c)
    position = {}
    for blk in blocks.values():
        for i, v in enumerate(blk):
            position[v] = (blk, i)
    witnesses = []
    for x in range(q**length):
        if x in span:
            continue
        vals = _pairings(S, x, length, side)
        # lexicographically smallest separating pair (v, v')
        best = None
        for v in range(len(labels)):
            blk, i = position[v]
            for v2 in blk[i + 1:]:
                if vals[v] != vals[v2]:
                    best = (v, v2)
                    break
            if best is not None:
                break
        if best is None:
            return ExactnessVerdict(
                prop,
                False,
                counterexample={
                    "matrix": _fmt_mat(A),
                    "vector": _fmt_code(S, x, length),
                    "reason": "vector outside the span is constant on every kernel class",
                },
                scope={"m": A.m, "n": A.n, "vectors": q**length, "kernel_vectors": q**klen},
                witnesses=witnesses,
            )
        witnesses.append({
            "vector": _fmt_code(S, x, length),
            "pair": [_fmt_code(S, best[0], klen), _fmt_code(S, best[1], klen)],
        })
    return ExactnessVerdict(
        prop, True, None,
        scope={"m": A.m, "n": A.n, "vectors": q**length, "non_members": len(witnesses),
               "kernel_vectors": q**klen},
        witnesses=witnesses,
    )


def check_E1(A: Mat, budget: int = SPAN_BUDGET) -> ExactnessVerdict:
    """Every x outside row(A) has v, v' with Av == Av' but xv != xv'."""
    return _check_E(A, "row", budget)


def check_E2(A: Mat, budget: int = SPAN_BUDGET) -> ExactnessVerdict:
    """Every y outside col(A) has u, u' with uA == u'A but uy != u'y."""
    return _check_E(A, "col", budget)


# ---------------------------------------------------------------------------
# F1 / F2


def _kernel_inclusion(lab_a, lab_b) -> bool:
    """ker(a) <= ker(b) for kernels given by label lists over the same vectors."""
    seen: dict = {}
    for la, lb in zip(lab_a, lab_b):
        prev = seen.setdefault(la, lb)
        if prev != lb:
            return False
    return True


def _f_data(A: Mat, side: str, budget):
    other = "col" if side == "row" else "row"
    return image_codes(A, other, budget), frozenset(image_codes(A, side, budget))


def check_F1_pair(A: Mat, B: Mat, budget: int = SPAN_BUDGET) -> bool:
    """``ker row(A) <= ker row(B)  =>  row(B) <= row(A)`` for this pair."""
    if A.n != B.n:
        raise ValueError("F1 compares matrices with equal column counts")
    la, ra = _f_data(A, "row", budget)
    lb, rb = _f_data(B, "row", budget)
    return not _kernel_inclusion(la, lb) or rb <= ra


def check_F2_pair(A: Mat, B: Mat, budget: int = SPAN_BUDGET) -> bool:
    """``ker col(A) <= ker col(B)  =>  col(B) <= col(A)`` for this pair."""
    if A.m != B.m:
        raise ValueError("F2 compares matrices with equal row counts")
    la, ca = _f_data(A, "col", budget)
    lb, cb = _f_data(B, "col", budget)
    return not _kernel_inclusion(la, lb) or cb <= ca


_F_CACHE: dict = {}


def _f_signatures(S: Semiring, length: int, side: str, bound: int, budget):
    """Distinct (kernel labels, span) pairs over every B with at most ``bound``
    rows (side 'row') or columns (side 'col'), with the first B producing each."""
    key = (S, length, side, bound)
    if key in _F_CACHE:
        return _F_CACHE[key]
    seen: dict = {}
    for p in range(1, bound + 1):
        shape = (p, length) if side == "row" else (length, p)
        check_budget(S.size, p * length, budget, "F-check matrices")
        for B in all_matrices(S, *shape):
            lab, span = _f_data(B, side, budget)
            # normalise labels to first-occurrence order so equal kernels compare equal
            ren: dict = {}
            norm = tuple(ren.setdefault(x, len(ren)) for x in lab)
            seen.setdefault((norm, span), B)
    out = [(norm, span, B) for (norm, span), B in seen.items()]
    _F_CACHE[key] = out
    return out


def _check_F(A: Mat, side: str, bound: int, budget) -> ExactnessVerdict:
    S = A.semiring
    _require_finite(S)
    prop = "F1" if side == "row" else "F2"
    length = A.n if side == "row" else A.m
    la, sa = _f_data(A, side, budget)
    sigs = _f_signatures(S, length, side, bound, budget)
    scope = {"m": A.m, "n": A.n, "b_bound": bound, "distinct_b_signatures": len(sigs)}
    for norm, span, B in sigs:
        if _kernel_inclusion(la, norm) and not span <= sa:
            return ExactnessVerdict(
                prop, False,
                counterexample={"matrix": _fmt_mat(A), "B": _fmt_mat(B),
                                "reason": "kernel inclusion holds but span inclusion fails"},
                scope=scope,
            )
    return ExactnessVerdict(prop, True, None, scope=scope)


def check_F1(A: Mat, bound: int = F_BOUND, budget: int = SPAN_BUDGET) -> ExactnessVerdict:
    """F1 against every B with at most ``bound`` rows (the truncation is in ``scope``)."""
    return _check_F(A, "row", bound, budget)


def check_F2(A: Mat, bound: int = F_BOUND, budget: int = SPAN_BUDGET) -> ExactnessVerdict:
    return _check_F(A, "col", bound, budget)


# ---------------------------------------------------------------------------
# G1 / G2 and H1 / H2


def _span_module(A: Mat, side: str, budget):
    X = col_space(A) if side == "col" else row_space(A)
    return FiniteModule.of_span(X, budget)


def _check_G(A: Mat, side: str, budget: int) -> ExactnessVerdict:
    """side 'row' is G1: functionals on col(A) realised by x in row(A)."""
    S = A.semiring
    _require_finite(S)
    prop = "G1" if side == "row" else "G2"
    target_side = "col" if side == "row" else "row"
    D = _span_module(A, target_side, SPAN_BUDGET)
    check_budget(S.size, len(D), budget, f"functions on the {target_side} space")
    # realised functionals: Av -> xv for x in row(A)  (or uA -> uy for y in col(A))
    kernel_labels = image_codes(A, target_side, SPAN_BUDGET)
    realised = set()
    for x in sorted(set(image_codes(A, side, SPAN_BUDGET))):
        length = A.n if side == "row" else A.m
        vals = _pairings(S, x, length, side)
        fn = [None] * len(D)
        for v, lab in enumerate(kernel_labels):
            fn[D.index[lab]] = vals[v]
        realised.add(tuple(fn))
    count = 0
    for phi in functionals(D):
        count += 1
        if phi not in realised:
            dlen = D.length
            return ExactnessVerdict(
                prop, False,
                counterexample={
                    "matrix": _fmt_mat(A),
                    "functional": {_fmt_code(S, c, dlen): S.format(S.elements[phi[i]])
                                   for i, c in enumerate(D.codes)},
                    "reason": "linear functional not realised by an inner product",
                },
                scope={"m": A.m, "n": A.n, "domain_size": len(D), "functionals": count},
            )
    return ExactnessVerdict(prop, True, None,
                            scope={"m": A.m, "n": A.n, "domain_size": len(D),
                                   "functionals": count, "realised": len(realised)})


def check_G1(A: Mat, budget: int = G_BUDGET) -> ExactnessVerdict:
    """Raises :class:`BudgetExceeded` when |S|^|col(A)| exceeds ``budget``."""
    return _check_G(A, "row", budget)


def check_G2(A: Mat, budget: int = G_BUDGET) -> ExactnessVerdict:
    return _check_G(A, "col", budget)


def _check_H(A: Mat, side: str, budget: int) -> ExactnessVerdict:
    """side 'row' is H1: functionals on col(A) extend to S^{m x 1}."""
    S = A.semiring
    _require_finite(S)
    prop = "H1" if side == "row" else "H2"
    q = S.size
    ambient_len = A.m if side == "row" else A.n
    if q ** ambient_len > 64 or q ** (q ** ambient_len) > budget:
        raise BudgetExceeded(
            f"{prop}: {q}^({q}^{ambient_len}) functions on the free module exceed budget {budget}"
        )
    target_side = "col" if side == "row" else "row"
    mod_side = "right" if side == "row" else "left"
    D = _span_module(A, target_side, SPAN_BUDGET)
    F = FiniteModule.free(S, ambient_len, mod_side)
    restrictions = {tuple(psi[F.index[c]] for c in D.codes) for psi in functionals(F)}
    count = 0
    for phi in functionals(D):
        count += 1
        if phi not in restrictions:
            return ExactnessVerdict(
                prop, False,
                counterexample={
                    "matrix": _fmt_mat(A),
                    "functional": {_fmt_code(S, c, D.length): S.format(S.elements[phi[i]])
                                   for i, c in enumerate(D.codes)},
                    "reason": "linear functional has no linear extension",
                },
                scope={"m": A.m, "n": A.n, "functionals": count},
            )
    return ExactnessVerdict(prop, True, None,
                            scope={"m": A.m, "n": A.n, "functionals": count,
                                   "total_functionals": len(restrictions)})


def check_H1(A: Mat, budget: int = H_BUDGET) -> ExactnessVerdict:
    """Raises :class:`BudgetExceeded` when |S|^(|S|^m) exceeds ``budget``."""
    return _check_H(A, "row", budget)


def check_H2(A: Mat, budget: int = H_BUDGET) -> ExactnessVerdict:
    return _check_H(A, "col", budget)


CHECKS = {
    "e1": check_E1, "e2": check_E2,
    "f1": check_F1, "f2": check_F2,
    "g1": check_G1, "g2": check_G2,
    "h1": check_H1, "h2": check_H2,
}


# ---------------------------------------------------------------------------
# aggregate


def exactness_report(S: Semiring, max_m: int, max_n: int, props=("e1", "e2"),
                     f_bound: int = F_BOUND, g_budget: int = G_BUDGET,
                     h_budget: int = H_BUDGET, matrix_budget: int = 10**5) -> dict[str, Any]:
    """Run the selected checks over every matrix with m <= max_m, n <= max_n.

    Matrices are visited in canonical order (by shape, then entries), so the
    first counterexample reported is deterministic.  Budget-exceeding G/H
    instances are counted as skipped, never as holding.  Where several of
    the E/F/G/H checks on the same side were computed for a matrix, their
    verdicts are compared and any disagreement is listed.
    """
    _require_finite(S)
    props = [p.lower() for p in props]
    for p in props:
        if p not in CHECKS:
            raise ValueError(f"unknown property {p!r}")
    summary = {p: {"holds": True, "instances": 0, "skipped": 0, "counterexample": None}
               for p in props}
    disagreements = []
    agreement_checked = 0
    n_matrices = 0
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            check_budget(S.size, m * n, matrix_budget, "matrices")
            for A in all_matrices(S, m, n):
                n_matrices += 1
                verdicts = {}
                for p in props:
                    try:
                        if p in ("f1", "f2"):
                            v = CHECKS[p](A, bound=f_bound)
                        elif p in ("g1", "g2"):
                            v = CHECKS[p](A, budget=g_budget)
                        elif p in ("h1", "h2"):
                            v = CHECKS[p](A, budget=h_budget)
                        else:
                            v = CHECKS[p](A)
                    except BudgetExceeded:
                        summary[p]["skipped"] += 1
                        continue
                    verdicts[p] = v.holds
                    entry = summary[p]
                    entry["instances"] += 1
                    if not v.holds and entry["holds"]:
                        entry["holds"] = False
                        entry["counterexample"] = v.counterexample
                for suffix in ("1", "2"):
                    got = {p: verdicts[p] for p in verdicts if p.endswith(suffix)}
                    if len(got) >= 2:
                        agreement_checked += 1
                        if len(set(got.values())) > 1:
                            disagreements.append({"matrix": _fmt_mat(A), "verdicts": got})
    exact = all(summary[p]["holds"] for p in props)
    return {
        "semiring": S.spec,
        "max_m": max_m,
        "max_n": max_n,
        "matrices": n_matrices,
        "properties": {p.upper(): summary[p] for p in props},
        "exact": exact,
        "agreement": {"instances_compared": agreement_checked,
                      "disagreements": disagreements},
        "scope": {"f_bound": f_bound, "g_budget": g_budget, "h_budget": h_budget},
    }


def search_non_exact_tables(max_m: int = 2, max_n: int = 2,
                            props=("e1", "e2", "f1", "g1", "h1")):
    """Scan small candidate tables on {0, 1, a} for a non-exact semiring.

    Candidates fix 0 as additive identity and absorbing, 1 as multiplicative
    identity, and range over the remaining free entries of the (commutative)
    tables.  Each candidate is validated exhaustively before it is checked.
    Returns ``(semiring, report)`` for the first non-exact one in scan order,
    or ``None`` if every valid candidate is exact up to the given dimensions.
    """
    from itertools import product

    from .semiring import TableSemiring

    for a11, a12, a22, m22 in product(range(3), repeat=4):
        add = [[0, 1, 2], [1, a11, a12], [2, a12, a22]]
        mul = [[0, 0, 0], [0, 1, 2], [0, 2, m22]]
        S = TableSemiring(["0", "1", "a"], add, mul, 0, 1, label=f"candidate-{a11}{a12}{a22}{m22}")
        if not S.validate().ok:
            continue
        report = exactness_report(S, max_m, max_n, props=props)
        if not report["exact"]:
            return S, report
    return None

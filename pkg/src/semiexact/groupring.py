"""Group semirings S[G] for a finite group G.

Elements are coefficient maps G -> S, multiplied by convolution.  The
embedding ``F[i][j] = f(g_i^-1 g_j)`` identifies S[G] with a subsemiring of
n x n matrices; projecting onto the first row or first column retracts the
matrix semiring onto that copy.  For finite S the whole of S[G] can be
materialised as a :class:`TableSemiring` and handed to the exactness checks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ArgumentError, BudgetExceeded, ParseError
from .exactness import exactness_report
from .matrix import Mat, all_matrices, mat_add, mat_mul, matrix
from .semiring import Semiring, TableSemiring

TABLE_BUDGET = 64
EXHAUSTIVE_MATRICES = 10**4
BUILTIN_GROUPS = ("C2", "C3", "S3")


class GroupTable:
    """A finite group given by its Cayley table (``table[i][j]`` = index of g_i g_j)."""

    def __init__(self, names, table, label: str | None = None):
        self.names = tuple(names)
        self.order = len(self.names)
        self.table = tuple(tuple(r) for r in table)
        self.label = label
        n = self.order
        if n == 0 or len(set(self.names)) != n:
            raise ArgumentError("group needs distinct element names")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ArgumentError("Cayley table must be n x n")
        if any(not 0 <= v < n for r in self.table for v in r):
            raise ArgumentError("Cayley table entry out of range")
        t = self.table
        ids = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if not ids:
            raise ArgumentError("Cayley table has no identity")
        self.identity = ids[0]
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if t[x][y] == self.identity and t[y][x] == self.identity]
            if not ys:
                raise ArgumentError(f"element {self.names[x]!r} has no inverse")
            inv.append(ys[0])
        self.inverse = tuple(inv)
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ArgumentError(
                    f"Cayley table is not associative at "
                    f"({self.names[a]}, {self.names[b]}, {self.names[c]})"
                )

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def __eq__(self, other):
        return isinstance(other, GroupTable) and (self.names, self.table) == (other.names, other.table)

    def __hash__(self):
        return hash((self.names, self.table))

    def __repr__(self):
        return f"GroupTable({self.label or self.order})"

    def to_text(self) -> str:
        lines = [f"{self.order} " + " ".join(self.names)]
        lines.extend(" ".join(self.names[v] for v in row) for row in self.table)
        return "\n".join(lines) + "\n"


def parse_group(text: str, label: str | None = None, source: str | None = None) -> GroupTable:
    """Parse ``n name_1 ... name_n`` followed by n rows of the Cayley table."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise ParseError("empty group file", line=1, column=1, source=source)
    lineno, head = lines[0]
    toks = head.split()
    try:
        n = int(toks[0])
    except ValueError:
        raise ParseError(f"expected the group order, got {toks[0]!r}", line=lineno,
                         column=1, source=source) from None
    names = toks[1:]
    if len(names) != n:
        raise ParseError(f"expected {n} element names, got {len(names)}", line=lineno,
                         column=len(toks[0]) + 2, source=source)
    index = {nm: i for i, nm in enumerate(names)}
    if len(index) != n:
        raise ParseError("duplicate element names", line=lineno, column=1, source=source)
    rows = lines[1:]
    if len(rows) != n:
        where = rows[n][0] if len(rows) > n else lines[-1][0] + 1
        raise ParseError(f"expected {n} table rows, got {len(rows)}", line=where, column=1,
                         source=source)
    table = []
    for lineno, ln in rows:
        entries = ln.split()
        if len(entries) != n:
            raise ParseError(f"expected {n} entries, got {len(entries)}", line=lineno,
                             column=1, source=source)
        out, col = [], 0
        for tok in entries:
            col = ln.index(tok, col)
            if tok not in index:
                raise ParseError(f"unknown group element {tok!r}", line=lineno,
                                 column=col + 1, source=source)
            out.append(index[tok])
            col += len(tok)
        table.append(out)
    try:
        return GroupTable(names, table, label=label)
    except ArgumentError as exc:
        raise ParseError(str(exc), line=rows[0][0], column=1, source=source) from None


def load_group(path) -> GroupTable:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read group file: {exc.strerror}", source=str(path)) from None
    return parse_group(text, label=path.stem, source=str(path))


def builtin_group(name: str) -> GroupTable:
    if name not in BUILTIN_GROUPS:
        raise ArgumentError(f"unknown built-in group {name!r}; choose from {BUILTIN_GROUPS}")
    pkg = resources.files("semiexact")
    text = pkg.joinpath("data").joinpath("groups").joinpath(f"{name}.grp").read_text()
    return parse_group(text, label=name, source=f"{name}.grp")


def resolve_group(ref: str) -> GroupTable:
    """A built-in name (``C2``, ``C3``, ``S3``) or a path to a group file."""
    return builtin_group(ref) if ref in BUILTIN_GROUPS else load_group(ref)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class GroupSemiringElem:
    semiring: Semiring
    group: GroupTable
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise ArgumentError(
                f"need {self.group.order} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(self.semiring.coerce(c) for c in self.coeffs))

    def __call__(self, g: int):
        return self.coeffs[g]

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return convolve(self, other)

    def format(self) -> dict:
        fmt = self.semiring.format
        return {nm: fmt(c) for nm, c in zip(self.group.names, self.coeffs)}


def element(S: Semiring, G: GroupTable, coeffs) -> GroupSemiringElem:
    return GroupSemiringElem(S, G, tuple(coeffs))


def indicator(S: Semiring, G: GroupTable, g: int) -> GroupSemiringElem:
    """The function sending g to 1 and everything else to 0 (finite S)."""
    return element(S, G, [S.one if h == g else S.zero for h in range(G.order)])


def unit(S: Semiring, G: GroupTable) -> GroupSemiringElem:
    return indicator(S, G, G.identity)


def _same(f: GroupSemiringElem, g: GroupSemiringElem):
    if f.semiring != g.semiring or f.group != g.group:
        raise ArgumentError("group semiring elements over different S or G")


def add(f: GroupSemiringElem, g: GroupSemiringElem) -> GroupSemiringElem:
    _same(f, g)
    a = f.semiring._add
    return GroupSemiringElem(f.semiring, f.group, tuple(a(x, y) for x, y in zip(f.coeffs, g.coeffs)))


def convolve(f: GroupSemiringElem, g: GroupSemiringElem) -> GroupSemiringElem:
    """``(fg)(a) = sum over b c = a of f(b) g(c)``."""
    _same(f, g)
    S, G = f.semiring, f.group
    terms: list = [[] for _ in range(G.order)]
    for b in range(G.order):
        for c in range(G.order):
            terms[G.table[b][c]].append(S._mul(f.coeffs[b], g.coeffs[c]))
    return GroupSemiringElem(S, G, tuple(S.sum(t) for t in terms))


def to_matrix(f: GroupSemiringElem) -> Mat:
    """The n x n matrix ``F[i][j] = f(g_i^-1 g_j)``."""
    G = f.group
    inv, t = G.inverse, G.table
    rows = [[f.coeffs[t[inv[i]][j]] for j in range(G.order)] for i in range(G.order)]
    return Mat._trusted(f.semiring, tuple(tuple(r) for r in rows))


def in_image(F: Mat, G: GroupTable) -> bool:
    """Whether F has the embedded form ``F[i][j] = f(g_i^-1 g_j)`` for some f."""
    if F.shape != (G.order, G.order):
        return False
    seen: dict = {}
    for i in range(G.order):
        for j in range(G.order):
            k = G.table[G.inverse[i]][j]
            if seen.setdefault(k, F.rows[i][j]) != F.rows[i][j]:
                return False
    return True


def from_matrix(F: Mat, G: GroupTable) -> GroupSemiringElem:
    """Inverse of :func:`to_matrix` on its image."""
    if not in_image(F, G):
        raise ArgumentError("matrix is not in the image of the group semiring")
    coeffs = [None] * G.order
    for j in range(G.order):
        coeffs[G.table[G.inverse[0]][j]] = F.rows[0][j]
    return GroupSemiringElem(F.semiring, G, tuple(coeffs))


def all_elements(S: Semiring, G: GroupTable):
    for coeffs in itertools.product(S.enumerate(), repeat=G.order):
        yield GroupSemiringElem(S, G, coeffs)


# ---------------------------------------------------------------------------
# retract maps


class RetractMaps:
    """rho/kappa take the first row/column; psi/phi rebuild an embedded matrix."""

    def __init__(self, S: Semiring, G: GroupTable):
        self.S, self.G = S, G

    def rho(self, M: Mat) -> Mat:
        return M.row(0)

    def kappa(self, M: Mat) -> Mat:
        return M.col(0)

    def psi(self, x: Mat) -> Mat:
        """The embedded matrix whose first row is x."""
        G = self.G
        if x.shape != (1, G.order):
            raise ArgumentError(f"expected a 1x{G.order} row vector")
        # F[0][j] = f(g_0^-1 g_j) = x[j], so f(h) = x[index of g_0 h]
        coeffs = [x.rows[0][G.table[0][h]] for h in range(G.order)]
        return to_matrix(GroupSemiringElem(self.S, G, tuple(coeffs)))

    def phi(self, v: Mat) -> Mat:
        """The embedded matrix whose first column is v."""
        G = self.G
        if v.shape != (G.order, 1):
            raise ArgumentError(f"expected a {G.order}x1 column vector")
        # F[i][0] = f(g_i^-1 g_0) = v[i], so f(h) = v[index of g_0 h^-1]
        coeffs = [v.rows[G.table[0][G.inverse[h]]][0] for h in range(G.order)]
        return to_matrix(GroupSemiringElem(self.S, G, tuple(coeffs)))

    def __iter__(self):
        return iter((self.rho, self.kappa, self.psi, self.phi))


def retract_maps(S: Semiring, G: GroupTable):
    """``(rho, kappa, psi, phi)`` as callables."""
    return tuple(RetractMaps(S, G))


@dataclass
class RetractReport:
    semiring: str
    group: str
    scope: dict
    hypotheses: dict

    @property
    def ok(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def exhaustive(self) -> bool:
        return all(v == "exhaustive" for v in self.scope.values())

    def as_dict(self) -> dict:
        return {"semiring": self.semiring, "group": self.group, "scope": self.scope,
                "hypotheses": self.hypotheses, "ok": self.ok}


def check_retract_hypotheses(S: Semiring, G: GroupTable, samples: int = 500,
                             seed: int = 0) -> RetractReport:
    """Check the retract hypotheses for T = image of S[G] in n x n matrices.

    Three families of instances are used, each exhaustive when it fits its
    budget and otherwise ``samples`` random draws (seeded):
    group-semiring elements and vectors (|S|^n <= ``TABLE_BUDGET``),
    single n x n matrices (at most ``EXHAUSTIVE_MATRICES``), and pairs of
    n x n matrices (at most ``EXHAUSTIVE_MATRICES * 10``).
    """
    n = G.order
    rho, kappa, psi, phi = RetractMaps(S, G)
    rng = random.Random(seed)
    finite = S.is_finite
    small_vec = finite and S.size**n <= TABLE_BUDGET
    small_mat = finite and S.size ** (n * n) <= EXHAUSTIVE_MATRICES
    small_pair = small_mat and S.size ** (2 * n * n) <= EXHAUSTIVE_MATRICES * 10

    def rand_mat(m, k):
        return matrix(S, [[S.sample(rng) for _ in range(k)] for _ in range(m)])

    def rand_elem():
        return GroupSemiringElem(S, G, tuple(S.sample(rng) for _ in range(n)))

    def draw(make):
        return [make() for _ in range(samples)]

    if small_vec:
        elems = list(all_elements(S, G))
        rows = list(all_matrices(S, 1, n))
        cols = list(all_matrices(S, n, 1))
        elem_pairs = list(itertools.product(elems, repeat=2))
        row_pairs = list(itertools.product(rows, repeat=2))
        col_pairs = list(itertools.product(cols, repeat=2))
        row_elem = list(itertools.product(rows, elems))
        col_elem = list(itertools.product(cols, elems))
    else:
        elems = draw(rand_elem)
        rows = draw(lambda: rand_mat(1, n))
        cols = draw(lambda: rand_mat(n, 1))
        elem_pairs = draw(lambda: (rand_elem(), rand_elem()))
        row_pairs = draw(lambda: (rand_mat(1, n), rand_mat(1, n)))
        col_pairs = draw(lambda: (rand_mat(n, 1), rand_mat(n, 1)))
        row_elem = draw(lambda: (rand_mat(1, n), rand_elem()))
        col_elem = draw(lambda: (rand_mat(n, 1), rand_elem()))
    if small_mat:
        mats = list(all_matrices(S, n, n))
        mat_elem = list(itertools.product(mats, elems))
    else:
        mats = draw(lambda: rand_mat(n, n))
        mat_elem = draw(lambda: (rand_mat(n, n), rand_elem()))
    if small_pair:
        mat_pairs = list(itertools.product(mats, repeat=2))
    else:
        mat_pairs = draw(lambda: (rand_mat(n, n), rand_mat(n, n)))
    label = lambda flag: "exhaustive" if flag else f"sampled ({samples}, seed {seed})"  # noqa: E731
    scope = {"elements_and_vectors": label(small_vec), "matrices": label(small_mat),
             "matrix_pairs": label(small_pair)}

    h: dict = {}
    # the embedding S[G] -> M_n(S)
    if small_vec:
        images = [to_matrix(f) for f in elems]
        h["embedding_injective"] = len(set(images)) == len(elems)
    else:
        h["embedding_injective"] = all(
            (f == g) == (to_matrix(f) == to_matrix(g)) for f, g in elem_pairs
        ) and all(from_matrix(to_matrix(f), G) == f for f in elems)
    h["embedding_additive"] = all(
        to_matrix(f + g) == mat_add(to_matrix(f), to_matrix(g)) for f, g in elem_pairs
    )
    h["embedding_multiplicative"] = all(
        to_matrix(f * g) == mat_mul(to_matrix(f), to_matrix(g)) for f, g in elem_pairs
    )
    # retractions onto the embedded copy
    h["rho_psi_identity"] = all(rho(psi(x)) == x for x in rows)
    h["kappa_phi_identity"] = all(kappa(phi(v)) == v for v in cols)
    h["psi_rho_fixes_image"] = all(psi(rho(to_matrix(f))) == to_matrix(f) for f in elems)
    h["phi_kappa_fixes_image"] = all(phi(kappa(to_matrix(f))) == to_matrix(f) for f in elems)
    h["psi_rho_lands_in_image"] = all(in_image(psi(rho(M)), G) for M in mats)
    h["phi_kappa_lands_in_image"] = all(in_image(phi(kappa(M)), G) for M in mats)
    # injectivity of the module embeddings
    h["psi_injective"] = all((x == y) == (psi(x) == psi(y)) for x, y in row_pairs)
    h["phi_injective"] = all((v == w) == (phi(v) == phi(w)) for v, w in col_pairs)
    # linearity over T: rows are right T-modules, columns left T-modules
    h["rho_linear"] = all(
        rho(mat_add(M, P)) == mat_add(rho(M), rho(P)) for M, P in mat_pairs
    ) and all(rho(mat_mul(M, to_matrix(f))) == mat_mul(rho(M), to_matrix(f)) for M, f in mat_elem)
    h["kappa_linear"] = all(
        kappa(mat_add(M, P)) == mat_add(kappa(M), kappa(P)) for M, P in mat_pairs
    ) and all(kappa(mat_mul(to_matrix(f), M)) == mat_mul(to_matrix(f), kappa(M)) for M, f in mat_elem)
    h["psi_linear"] = all(
        psi(mat_add(x, y)) == mat_add(psi(x), psi(y)) for x, y in row_pairs
    ) and all(psi(mat_mul(x, to_matrix(f))) == mat_mul(psi(x), to_matrix(f)) for x, f in row_elem)
    h["phi_linear"] = all(
        phi(mat_add(v, w)) == mat_add(phi(v), phi(w)) for v, w in col_pairs
    ) and all(phi(mat_mul(to_matrix(f), v)) == mat_mul(to_matrix(f), phi(v)) for v, f in col_elem)
    return RetractReport(S.spec, G.label or str(G.order), scope, h)


# ---------------------------------------------------------------------------
# S[G] as a finite table


def _coeff_name(S: Semiring, coeffs) -> str:
    return ",".join(S.format(c) for c in coeffs)


def to_table_semiring(S: Semiring, G: GroupTable, budget: int = TABLE_BUDGET):
    """Materialise S[G] for finite S.

    Returns ``(T, elems)`` where ``elems[i]`` is the coefficient map behind
    table element ``i``.  If S carries an involution the table gets
    ``conj(f)(g) = conj(f(g^-1))``.
    """
    if not S.is_finite:
        raise ArgumentError(f"{S.spec} is not finite; S[G] cannot be tabulated")
    size = S.size ** G.order
    if size > budget:
        raise BudgetExceeded(f"S[G] has {size} elements, over the table budget {budget}")
    elems = list(all_elements(S, G))
    index = {f.coeffs: i for i, f in enumerate(elems)}
    add_t = [[index[(f + g).coeffs] for g in elems] for f in elems]
    mul_t = [[index[(f * g).coeffs] for g in elems] for f in elems]
    zero = index[tuple(S.zero for _ in range(G.order))]
    one = index[unit(S, G).coeffs]
    conj_t = None
    if S.anti_involutive:
        conj_t = [index[group_conj(f).coeffs] for f in elems]
    names = [_coeff_name(S, f.coeffs) for f in elems]
    label = f"{S.spec}[{G.label or G.order}]"
    return TableSemiring(names, add_t, mul_t, zero, one, conj_table=conj_t, label=label), elems


def group_conj(f: GroupSemiringElem) -> GroupSemiringElem:
    """``conj(f)(g) = conj(f(g^-1))``; on Boolean coefficients this is the
    complement of the inverted support."""
    S, G = f.semiring, f.group
    return GroupSemiringElem(S, G, tuple(S.conj(f.coeffs[G.inverse[g]]) for g in range(G.order)))


def group_semiring_exactness(S: Semiring, G: GroupTable, max_m: int = 2, max_n: int = 2,
                             props=("e1", "e2"), table_budget: int = TABLE_BUDGET,
                             **budgets) -> dict:
    """Tabulate S[G], validate it, and run the exactness checks on it."""
    T, _ = to_table_semiring(S, G, table_budget)
    validation = T.validate()
    report = exactness_report(T, max_m, max_n, props=props, **budgets)
    report["group_semiring"] = {"base": S.spec, "group": G.label or str(G.order),
                                "size": T.size, "valid": validation.ok}
    return report

"""Scalar semirings with local identities.

Every semiring used by the package is an instance of one of the classes
below.  Finite kinds (Boolean, integers modulo n, explicit tables) are backed
by integer operation tables so that the enumeration kernels can work on
element indices; parametric kinds (max-plus over the rationals, its two-point
completion, and the ordered group Q under max) compute directly on exact
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import ArgumentError, DomainError, ParseError, UnsupportedOperation

NEG_INF = float("-inf")
POS_INF = float("inf")


@dataclass
class ValidationReport:
    """Outcome of :meth:`Semiring.validate`.

    ``witness`` names the first failed law together with the offending
    elements; it is ``None`` exactly when ``ok`` is true.
    """

    semiring: str
    ok: bool
    exhaustive: bool
    checks: dict = field(default_factory=dict)
    witness: tuple | None = None
    samples: int | None = None

    def as_dict(self, fmt=str) -> dict:
        w = None
        if self.witness is not None:
            law, elems = self.witness
            w = {"law": law, "elements": [fmt(e) for e in elems]}
        return {
            "semiring": self.semiring,
            "ok": self.ok,
            "exhaustive": self.exhaustive,
            "checks": dict(sorted(self.checks.items())),
            "witness": w,
            "samples": self.samples,
        }


class Semiring:
    """Common interface.  Instances are immutable after construction."""

    kind: str = ""
    commutative: bool = False
    idempotent: bool = False
    has_global_identities: bool = False
    anti_involutive: bool = False
    is_finite: bool = False

    # -- element plumbing -------------------------------------------------
    def contains(self, a) -> bool:
        raise NotImplementedError

    def check(self, a):
        if not self.contains(a):
            raise DomainError(f"{a!r} is not an element of {self.spec}")
        return a

    def coerce(self, a):
        """Return the canonical form of ``a`` or raise :class:`DomainError`."""
        return self.check(a)

    def sort_key(self, a):
        return a

    def parse(self, token: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    # -- arithmetic --------------------------------------------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def add(self, a, b):
        return self._add(self.check(a), self.check(b))

    def mul(self, a, b):
        return self._mul(self.check(a), self.check(b))

    def sum(self, items: Iterable):
        it = iter(items)
        try:
            acc = next(it)
        except StopIteration:
            raise ArgumentError("empty sum has no value in a semiring without 0") from None
        for x in it:
            acc = self._add(acc, x)
        return acc

    def leq(self, a, b) -> bool:
        """Natural order ``a <= b  iff  a + b == b`` (idempotent kinds only)."""
        if not self.idempotent:
            raise UnsupportedOperation(f"{self.spec} is not idempotent")
        return self._add(a, b) == b

    def conj(self, a):
        raise UnsupportedOperation(f"{self.spec} has no built-in involution")

    def local_identities(self, L: Iterable) -> tuple:
        L = [self.check(a) for a in L]
        if not L:
            raise ArgumentError("local identities need a non-empty subset")
        return self._local_identities(L)

    def _local_identities(self, L):
        raise NotImplementedError

    def enumerate(self) -> list:
        raise UnsupportedOperation(f"{self.spec} has an infinite universe")

    def sample(self, rng: random.Random):
        raise NotImplementedError

    # -- identity ------------------------------------------------------------
    @property
    def spec(self) -> str:
        raise NotImplementedError

    def _signature(self):
        return (self.kind, self.spec)

    def __eq__(self, other):
        return isinstance(other, Semiring) and self._signature() == other._signature()

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        return f"<Semiring {self.spec}>"

    def flags(self) -> dict:
        return {
            "commutative": self.commutative,
            "idempotent_addition": self.idempotent,
            "has_global_identities": self.has_global_identities,
            "anti_involutive": self.anti_involutive,
        }

    # -- axiom checks ----------------------------------------------------------
    def validate(self, samples: int = 1000, seed: int = 0) -> ValidationReport:
        """Check the semiring laws.

        Finite kinds are checked exhaustively (local identities over every
        subset of size at most 3); parametric kinds on ``samples`` random
        triples drawn with ``seed``.
        """
        if self.is_finite:
            elems = self.enumerate()
            triples: Iterable = itertools.product(elems, repeat=3)
            subsets: Iterable = itertools.chain.from_iterable(
                itertools.combinations(elems, k) for k in (1, 2, 3)
            )
            exhaustive, count = True, None
        else:
            rng = random.Random(seed)
            triples = [tuple(self.sample(rng) for _ in range(3)) for _ in range(samples)]
            subsets = [
                tuple(self.sample(rng) for _ in range(rng.randint(1, 3)))
                for _ in range(samples)
            ]
            exhaustive, count = False, samples
        return _run_laws(self, list(triples), list(subsets), exhaustive, count)


def _run_laws(S: Semiring, triples, subsets, exhaustive, count) -> ValidationReport:
    add, mul = S._add, S._mul
    laws = {
        "add_associative": lambda a, b, c: add(add(a, b), c) == add(a, add(b, c)),
        "add_commutative": lambda a, b, c: add(a, b) == add(b, a),
        "mul_associative": lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c)),
        "left_distributive": lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
        "right_distributive": lambda a, b, c: mul(add(a, b), c) == add(mul(a, c), mul(b, c)),
    }
    if S.idempotent:
        laws["add_idempotent"] = lambda a, b, c: add(a, a) == a
    if S.commutative:
        laws["mul_commutative"] = lambda a, b, c: mul(a, b) == mul(b, a)
    if S.anti_involutive:
        conj, leq = S.conj, S.leq
        laws["conj_involutive"] = lambda a, b, c: conj(conj(a)) == a
        # antitone in both senses: a x <= x'  =>  conj(x') a <= conj(x), and dually
        laws["conj_antitone_left"] = lambda a, x, y: (
            not leq(mul(a, x), y) or leq(mul(conj(y), a), conj(x))
        )
        laws["conj_antitone_right"] = lambda a, x, y: (
            not leq(mul(x, a), y) or leq(mul(a, conj(y)), conj(x))
        )
    checks = {name: True for name in laws}
    checks["local_identities"] = True
    witness = None
    for name, law in laws.items():
        for t in triples:
            if not law(*t):
                checks[name] = False
                witness = witness or (name, t)
                break
    for L in subsets:
        z, o = S._local_identities(list(L))
        bad = False
        for a in L:
            if mul(o, a) != a or mul(a, o) != a:
                bad = True
            for b in L:
                if add(a, mul(z, b)) != a or add(a, mul(b, z)) != a:
                    bad = True
        if bad:
            checks["local_identities"] = False
            witness = witness or ("local_identities", tuple(L))
            break
    return ValidationReport(
        semiring=S.spec,
        ok=all(checks.values()),
        exhaustive=exhaustive,
        checks=checks,
        witness=witness,
        samples=count,
    )


# ---------------------------------------------------------------------------
# finite kinds


class FiniteSemiring(Semiring):
    """A semiring with an explicit, finite, canonically ordered universe.

    ``add_table[i][j]`` and ``mul_table[i][j]`` hold element indices; the
    kernels in :mod:`semiexact.kernels` operate on these tables directly.
    """

    is_finite = True
    has_global_identities = True

    def __init__(self, elements: Sequence, add_table, mul_table, zero: int, one: int,
                 conj_table=None):
        self.elements = tuple(elements)
        self.size = len(self.elements)
        self.add_table = tuple(tuple(r) for r in add_table)
        self.mul_table = tuple(tuple(r) for r in mul_table)
        self.zero_index = zero
        self.one_index = one
        self.conj_table = tuple(conj_table) if conj_table is not None else None
        self._index = {e: i for i, e in enumerate(self.elements)}
        q = self.size
        self.commutative = all(
            self.mul_table[i][j] == self.mul_table[j][i] for i in range(q) for j in range(q)
        )
        self.idempotent = all(self.add_table[i][i] == i for i in range(q))
        self.anti_involutive = self.conj_table is not None and self.idempotent

    @property
    def zero(self):
        return self.elements[self.zero_index]

    @property
    def one(self):
        return self.elements[self.one_index]

    def index(self, a) -> int:
        try:
            return self._index[a]
        except (KeyError, TypeError):
            raise DomainError(f"{a!r} is not an element of {self.spec}") from None

    def contains(self, a) -> bool:
        try:
            return a in self._index and type(a) is type(self.elements[self._index[a]])
        except TypeError:
            return False

    def sort_key(self, a):
        return self._index[a]

    def enumerate(self) -> list:
        return list(self.elements)

    def sample(self, rng):
        return rng.choice(self.elements)

    def _add(self, a, b):
        ix = self._index
        return self.elements[self.add_table[ix[a]][ix[b]]]

    def _mul(self, a, b):
        ix = self._index
        return self.elements[self.mul_table[ix[a]][ix[b]]]

    def conj(self, a):
        if self.conj_table is None:
            return super().conj(a)
        return self.elements[self.conj_table[self._index[a]]]

    def _local_identities(self, L):
        return self.zero, self.one

    def _signature(self):
        return (self.kind, self.elements, self.add_table, self.mul_table, self.conj_table)


class BooleanSemiring(FiniteSemiring):
    kind = "boolean"

    def __init__(self):
        super().__init__(
            (False, True),
            [[0, 1], [1, 1]],
            [[0, 0], [0, 1]],
            zero=0,
            one=1,
            conj_table=(1, 0),
        )

    spec = "boolean"

    def _add(self, a, b):
        return a or b

    def _mul(self, a, b):
        return a and b

    def conj(self, a):
        return not a

    def parse(self, token):
        if token in ("T", "1", "true", "True"):
            return True
        if token in ("F", "0", "false", "False"):
            return False
        raise DomainError(f"not a Boolean lexeme: {token!r}")

    def format(self, a):
        return "T" if a else "F"


class ZmodSemiring(FiniteSemiring):
    kind = "zmod"

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise ArgumentError(f"modulus must be a positive integer, got {n!r}")
        self.modulus = n
        r = range(n)
        super().__init__(
            tuple(r),
            [[(a + b) % n for b in r] for a in r],
            [[(a * b) % n for b in r] for a in r],
            zero=0,
            one=1 % n,
        )

    @property
    def spec(self):
        return f"zmod {self.modulus}"

    def contains(self, a):
        return type(a) is int and 0 <= a < self.modulus

    def _add(self, a, b):
        return (a + b) % self.modulus

    def _mul(self, a, b):
        return (a * b) % self.modulus

    def parse(self, token):
        try:
            v = int(token)
        except ValueError:
            raise DomainError(f"not a residue: {token!r}") from None
        if not 0 <= v < self.modulus:
            raise DomainError(f"residue {v} outside [0, {self.modulus})")
        return v

    def format(self, a):
        return str(a)


class TableSemiring(FiniteSemiring):
    """A finite semiring given by named elements and operation tables.

    Elements are the integer indices into ``names``.  The descriptor must name
    global identities; an optional involution turns an idempotent table into
    an anti-involutive semiring.
    """

    kind = "table"

    def __init__(self, names: Sequence[str], add_table, mul_table, zero: int, one: int,
                 conj_table=None, label: str | None = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ArgumentError("duplicate element names in table")
        q = len(self.names)
        for tab in (add_table, mul_table):
            if len(tab) != q or any(len(row) != q for row in tab):
                raise ArgumentError("operation tables must be |S| x |S|")
            if any(not 0 <= v < q for row in tab for v in row):
                raise ArgumentError("table entry out of range")
        if not (0 <= zero < q and 0 <= one < q):
            raise ArgumentError("zero/one out of range")
        self.label = label
        super().__init__(range(q), add_table, mul_table, zero, one, conj_table)
        self._name_index = {n: i for i, n in enumerate(self.names)}

    @property
    def spec(self):
        return f"table {self.label}" if self.label else "table"

    def contains(self, a):
        return type(a) is int and 0 <= a < self.size

    def _add(self, a, b):
        return self.add_table[a][b]

    def _mul(self, a, b):
        return self.mul_table[a][b]

    def parse(self, token):
        try:
            return self._name_index[token]
        except KeyError:
            raise DomainError(f"unknown element name {token!r}") from None

    def format(self, a):
        return self.names[a]

    def _signature(self):
        return (self.kind, self.names, self.add_table, self.mul_table, self.conj_table)

    def to_text(self) -> str:
        """Serialize in the table file format (inverse of :func:`load_table`)."""
        lines = [" ".join(self.names)]
        for tab in (self.add_table, self.mul_table):
            lines.extend(" ".join(self.names[v] for v in row) for row in tab)
        lines.append(f"zero {self.names[self.zero_index]}")
        lines.append(f"one {self.names[self.one_index]}")
        if self.conj_table is not None:
            lines.append("conj " + " ".join(self.names[v] for v in self.conj_table))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parametric kinds


def _as_fraction(a):
    if isinstance(a, bool):
        return None
    if isinstance(a, Fraction):
        return a
    if isinstance(a, int):
        return Fraction(a)
    return None


class MaxPlusSemiring(Semiring):
    """Max-plus arithmetic on exact rationals.

    ``variant`` is ``"tropical"`` (the finitary tropical semiring over Q),
    ``"gmax"`` (the ordered group (Q, +, 0) with max as addition; the same
    arithmetic under its group-theoretic name) or ``"tropical-complete"``
    (adjoins -inf and +inf with (-inf)a = -inf for every a).
    """

    idempotent = True
    commutative = True
    anti_involutive = True

    def __init__(self, variant: str = "tropical"):
        if variant not in ("tropical", "gmax", "tropical-complete"):
            raise ArgumentError(f"unknown max-plus variant {variant!r}")
        self.kind = variant
        self.complete = variant == "tropical-complete"
        self.has_global_identities = self.complete

    @property
    def spec(self):
        return self.kind

    def contains(self, a):
        if self.complete and (a == NEG_INF or a == POS_INF) and isinstance(a, float):
            return True
        return isinstance(a, Fraction) or (isinstance(a, int) and not isinstance(a, bool))

    def coerce(self, a):
        if self.complete and isinstance(a, float) and a in (NEG_INF, POS_INF):
            return a
        f = _as_fraction(a)
        if f is None:
            raise DomainError(f"{a!r} is not an exact rational element of {self.spec}")
        return f

    def check(self, a):
        return self.coerce(a)

    def sort_key(self, a):
        return a

    def _add(self, a, b):
        return a if a >= b else b

    def _mul(self, a, b):
        if self.complete:
            if a == NEG_INF or b == NEG_INF:
                return NEG_INF
            if a == POS_INF or b == POS_INF:
                return POS_INF
        return a + b

    def conj(self, a):
        return -a

    def leq(self, a, b):
        return a <= b

    def _local_identities(self, L):
        if self.complete:
            return NEG_INF, Fraction(0)
        lo, hi = min(L), max(L)
        # commutative group: both candidates in the min coincide
        return min(lo - hi, -hi + lo), Fraction(0)

    def sample(self, rng):
        if self.complete and rng.random() < 0.1:
            return rng.choice((NEG_INF, POS_INF))
        return Fraction(rng.randint(-40, 40), rng.choice((1, 2, 3, 4, 6)))

    def parse(self, token):
        if token in ("-inf", "inf", "+inf"):
            if not self.complete:
                raise DomainError(f"{token!r} is only valid in tropical-complete")
            return NEG_INF if token == "-inf" else POS_INF
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"not a rational lexeme: {token!r}") from None

    def format(self, a):
        if a == NEG_INF:
            return "-inf"
        if a == POS_INF:
            return "inf"
        return str(a)


# ---------------------------------------------------------------------------
# construction from text


def boolean() -> BooleanSemiring:
    return BooleanSemiring()


def zmod(n: int) -> ZmodSemiring:
    return ZmodSemiring(n)


def tropical() -> MaxPlusSemiring:
    return MaxPlusSemiring("tropical")


def tropical_complete() -> MaxPlusSemiring:
    return MaxPlusSemiring("tropical-complete")


def gmax() -> MaxPlusSemiring:
    return MaxPlusSemiring("gmax")


def parse_semiring(text: str, base_dir: Path | None = None) -> Semiring:
    """Build a semiring from its one-line description.

    Accepted forms: ``boolean``, ``zmod n``, ``tropical``,
    ``tropical-complete``, ``gmax`` and ``table <path>``.
    """
    parts = text.split()
    if not parts:
        raise ParseError("empty semiring description", line=1, column=1)
    head = parts[0]
    if head in ("boolean", "tropical", "tropical-complete", "gmax") and len(parts) == 1:
        return {"boolean": boolean, "tropical": tropical,
                "tropical-complete": tropical_complete, "gmax": gmax}[head]()
    if head == "zmod" and len(parts) == 2:
        try:
            n = int(parts[1])
        except ValueError:
            raise ParseError(f"bad modulus {parts[1]!r}", line=1,
                             column=text.index(parts[1]) + 1) from None
        if n < 1:
            raise ParseError("modulus must be positive", line=1, column=text.index(parts[1]) + 1)
        return zmod(n)
    if head == "table" and len(parts) == 2:
        path = Path(parts[1])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return load_table(path)
    raise ParseError(f"unrecognised semiring description {text!r}", line=1, column=1)


def parse_table(text: str, label: str | None = None, source: str | None = None) -> TableSemiring:
    """Parse the table file format.

    Line 1 lists the element names; then |S| lines of the addition table and
    |S| lines of the multiplication table; then ``zero <name>`` and
    ``one <name>``.  An optional final ``conj <names...>`` line gives an
    involution (image of each element in order).
    """
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise ParseError("empty table file", line=1, column=1, source=source)
    names = lines[0][1].split()
    q = len(names)
    if len(set(names)) != q:
        raise ParseError("duplicate element names", line=lines[0][0], column=1, source=source)
    index = {n: i for i, n in enumerate(names)}

    def row(lineno, line, expect):
        toks = line.split()
        if len(toks) != expect:
            raise ParseError(f"expected {expect} entries, got {len(toks)}",
                             line=lineno, column=1, source=source)
        out, col = [], 0
        for tok in toks:
            col = line.index(tok, col)
            if tok not in index:
                raise ParseError(f"unknown element {tok!r}", line=lineno, column=col + 1,
                                 source=source)
            out.append(index[tok])
            col += len(tok)
        return out

    body = lines[1:]
    if len(body) < 2 * q + 2:
        last = lines[-1][0]
        raise ParseError("table file truncated", line=last + 1, column=1, source=source)
    add = [row(n, ln, q) for n, ln in body[:q]]
    mul = [row(n, ln, q) for n, ln in body[q:2 * q]]
    zero = one = None
    conj = None
    for lineno, ln in body[2 * q:]:
        toks = ln.split()
        if toks[0] in ("zero", "one") and len(toks) == 2:
            if toks[1] not in index:
                raise ParseError(f"unknown element {toks[1]!r}", line=lineno,
                                 column=ln.index(toks[1]) + 1, source=source)
            if toks[0] == "zero":
                zero = index[toks[1]]
            else:
                one = index[toks[1]]
        elif toks[0] == "conj":
            conj = row(lineno, ln[ln.index("conj") + 4:], q)
        else:
            raise ParseError(f"unexpected line {ln.strip()!r}", line=lineno, column=1,
                             source=source)
    if zero is None or one is None:
        raise ParseError("table must declare both 'zero' and 'one'",
                         line=body[-1][0], column=1, source=source)
    return TableSemiring(names, add, mul, zero, one, conj_table=conj, label=label)


def load_table(path) -> TableSemiring:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read table file: {exc.strerror}", source=str(path)) from None
    return parse_table(text, label=str(path), source=str(path))


def describe(S: Semiring) -> dict[str, Any]:
    out = {"spec": S.spec, "kind": S.kind, **S.flags()}
    if S.is_finite:
        out["size"] = S.size
    return out

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiexact.errors import ArgumentError, DomainError, ParseError, UnsupportedOperation
from semiexact.semiring import (
    NEG_INF,
    POS_INF,
    TableSemiring,
    boolean,
    describe,
    gmax,
    parse_semiring,
    parse_table,
    tropical,
    tropical_complete,
    zmod,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_boolean_add_mul():
    B = boolean()
    assert B.add(False, True) is True
    assert B.mul(True, False) is False


def test_tropical_add_mul():
    T = tropical()
    assert T.add(3, 7) == 7
    assert T.mul(3, 7) == 10


def test_zmod_add():
    assert zmod(4).add(3, 3) == 2


def test_complete_absorption_order():
    T = tropical_complete()
    assert T.mul(NEG_INF, POS_INF) == NEG_INF
    assert T.mul(POS_INF, NEG_INF) == NEG_INF
    assert T.mul(POS_INF, Fraction(3)) == POS_INF
    assert T.add(NEG_INF, Fraction(-100)) == Fraction(-100)


def test_domain_errors():
    with pytest.raises(DomainError):
        zmod(4).add(5, 1)
    with pytest.raises(DomainError):
        tropical().add(0.5, 1)
    with pytest.raises(DomainError):
        boolean().mul(2, True)


def test_local_identities_examples():
    assert boolean().local_identities([False, True]) == (False, True)
    assert tropical().local_identities([3, 7]) == (-4, 0)
    assert zmod(6).local_identities([2, 5]) == (0, 1)
    with pytest.raises(ArgumentError):
        tropical().local_identities([])


@given(st.lists(rationals, min_size=1, max_size=4))
def test_tropical_local_identity_axioms(L):
    for S in (tropical(), gmax()):
        z, o = S.local_identities(L)
        for a in L:
            assert S.mul(o, a) == a and S.mul(a, o) == a
            for b in L:
                assert S.add(a, S.mul(z, b)) == a
                assert S.add(a, S.mul(b, z)) == a


def test_enumerate():
    assert boolean().enumerate() == [False, True]
    assert zmod(4).enumerate() == [0, 1, 2, 3]
    with pytest.raises(UnsupportedOperation):
        tropical().enumerate()


@pytest.mark.parametrize("S", [boolean(), zmod(2), zmod(7), zmod(12)], ids=lambda S: S.spec)
def test_validate_finite(S):
    rep = S.validate()
    assert rep.ok and rep.exhaustive and rep.witness is None


@pytest.mark.parametrize("S", [tropical(), tropical_complete(), gmax()], ids=lambda S: S.spec)
def test_validate_parametric(S):
    rep = S.validate(samples=300, seed=1)
    assert rep.ok and not rep.exhaustive and rep.samples == 300


def test_validate_corrupted_table_negative_control():
    Z = zmod(3)
    mul = [list(r) for r in Z.mul_table]
    mul[2][2] = 2  # 2*2 should be 1
    T = TableSemiring(["0", "1", "2"], Z.add_table, mul, 0, 1)
    rep = T.validate()
    assert not rep.ok
    law, elems = rep.witness
    assert law in rep.checks and not rep.checks[law]
    a, b, c = elems
    add, m = T.add, T.mul
    laws = {
        "mul_associative": m(m(a, b), c) == m(a, m(b, c)),
        "left_distributive": m(a, add(b, c)) == add(m(a, b), m(a, c)),
        "right_distributive": m(add(a, b), c) == add(m(a, c), m(b, c)),
    }
    assert laws[law] is False


def test_natural_order_is_partial_order_boolean():
    B = boolean()
    E = B.enumerate()
    for a in E:
        assert B.leq(a, a)
    for a, b in itertools.product(E, repeat=2):
        if B.leq(a, b) and B.leq(b, a):
            assert a == b
    for a, b, c in itertools.product(E, repeat=3):
        if B.leq(a, b) and B.leq(b, c):
            assert B.leq(a, c)


@given(rationals, rationals, rationals)
def test_natural_order_tropical(a, b, c):
    T = tropical()
    assert T.leq(a, a)
    if T.leq(a, b) and T.leq(b, a):
        assert a == b
    if T.leq(a, b) and T.leq(b, c):
        assert T.leq(a, c)
    assert T.leq(a, b) == (T.add(a, b) == b)


@given(rationals, rationals, rationals)
def test_tropical_laws_property(a, b, c):
    T = tropical()
    assert T.mul(a, T.add(b, c)) == T.add(T.mul(a, b), T.mul(a, c))
    assert T.add(T.add(a, b), c) == T.add(a, T.add(b, c))
    assert T.conj(T.conj(a)) == a


def test_rationals_canonical():
    T = tropical()
    assert T.coerce(Fraction(4, 6)) == Fraction(2, 3)
    assert T.parse("4/6") == Fraction(2, 3)
    assert T.format(T.parse("-6/4")) == "-3/2"


def test_parse_semiring_forms(tmp_path):
    assert parse_semiring("boolean") == boolean()
    assert parse_semiring("zmod 5") == zmod(5)
    assert parse_semiring("tropical-complete").complete
    p = tmp_path / "z2.tbl"
    p.write_text("0 1\n0 1\n1 0\n0 0\n0 1\nzero 0\none 1\n")
    T = parse_semiring(f"table {p}")
    assert T.size == 2 and T.validate().ok
    with pytest.raises(ParseError):
        parse_semiring("zmod x")
    with pytest.raises(ParseError):
        parse_semiring("reals")


def test_parse_table_errors_have_positions():
    with pytest.raises(ParseError) as exc:
        parse_table("a b\na b\nb q\na a\na b\nzero a\none b\n")
    assert exc.value.line == 3 and exc.value.column == 3
    with pytest.raises(ParseError):
        parse_table("a b\na b\n")
    with pytest.raises(ParseError):
        parse_table("a b\na b\nb a\na a\na b\nzero a\n")


def test_table_roundtrip_with_conj():
    B = boolean()
    T = TableSemiring(["F", "T"], B.add_table, B.mul_table, 0, 1, conj_table=[1, 0], label="b")
    T2 = parse_table(T.to_text(), label="b")
    assert T2 == T
    assert T2.anti_involutive and T2.validate().ok


def test_describe_flags():
    d = describe(zmod(4))
    assert d == {"spec": "zmod 4", "kind": "zmod", "commutative": True,
                 "idempotent_addition": False, "has_global_identities": True,
                 "anti_involutive": False, "size": 4}
    assert describe(tropical())["has_global_identities"] is False

import pytest

from homhom.digraph import complete_reflexive, disjoint_union, oriented_cycle
from homhom.errors import InputError
from homhom.generate import chain_poset, from_spec
from homhom.involution import make_alpha, make_zeta4


def test_atoms():
    assert from_spec("alpha3") == make_alpha(3)
    assert from_spec("zeta4") == make_zeta4()
    assert from_spec("c3") == oriented_cycle(3, reflexive=True)
    assert from_spec("k4") == complete_reflexive(4)
    assert from_spec("one") == complete_reflexive(1)
    assert from_spec("chain3") == chain_poset(3)


def test_whitespace_and_case():
    assert from_spec("ALPHA 3") == make_alpha(3)
    assert from_spec(" c3 +  one ") == disjoint_union(
        [oriented_cycle(3, reflexive=True), complete_reflexive(1)]
    )


def test_counts_and_unions():
    d = from_spec("2*c3 + 3*one")
    assert d.n == 9
    assert from_spec("0*c3 + one") == complete_reflexive(1)


def test_inflate_expression():
    d = from_spec("inflate(c3; 2, 1, 1)")
    assert d.n == 4
    nested = from_spec("inflate(chain2 + one; 2, 2, 1)")
    assert nested.n == 5


def test_parenthesised_union():
    d = from_spec("2*(c3 + one)")
    assert d.n == 8


def test_errors():
    for bad in ("", "alpha", "c3 +", "inflate(c3; 2, 1)", "frobnicate", "c3 ^ one"):
        with pytest.raises(InputError):
            from_spec(bad)

from fractions import Fraction

import pytest

from infocoh import fixtures
from infocoh.cohomology import (
    FWCochain,
    One,
    PowerCochain,
    classify_cocycle,
    coboundary_mult,
    coboundary_sequence,
    componentwise,
    extract_sequence,
    inverse_factorial,
    perturb,
)
from infocoh.errors import DegenerateProduct, NoNondegenerateProduct, NotACocycle
from infocoh.fontene_ward import alpha_family, explicit, fibonacci, gaussian, natural
from infocoh.values import same

EX = fixtures.example()
FAMILIES = [natural(), gaussian(2), gaussian(3), fibonacci(), explicit([1, 2, Fraction(3, 7), 5, 1, 4, 2, 6])]


@pytest.mark.parametrize("D", FAMILIES, ids=lambda D: D.tag)
def test_extract_recovers_family(D):
    E = extract_sequence(FWCochain(D), EX, "X1", "X2", 8)
    assert all(E.term(n) == D.term(n) for n in range(1, 9))


def test_extract_log_family():
    D = alpha_family(-1, 2)
    E = extract_sequence(FWCochain(D), EX, "X1", "X2", 6)
    assert all(same(E.term(n), D.term(n)) for n in range(1, 7))


def test_extract_on_full_product():
    s = fixtures.full_product((2, 3))
    E = extract_sequence(FWCochain(fibonacci()), s, "X", "Y", 6)
    assert [E.term(n) for n in range(1, 7)] == [1, 1, 2, 3, 5, 8]


def test_power_of_cocycle_squares_the_sequence():
    E = extract_sequence(PowerCochain(FWCochain(natural()), 2), EX, "X1", "X2", 6)
    assert [E.term(n) for n in range(1, 7)] == [n * n for n in range(1, 7)]


def test_trivial_cocycle_gives_constant_one():
    E = extract_sequence(One(), EX, "X1", "X2", 5)
    assert [E.term(n) for n in range(1, 6)] == [1] * 5


def test_non_cocycle_is_rejected():
    bad = perturb(FWCochain(natural()), ("X1X2",), (1, 1, 1), 2)
    with pytest.raises(NotACocycle):
        extract_sequence(bad, EX, "X1", "X2", 5)


def test_degenerate_product():
    with pytest.raises(DegenerateProduct):
        extract_sequence(FWCochain(natural()), fixtures.degenerate(), "X", "Y", 4)
    with pytest.raises(NoNondegenerateProduct):
        classify_cocycle(FWCochain(natural()), fixtures.degenerate(), 4)


def test_two_components_two_sequences():
    s = fixtures.two_component()
    comps = s.components()
    psi = componentwise(s, {comps[0][0]: FWCochain(natural()), comps[1][0]: FWCochain(gaussian(2))})
    c = classify_cocycle(psi, s, 6)
    seqs = list(c.sequences.values())
    assert len(seqs) == 2
    assert {tuple(D.term(n) for n in range(1, 7)) for D in seqs} == {
        tuple(natural().term(n) for n in range(1, 7)),
        tuple(gaussian(2).term(n) for n in range(1, 7)),
    }
    assert c.coboundary is False


def test_single_family_is_a_coboundary():
    c = classify_cocycle(FWCochain(natural()), fixtures.two_component(), 6)
    assert c.coboundary
    assert c.psi[2] == Fraction(1, 6)
    c = classify_cocycle(coboundary_mult(inverse_factorial(gaussian(2)), EX), EX, 6)
    assert c.coboundary
    (D,) = c.sequences.values()
    assert [D.term(n) for n in range(1, 7)] == [gaussian(2).term(n) for n in range(1, 7)]


def test_coboundary_sequence_inverts_factorial():
    D = fibonacci()
    E = coboundary_sequence(lambda n: 1 / D.factorial(n), 9)
    assert [E.term(n) for n in range(1, 10)] == [D.term(n) for n in range(1, 10)]


def test_classification_json():
    obj = classify_cocycle(FWCochain(natural()), EX, 4).to_json()
    assert obj["components"][0]["sequence"] == ["1", "2", "3", "4"]
    assert obj["coboundary"] is True

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from infocoh import fixtures
from infocoh.cohomology import (
    Coboundary,
    ConstCochain,
    EntropyCochain,
    ExpCochain,
    FWCochain,
    MagnitudeTable,
    One,
    PowerCochain,
    ProbTable,
    TableCochain,
    coboundary_add,
    coboundary_is_trivial,
    coboundary_mult,
    cochain_from_json,
    cocycle_check,
    counting_functions,
    generators,
    inverse_factorial,
    law_grid,
    perturb,
    random_table,
    single_support_check,
)
from infocoh.cohomology.cochains import compositions
from infocoh.errors import TableBoundExceeded
from infocoh.fontene_ward import fibonacci, gaussian, natural
from infocoh.functionals import CountingFunction, act_mult, push_counts
from infocoh.values import is_one, same

EX = fixtures.example()


def test_compositions_count():
    assert len(list(compositions(5, 3))) == math.comb(7, 2)
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]


def test_counting_functions_ordered_by_magnitude():
    cs = list(counting_functions(3, 4))
    assert [sum(c) for c in cs] == sorted(sum(c) for c in cs)
    assert len(cs) == sum(math.comb(n + 2, 2) for n in range(1, 5))


def test_law_grid_contains_all_small_denominators():
    grid = set(law_grid(3, 4))
    for d in range(1, 5):
        assert set(oracles.all_laws(3, d)) <= grid


def test_generators_have_meets():
    gens = generators(EX, 2)
    assert ("X1", "X2") in gens
    for g in gens:
        assert EX.try_common_meet(g) is not None
    assert generators(EX, 0) == [()]


def _delta_degree1_oracle(psi, s, x, y, counts):
    """``(X.psi[Y]) * psi[XY]^-1 * psi[X]`` written out with the module action."""
    xy = s.meet(x, y)
    nu = CountingFunction(xy, counts)

    def on_y(m):
        return psi((y,), push_counts(s, (xy, y), m).counts)

    acted = act_mult(s, x, on_y, nu)
    return acted / psi((xy,), counts) * psi((x,), push_counts(s, (xy, x), nu).counts)


@settings(max_examples=25)
@given(seed=st.integers(0, 10**6))
def test_degree1_coboundary_against_direct_formula(seed):
    psi = random_table(EX, 1, 5, seed)
    delta = coboundary_mult(psi, EX)
    for x, y in (("X1", "X2"), ("X2", "X1"), ("X1", "X1X2"), ("1", "X2")):
        size = EX.size(EX.meet(x, y))
        for counts in counting_functions(size, 4):
            assert delta((x, y), counts) == _delta_degree1_oracle(psi, EX, x, y, counts)


def test_degree0_coboundary_is_ratio():
    psi = MagnitudeTable({n: Fraction(n * n + 1) for n in range(0, 11)})
    delta = coboundary_mult(psi, EX)
    for counts in counting_functions(3, 5):
        nu = CountingFunction("X1X2", counts)
        parts = [c for c in push_counts(EX, ("X1X2", "X1"), nu).counts if c]
        expect = Fraction(1)
        for c in parts:
            expect *= psi.value((), (c,))
        expect /= psi.value((), (sum(counts),))
        assert delta(("X1",), push_counts(EX, ("X1X2", "X1"), nu).counts) == expect


@pytest.mark.parametrize("D", [natural(), gaussian(2), fibonacci()], ids=lambda D: D.tag)
def test_fw_cocycle_on_fixtures(D):
    psi = FWCochain(D)
    assert cocycle_check(psi, EX, 7).ok
    assert cocycle_check(psi, fixtures.cube(), 3).ok
    assert single_support_check(psi, EX, 6).ok


@pytest.mark.parametrize("D", [natural(), gaussian(3)], ids=lambda D: D.tag)
def test_inverse_factorial_bounds_to_fw(D):
    delta = coboundary_mult(inverse_factorial(D), EX)
    for x in EX.variables:
        for counts in counting_functions(EX.size(x), 6):
            assert same(delta((x,), counts), D.multinomial(counts))


def test_perturbed_table_fails_with_witness():
    bad = perturb(FWCochain(natural()), ("X1",), (1, 1), 2)
    v = cocycle_check(bad, EX, 5)
    assert not v.ok
    w = v.witness
    assert w["gens"] and not is_one(Fraction(w["delta"]) if isinstance(w["delta"], str) else w["delta"])
    assert not single_support_check(perturb(FWCochain(natural()), ("X1",), (0, 2), 3), EX, 4).ok


@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_exp_is_zero_cocycle(k):
    assert cocycle_check(ExpCochain(k), EX, 8).ok


@settings(max_examples=10)
@given(seed=st.integers(0, 10**6))
def test_delta_delta_trivial_mult(seed):
    for degree in (0, 1):
        psi = random_table(EX, degree, 6, seed)
        assert coboundary_is_trivial(psi, EX, 6).ok


@pytest.mark.parametrize("alpha", [Fraction(1, 2), 1, 2])
def test_entropy_is_additive_cocycle(alpha):
    assert cocycle_check(EntropyCochain(alpha), EX, 6, alpha=alpha).ok
    assert not cocycle_check(EntropyCochain(alpha), EX, 6, alpha=alpha + 1).ok


def test_constant_zero_cochain_and_table_delta_delta():
    assert cocycle_check(ConstCochain(0.0), EX, 4, alpha=1).ok
    for seed in range(3):
        assert coboundary_is_trivial(ProbTable(1, 6, seed), EX, 6, alpha=2).ok


def test_prob_table_bound():
    t = ProbTable(1, 4, 0)
    with pytest.raises(TableBoundExceeded):
        t.value(("X1",), (Fraction(1, 5), Fraction(4, 5)))


def test_power_of_fw_is_fw_of_powers():
    psi = PowerCochain(FWCochain(natural()), 2)
    assert cocycle_check(psi, EX, 5).ok
    assert psi.value(("X1",), (2, 2)) == 36


def test_table_falls_back_to_base():
    t = TableCochain(1, {(("X1",), (1, 1)): Fraction(5)}, base=One())
    assert t.value(("X1",), (1, 1)) == 5
    assert t.value(("X1",), (2, 1)) == 1


@pytest.mark.parametrize(
    "obj",
    [
        {"type": "one", "degree": 1},
        {"type": "fw", "family": "gaussian:q=2"},
        {"type": "exp", "k": "1/2"},
        {"type": "inverse-factorial", "family": "natural"},
        {"type": "const", "c": 0},
        {"type": "entropy", "beta": "2"},
    ],
)
def test_json_round_trip(obj):
    psi = cochain_from_json(obj, EX)
    again = cochain_from_json(psi.to_json(), EX)
    assert again.degree == psi.degree
    if psi.to_json()["type"] in ("const", "entropy"):
        args = (("X1",), (Fraction(1, 3), Fraction(2, 3)))
        assert math.isclose(again(*args), psi(*args), abs_tol=1e-15)
        return
    if psi.degree == 0:
        args = ((), (3,))
    else:
        args = (("X1",), (1, 2))
    assert same(again(*args), psi(*args))


def test_coboundary_json_needs_structure():
    with pytest.raises(Exception):
        cochain_from_json({"type": "coboundary", "of": {"type": "exp", "k": 1}})
    delta = cochain_from_json({"type": "coboundary", "of": {"type": "exp", "k": 1}}, EX)
    assert isinstance(delta, Coboundary)
    assert is_one(delta(("X1",), (2, 3)))


def test_additive_coboundary_of_zero_cochain_is_zero():
    d = coboundary_add(ConstCochain(0.0), EX, 2)
    assert d(("X1",), (Fraction(1, 2), Fraction(1, 2))) == 0

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from infocoh.asymptotics import (
    chain_rule_limit_check,
    default_ns,
    entropy_constant,
    entropy_limit_check,
    rate_estimate,
    rational_approximation,
    rational_approximation_sequence,
    samples_csv,
    sandwich_bounds,
)
from infocoh.errors import UnsupportedFamily
from infocoh.fontene_ward import alpha_family, fibonacci, gaussian, natural

laws = st.lists(st.integers(0, 12), min_size=2, max_size=5).filter(any).map(
    lambda c: tuple(Fraction(a, sum(c)) for a in c)
)


@given(laws, st.integers(1, 500))
def test_rounding_is_close_and_exact_total(p, n):
    nu = rational_approximation(p, n)
    assert sum(nu) == n
    assert all(abs(c - w * n) < 1 for c, w in zip(nu, p))


def test_rounding_ties_go_to_first_index():
    third = Fraction(1, 3)
    assert rational_approximation((third, third, third), 4) == (2, 1, 1)
    assert rational_approximation((third, third, third), 5) == (2, 2, 1)


def test_sequence_needs_increasing_ns():
    with pytest.raises(ValueError):
        rational_approximation_sequence((Fraction(1, 2), Fraction(1, 2)), [8, 4])


def test_default_ns():
    assert default_ns(1)[0] == 16 and default_ns(1)[-1] == 4096
    assert default_ns(2)[-1] == 256


def test_constants():
    assert entropy_constant(natural()) == 1.0
    assert math.isclose(entropy_constant(gaussian(2)), math.log(2) / 2)
    assert math.isclose(entropy_constant(alpha_family(1, Fraction(1, 2))), -1.0)
    with pytest.raises(UnsupportedFamily):
        entropy_constant(fibonacci())


def test_stirling_rate_for_natural():
    p = (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    est = rate_estimate(natural(), p, 1)
    assert abs(est.limit - oracles.shannon(p)) < 0.01
    assert est.certificate < 0.01


def test_log_multinomial_matches_lgamma():
    nu = (300, 500, 200)
    direct = math.lgamma(1001) - sum(math.lgamma(c + 1) for c in nu)
    assert math.isclose(natural().log_multinomial(nu), direct, rel_tol=1e-12)


def test_gaussian_rate():
    p = (Fraction(1, 2), Fraction(1, 2))
    r = entropy_limit_check(gaussian(2), 2, p, tolerance=0.01)
    assert r.ok, r.to_json()
    assert abs(r.estimate.limit - math.log(2) / 4) < 0.01


@pytest.mark.parametrize("K", [1, -1])
@pytest.mark.parametrize("alpha", [Fraction(1, 2), 2])
def test_alpha_family_sandwich(K, alpha):
    r = entropy_limit_check(alpha_family(K, alpha), alpha, (Fraction(1, 2), Fraction(1, 2)))
    assert r.sandwich and r.sandwich_ok


@given(st.integers(1, 2000), st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(3, 2), 2, 3]), st.sampled_from([1, -2]))
def test_sandwich_direct(n, alpha, K):
    lo, mid, hi = sandwich_bounds(K, alpha, n)
    direct = K * sum(i ** (float(alpha) - 1) - 1 for i in range(1, n + 1))
    assert math.isclose(mid, direct, rel_tol=1e-9, abs_tol=1e-9)
    assert lo <= mid + 1e-9 and mid <= hi + 1e-9


def test_alpha_family_target_is_tsallis_multiple():
    p = (Fraction(1, 2), Fraction(1, 2))
    r = entropy_limit_check(alpha_family(1, 2), 2, p)
    assert math.isclose(r.target, 0.5 * oracles.tsallis(2, p))
    assert r.ok


def test_mismatched_order_fails():
    r = entropy_limit_check(natural(), 2, (Fraction(1, 2), Fraction(1, 2)))
    assert not r.ok


@pytest.mark.parametrize("D,alpha", [(natural(), 1), (gaussian(2), 2)])
def test_chain_rule_limit(D, alpha):
    p = (Fraction(1, 6), Fraction(1, 3), Fraction(1, 4), Fraction(1, 4))
    rep = chain_rule_limit_check(D, alpha, p, [0, 0, 1, 1])
    assert rep.identity_residual < 1e-9
    assert rep.ok, rep.to_json()


def test_csv():
    est = rate_estimate(natural(), (Fraction(1, 2), Fraction(1, 2)), 1, ns=[16, 32])
    lines = samples_csv(est).splitlines()
    assert lines[0] == "n,value" and len(lines) == 3

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from trace_lab import binomials as bn
from trace_lab.errors import InvalidArgument

reals = st.floats(0, 60, allow_nan=False)


def test_binom_real_examples():
    assert bn.binom_real(5, 2) == 10.0
    assert bn.binom_real(4.5, 2) == pytest.approx(7.875, abs=1e-12)
    assert bn.binom_real(2.5, 0) == 1.0
    assert bn.binom_real(2.0, 3) == 0.0
    assert bn.binom_real(1.5, 3) == pytest.approx(-0.0625, abs=1e-12)


def test_binom_real_rejects_bad_arguments():
    with pytest.raises(InvalidArgument):
        bn.binom_real(-1.0, 2)
    with pytest.raises(InvalidArgument):
        bn.binom_real(3.0, -1)
    with pytest.raises(InvalidArgument):
        bn.binom_real(3.0, 1.5)


@given(st.integers(0, 80), st.integers(0, 80))
def test_binom_real_matches_comb_on_integers(y, i):
    assert bn.binom_real(y, i) == float(math.comb(y, i))


@given(reals, st.integers(0, 12))
def test_log2_binom_agrees(y, i):
    v = bn.binom_real(y, i)
    sign, lg = bn.log2_binom_real(y, i)
    if v == 0:
        assert sign == 0
    else:
        assert sign == (1 if v > 0 else -1)
        assert 2 ** lg == pytest.approx(abs(v), rel=1e-9)


@given(st.integers(1, 8), st.floats(0, 1e6, allow_nan=False))
def test_invert_binomial_rounds_down(k, m):
    y = bn.invert_binomial(m, k)
    assert y >= k - 1
    assert bn.binom_exact(y, k) <= Fraction(m)
    assert bn.binom_exact(math.nextafter(y, math.inf), k) > Fraction(m) or m == 0


def test_invert_binomial_examples():
    assert bn.invert_binomial(6, 2) == 4.0
    assert bn.invert_binomial(0, 3) == 2.0
    assert bn.binom_real(bn.invert_binomial(7, 2), 2) == pytest.approx(7, rel=1e-12)
    with pytest.raises(InvalidArgument):
        bn.invert_binomial(5, 0)


def test_mu_and_lambda_values():
    a = math.log2(1.5)
    assert bn.mu(2, 0.5) == pytest.approx((3 - a) / (2 - a), abs=1e-12)
    assert bn.mu(2, 0.5) == pytest.approx(1.70669505, abs=1e-8)
    assert bn.mu(1, 1.0) == pytest.approx(1.0)
    assert bn.lambda_br(0.5) == pytest.approx(math.log2(1.5))
    a = math.log2(1.2)
    assert bn.lambda_br(0.2) == pytest.approx(a / bn.entropy(a))
    with pytest.raises(InvalidArgument):
        bn.mu(0.5, 0.5)
    with pytest.raises(InvalidArgument):
        bn.lambda_br(0.0)


@given(st.floats(1, 10), st.floats(0.01, 1))
def test_mu_between_half_r_and_r(r, alpha):
    m = bn.mu(r, alpha)
    assert (r + 1) / 2 - 1e-12 <= m <= r + 1e-12


def test_entropy():
    assert bn.entropy(0.5) == 1.0
    assert bn.entropy(0.0) == bn.entropy(1.0) == 0.0
    with pytest.raises(InvalidArgument):
        bn.entropy(1.5)


@given(st.integers(1, 10), st.floats(0, 30), st.floats(0, 1))
def test_sum_binom_gamma_lower(k, x, gamma):
    assume(x >= k)
    assert bn.sum_binom_gamma_lower(k, x, gamma).holds


@given(st.floats(0.01, 60))
def test_newton_partial_sum(x):
    b = bn.newton_partial_sum_bounds(x)
    assert b.holds


def test_newton_integer_case():
    b = bn.newton_partial_sum_bounds(4)
    assert b == (8.0, 16.0, 16.0)


@given(st.integers(1, 7), st.data())
def test_binom_ratio_lower(k, data):
    i = data.draw(st.integers(1, k))
    delta = data.draw(st.integers(0, i))
    x = data.draw(st.floats(k - delta + 0.01, 40))
    y = data.draw(st.floats(k - 1 + 0.01, 40))
    assume(bn.binom_exact(y, k) <= bn.binom_exact(x, k - delta))
    assume(bn.binom_exact(y, i) > 0 and bn.binom_exact(x, i - delta) > 0)
    assert bn.binom_ratio_lower(x, y, k, i, delta).holds


def test_binom_ratio_hypothesis_checked():
    with pytest.raises(InvalidArgument):
        bn.binom_ratio_lower(3.0, 10.0, 3, 2, 1)


@given(st.floats(-5, 5, allow_nan=False))
def test_exp_sandwich(x):
    lower, upper = bn.exp_sandwich(x)
    assert upper
    if 0 <= x <= 0.5:
        assert lower
    else:
        assert lower is None


def test_hypergeometric_pmf_sums_to_one():
    total = sum(bn.hypergeom_pmf_exact(20, 5, 7, h) for h in range(6))
    assert total == 1


@pytest.mark.parametrize("n", [1, 4, 16, 50, 100])
def test_hypergeometric_domination(n):
    for x in range(bn.max_hg_draws(n) + 1):
        violations, _ = bn.hypergeom_domination_grid(n, x)
        assert violations == []


def test_hypergeometric_exact_check_agrees():
    for y in range(26):
        for h in range(6):
            ok = bn.hypergeom_dominated_exact(25, 5, y, h)
            p = bn.hypergeom_pmf_exact(25, 5, y, h)
            q = bn.binom_pmf_exact(5, Fraction(y, 25), h)
            assert ok == (p <= 2 * q)

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mzvpade.coeffs import (
    SERIES_MATCHED,
    b_chain_laurent,
    integral_laurent,
    opa_chain,
    s_chain,
    s_series_laurent,
    sorokin_laurent,
    swapped_chain,
    tail_bound,
    taylor,
    taylor_bruteforce,
)
from mzvpade.words import EMPTY, Index, parse_index
from tests.test_words import indices


@given(indices(max_depth=3))
def test_taylor_matches_bruteforce(idx):
    assert list(taylor(idx, 7).c) == taylor_bruteforce(idx, 7)


def test_taylor_small_values():
    c = taylor(parse_index("2,1;l"), 3).c
    assert c[1:] == (1, Fraction(3, 8), Fraction(11, 54))  # H_k / k^2
    assert taylor(EMPTY, 3).c == (1, 1, 1, 1)


def test_taylor_rejects_bad_truncation():
    with pytest.raises(ValueError):
        taylor(parse_index("2"), 0)


@given(indices(max_depth=3), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)]))
def test_tail_bound_is_an_upper_bound(idx, x):
    K = 40
    c = taylor(idx, 400).c
    tail = sum(c[k] * x ** k for k in range(K + 1, 401))
    assert tail <= tail_bound(idx, K, x)


def test_tail_bound_at_one():
    idx = parse_index("2,1;l")
    K = 200
    c = taylor(idx, 2000).c
    assert sum(c[K + 1:]) <= tail_bound(idx, K, 1)
    with pytest.raises(ValueError):
        tail_bound(parse_index("1,2;l"), K, 1)


def test_b_chain_depth_two_is_minus_dilog():
    lau = b_chain_laurent([(1, 0, 0), (1, 1, 0)], 6)
    assert [lau.coeff(e) for e in range(1, 6)] == [-Fraction(1, m * m) for m in range(1, 6)]


def test_b_chain_reports_failing_step():
    with pytest.raises(ValueError):
        b_chain_laurent([(0, 0, 3)], 5)


@pytest.mark.parametrize("r,n", [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)])
def test_opa_chain_is_signed_sorokin_integral(r, n):
    a = b_chain_laurent(opa_chain(n, r + 1), 10)
    b = sorokin_laurent(r, n, 10)
    for e in range(1, max(a.last, b.last) + 1):
        assert a.coeff(e) == (-1) ** (r + 1) * b.coeff(e)


@pytest.mark.parametrize("r,n,sigma", [(0, 0, 1), (0, 1, 1), (1, 1, 1), (0, 1, 2), (1, 1, 3), (0, 2, 2)])
def test_sigma_chain_equals_integral(r, n, sigma):
    a = integral_laurent(r, n, sigma, 8)
    b = b_chain_laurent(s_chain(r, n, sigma), 8)
    assert a.order == b.order
    assert all(a.coeff(e) == b.coeff(e) for e in range(1, a.last + 1))


def test_integral_leading_order():
    for r, n in [(0, 1), (1, 1), (1, 2)]:
        assert integral_laurent(r, n, 1, 6).leading_order() == (r + 1) * (n + 1)


def test_swapped_chain():
    assert swapped_chain([(1, 0, 0), (2, 3, 1)]) == [(0, 1, 0), (3, 2, 1)]


@pytest.mark.parametrize("r,n", [(0, 0), (0, 1), (1, 1), (0, 2)])
def test_matched_series_equals_integral(r, n):
    a = s_series_laurent(r, n, 8, SERIES_MATCHED)
    b = integral_laurent(r, n, 1, a.last)
    assert all(a.coeff(e) == b.coeff(e) for e in range(1, a.last + 1))


def test_printed_series_differs_from_integral():
    a = s_series_laurent(0, 0, 6)
    b = integral_laurent(0, 0, 1, a.last)
    assert any(a.coeff(e) != b.coeff(e) for e in range(1, a.last + 1))


def test_printed_series_vanishing_prefix():
    # (k_{2r+1} - n)_n kills every chain with k_{2r+1} <= n
    for r, n in [(0, 1), (1, 1), (0, 2)]:
        lau = s_series_laurent(r, n, 6)
        assert lau.leading_order() >= (r + 1) * (n + 1)

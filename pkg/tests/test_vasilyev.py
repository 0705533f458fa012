from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mzvpade.vasilyev import (
    BudgetExceeded,
    compute_J,
    compute_S_sigma,
    q_d,
    q_d_expanded,
    qmc_integral,
    ratio_law,
    route_a,
    vasilyev_integrand,
)

unit = st.fractions(min_value=0, max_value=1, max_denominator=30)


@given(st.lists(unit, min_size=1, max_size=7))
def test_nested_denominator_two_ways(xs):
    assert q_d(xs) == q_d_expanded(xs)


def test_nested_denominator_is_positive_inside_the_cube():
    x = np.random.default_rng(0).random((1000, 5))
    assert np.all(q_d([x[:, j] for j in range(5)]) > 0)


def test_integrand_at_n_zero_is_reciprocal_denominator():
    x = np.array([[0.5, 0.25, 0.75]])
    assert vasilyev_integrand(x, 0)[0] == pytest.approx(1 / q_d([0.5, 0.25, 0.75]))


# exact certificates from the Pade route: constant, (zeta(3), zeta(5), ...)
CERTIFICATES = {
    (0, 0): (0, (2,)),
    (0, 1): (-12, (10,)),
    (0, 2): (Fraction(-351, 2), (146,)),
    (1, 0): (0, (0, 2)),
    (1, 1): (-98, (66, 18)),
    (1, 2): (Fraction(-74463, 16), (Fraction(6125, 2), 938)),
}


@pytest.mark.parametrize("case", sorted(CERTIFICATES))
def test_route_a_certificates(case):
    combo, _, _ = route_a(*case)
    const, zetas = CERTIFICATES[case]
    assert combo.constant == const and combo.coeffs == tuple(Fraction(z) for z in zetas)


@pytest.mark.parametrize("r,n", [(0, 0), (0, 1), (1, 1), (1, 2)])
def test_routes_a_and_b_agree_up_to_the_ratio_law(r, n):
    rep = compute_J(r, n)
    assert rep.ab_pass
    assert abs(float(rep.ratio.mid) - float(ratio_law(r, n))) < 1e-8 * float(ratio_law(r, n))


def test_ratio_law_values():
    assert [ratio_law(0, n) for n in range(3)] == [2, 2, 8]
    assert ratio_law(1, 2) == 32
    assert ratio_law(0, 2, 2) == Fraction(1, 18)


def test_report_json_is_deterministic():
    assert compute_J(0, 1).dumps() == compute_J(0, 1).dumps()


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        compute_J(3, 0)
    with pytest.raises(ValueError):
        compute_J(0, -1)


def test_qmc_needs_a_seed():
    with pytest.raises(ValueError):
        qmc_integral(3, 1, 1, None)


def test_qmc_is_seeded_and_agrees_with_route_a():
    a = qmc_integral(3, 1, 1, seed=7, points=2**14)
    b = qmc_integral(3, 1, 1, seed=7, points=2**14)
    assert a == b
    exact = float(compute_J(0, 1).pade_value.mid)
    assert abs(a.mean - exact) <= 4 * a.stderr + 1e-9


def test_sigma_two_chain_and_integral():
    rep = compute_S_sigma(0, 1, 2, mc=True, seed=3, points=2**15)
    assert rep.chain_agrees
    assert rep.expected_ratio == Fraction(1, 2)
    assert rep.mc_pass

from fractions import Fraction

import pytest

from mzvpade.coeffs import integral_laurent
from mzvpade.exact_core import kernel
from mzvpade.pade import (
    build_p_system,
    build_q_system,
    combination_laurent,
    dumps,
    laurent_scalar,
    required_orders,
    s_order,
    solve_p,
    solve_q,
    vasilyev_combination,
)

SMALL = [(r, n) for r in range(2) for n in range(3)]


@pytest.mark.parametrize("r,n", SMALL)
def test_kernels_are_one_dimensional(r, n):
    assert kernel(build_p_system(r, n)).dimension == 1
    assert kernel(build_q_system(r, n)).dimension == 1


def test_hand_anchors():
    assert list(solve_p(0, 0).vector) == [1, 0, 0, 0]
    assert list(solve_q(0, 0).vector) == [1, 0, 0]


@pytest.mark.parametrize("r,n", SMALL)
def test_orders_exceed_construction(r, n):
    for kind, sol in (("P", solve_p(r, n)), ("Q", solve_q(r, n))):
        req = required_orders(kind, r, n)
        for label, need in req.items():
            got = sol.orders[label]
            assert got is None or got >= need, (kind, label, got, need)


@pytest.mark.parametrize("r,n", SMALL)
def test_b_and_c_vanish_at_one(r, n):
    sol = solve_p(r, n)
    assert all(p(1) == 0 for p in sol.B + sol.C)


@pytest.mark.parametrize("r,n", SMALL)
def test_normalization_first_nonzero_positive(r, n):
    vec = solve_p(r, n).vector
    assert next(x for x in vec if x) > 0
    assert all(x.denominator == 1 for x in vec)


def test_s_expansion_starts_late():
    sol = solve_p(1, 2)
    lau = combination_laurent(sol, s_order(1, 2) + 3)
    assert all(lau.coeff(e) == 0 for e in range(1, s_order(1, 2)))
    assert any(lau.coeff(e) for e in range(s_order(1, 2), lau.last + 1))


# frozen from the exact solver; c(0,0) = -1 is fixed by the normalization
LAURENT_SCALARS = {(0, 0): -1, (0, 1): 1, (0, 2): Fraction(-1, 4), (1, 0): -1, (1, 1): 1}


@pytest.mark.parametrize("case", sorted(LAURENT_SCALARS))
def test_laurent_scalar(case):
    c, ok = laurent_scalar(solve_p(*case), 12)
    assert ok and c == LAURENT_SCALARS[case]


def test_laurent_scalar_detects_mismatch():
    other = integral_laurent(0, 2, 1, 12)
    _, ok = laurent_scalar(solve_p(0, 1), 12, reference=other)
    assert not ok


def test_apery_like_certificate():
    # (0, 1): J_{3,1} = 10 zeta(3) - 12 after the Laurent scalar
    data = vasilyev_combination(solve_p(0, 1))
    c, _ = laurent_scalar(solve_p(0, 1))
    f = data.n_parity_sign * c
    assert (2 * f * data.q[0], f * data.qD) == (10, -12)


def test_dumps_is_deterministic():
    assert dumps(solve_p(1, 1)) == dumps(solve_p(1, 1))
    assert dumps(solve_q(1, 1)).startswith("{")

from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mzvpade.exact_core import (
    BallReal,
    RatPoly,
    as_rational,
    kernel,
    mat_vec,
    poly_rebase_at_one,
    rat_from_str,
    rat_to_str,
)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=40)
polys = st.lists(rats, max_size=6).map(RatPoly)


def test_rational_strings_round_trip():
    for x in (Fraction(0), Fraction(-7, 3), Fraction(12)):
        assert rat_from_str(rat_to_str(x)) == x
    assert rat_to_str(Fraction(4, 2)) == "2"


def test_floats_are_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(polys, polys, polys)
def test_polynomial_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == RatPoly()


@given(polys, rats)
def test_rebase_at_one(p, z):
    assert poly_rebase_at_one(p)(1 - z) == p(z)


@given(polys, polys)
def test_derivative_product_rule(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


def test_one_minus_z_power():
    assert RatPoly.one_minus_z_power(3) == RatPoly([1, -3, 3, -1])


def test_kernel_known_matrix():
    rep = kernel([[1, 2, 3], [2, 4, 6]])
    assert (rep.dimension, rep.rank) == (2, 1)
    for v in rep.basis:
        assert mat_vec([[1, 2, 3]], v) == [0]


def test_kernel_is_primitive_and_normalized():
    rep = kernel([[Fraction(1, 2), Fraction(1, 3), -1]])
    for v in rep.basis:
        assert all(x.denominator == 1 for x in v)
        assert next(x for x in v if x) > 0


small_ints = st.integers(min_value=-4, max_value=4)


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_kernel_against_sympy_rank(m, n, data):
    rows = [[data.draw(small_ints) for _ in range(n)] for _ in range(m)]
    rep = kernel(rows)
    rank = sympy.Matrix(rows).rank()
    assert rep.rank == rank
    assert rep.dimension == n - rank
    for v in rep.basis:
        assert all(x == 0 for x in mat_vec(rows, v))


def test_kernel_deterministic():
    rows = [[1, -1, 0, 2], [0, 3, 1, 1]]
    assert kernel(rows) == kernel([list(r) for r in rows])


def test_ball_pi_contains_reference():
    ref = mpmath.mpf(mpmath.pi)
    with mpmath.workdps(60):
        ref = +mpmath.pi
    assert BallReal.pi(128).contains(ref)


@given(rats, rats, st.fractions(min_value=1, max_value=30, max_denominator=30))
def test_ball_arithmetic_contains_exact(a, b, c):
    A, B, C = BallReal.exact(a), BallReal.exact(b), BallReal.exact(c)
    assert (A + B).contains(a + b)
    assert (A - B).contains(a - b)
    assert (A * B).contains(a * b)
    assert (A / C).contains(a / c)
    assert (C ** 3).contains(c ** 3)


@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=100))
def test_ball_log_contains_reference(x):
    with mpmath.workdps(50):
        ref = mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
    assert BallReal.exact(x).log().contains(ref)


def test_ball_widen_and_bounds():
    b = BallReal.from_bounds(Fraction(1), Fraction(2))
    assert b.contains(Fraction(3, 2)) and not b.contains(3)
    w = b.widen(Fraction(1))
    assert w.contains(3)
    assert b.to_json()["rigor"] == "rigorous"
    assert not BallReal.from_mid_rad(0, 1, rigorous=False).rigorous


def test_heuristic_is_contagious():
    h = BallReal.from_mid_rad(1, Fraction(1, 10), rigorous=False)
    assert not (h + BallReal.exact(1)).rigorous


def test_division_by_ball_containing_zero():
    with pytest.raises(ZeroDivisionError):
        BallReal.exact(1) / BallReal.from_mid_rad(0, 1)

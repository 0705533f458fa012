from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mzvpade.calculus import (
    Expression,
    MismatchError,
    canonicalize,
    differentiate,
    expr_eval,
    laurent_at_infinity,
    reduce_check,
    s_expression,
    scaled_derivative,
)
from mzvpade.coeffs import taylor
from mzvpade.pade import combination_laurent, solve_p, solve_q
from mzvpade.words import ArgFrame, Index, parse_index
from tests.test_words import indices

frames = st.sampled_from(list(ArgFrame))


def _numeric(idx, frame, z):
    from mzvpade.numerics import effective_argument

    x = effective_argument(frame, z)
    return float(expr_eval(Expression.polylog(idx, frame), z, prec=96).mid), x


@settings(max_examples=25)
@given(indices(max_depth=2, max_b=2), frames)
def test_derivative_matches_finite_difference(idx, frame):
    z = {ArgFrame.DIRECT: Fraction(1, 3), ArgFrame.INVERSE: Fraction(4), ArgFrame.ONE_MINUS: Fraction(2, 3)}[frame]
    h = Fraction(1, 10**4)
    e = Expression.polylog(idx, frame)
    hi = expr_eval(e, z + h, prec=96)
    lo = expr_eval(e, z - h, prec=96)
    fd = (float(hi.mid) - float(lo.mid)) / float(2 * h)
    d = float(expr_eval(differentiate(e), z, prec=96).mid)
    assert abs(fd - d) <= 1e-6 * max(1.0, abs(d))


@given(indices(max_depth=3))
def test_canonicalize_keeps_the_value(idx):
    e = Expression.polylog(idx, ArgFrame.DIRECT)
    a = expr_eval(e, Fraction(1, 3), prec=96)
    b = expr_eval(canonicalize(e), Fraction(1, 3), prec=96)
    assert abs(float(a.mid) - float(b.mid)) <= float(a.rad + b.rad) + 1e-25


@given(indices(max_depth=3))
def test_laurent_at_infinity_is_the_taylor_table(idx):
    got = laurent_at_infinity(Expression.polylog(idx, ArgFrame.INVERSE), 6)
    tab = taylor(idx, 6).c
    assert got == {k: tab[k] for k in range(1, 7) if tab[k]}


def test_expression_algebra():
    idx = parse_index("2,1;l")
    e = Expression.polylog(idx, ArgFrame.INVERSE, 3)
    assert (e - e).is_zero()
    assert e + e == e.scale(2)
    assert str(Expression()) == "0"


def test_scaled_derivative_of_dilog():
    # z^2 Li_2''(z) = z / (1 - z) + log(1 - z)
    e = scaled_derivative(Expression.polylog(Index((2,), ()), ArgFrame.DIRECT), 1)
    val = expr_eval(e, Fraction(1, 2), prec=64)
    assert abs(float(val.mid) - (1 - mpmath.log(2))) < 1e-15


def test_s_expression_matches_pade_expansion():
    sol = solve_p(1, 1)
    lau = combination_laurent(sol, 8)
    exp = laurent_at_infinity(s_expression(sol), 8)
    assert all(exp.get(e, 0) == lau.coeff(e) for e in range(1, 9))


# frozen from the exact pipeline
REDUCE_SCALARS = {(0, 0): -1, (0, 1): 1, (0, 2): -1, (1, 0): -1, (1, 1): 1, (1, 2): -2}


@pytest.mark.parametrize("case", sorted(REDUCE_SCALARS))
def test_reduce_check(case):
    rep = reduce_check(*case, solve_p(*case), solve_q(*case))
    assert rep.match and rep.scalar == REDUCE_SCALARS[case]


def test_reduce_check_reports_mismatch():
    rep = reduce_check(0, 1, solve_p(0, 1), _perturbed(solve_q(0, 1)))
    assert not rep.match and rep.detail
    with pytest.raises(MismatchError):
        reduce_check(0, 1, solve_p(0, 1), _perturbed(solve_q(0, 1)), strict=True)


def test_reduce_check_rejects_mixed_cases():
    with pytest.raises(ValueError):
        reduce_check(0, 1, solve_p(0, 1), solve_q(0, 2))


def _perturbed(sol):
    from dataclasses import replace

    vec = list(sol.vector)
    vec[-1] += 1
    return replace(sol, vector=tuple(vec))

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mzvpade.numerics import (
    BudgetError,
    DivergentDomain,
    WeightFamily,
    eval_B_chain,
    eval_polylog,
    eval_S_series,
    eval_vwp,
    eval_weight,
    eval_zeta,
    _choose_K,
    polylog_float,
    weight_moment_defect,
)
from mzvpade.words import ArgFrame, Index, parse_index

D, INV, OMZ = ArgFrame.DIRECT, ArgFrame.INVERSE, ArgFrame.ONE_MINUS

# Oracle values from independent mpmath routines (nsum over the nested
# definition, mpmath.polylog, mpmath.zeta), frozen at 30 digits.
mpmath.mp.dps = 40
LI21L_THIRD = mpmath.mpf("0.3846544405354877022210365348073")
SSERIES_003 = mpmath.mpf("0.10747973814194285402035379826")
VWP_011 = mpmath.mpf("0.010284515797971426998690807557")  # 5 zeta(3) - 6
VWP_111 = mpmath.mpf("0.000227600556940755173648708")  # 33 zeta(3) + 9 zeta(5) - 49
VWP_012 = mpmath.mpf("0.034179098892982867208")
ZETA22L = mpmath.mpf("1.894065658994491835153")  # (zeta(2)^2 + zeta(4)) / 2
mpmath.mp.dps = 15


def _close(ball, ref, tol):
    return abs(float(ball.mid) - float(ref)) <= tol


def test_li21l_at_one_third_contains_oracle():
    ball = eval_polylog(parse_index("2,1;l"), INV, 3, prec=128)
    # the oracle carries 31 digits, the ball about 42
    assert abs(ball.mid - LI21L_THIRD) < 1e-30 and ball.rigorous
    assert float(ball.rad) < 1e-30


@settings(max_examples=20)
@given(st.integers(1, 4), st.fractions(Fraction(-9, 10), Fraction(9, 10), max_denominator=20))
def test_depth_one_matches_mpmath_polylog(s, x):
    ball = eval_polylog(Index((s,), ()), D, x, prec=96)
    with mpmath.workdps(40):
        ref = mpmath.polylog(s, mpmath.mpf(x.numerator) / x.denominator)
    assert ball.contains(ref)


@pytest.mark.parametrize("frame,point,ref", [
    (D, Fraction(1, 4), lambda: mpmath.polylog(2, mpmath.mpf(1) / 4)),
    (OMZ, Fraction(3, 2), lambda: mpmath.polylog(2, mpmath.mpf(-1) / 2)),
    (INV, 3, lambda: mpmath.log(mpmath.mpf(3) / 2)),
])
def test_frames(frame, point, ref):
    idx = Index((1,), ()) if frame == INV else Index((2,), ())
    with mpmath.workdps(40):
        assert eval_polylog(idx, frame, point, prec=96).contains(ref())


def test_values_at_one_are_two_sided():
    ball = eval_polylog(parse_index("2,1;l"), D, 1, prec=128, K=10**5)
    z3 = mpmath.zeta(3)
    assert ball.contains(2 * z3) and float(ball.rad) < 1e-5
    assert eval_polylog(parse_index("2,2;l"), D, 1, K=10**5).contains(ZETA22L)


def test_divergent_domains():
    with pytest.raises(DivergentDomain):
        eval_polylog(parse_index("1,1;l"), D, 1)
    with pytest.raises(DivergentDomain):
        eval_polylog(Index((2,), ()), D, Fraction(3, 2))
    with pytest.raises(DivergentDomain):
        eval_polylog(Index((2,), ()), INV, 0)
    with pytest.raises(DivergentDomain):
        eval_zeta(1)


def test_budget_error_when_tolerance_is_out_of_reach():
    with pytest.raises(BudgetError):
        _choose_K(Index((1,), ()), Fraction(99, 100), Fraction(1, 10**60), 256)


def test_truncation_doubles_until_tolerance():
    loose = eval_polylog(Index((2,), ()), D, Fraction(1, 2), prec=128, tol=Fraction(1, 10**6))
    tight = eval_polylog(Index((2,), ()), D, Fraction(1, 2), prec=128, tol=Fraction(1, 10**30))
    assert float(tight.rad) < 1e-29 < float(loose.rad) < 1e-6
    assert tight.overlaps(loose)


@pytest.mark.parametrize("s", [2, 3, 5, 7])
def test_zeta_is_tight(s):
    ball = eval_zeta(s, prec=128)
    with mpmath.workdps(50):
        assert ball.contains(mpmath.zeta(s))
    assert float(ball.rad) < 1e-36


def test_zeta_direct_sum_brackets():
    with mpmath.workdps(30):
        assert eval_zeta(3, K=1000).contains(mpmath.zeta(3))


@pytest.mark.parametrize("args,ref", [((0, 1, 1), VWP_011), ((1, 1, 1), VWP_111), ((0, 1, 2), VWP_012)])
def test_vwp_series(args, ref):
    ball = eval_vwp(*args, prec=128, K=10**5)
    assert ball.contains(ref)


def test_vwp_rejects_bad_sigma():
    with pytest.raises(ValueError):
        eval_vwp(0, 1, 3)


def test_nested_series_value():
    ball = eval_S_series(0, 0, 3)
    assert not ball.rigorous
    assert _close(ball, SSERIES_003, 1e-15)


def test_b_chain_depth_one_closed_form():
    # a=2, b=0, n=0: the integrand is 1, so the value is -1/z
    ball = eval_B_chain([(2, 0, 0)], 3)
    assert _close(ball, -1 / 3, 1e-12)
    assert not ball.rigorous


def test_weight_f1_k1_is_minus_log():
    x = Fraction(3, 10)
    with mpmath.workdps(40):
        assert eval_weight(WeightFamily("F1", 1), x).contains(-mpmath.log(mpmath.mpf(7) / 10))


def test_weight_f3_forms_agree():
    for k in range(2):
        a = eval_weight(WeightFamily("F3", k), Fraction(1, 2), form="sum")
        b = eval_weight(WeightFamily("F3", k), Fraction(1, 2))
        assert a.overlaps(b)


def test_weight_f3_k0_is_zeta2_minus_dilog():
    x = Fraction(2, 5)
    ref = mpmath.zeta(2) - mpmath.polylog(2, mpmath.mpf(2) / 5)
    assert _close(eval_weight(WeightFamily("F3", 0), x, form="sum"), ref, 1e-14)


def test_weight_family_validation():
    with pytest.raises(ValueError):
        WeightFamily("F4", 1)
    with pytest.raises(ValueError):
        WeightFamily("F1", 0)


def test_polylog_float_agrees_with_balls():
    idx = parse_index("2,1;s")
    assert math.isclose(polylog_float(idx, 0.9), float(eval_polylog(idx, D, Fraction(9, 10)).mid), rel_tol=1e-12)


def test_f2_weight_moment_defect_is_zeta_two():
    # the closed-form F2(1) weight misses a constant zeta(2): its moments are off by zeta(2)/(m+1);
    # the quadrature stops at 1 - 1e-7, which costs about 1e-5
    defects = weight_moment_defect(WeightFamily("F2", 1), moments=2)
    z2 = math.pi ** 2 / 6
    assert defects == pytest.approx([z2, z2 / 2], abs=1e-4)


def test_f1_k1_weight_moments_vanish():
    assert max(abs(d) for d in weight_moment_defect(WeightFamily("F1", 1), moments=2)) < 1e-5


def test_stieltjes_holds_for_r_zero_and_misses_for_r_one():
    from mzvpade.numerics import stieltjes_check
    from mzvpade.pade import solve_p

    for case in ((0, 0), (0, 1)):
        assert stieltjes_check(solve_p(*case), 3).difference < 1e-6
    # closed-form weights drop constants of integration once r >= 1
    assert stieltjes_check(solve_p(1, 1), 3).difference > 0.1

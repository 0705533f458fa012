"""Numerical evaluation: extended polylogarithms and their values at 1, zeta
values, the very-well-poised series, the nested Pochhammer series, operator
chains by quadrature, and the weight-function identities.

Rigorous results come from interval arithmetic (|x| < 1) or from float sums
with explicit rounding-error bounds and certified two-sided tails (x = 1).
Quadrature results are flagged heuristic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import mpmath
import numpy as np
from mpmath import bernfrac as mpbern
from mpmath import iv
from scipy import integrate

from .coeffs import SERIES_PRINTED, s_series_laurent, tail_bound
from .exact_core import DEFAULT_PREC, BallReal, _exact_iv, _ivprec, _up, as_rational
from .words import (
    EMPTY,
    L,
    ArgFrame,
    Index,
    idx_one_twos_l,
    idx_ones_even,
    idx_ones_sl,
    idx_two_ones_sl,
    idx_twos_l,
)

DEFAULT_KMAX = 10**5
KMAX_LIMIT = 10**7
_U = Fraction(1, 2**53)  # unit roundoff of float64


class DivergentDomain(ValueError):
    """The series does not converge at the requested argument."""


class BudgetError(RuntimeError):
    """The requested accuracy needs more terms than allowed."""


def effective_argument(frame: ArgFrame, point) -> Fraction:
    z = as_rational(point)
    frame = ArgFrame(frame)
    if frame == ArgFrame.DIRECT:
        return z
    if frame == ArgFrame.INVERSE:
        if z == 0:
            raise DivergentDomain("1/z at z = 0")
        return 1 / z
    return 1 - z


# --------------------------------------------------------------------------
# extended polylogarithms


def eval_polylog(idx: Index, frame: ArgFrame, point, prec: int = DEFAULT_PREC,
                 K: int | None = None, tol=None) -> BallReal:
    """Rigorous ball for Li_idx at the frame argument of ``point``.

    For |x| < 1 the truncation K is chosen so that the certified tail is at
    most ``tol`` (default 2^-prec) unless K is given. At x = 1 (b_1 >= 2) the
    sum runs to K (default 10^5) with a two-sided certified tail.
    """
    x = effective_argument(frame, point)
    if idx.depth == 0:
        if x == 1:
            raise DivergentDomain("empty index at x = 1")
        return BallReal.exact(1 / (1 - x), prec)
    if abs(x) > 1 or (x == -1):
        raise DivergentDomain(f"|x| = {abs(x)} >= 1")
    if x == 1:
        if idx.b[0] < 2:
            raise DivergentDomain("leading exponent 1 at x = 1")
        return _eval_at_one(idx, K or DEFAULT_KMAX, prec)
    if x == 0:
        return BallReal.exact(0, prec)
    return _eval_inside(idx, x, prec, K, tol)


def _choose_K(idx: Index, ax: Fraction, tol: Fraction, kmax: int) -> tuple[int, Fraction]:
    K = 16
    while True:
        try:
            t = tail_bound(idx, K, ax)
            if t <= tol:
                return K, t
        except ValueError:
            pass
        if K >= kmax:
            raise BudgetError(f"tail above {float(tol):.3g} at K = {K}")
        K = min(2 * K, kmax)


def _eval_inside(idx: Index, x: Fraction, prec: int, K, tol) -> BallReal:
    ax = abs(x)
    if K is None:
        tol = Fraction(1, 2**prec) if tol is None else as_rational(tol)
        K, tail = _choose_K(idx, ax, tol, KMAX_LIMIT)
    else:
        tail = tail_bound(idx, K, ax)
    work = prec + 20
    with _ivprec(work):
        c = _dp_interval(idx, K)
        xi = _exact_iv(x)
        total = iv.mpf(0)
        power = iv.mpf(1)
        for k in range(1, K + 1):
            power = power * xi
            total += c[k] * power
        extra = _up(_exact_iv(tail))
    return BallReal._from_iv(total, extra, True, prec)


def _dp_interval(idx: Index, K: int):
    """Interval coefficients c_1..c_K (index 0 unused)."""
    p = idx.depth
    ks = [None] + [iv.mpf(k) for k in range(1, K + 1)]
    f = [iv.mpf(0)] + [1 / ks[k] ** idx.b[p - 1] for k in range(1, K + 1)]
    for j in range(p - 2, -1, -1):
        prefix = [iv.mpf(0)] * (K + 1)
        acc = iv.mpf(0)
        for k in range(1, K + 1):
            acc = acc + f[k]
            prefix[k] = acc
        large = idx.a[j] == L
        bj = idx.b[j]
        f = [iv.mpf(0)] + [
            (prefix[k] if large else prefix[k - 1]) / ks[k] ** bj for k in range(1, K + 1)
        ]
    return f


def _dp_float(idx: Index, K: int) -> tuple[np.ndarray, list[float]]:
    """Float coefficients c_0..c_K and the level partial sums S_j(K), j = 2..p.

    Every entry is positive; each carries relative rounding error at most
    (depth + 1)(K + weight + 4) u, the usual bound for recursive summation of
    positive terms plus one rounding per product or quotient.
    """
    p = idx.depth
    k = np.arange(1, K + 1, dtype=np.float64)

    def inv_power(b: int) -> np.ndarray:
        out = np.ones_like(k)
        for _ in range(b):
            out = out * k
        return 1.0 / out

    f = inv_power(idx.b[p - 1])
    level_sums: list[float] = []
    for j in range(p - 2, -1, -1):
        prefix = np.cumsum(f)
        level_sums.append(float(prefix[-1]))
        shifted = prefix if idx.a[j] == L else np.concatenate(([0.0], prefix[:-1]))
        f = shifted * inv_power(idx.b[j])
    level_sums.reverse()  # S_2(K), ..., S_p(K)
    return np.concatenate(([0.0], f)), level_sums


def float_error_factor(idx: Index, K: int) -> Fraction:
    return 2 * (idx.depth + 1) * (K + idx.weight + 4) * _U


def _shift(poly: list[Fraction], eps: Fraction) -> list[Fraction]:
    """Coefficients of P(s + eps)."""
    out = [Fraction(0)] * len(poly)
    for i, c in enumerate(poly):
        for m in range(i + 1):
            out[m] += c * math.comb(i, m) * eps ** (i - m)
    return out


def _laplace(poly: list[Fraction], beta: int) -> Fraction:
    """int_0^inf e^(-beta s) P(s) ds."""
    return sum((c * factorial(i) / Fraction(beta) ** (i + 1) for i, c in enumerate(poly)), Fraction(0))


def tail_enclosure_at_one(idx: Index, K: int, level_upper: Sequence[Fraction],
                          level_lower_2: Fraction) -> tuple[Fraction, Fraction]:
    """Certified [lo, hi] for sum_{k>K} c_k at x = 1.

    ``level_upper[j]`` bounds S_{j+2}(K) from above and ``level_lower_2``
    bounds S_2(K) from below. For k >= K each S_j(k) is bounded by a polynomial
    in s = log(k/K) with nonnegative coefficients, built from the innermost
    level outward by integral comparison with the shift s -> s + 1/K. The lower
    bound uses S_2(k) >= S_2(K).
    """
    b1 = idx.b[0]
    if b1 < 2:
        raise DivergentDomain("leading exponent 1 at x = 1")
    eps = Fraction(1, K)
    Kf = Fraction(K)
    p = idx.depth
    poly = [Fraction(1)]
    for j in range(p - 1, 0, -1):  # levels p..2 (0-based exponent index j)
        bj = idx.b[j]
        base = level_upper[j - 1]
        shifted = _shift(poly, eps) if j < p - 1 else None
        if j == p - 1:
            growth = [Fraction(0), Fraction(1)] if bj == 1 else [Kf ** (1 - bj) / (bj - 1)]
        elif bj == 1:
            growth = [Fraction(0)] + [c / (i + 1) for i, c in enumerate(shifted)]
            # integral from 0 to L of P(s + eps) ds, as a polynomial in L
        else:
            growth = [Kf ** (1 - bj) * _laplace(shifted, bj - 1)]
        poly = [base + growth[0]] + growth[1:]
    beta = b1 - 1
    hi = Kf ** (-beta) * _laplace(_shift(poly, eps), beta)
    s2 = level_lower_2 if p > 1 else Fraction(1)
    lo = s2 * Fraction(K + 1) ** (-beta) / beta
    return lo, hi


def _eval_at_one(idx: Index, K: int, prec: int) -> BallReal:
    if K > KMAX_LIMIT:
        raise BudgetError(f"K = {K} exceeds {KMAX_LIMIT}")
    c, sums = _dp_float(idx, K)
    delta = float_error_factor(idx, K)
    partial = Fraction(math.fsum(c))
    upper = [Fraction(s) * (1 + delta) for s in sums]
    lower2 = Fraction(sums[0]) * (1 - delta) if sums else Fraction(1)
    lo_t, hi_t = tail_enclosure_at_one(idx, K, upper, lower2)
    lo = partial * (1 - delta) + lo_t
    hi = partial * (1 + delta) + hi_t
    return BallReal.from_bounds(lo, hi, True, prec)


@lru_cache(maxsize=64)
def _float_coeffs(idx: Index, K: int) -> np.ndarray:
    return _dp_float(idx, K)[0]


def polylog_float(idx: Index, x: float, kmax: int = 1 << 23) -> float:
    """Float value of Li_idx(x) for |x| < 1 (no error bound; quadrature helper).

    The truncation is rounded up to a power of two so coefficient tables are
    shared between nearby arguments.
    """
    if idx.depth == 0:
        return 1.0 / (1.0 - x)
    if x == 0.0:
        return 0.0
    need = 45.0 / -math.log(abs(x)) + 40
    K = min(kmax, 1 << max(6, math.ceil(math.log2(need))))
    c = _float_coeffs(idx, K)
    k = np.arange(K + 1, dtype=np.float64)
    return float(np.dot(c, np.exp(k * math.log(abs(x))) * (np.sign(x) ** k if x < 0 else 1.0)))


# --------------------------------------------------------------------------
# zeta values and the very-well-poised series


def eval_zeta(s: int, prec: int = DEFAULT_PREC, K: int | None = None) -> BallReal:
    """zeta(s) as a rigorous ball.

    With ``K`` given: direct float sum to K plus the integral-comparison tail
    [1/((s-1)(K+1)^(s-1)), 1/((s-1)K^(s-1))]. Without: an interval sum of the
    first N terms plus the Euler-Maclaurin tail, whose remainder for the
    completely monotone k^-s is bounded by the first omitted term.
    """
    if s < 2:
        raise DivergentDomain("zeta(s) needs s >= 2")
    if K is not None:
        return _zeta_direct(s, prec, K)
    work = prec + 20
    N = max(16, prec // 4)
    with _ivprec(work):
        total = iv.mpf(0)
        for k in range(1, N):
            total += 1 / iv.mpf(k) ** s
        Ni = iv.mpf(N)
        total += Ni ** (1 - s) / (s - 1) + Ni ** (-s) / 2
        rising = Fraction(s)  # s (s+1) ... (s + 2j - 2)
        j = 1
        while True:
            term = _exact_iv(Fraction(*mpbern(2 * j)) / factorial(2 * j) * rising) * Ni ** (-s - 2 * j + 1)
            nxt = rising * (s + 2 * j - 1) * (s + 2 * j)
            bound = abs(_exact_iv(Fraction(*mpbern(2 * j + 2)) / factorial(2 * j + 2) * nxt) * Ni ** (-s - 2 * j - 1))
            total += term
            if _up(bound) < mpmath.ldexp(1, -(prec + 8)) or j > 200:
                break
            rising = nxt
            j += 1
        rem = _up(bound)
    return BallReal._from_iv(total, rem, True, prec)


def _zeta_direct(s: int, prec: int, K: int) -> BallReal:
    k = np.arange(1, K + 1, dtype=np.float64)
    den = np.ones_like(k)
    for _ in range(s):
        den = den * k
    partial = Fraction(math.fsum(1.0 / den))
    delta = (s + 3) * _U
    lo = partial * (1 - delta) + Fraction(1, (s - 1) * (K + 1) ** (s - 1))
    hi = partial * (1 + delta) + Fraction(1, (s - 1) * K ** (s - 1))
    return BallReal.from_bounds(lo, hi, True, prec)


def vwp_exponent(r: int, n: int, sigma: int) -> int:
    return (n + 1) * (2 * r + 4) - 2 * sigma * n - 1


def vwp_terms(r: int, n: int, sigma: int, K: int) -> np.ndarray:
    """Float terms k = 1..K, computed by interleaving numerator and
    denominator factors to stay in range."""
    k = np.arange(1, K + 1, dtype=np.float64)
    t = k + n / 2.0
    num = [k - i for i in range(1, sigma * n + 1)] + [k + n + i for i in range(1, sigma * n + 1)]
    den = [k + i for i in range(n + 1)] * (2 * r + 4)
    for i in range(max(len(num), len(den))):
        if i < len(num):
            t = t * num[i]
        if i < len(den):
            t = t / den[i]
    return t


def eval_vwp(r: int, n: int, sigma: int = 1, prec: int = DEFAULT_PREC,
             K: int = DEFAULT_KMAX) -> BallReal:
    """sum_{k>=1} (k + n/2) (k - sigma n)_{sigma n} (k + n + 1)_{sigma n} / ((k)_{n+1})^(2r+4)."""
    if r < 0 or n < 0 or not 1 <= sigma <= r + 2:
        raise ValueError("need r, n >= 0 and 1 <= sigma <= r+2")
    if K <= sigma * n:
        raise ValueError("K must exceed sigma*n")
    terms = vwp_terms(r, n, sigma, K)
    terms[: sigma * n] = 0.0  # exact zeros
    partial = Fraction(math.fsum(terms))
    ops = 2 * sigma * n + (n + 1) * (2 * r + 4) + 3
    delta = 2 * ops * _U
    E = vwp_exponent(r, n, sigma)
    M = (1 + Fraction(n, 2 * K)) * (1 + Fraction(n + sigma * n, K)) ** (sigma * n)
    tail = M * Fraction(K) ** (1 - E) / (E - 1)
    lo = partial * (1 - delta)
    hi = partial * (1 + delta) + tail
    return BallReal.from_bounds(lo, hi, True, prec)


# --------------------------------------------------------------------------
# nested Pochhammer series


def eval_S_series(r: int, n: int, z, prec: int = DEFAULT_PREC, K: int = 60,
                  variant: str = SERIES_PRINTED) -> BallReal:
    """Value of the nested Pochhammer series at a rational |z| >= 2.

    Exact partial sum through z^-(K + r(n+1)); the tail is estimated from the
    last coefficients as a geometric series, so the ball is heuristic.
    """
    z = as_rational(z)
    if abs(z) < 2:
        raise DivergentDomain("the series is evaluated for |z| >= 2")
    lau = s_series_laurent(r, n, K, variant)
    partial = sum((c / z ** (lau.order + i) for i, c in enumerate(lau.coeffs)), Fraction(0))
    last = max(abs(c) for c in lau.coeffs[-3:])
    q = 1 / abs(z)
    tail = 4 * last * q ** (lau.last + 1) / (1 - q)
    return BallReal.from_mid_rad(partial, tail, rigorous=False, prec=prec)


# --------------------------------------------------------------------------
# operator chains by quadrature


def _chain_value(chain: Sequence[tuple[int, int, int]], z: float, epsabs: float) -> float:
    if not chain:
        return 1.0
    (a, b, n), rest = chain[0], chain[1:]
    e = a + b - n - 2

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        inner = _chain_value(rest, z / u, epsabs) if rest else 1.0
        return u ** e * (1.0 - u) ** n / (u - z) ** b * inner

    val, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=epsabs, epsrel=1e-11, limit=200)
    return (-1) ** (n + 1) * z ** (n + 1 - a) * val


def eval_B_chain(chain: Sequence[tuple[int, int, int]], z, prec: int = 64,
                 epsabs: float = 1e-13) -> BallReal:
    """B^{n1+1}_{a1,b1} ... B^{np+1}_{ap,bp}(1) at a real point outside [0, 1]
    (or at 1 when the outermost step has b <= n), by nested adaptive quadrature.
    """
    chain = [tuple(int(v) for v in step) for step in chain]
    if not 1 <= len(chain) <= 3:
        raise ValueError("chain depth must be 1..3")
    zr = as_rational(z)
    if 0 <= zr < 1 or (zr == 1 and chain[0][1] > chain[0][2]):
        raise DivergentDomain("z must lie outside [0, 1] (z = 1 needs b <= n outermost)")
    omega = 0
    for a, b, n in reversed(chain):
        omega += a + b - n - 1
        if omega < 1:
            raise ValueError("order hypothesis fails along the chain")
    val = _chain_value(chain, float(zr), epsabs)
    # heuristic: quadrature tolerance, amplified by the nesting depth
    rad = 100 * len(chain) * max(epsabs, abs(val) * 1e-11)
    return BallReal.from_mid_rad(Fraction(val), Fraction(rad), rigorous=False, prec=prec)


# --------------------------------------------------------------------------
# weight functions


WEIGHT_FAMILIES = ("F1", "F2", "F3")


@dataclass(frozen=True)
class WeightFamily:
    family: str
    k: int

    def __post_init__(self):
        if self.family not in WEIGHT_FAMILIES:
            raise ValueError(f"family must be one of {WEIGHT_FAMILIES}")
        if self.k < (1 if self.family == "F1" else 0):
            raise ValueError("k out of range")


def _unit_or(idx: Index, x, prec, tol):
    """Li_idx(x), with the empty index read as 1 (the product convention)."""
    if idx.depth == 0:
        return BallReal.exact(1, prec)
    return eval_polylog(idx, ArgFrame.DIRECT, x, prec=prec, tol=tol)


def eval_weight(fam: WeightFamily, x, prec: int = DEFAULT_PREC, form: str = "alternative",
                tol=Fraction(1, 10**14), K_one: int = 10**6) -> BallReal:
    """Weight function of one of the three families at x in (0, 1).

    F1: omega of {1}_{2k} with {ls}_{k-1} l equals Li_{{1}_{2k-1}}^{{sl}_{k-1}}(x).
    F2: omega of {1}_{2k+1} with {sl}_k equals Li_{{1}_{2k}}^{{ls}_{k-1} l}(x).
    F3: omega of 2{1}_{2k+1} with {ls}_k l, either as the finite sum over
    products of values at 1-x and x (``form="sum"``) or as
    -Li_{2{1}_{2k}}^{{sl}_k}(x) + Li_{{2}_{k+1}}^{{l}_k}(1) (``form="alternative"``).
    """
    x = as_rational(x)
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    k = fam.k
    if fam.family == "F1":
        return _unit_or(idx_ones_sl(k - 1), x, prec, tol)
    if fam.family == "F2":
        return _unit_or(idx_ones_even(k), x, prec, tol)
    if form == "alternative":
        head = eval_polylog(idx_two_ones_sl(k), ArgFrame.DIRECT, x, prec=prec, tol=tol)
        const = eval_polylog(idx_twos_l(k), ArgFrame.DIRECT, 1, prec=prec, K=K_one)
        return const - head
    if form != "sum":
        raise ValueError("form must be 'sum' or 'alternative'")
    y = 1 - x
    total = BallReal.exact(0, prec)
    for j in range(k + 1):
        total = total + _unit_or(idx_one_twos_l(j), y, prec, tol) * _unit_or(idx_ones_sl(k - j), x, prec, tol)
    for j in range(1, k + 2):
        total = total + _unit_or(idx_twos_l(j - 1), y, prec, tol) * _unit_or(idx_ones_even(k - j + 1), x, prec, tol)
    return total


# --------------------------------------------------------------------------
# the function P_{r,n} and the Stieltjes identity


def p_value(solP, x, form: str = "weight", prec: int = DEFAULT_PREC, tol=Fraction(1, 10**14),
            f3_form: str = "alternative") -> BallReal:
    """P_{r,n}(x) for x in (0, 1): ``weight`` replaces each polylogarithm of
    S_{r,n} by its weight (F3 in the form ``f3_form``); ``grouped`` uses the
    U_j / V_j grouping."""
    x = as_rational(x)
    r = solP.r
    zero = BallReal.exact(0, prec)
    total = zero
    if form == "weight":
        for rho in range(r + 1):
            total = total + BallReal.exact(solP.A[rho](x), prec) * eval_weight(WeightFamily("F3", rho), x, prec, form=f3_form, tol=tol)
            total = total + BallReal.exact(solP.B[rho](x), prec) * eval_weight(WeightFamily("F1", rho + 1), x, prec, tol=tol)
            total = total + BallReal.exact(solP.C[rho](x), prec) * eval_weight(WeightFamily("F2", rho), x, prec, tol=tol)
        return total
    if form != "grouped":
        raise ValueError("form must be 'weight' or 'grouped'")
    y = 1 - x
    for j in range(r + 1):
        U = BallReal.exact(solP.B[j](x), prec)
        V = BallReal.exact(solP.C[j](x), prec)
        for rho in range(j, r + 1):
            a = BallReal.exact(solP.A[rho](x), prec)
            U = U + a * _unit_or(idx_one_twos_l(rho - j), y, prec, tol)
            V = V + a * _unit_or(idx_twos_l(rho - j), y, prec, tol)
        total = total + U * _unit_or(idx_ones_sl(j), x, prec, tol) + V * _unit_or(idx_ones_even(j), x, prec, tol)
    return total


def p_value_float(solP, x: float, zeta_twos: Sequence[float]) -> float:
    """Float P_{r,n}(x) in the weight form; ``zeta_twos[k]`` = Li_{{2}_{k+1}}^{{l}_k}(1)."""
    total = 0.0
    for rho in range(solP.r + 1):
        a = float(solP.A[rho](Fraction(x)))
        b = float(solP.B[rho](Fraction(x)))
        c = float(solP.C[rho](Fraction(x)))
        w3 = zeta_twos[rho] - polylog_float(idx_two_ones_sl(rho), x)
        w1 = polylog_float(idx_ones_sl(rho), x) if b else 0.0
        w2 = polylog_float(idx_ones_even(rho), x) if (c and rho) else (1.0 if c else 0.0)
        total += a * w3 + b * w1 + c * w2
    return total


@dataclass(frozen=True)
class StieltjesReport:
    lhs: BallReal
    rhs: BallReal

    @property
    def difference(self) -> float:
        return abs(float(self.lhs.mid) - float(self.rhs.mid))


def stieltjes_check(solP, z, prec: int = 64, cutoff: float = 1e-5) -> StieltjesReport:
    """lhs: S_{r,n}(z) from the polylogarithm combination; rhs: quadrature of
    P_{r,n}(x)/(z - x) over [0, 1 - cutoff] with geometric grading at both
    ends. P = O((1-x)^{n+1} log^{2r+1}) makes the discarded piece tiny; its
    size is estimated and added to the heuristic radius."""
    from .calculus import expr_eval, s_expression

    zr = as_rational(z)
    if 0 <= zr <= 1:
        raise DivergentDomain("z must lie outside [0, 1]")
    lhs = expr_eval(s_expression(solP), zr, prec)
    zeta_twos = [float(eval_polylog(idx_twos_l(k), ArgFrame.DIRECT, 1, K=10**6).mid) for k in range(solP.r + 1)]
    zf = float(zr)
    f = lambda x: p_value_float(solP, x, zeta_twos) / (zf - x)
    top = 1.0 - cutoff
    breaks = [0.0, 1e-6, 1e-4, 1e-2, 0.1, 0.5, 0.9, 0.99, 0.999, 0.9999, top]
    breaks = sorted({b for b in breaks if b <= top})
    total, err = 0.0, 0.0
    for lo, hi in zip(breaks, breaks[1:]):
        v, e = integrate.quad(f, lo, hi, epsabs=1e-13, epsrel=1e-11, limit=200)
        total += v
        err += e
    edge = abs(f(top)) * cutoff
    rhs = BallReal.from_mid_rad(Fraction(total), Fraction(err + edge), rigorous=False, prec=prec)
    return StieltjesReport(lhs, rhs)


def weight_moment_defect(fam: WeightFamily, moments: int = 3) -> list[float]:
    """Differences int_0^1 x^m w(x) dx - c_{m+1}, m < ``moments``, where w is
    the closed-form weight and c the Taylor coefficients of the polylogarithm
    it should represent. A valid weight gives zeros (up to quadrature error)."""
    from .coeffs import taylor
    from .words import idx_two_ones_ls, ones

    k = fam.k
    if fam.family == "F1":
        target = ones(2 * k, ("l", "s") * (k - 1) + ("l",))
    elif fam.family == "F2":
        target = ones(2 * k + 1, ("s", "l") * k)
    else:
        target = idx_two_ones_ls(k)
    c = taylor(target, moments + 1).c
    const = float(eval_polylog(idx_twos_l(k), ArgFrame.DIRECT, 1, K=10**6).mid) if fam.family == "F3" else 0.0

    def w(x: float) -> float:
        if fam.family == "F1":
            return polylog_float(idx_ones_sl(k - 1), x) if k > 1 else -math.log1p(-x)
        if fam.family == "F2":
            return polylog_float(idx_ones_even(k), x) if k else 1.0
        return const - polylog_float(idx_two_ones_sl(k), x)

    breaks = [0.0, 1e-4, 0.1, 0.5, 0.9, 0.99, 0.999, 0.9999, 1.0 - 1e-7]
    out = []
    for m in range(moments):
        total = sum(integrate.quad(lambda x: x**m * w(x), a, b, limit=200)[0] for a, b in zip(breaks, breaks[1:]))
        out.append(total - float(c[m + 1]))
    return out

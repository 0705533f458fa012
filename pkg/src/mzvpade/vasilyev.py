"""Vasilyev integrals J_{2r+3,n} by three routes.

Route A: the normalized Pade solution, its Laurent scalar against the
integral, and the values of its polylogarithms at 1 as zeta values. It gives
J exactly as a rational combination of 1, zeta(3), ..., zeta(2r+3).
Route B: the very-well-poised series.
Route C: randomized quasi Monte Carlo over the unit cube (heuristic).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.stats import qmc

from .coeffs import b_chain_laurent, integral_laurent, s_chain
from .exact_core import DEFAULT_PREC, BallReal, rat_to_str
from .numerics import eval_vwp, eval_zeta
from .pade import laurent_scalar, solve_p, vasilyev_combination

QMC_POINTS = 2**20
QMC_RANDOMIZATIONS = 16
DESK_BUDGET = (2, 3)  # largest r and n handled by default


class BudgetExceeded(RuntimeError):
    pass


def _check_case(r: int, n: int, sigma: int, allow_large: bool) -> None:
    if r < 0 or n < 0:
        raise ValueError("r and n must be nonnegative")
    if not 1 <= sigma <= r + 2:
        raise ValueError("sigma must lie in [1, r+2]")
    if not allow_large and (r > DESK_BUDGET[0] or n > DESK_BUDGET[1]):
        raise BudgetExceeded(f"(r, n) = ({r}, {n}) is beyond r <= {DESK_BUDGET[0]}, n <= {DESK_BUDGET[1]}")


# --------------------------------------------------------------------------
# the nested denominator


def q_d(xs):
    """Q_1 = 1 - x_1, Q_d = 1 - Q_{d-1} x_d. Works on numbers or numpy arrays."""
    q = 1 - xs[0]
    for x in xs[1:]:
        q = 1 - q * x
    return q


def q_d_expanded(xs):
    """The same polynomial written out: sum_{j=0}^{d} (-1)^j x_{d-j+1} ... x_d."""
    total = 1
    prod = 1
    sign = 1
    for x in reversed(xs):
        prod = prod * x
        sign = -sign
        total = total + sign * prod
    return total


def vasilyev_integrand(x: np.ndarray, n: int, sigma: int = 1) -> np.ndarray:
    """prod x_j^{sigma n} (1 - x_j)^n / Q_d^{sigma n + 1} on rows of ``x``."""
    cols = [x[:, j] for j in range(x.shape[1])]
    num = np.prod(x ** (sigma * n) * (1.0 - x) ** n, axis=1)
    return num / q_d(cols) ** (sigma * n + 1)


@dataclass(frozen=True)
class QMCEstimate:
    mean: float
    stderr: float
    points: int
    randomizations: int
    seed: int

    def to_json(self) -> dict:
        return {
            "mean": repr(self.mean),
            "stderr": repr(self.stderr),
            "points": self.points,
            "randomizations": self.randomizations,
            "seed": self.seed,
            "rigor": "heuristic",
        }


def qmc_integral(d: int, n: int, sigma: int, seed: int, points: int = QMC_POINTS,
                 randomizations: int = QMC_RANDOMIZATIONS, chunk: int = 1 << 16) -> QMCEstimate:
    """Scrambled Sobol estimate of the unit-cube integral; the standard error
    comes from independent scramblings."""
    if seed is None:
        raise ValueError("a seed is required for the QMC route")
    per = max(points // randomizations, 2)
    m = int(math.log2(per))
    per = 1 << m
    streams = np.random.SeedSequence(seed).spawn(randomizations)
    means = []
    for ss in streams:
        sampler = qmc.Sobol(d=d, scramble=True, seed=np.random.default_rng(ss))
        total, done = 0.0, 0
        while done < per:
            take = min(chunk, per - done)
            pts = sampler.random(take)
            total += float(np.sum(vasilyev_integrand(pts, n, sigma)))
            done += take
        means.append(total / per)
    means = np.array(means)
    stderr = float(np.std(means, ddof=1) / math.sqrt(randomizations))
    return QMCEstimate(float(np.mean(means)), stderr, per * randomizations, randomizations, seed)


# --------------------------------------------------------------------------
# route A


@dataclass(frozen=True)
class ZetaCombination:
    """constant + sum_k coeffs[k] * zeta(2k + 3)."""

    constant: Fraction
    coeffs: tuple[Fraction, ...]

    def value(self, prec: int = DEFAULT_PREC) -> BallReal:
        total = BallReal.exact(self.constant, prec)
        for k, c in enumerate(self.coeffs):
            if c:
                total = total + BallReal.exact(c, prec) * eval_zeta(2 * k + 3, prec)
        return total

    def to_json(self) -> dict:
        return {
            "constant": rat_to_str(self.constant),
            "zeta": {str(2 * k + 3): rat_to_str(c) for k, c in enumerate(self.coeffs)},
        }

    def __str__(self) -> str:
        parts = [str(self.constant)] + [f"({c})*zeta({2 * k + 3})" for k, c in enumerate(self.coeffs)]
        return " + ".join(parts)


def route_a(r: int, n: int, laurent_K: int = 12):
    """Exact rational certificate for J_{2r+3,n} and the Laurent scalar."""
    sol = solve_p(r, n)
    c, ok = laurent_scalar(sol, laurent_K)
    if not ok:
        raise ArithmeticError(f"Pade solution not proportional to the integral at (r, n) = ({r}, {n})")
    data = vasilyev_combination(sol)
    factor = data.n_parity_sign * c
    combo = ZetaCombination(factor * data.qD, tuple(2 * factor * q for q in data.q))
    return combo, c, data


# --------------------------------------------------------------------------
# reports


@dataclass
class JReport:
    r: int
    n: int
    sigma: int
    combination: ZetaCombination
    laurent_scalar: Fraction
    pade_value: BallReal
    vwp_value: BallReal
    ratio: BallReal
    expected_ratio: Fraction  # ratio_law(r, n)
    mc_value: QMCEstimate | None = None
    config: dict = field(default_factory=dict)

    @property
    def ab_pass(self) -> bool:
        """Route A equals expected_ratio times route B within the combined radii."""
        diff = self.pade_value - BallReal.exact(self.expected_ratio) * self.vwp_value
        return diff.contains(0)

    @property
    def mc_pass(self) -> bool | None:
        if self.mc_value is None:
            return None
        gap = abs(float(self.pade_value.mid) - self.mc_value.mean)
        return gap <= 3 * self.mc_value.stderr + float(self.pade_value.rad)

    def to_json(self) -> dict:
        out = {
            "case": {"d": 2 * self.r + 3, "r": self.r, "n": self.n, "sigma": self.sigma},
            "combination": self.combination.to_json(),
            "laurent_scalar": rat_to_str(self.laurent_scalar),
            "pade_value": self.pade_value.to_json(),
            "vwp_value": self.vwp_value.to_json(),
            "ratio": self.ratio.to_json(),
            "expected_ratio": rat_to_str(self.expected_ratio),
            "pass": {"routes_a_b": self.ab_pass, "route_c": self.mc_pass},
            "config": self.config,
        }
        out["mc_value"] = self.mc_value.to_json() if self.mc_value else None
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def ratio_law(r: int, n: int, sigma: int = 1) -> Fraction:
    """Measured constant between the cube integral and the VWP sum:
    2 (n!)^(2r+4) / ((sigma n)!)^2. It equals 2 when n <= 1 and sigma = 1."""
    return Fraction(2 * math.factorial(n) ** (2 * r + 4), math.factorial(sigma * n) ** 2)


def compute_J(r: int, n: int, *, prec: int = DEFAULT_PREC, kmax: int = 10**5, mc: bool = False,
              seed: int | None = None, points: int = QMC_POINTS, allow_large: bool = False) -> JReport:
    """J_{2r+3,n} by routes A and B (and C when ``mc``)."""
    _check_case(r, n, 1, allow_large)
    combo, c, _ = route_a(r, n)
    a_val = combo.value(prec)
    b_val = eval_vwp(r, n, 1, prec, kmax)
    mc_val = qmc_integral(2 * r + 3, n, 1, seed, points) if mc else None
    config = {"prec": prec, "kmax": kmax, "mc": mc, "seed": seed,
              "qmc_points": points if mc else None, "laurent_K": 12}
    return JReport(r, n, 1, combo, c, a_val, b_val, a_val / b_val, ratio_law(r, n), mc_val, config)


@dataclass
class SigmaReport:
    r: int
    n: int
    sigma: int
    laurent_order: int
    laurent_coeffs: tuple[Fraction, ...]
    chain_agrees: bool
    series_value: BallReal  # (-1)^{sigma n + 1} times the VWP sum
    mc_value: QMCEstimate | None
    config: dict = field(default_factory=dict)

    @property
    def sign(self) -> int:
        return (-1) ** (self.sigma * self.n + 1)

    @property
    def integral_value(self) -> float | None:
        """S_{r,n,sigma}(1) from the cube integral: sign times the QMC mean."""
        return None if self.mc_value is None else self.sign * self.mc_value.mean

    @property
    def ratio(self) -> float | None:
        if self.mc_value is None:
            return None
        return self.integral_value / float(self.series_value.mid)

    @property
    def expected_ratio(self) -> Fraction:
        return ratio_law(self.r, self.n, self.sigma)

    @property
    def mc_pass(self) -> bool | None:
        """QMC integral within 3 standard errors of the rescaled series."""
        if self.mc_value is None:
            return None
        target = float(self.expected_ratio) * float(self.series_value.mid)
        return abs(self.integral_value - target) <= 3 * self.mc_value.stderr + float(self.series_value.rad)

    def to_json(self) -> dict:
        return {
            "case": {"r": self.r, "n": self.n, "sigma": self.sigma},
            "expected_ratio": rat_to_str(self.expected_ratio),
            "mc_pass": self.mc_pass,
            "laurent": {"order": self.laurent_order, "coeffs": [rat_to_str(x) for x in self.laurent_coeffs]},
            "chain_agrees": self.chain_agrees,
            "series_value": self.series_value.to_json(),
            "mc_value": self.mc_value.to_json() if self.mc_value else None,
            "integral_value": None if self.integral_value is None else repr(self.integral_value),
            "ratio": None if self.ratio is None else repr(self.ratio),
            "config": self.config,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def compute_S_sigma(r: int, n: int, sigma: int, *, K: int = 8, prec: int = DEFAULT_PREC,
                    kmax: int = 10**5, mc: bool = False, seed: int | None = None,
                    points: int = QMC_POINTS, allow_large: bool = False) -> SigmaReport:
    """Exact expansion at infinity of S_{r,n,sigma}, checked against the operator
    chain, and its value at 1 by the series and (optionally) by QMC."""
    _check_case(r, n, sigma, allow_large)
    lau = integral_laurent(r, n, sigma, K)
    chain = b_chain_laurent(s_chain(r, n, sigma), K)
    agrees = all(lau.coeff(e) == chain.coeff(e) for e in range(1, max(lau.last, chain.last) + 1))
    series = BallReal.exact((-1) ** (sigma * n + 1), prec) * eval_vwp(r, n, sigma, prec, kmax)
    mc_val = qmc_integral(2 * r + 3, n, sigma, seed, points) if mc else None
    config = {"prec": prec, "kmax": kmax, "K": K, "mc": mc, "seed": seed,
              "qmc_points": points if mc else None}
    return SigmaReport(r, n, sigma, lau.order, lau.coeffs, agrees, series, mc_val, config)

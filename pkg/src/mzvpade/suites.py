"""Verification suites behind ``mzvpade verify``. One suite per acceptance
block; each returns a list of Check records with the measured discrepancy."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import b_chain_laurent, opa_chain, sorokin_laurent, swapped_chain
from .calculus import reduce_check
from .exact_core import BallReal
from .numerics import (
    WeightFamily,
    eval_B_chain,
    eval_polylog,
    eval_weight,
    eval_zeta,
    p_value,
    stieltjes_check,
)
from .pade import KernelDimensionError, laurent_scalar, required_orders, solve_p, solve_q
from .vasilyev import compute_J, ratio_law
from .words import (
    ArgFrame,
    Index,
    dual_index,
    idx_ones_sl,
    ones,
    dual_pair_ones,
    dual_pair_twos,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: str
    tolerance: str = "exact"

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "measured": self.measured, "tolerance": self.tolerance}


def _gap(ball: BallReal, target: BallReal) -> float:
    """Largest distance between points of the two balls."""
    return abs(float(ball.mid) - float(target.mid)) + float(ball.rad) + float(target.rad)


def _within(name: str, ball: BallReal, target: BallReal, tol: float) -> Check:
    g = _gap(ball, target)
    return Check(name, g <= tol, f"{g:.3e}", f"{tol:g}")


# --------------------------------------------------------------------------


def suite_orders(rmax: int = 2, nmax: int = 3, budget: float = 120.0) -> list[Check]:
    """Uniqueness, the hand anchors, and the orders measured past construction."""
    checks = []
    start = time.perf_counter()
    for r in range(rmax + 1):
        for n in range(nmax + 1):
            for kind, solve in (("P", solve_p), ("Q", solve_q)):
                try:
                    sol = solve(r, n)
                except KernelDimensionError as err:
                    checks.append(Check(f"kernel {kind}({r},{n})", False, f"dimension {err.report.dimension}", "1"))
                    continue
                checks.append(Check(f"kernel {kind}({r},{n})", True, "dimension 1", "1"))
                req = required_orders(kind, r, n)
                bad = {k: v for k, v in sol.orders.items() if v is not None and v < req[k]}
                checks.append(Check(f"orders {kind}({r},{n})", not bad, str(bad or sol.orders), "required orders"))
                if kind == "P":
                    vals = [p(1) for p in sol.B + sol.C]
                    checks.append(Check(f"B_j(1)=C_j(1)=0 ({r},{n})", not any(vals), str([str(v) for v in vals if v])))
    elapsed = time.perf_counter() - start
    checks.append(Check("kernel runtime", elapsed <= budget, f"{elapsed:.2f}s", f"{budget:g}s"))
    p00, q00 = solve_p(0, 0), solve_q(0, 0)
    checks.append(Check("anchor P(0,0)", list(p00.vector) == [1, 0, 0, 0], str([str(x) for x in p00.vector]), "(1,0,0,0)"))
    checks.append(Check("anchor Q(0,0)", list(q00.vector) == [1, 0, 0], str([str(x) for x in q00.vector]), "(1,0,0)"))
    return checks


def suite_laurent(cases=((0, 0), (0, 1), (0, 2), (1, 0), (1, 1)), K: int = 12) -> list[Check]:
    """Exact Laurent proportionality, the opa chain against the multi-expansion, the reflection z -> 1 - z of chains."""
    checks = []
    start = time.perf_counter()
    for r, n in cases:
        c, ok = laurent_scalar(solve_p(r, n), K)
        checks.append(Check(f"proportional ({r},{n})", ok, f"c = {c}"))
    if (0, 0) in cases:
        c00, _ = laurent_scalar(solve_p(0, 0), K)
        checks.append(Check("c(0,0) = -1", c00 == -1, str(c00)))
    elapsed = time.perf_counter() - start
    checks.append(Check("laurent runtime", elapsed <= 300, f"{elapsed:.2f}s", "300s"))
    for r in range(2):
        for n in range(3):
            a = b_chain_laurent(opa_chain(n, r + 1), 10)
            b = sorokin_laurent(r, n, 10)
            sign = (-1) ** (r + 1)
            ok = all(a.coeff(e) == sign * b.coeff(e) for e in range(1, max(a.last, b.last) + 1))
            checks.append(Check(f"opa chain = (-1)^(r+1) multi-expansion ({r},{n})", ok, "equal" if ok else "differs"))
    for chain in ([(1, 0, 0), (1, 1, 0)], [(2, 0, 1), (2, 2, 1)], [(1, 1, 0), (1, 1, 0)]):
        p = len(chain) + sum(s[2] for s in chain)
        lhs = eval_B_chain(chain, 3)  # 1 - z at z = -2
        rhs = BallReal.exact((-1) ** p, 64) * eval_B_chain(swapped_chain(chain), -2)
        checks.append(_within(f"reflection {chain}", lhs, rhs, 1e-6))
    return checks


def suite_reduction(rmax: int = 1, nmax: int = 2) -> list[Check]:
    checks = []
    for r in range(rmax + 1):
        for n in range(nmax + 1):
            rep = reduce_check(r, n, solve_p(r, n), solve_q(r, n))
            detail = f"scalar {rep.scalar}" if rep.match else rep.detail
            checks.append(Check(f"reduce ({r},{n})", rep.match and rep.scalar is not None, detail))
    return checks


def suite_duality(kmax: int = 8) -> list[Check]:
    checks = []
    for k in range(1, kmax + 1):
        got = dual_index(dual_pair_ones(k))
        checks.append(Check(f"dual k={k}", got == dual_pair_twos(k), str(got)))
    return checks


def suite_identities(kmax: int = 10**5, prec: int = 128) -> list[Check]:
    checks = []
    z3, z5 = eval_zeta(3, prec), eval_zeta(5, prec)
    two = BallReal.exact(2, prec)
    checks.append(_within("zeta_21^l = 2 zeta(3)", eval_polylog(dual_pair_ones(1), ArgFrame.DIRECT, 1, prec, K=kmax), two * z3, 1e-4))
    checks.append(_within("zeta_221^ll = 2 zeta(5)", eval_polylog(dual_pair_twos(2), ArgFrame.DIRECT, 1, prec, K=kmax), two * z5, 1e-3))
    checks.append(_within("zeta_2111^lsl = 2 zeta(5)", eval_polylog(dual_pair_ones(2), ArgFrame.DIRECT, 1, prec, K=kmax), two * z5, 1e-3))
    pi = BallReal.pi(prec)
    for r in range(1, 4):
        idx = Index((2,) * r, ("s",) * (r - 1))
        target = pi ** (2 * r) / BallReal.exact(math.factorial(2 * r + 1), prec)
        checks.append(_within(f"Sorokin r={r}", eval_polylog(idx, ArgFrame.DIRECT, 1, prec, K=kmax), target, 1e-3))
    log_ratio = -(BallReal.exact(Fraction(2, 3), prec).log())
    for k in range(1, 5):
        lhs = eval_polylog(ones(k, "s" * (k - 1)), ArgFrame.INVERSE, 3, prec)
        rhs = log_ratio ** k / BallReal.exact(math.factorial(k), prec)
        checks.append(_within(f"folklore k={k}", lhs, rhs, 1e-10))
    for rho in range(3):
        lhs = eval_polylog(idx_ones_sl(rho), ArgFrame.INVERSE, 3, prec)
        idx = Index((1,) + (2,) * rho, ("s",) * rho)
        rhs = BallReal.exact((-1) ** (rho + 1), prec) * eval_polylog(idx, ArgFrame.DIRECT, Fraction(1, 1 - 3), prec)
        checks.append(_within(f"1/z to 1/(1-z) rho={rho}", lhs, rhs, 1e-8))
    return checks


def suite_weights(prec: int = 128) -> list[Check]:
    checks = []
    for k in range(3):
        worst = 0.0
        for i in range(1, 10):
            x = Fraction(i, 10)
            a = eval_weight(WeightFamily("F3", k), x, prec, form="sum")
            b = eval_weight(WeightFamily("F3", k), x, prec, form="alternative")
            worst = max(worst, _gap(a, b))
        checks.append(Check(f"F3 two forms k={k}", worst <= 1e-6, f"{worst:.3e}", "1e-06"))
    for r, n in ((0, 1), (1, 1), (1, 2)):
        sol = solve_p(r, n)
        for x in (Fraction(1, 2), Fraction(1, 7)):
            weight = p_value(sol, x, f3_form="sum", prec=prec)
            checks.append(_within(f"P two forms ({r},{n}) x={x}", weight, p_value(sol, x, form="grouped", prec=prec), 1e-8))
    for r, n in ((0, 0), (0, 1)):
        rep = stieltjes_check(solve_p(r, n), 3)
        checks.append(Check(f"Stieltjes ({r},{n}) z=3", rep.difference <= 1e-3, f"{rep.difference:.3e}", "0.001 (heuristic)"))
    return checks


def suite_vasilyev(rmax: int = 1, nmax: int = 2, kmax: int = 10**5, mc: bool = False, seed: int | None = None) -> list[Check]:
    checks = []
    ratios = {}
    for r in range(rmax + 1):
        for n in range(nmax + 1):
            rep = compute_J(r, n, kmax=kmax, mc=mc, seed=seed)
            certified = len(rep.combination.coeffs) == r + 1
            checks.append(Check(f"J({2 * r + 3},{n}) in Q + ... + Q zeta({2 * r + 3})", certified, str(rep.combination)))
            checks.append(Check(f"route A = {rep.expected_ratio} * route B ({r},{n})", rep.ab_pass,
                                f"ratio {float(rep.ratio.mid):.12g}", "ball radii"))
            ratios[(r, n)] = float(rep.ratio.mid)
            if mc:
                checks.append(Check(f"QMC ({r},{n})", bool(rep.mc_pass),
                                    f"{rep.mc_value.mean:.6g} +- {rep.mc_value.stderr:.2g}", "3 stderr"))
            if (r, n) == (0, 0):
                gap = _gap(rep.pade_value, BallReal.exact(2, 128) * eval_zeta(3))
                checks.append(Check("route A(0,0) = 2 zeta(3)", gap <= 1e-6, f"{gap:.3e}", "1e-06"))
                checks.append(Check("ratio(0,0) = 2", abs(ratios[(0, 0)] - 2) <= 1e-3, f"{ratios[(0, 0)]:.12g}", "0.001"))
    spread = max(ratios.values()) - min(ratios.values())
    checks.append(Check("raw ratio constant across n", spread <= 1e-2,
                        f"spread {spread:.4g}; law 2 (n!)^(2r+4)/((sigma n)!)^2", "0.01"))
    law = {k: v / float(ratio_law(*k)) for k, v in ratios.items()}
    law_ok = all(abs(v - 1) <= 1e-6 for v in law.values())
    worst = max(abs(v - 1) for v in law.values())
    checks.append(Check("ratio / ratio_law = 1", law_ok, f"max deviation {worst:.2e}", "1e-06 relative"))
    return checks


SUITES = {
    "orders": suite_orders,
    "laurent": suite_laurent,
    "reduction": suite_reduction,
    "duality": suite_duality,
    "identities": suite_identities,
    "weights": suite_weights,
    "vasilyev": suite_vasilyev,
}

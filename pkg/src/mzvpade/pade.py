"""The mixed Pade problems P_{r,n} and Q_{r,n} as exact homogeneous linear systems.

Unknown ordering for P: coefficients of A_0..A_r, then B_0..B_r, then
C_0..C_r, then D, each polynomial contributing n+1 coefficients (constant
term first). Row ordering: the condition at infinity, then U_0..U_r, then
V_0..V_r. For Q: Ahat_0..Ahat_r, Bhat_0..Bhat_r, Chat; rows: the condition
at infinity, then Qhat_0..Qhat_r.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .coeffs import Laurent, integral_laurent, taylor
from .exact_core import KernelReport, RatPoly, kernel, mat_vec, rat_to_str
from .words import (
    Index,
    idx_one_twos_l,
    idx_ones_even,
    idx_ones_ls,
    idx_ones_sl,
    idx_two_ones_ls,
    idx_twos_l,
)

NORMALIZATION = "primitive-first-positive"

# Which family multiplies A_rho in U_j and V_j: Li_{1{2}_m}^{{l}_m}(1-z) and
# Li_{{2}_{m+1}}^{{l}_m}(1-z) with m = rho - j ("weight", obtained by
# collecting the weight expansion of A_rho's polylogarithm along
# Li_{{1}_{2j+1}}(x) and Li_{{1}_{2j}}(x)), or m = r - rho ("printed").
SUBSCRIPT_WEIGHT = "rho-j"
SUBSCRIPT_PRINTED = "r-rho"
_SUBSCRIPTS = {
    SUBSCRIPT_WEIGHT: lambda r, rho, j: rho - j,
    SUBSCRIPT_PRINTED: lambda r, rho, j: r - rho,
}

# How the empty index enters the Qhat_j conditions. "unit" reads it as the
# constant 1, which is what differentiating the Q_j functions produces;
# "geometric" reads it as the series 1/(1-z).
EMPTY_GEOMETRIC = "geometric"
EMPTY_UNIT = "unit"


class KernelDimensionError(ArithmeticError):
    """The Pade system does not have a one-dimensional kernel."""

    def __init__(self, kind: str, r: int, n: int, report: KernelReport):
        self.kind, self.r, self.n, self.report = kind, r, n, report
        super().__init__(
            f"{kind}_{{{r},{n}}}: kernel dimension {report.dimension}, expected 1"
        )

    @property
    def basis(self):
        return self.report.basis


@dataclass(frozen=True)
class PadeProblem:
    kind: str
    r: int
    n: int

    def __post_init__(self):
        if self.kind not in ("P", "Q"):
            raise ValueError("kind must be 'P' or 'Q'")
        if self.r < 0 or self.n < 0:
            raise ValueError("r and n must be nonnegative")


# --------------------------------------------------------------------------
# row builders


def _table(idx: Index, K: int, empty: str = EMPTY_UNIT) -> list[Fraction]:
    if idx.depth == 0 and empty == EMPTY_UNIT:
        return [Fraction(1)] + [Fraction(0)] * K
    return list(taylor(idx, max(K, 1)).c[: K + 1])


def _inverse_row(c: list[Fraction], n: int, t: int) -> list[Fraction]:
    """Coefficient of z^t in A(z) Li(1/z), as a functional on a_0..a_n."""
    return [c[m - t] if 0 <= m - t < len(c) else Fraction(0) for m in range(n + 1)]


def _direct_row(c: list[Fraction], n: int, t: int) -> list[Fraction]:
    """Coefficient of z^t in A(z) Li(z)."""
    return [c[t - m] if 0 <= t - m < len(c) else Fraction(0) for m in range(n + 1)]


def _rebased_row(c: list[Fraction], n: int, t: int) -> list[Fraction]:
    """Coefficient of w^t (w = 1-z) in A(z) Li(w)."""
    out = []
    for m in range(n + 1):
        acc = Fraction(0)
        for i in range(min(m, t) + 1):
            if t - i < len(c):
                acc += (-1) ** i * comb(m, i) * c[t - i]
        out.append(acc)
    return out


def _mono_row(n: int, t: int) -> list[Fraction]:
    """Coefficient of z^t in a polynomial of degree <= n."""
    return [Fraction(1 if m == t else 0) for m in range(n + 1)]


def _rebased_mono_row(n: int, t: int) -> list[Fraction]:
    return [Fraction((-1) ** t * comb(m, t)) for m in range(n + 1)]


def s_order(r: int, n: int) -> int:
    return (r + 1) * (n + 1)


def _p_blocks(r: int, n: int, extra: int = 0, subscript: str = SUBSCRIPT_WEIGHT):
    """Rows of the P system grouped by condition: list of (label, rows)."""
    pick = _SUBSCRIPTS[subscript]
    npoly = 3 * (r + 1) + 1
    width = npoly * (n + 1)

    def place(pos: int, part: list[Fraction], row: list[Fraction]):
        row[pos * (n + 1): (pos + 1) * (n + 1)] = part

    K = n + s_order(r, n) - 1 + extra
    alpha = [_table(idx_two_ones_ls(rho), K) for rho in range(r + 1)]
    beta = [_table(idx_ones_ls(rho), K) for rho in range(r + 1)]
    gamma = [_table(idx_ones_sl(rho), K) for rho in range(r + 1)]
    dpos = 3 * (r + 1)

    rows_s = []
    for t in range(n, -(s_order(r, n) - 1 + extra) - 1, -1):
        row = [Fraction(0)] * width
        for rho in range(r + 1):
            place(rho, _inverse_row(alpha[rho], n, t), row)
            place(r + 1 + rho, _inverse_row(beta[rho], n, t), row)
            place(2 * (r + 1) + rho, _inverse_row(gamma[rho], n, t), row)
        if t >= 0:
            place(dpos, _mono_row(n, t), row)
        rows_s.append(row)
    blocks = [("S", rows_s)]

    Kz = n + extra
    u_tab = [_table(idx_one_twos_l(m), Kz) for m in range(r + 1)]
    v_tab = [_table(idx_twos_l(m), Kz) for m in range(r + 1)]
    for label, tabs, own in (("U", u_tab, 1), ("V", v_tab, 2)):
        for j in range(r + 1):
            rows = []
            for t in range(Kz + 1):
                row = [Fraction(0)] * width
                for rho in range(j, r + 1):
                    place(rho, _rebased_row(tabs[pick(r, rho, j)], n, t), row)
                place(own * (r + 1) + j, _rebased_mono_row(n, t), row)
                rows.append(row)
            blocks.append((f"{label}{j}", rows))
    return blocks


def _q_blocks(r: int, n: int, extra: int = 0, empty: str = EMPTY_UNIT):
    npoly = 2 * (r + 1) + 1
    width = npoly * (n + 1)

    def place(pos, part, row):
        row[pos * (n + 1): (pos + 1) * (n + 1)] = part

    K = n + s_order(r, n) - 1 + extra
    ahat = [_table(idx_ones_ls(rho), K) for rho in range(r + 1)]
    bhat = [_table(idx_ones_sl(rho), K) for rho in range(r + 1)]
    cpos = 2 * (r + 1)
    rows_s = []
    for t in range(n, -(s_order(r, n) - 1 + extra) - 1, -1):
        row = [Fraction(0)] * width
        for rho in range(r + 1):
            place(rho, _inverse_row(ahat[rho], n, t), row)
            place(r + 1 + rho, _inverse_row(bhat[rho], n, t), row)
        if t >= 0:
            place(cpos, _mono_row(n, t), row)
        rows_s.append(row)
    blocks = [("S", rows_s)]

    Kz = n + extra
    odd = [_table(idx_ones_sl(m), Kz) for m in range(r + 1)]
    even = [_table(idx_ones_even(m), Kz, empty) for m in range(r + 1)]
    for j in range(r + 1):
        rows = []
        for t in range(Kz + 1):
            row = [Fraction(0)] * width
            for rho in range(j, r + 1):
                place(rho, _direct_row(odd[rho - j], n, t), row)
                place(r + 1 + rho, _direct_row(even[rho - j], n, t), row)
            rows.append(row)
        blocks.append((f"Q{j}", rows))
    return blocks


def _flatten(blocks) -> list[list[Fraction]]:
    return [row for _, rows in blocks for row in rows]


def build_p_system(r: int, n: int, subscript: str = SUBSCRIPT_WEIGHT) -> list[list[Fraction]]:
    """Matrix of shape ((3r+4)(n+1) - 1) x (3r+4)(n+1)."""
    PadeProblem("P", r, n)
    return _flatten(_p_blocks(r, n, subscript=subscript))


def build_q_system(r: int, n: int, empty: str = EMPTY_UNIT) -> list[list[Fraction]]:
    """Matrix of shape ((2r+3)(n+1) - 1) x (2r+3)(n+1)."""
    PadeProblem("Q", r, n)
    if empty not in (EMPTY_GEOMETRIC, EMPTY_UNIT):
        raise ValueError(f"unknown empty-index convention {empty!r}")
    return _flatten(_q_blocks(r, n, empty=empty))


# --------------------------------------------------------------------------
# solutions


def _split_polys(vec: Sequence[Fraction], n: int, count: int) -> list[RatPoly]:
    return [RatPoly(vec[i * (n + 1): (i + 1) * (n + 1)]) for i in range(count)]


def _measured_orders(blocks, vec, required: dict[str, int]) -> dict[str, int | None]:
    """First nonvanishing position per block, offset so that it reads as an
    order: at infinity the exponent e of z^-e, at 1 or 0 the power of the
    local variable. ``None`` means no nonzero coefficient within the
    computed depth."""
    out = {}
    for label, rows in blocks:
        res = mat_vec(rows, vec)
        if label == "S":
            # rows run over t = n, n-1, ...; z^t = z^-e with e = -t
            n_pos = required["_n"]
            first = next((i for i, x in enumerate(res) if x), None)
            out[label] = None if first is None else first - n_pos
        else:
            first = next((i for i, x in enumerate(res) if x), None)
            out[label] = first
    return out


@dataclass(frozen=True)
class PadeSolutionP:
    r: int
    n: int
    A: tuple[RatPoly, ...]
    B: tuple[RatPoly, ...]
    C: tuple[RatPoly, ...]
    D: RatPoly
    vector: tuple[Fraction, ...]
    orders: dict = field(default_factory=dict, compare=False)
    shape: tuple[int, int] = (0, 0)

    kind = "P"

    def to_json(self) -> dict:
        enc = lambda p: [rat_to_str(x) for x in _padded(p, self.n)]
        return {
            "kind": "P",
            "r": self.r,
            "n": self.n,
            "shape": f"{self.shape[0]}x{self.shape[1]}",
            "polys": {
                "A": [enc(p) for p in self.A],
                "B": [enc(p) for p in self.B],
                "C": [enc(p) for p in self.C],
                "D": enc(self.D),
            },
            "orders": self.orders,
            "normalization": NORMALIZATION,
        }


@dataclass(frozen=True)
class PadeSolutionQ:
    r: int
    n: int
    Ahat: tuple[RatPoly, ...]
    Bhat: tuple[RatPoly, ...]
    Chat: RatPoly
    vector: tuple[Fraction, ...]
    orders: dict = field(default_factory=dict, compare=False)
    shape: tuple[int, int] = (0, 0)
    empty: str = EMPTY_UNIT

    kind = "Q"

    def to_json(self) -> dict:
        enc = lambda p: [rat_to_str(x) for x in _padded(p, self.n)]
        return {
            "kind": "Q",
            "r": self.r,
            "n": self.n,
            "shape": f"{self.shape[0]}x{self.shape[1]}",
            "empty_index": self.empty,
            "polys": {
                "Ahat": [enc(p) for p in self.Ahat],
                "Bhat": [enc(p) for p in self.Bhat],
                "Chat": enc(self.Chat),
            },
            "orders": self.orders,
            "normalization": NORMALIZATION,
        }


def _padded(p: RatPoly, n: int) -> list[Fraction]:
    return [p[i] for i in range(n + 1)]


def _unique_kernel(kind, r, n, matrix) -> tuple[Fraction, ...]:
    rep = kernel(matrix)
    if rep.dimension != 1:
        raise KernelDimensionError(kind, r, n, rep)
    return tuple(rep.basis[0])


def solve_p(r: int, n: int, extra: int = 10, subscript: str = SUBSCRIPT_WEIGHT) -> PadeSolutionP:
    """Unique (up to scale) solution of P_{r,n}, with orders measured at
    ``extra`` more coefficients than the system imposes."""
    matrix = build_p_system(r, n, subscript)
    vec = _unique_kernel("P", r, n, matrix)
    polys = _split_polys(vec, n, 3 * (r + 1) + 1)
    orders = _measured_orders(_p_blocks(r, n, extra, subscript), vec, {"_n": n})
    return PadeSolutionP(
        r, n,
        tuple(polys[: r + 1]),
        tuple(polys[r + 1: 2 * (r + 1)]),
        tuple(polys[2 * (r + 1): 3 * (r + 1)]),
        polys[-1],
        vec,
        orders,
        (len(matrix), len(matrix[0])),
    )


def solve_q(r: int, n: int, empty: str = EMPTY_UNIT, extra: int = 10) -> PadeSolutionQ:
    matrix = build_q_system(r, n, empty)
    vec = _unique_kernel("Q", r, n, matrix)
    polys = _split_polys(vec, n, 2 * (r + 1) + 1)
    orders = _measured_orders(_q_blocks(r, n, extra, empty), vec, {"_n": n})
    return PadeSolutionQ(
        r, n,
        tuple(polys[: r + 1]),
        tuple(polys[r + 1: 2 * (r + 1)]),
        polys[-1],
        vec,
        orders,
        (len(matrix), len(matrix[0])),
        empty,
    )


def required_orders(kind: str, r: int, n: int) -> dict[str, int]:
    """Orders imposed by construction, keyed like ``solution.orders``."""
    out = {"S": s_order(r, n)}
    labels = ("U", "V") if kind == "P" else ("Q",)
    for lab in labels:
        for j in range(r + 1):
            out[f"{lab}{j}"] = n + 1
    return out


# --------------------------------------------------------------------------
# derived data


def combination_laurent(sol: PadeSolutionP, count: int) -> Laurent:
    """Laurent coefficients of S_{r,n}(z) at infinity for exponents 1..count,
    computed from the solved polynomials and exact Taylor tables."""
    r, n = sol.r, sol.n
    extra = max(0, count - (s_order(r, n) - 1))
    blocks = _p_blocks(r, n, extra)
    res = mat_vec(blocks[0][1], sol.vector)
    if any(res[: n + 1]):
        raise ArithmeticError("polynomial part of S does not vanish")
    return Laurent(1, tuple(res[n + 1: n + 1 + count]))


def laurent_scalar(sol: PadeSolutionP, K: int = 12, reference: Laurent | None = None):
    """Rational c with integral_laurent(r, n, 1, K) = c * combination.

    Returns ``(c, ok)``: ``ok`` is True when a single constant matches all K
    coefficients exactly.
    """
    r, n = sol.r, sol.n
    ref = reference if reference is not None else integral_laurent(r, n, 1, K)
    mine = combination_laurent(sol, ref.last)
    c = None
    ok = True
    for e in range(1, ref.last + 1):
        x, y = ref.coeff(e), mine.coeff(e)
        if c is None and y:
            c = x / y
        if c is None:
            ok &= x == 0
        else:
            ok &= x == c * y
    return c, bool(ok and c)


@dataclass(frozen=True)
class VasilyevData:
    """Rational data of the value at z = 1: n_parity_sign * (sum 2 q_rho zeta(2rho+3) + qD)."""

    q: tuple[Fraction, ...]
    qD: Fraction
    n_parity_sign: int

    def to_json(self) -> dict:
        return {
            "q": [rat_to_str(x) for x in self.q],
            "qD": rat_to_str(self.qD),
            "n_parity_sign": self.n_parity_sign,
        }


def vasilyev_combination(sol: PadeSolutionP) -> VasilyevData:
    return VasilyevData(
        tuple(a(1) for a in sol.A), sol.D(1), (-1) ** (sol.n + 1)
    )


def dumps(sol) -> str:
    return json.dumps(sol.to_json(), sort_keys=True)

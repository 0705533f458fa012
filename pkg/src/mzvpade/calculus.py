"""Symbolic sums of (rational function) x (polylogarithm in z, 1/z or 1-z).

Coefficients live in Q[z, 1/z, 1/(1-z)], the only denominators the
differentiation rules can produce. The reduction check rebuilds the
combination S_{r,n} from a solved P problem, applies z^{n+1}/n! d^{n+1}/dz^{n+1}
and decomposes the result in the basis of the Q problem.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .exact_core import BallReal, RatPoly, as_rational, rat_to_str
from .words import (
    EMPTY,
    ArgFrame,
    Index,
    L,
    S,
    format_index,
    idx_ones_ls,
    idx_ones_sl,
    idx_two_ones_ls,
    ones,
    reduce_large,
)

_Z = RatPoly([0, 1])
_ONE_MINUS_Z = RatPoly([1, -1])


class RatFunc:
    """num / (z^a (1-z)^b), reduced so that z does not divide num when a > 0
    and (1-z) does not divide num when b > 0."""

    __slots__ = ("num", "a", "b")

    def __init__(self, num, a: int = 0, b: int = 0):
        if not isinstance(num, RatPoly):
            num = RatPoly([num]) if not isinstance(num, (list, tuple)) else RatPoly(num)
        if a < 0 or b < 0:
            raise ValueError("denominator exponents must be nonnegative")
        if num.is_zero():
            a = b = 0
        while a > 0 and num[0] == 0 and not num.is_zero():
            num = RatPoly(num.coeffs[1:])
            a -= 1
        while b > 0 and not num.is_zero():
            q, rem = num.divmod_linear(Fraction(1))
            if rem:
                break
            num = -q  # num = (z - 1) q = (1 - z)(-q)
            b -= 1
        self.num, self.a, self.b = num, a, b

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(RatPoly([as_rational(c)]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.a == 0 and self.b == 0

    def key(self):
        return (self.num.coeffs, self.a, self.b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def _lift(self, a: int, b: int) -> RatPoly:
        return self.num * (_Z_pow(a - self.a) * _OMZ_pow(b - self.b))

    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        a, b = max(self.a, other.a), max(self.b, other.b)
        return RatFunc(self._lift(a, b) + other._lift(a, b), a, b)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.a, self.b)

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return self + (-other)

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, RatPoly):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return RatFunc(self.num * as_rational(other), self.a, self.b)
        return RatFunc(self.num * other.num, self.a + other.a, self.b + other.b)

    __rmul__ = __mul__

    def derivative(self) -> "RatFunc":
        # d/dz z^-a (1-z)^-b = z^-a (1-z)^-b (b z - a (1-z)) / (z (1-z))
        n = self.num
        top = n.derivative() * (_Z * _ONE_MINUS_Z) + n * RatPoly([-self.a, self.a + self.b])
        return RatFunc(top, self.a + 1, self.b + 1)

    def __call__(self, z):
        return self.num(z) / (z ** self.a * (1 - z) ** self.b)

    def __repr__(self) -> str:
        return f"RatFunc({_poly_str(self.num)}, a={self.a}, b={self.b})"

    def __str__(self) -> str:
        den = []
        if self.a:
            den.append("z" if self.a == 1 else f"z^{self.a}")
        if self.b:
            den.append("(1-z)" if self.b == 1 else f"(1-z)^{self.b}")
        s = f"({_poly_str(self.num)})"
        return s + ("/" + "".join(den) if den else "")

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "z_power": self.a, "one_minus_z_power": self.b}


def _Z_pow(k: int) -> RatPoly:
    return RatPoly.monomial(k)


def _OMZ_pow(k: int) -> RatPoly:
    return RatPoly.one_minus_z_power(k)


def _poly_str(p: RatPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        coef = rat_to_str(c)
        if mono and c == 1:
            coef = ""
        elif mono and c == -1:
            coef = "-"
        parts.append(f"{coef}{'*' if mono and coef not in ('', '-') else ''}{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# --------------------------------------------------------------------------
# expressions

Key = tuple[Index, ArgFrame]


def empty_value(frame: ArgFrame) -> RatFunc:
    """1/(1-x) written in z for the argument x of the frame."""
    if frame == ArgFrame.DIRECT:
        return RatFunc(RatPoly([1]), 0, 1)
    if frame == ArgFrame.INVERSE:
        return RatFunc(RatPoly([0, -1]), 0, 1)  # z/(z-1)
    return RatFunc(RatPoly([1]), 1, 0)  # 1/z


class Expression:
    """Finite sum of RatFunc * Li_idx(frame argument) plus a rational part."""

    __slots__ = ("terms", "rat")

    def __init__(self, terms: Mapping[Key, RatFunc] | None = None, rat: RatFunc | None = None):
        self.terms: dict[Key, RatFunc] = {}
        self.rat = rat if rat is not None else RatFunc(RatPoly())
        for (idx, frame), c in (terms or {}).items():
            self._add(idx, ArgFrame(frame), c)

    def _add(self, idx: Index, frame: ArgFrame, c: RatFunc):
        if c.is_zero():
            return
        if idx.depth == 0:
            self.rat = self.rat + c * empty_value(frame)
            return
        key = (idx, frame)
        new = self.terms[key] + c if key in self.terms else c
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    # construction -----------------------------------------------------------
    @classmethod
    def polylog(cls, idx: Index, frame: ArgFrame, coeff=None) -> "Expression":
        c = coeff if isinstance(coeff, RatFunc) else RatFunc(coeff if isinstance(coeff, RatPoly) else RatPoly([1 if coeff is None else coeff]))
        e = cls()
        e._add(idx, ArgFrame(frame), c)
        return e

    @classmethod
    def rational(cls, c) -> "Expression":
        if isinstance(c, RatPoly):
            c = RatFunc(c)
        elif not isinstance(c, RatFunc):
            c = RatFunc.const(c)
        return cls(rat=c)

    def copy(self) -> "Expression":
        e = Expression()
        e.terms = dict(self.terms)
        e.rat = self.rat
        return e

    # algebra -----------------------------------------------------------------
    def __add__(self, other: "Expression") -> "Expression":
        out = self.copy()
        for (idx, frame), c in other.terms.items():
            out._add(idx, frame, c)
        out.rat = out.rat + other.rat
        return out

    def __neg__(self) -> "Expression":
        return self.scale(RatFunc.const(-1))

    def __sub__(self, other: "Expression") -> "Expression":
        return self + (-other)

    def scale(self, c) -> "Expression":
        if isinstance(c, RatPoly):
            c = RatFunc(c)
        elif not isinstance(c, RatFunc):
            c = RatFunc.const(c)
        out = Expression()
        for (idx, frame), t in self.terms.items():
            out._add(idx, frame, t * c)
        out.rat = self.rat * c
        return out

    def is_zero(self) -> bool:
        return not self.terms and self.rat.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        a, b = canonicalize(self), canonicalize(other)
        return a.terms == b.terms and a.rat == b.rat

    def weights(self) -> dict[Key, int]:
        return {k: k[0].weight for k in self.terms}

    # output -------------------------------------------------------------------
    def __str__(self) -> str:
        parts = [
            f"{c} * Li[{format_index(idx)}]({_ARG[frame]})"
            for (idx, frame), c in sorted(self.terms.items(), key=_sort_key)
        ]
        if not self.rat.is_zero():
            parts.append(str(self.rat))
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "terms": [
                {"index": format_index(idx), "frame": frame.value, "coeff": c.to_json()}
                for (idx, frame), c in sorted(self.terms.items(), key=_sort_key)
            ],
            "rational": self.rat.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


_ARG = {ArgFrame.DIRECT: "z", ArgFrame.INVERSE: "1/z", ArgFrame.ONE_MINUS: "1-z"}


def _sort_key(item):
    (idx, frame), _ = item
    return (frame.value, -idx.weight, idx.b, idx.a)


# --------------------------------------------------------------------------
# differentiation

_R_INV_Z = RatFunc(RatPoly([1]), 1, 0)  # 1/z
_R_INV_OMZ = RatFunc(RatPoly([1]), 0, 1)  # 1/(1-z)
_R_INV_BOTH = RatFunc(RatPoly([1]), 1, 1)  # 1/(z(1-z))

# For each frame: factor for (b1 >= 2), (depth one, b1 = 1), (b1 = 1, l), (b1 = 1, s).
_RULES = {
    ArgFrame.DIRECT: (_R_INV_Z, _R_INV_OMZ, _R_INV_BOTH, _R_INV_OMZ),
    ArgFrame.INVERSE: (-_R_INV_Z, _R_INV_BOTH, _R_INV_OMZ, _R_INV_BOTH),
    ArgFrame.ONE_MINUS: (-_R_INV_OMZ, -_R_INV_Z, -_R_INV_BOTH, -_R_INV_Z),
}


def differentiate_polylog(idx: Index, frame: ArgFrame) -> Expression:
    """d/dz of Li_idx at the frame argument, as an Expression."""
    big, single, large, strict = _RULES[frame]
    if idx.b[0] >= 2:
        lowered = Index((idx.b[0] - 1,) + idx.b[1:], idx.a)
        return Expression.polylog(lowered, frame, big)
    if idx.depth == 1:
        return Expression.rational(single)
    rest = Index(idx.b[1:], idx.a[1:])
    return Expression.polylog(rest, frame, large if idx.a[0] == L else strict)


def differentiate(e: Expression) -> Expression:
    out = Expression.rational(e.rat.derivative())
    for (idx, frame), c in e.terms.items():
        out = out + Expression.polylog(idx, frame, c.derivative())
        out = out + differentiate_polylog(idx, frame).scale(c)
    return out


def scaled_derivative(e: Expression, n: int) -> Expression:
    """(z^{n+1} / n!) d^{n+1} e / dz^{n+1}, canonicalized."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    cur = canonicalize(e)
    for _ in range(n + 1):
        cur = canonicalize(differentiate(cur))
    return cur.scale(RatFunc(RatPoly.monomial(n + 1, Fraction(1, factorial(n)))))


def canonicalize(e: Expression) -> Expression:
    """Rewrite every index in the strict basis and merge equal terms."""
    out = Expression(rat=e.rat)
    for (idx, frame), c in e.terms.items():
        for strict in reduce_large(idx):
            out._add(strict, frame, c)
    return out


# --------------------------------------------------------------------------
# the reduction check


class MismatchError(ArithmeticError):
    """The differentiated P combination does not have the shape of a Q combination."""

    def __init__(self, message: str, where=None, value=None):
        self.where, self.value = where, value
        super().__init__(message if where is None else f"{message}: {where} -> {value}")


@dataclass(frozen=True)
class ReduceReport:
    match: bool
    scalar: Fraction | None
    derived: tuple[Fraction, ...] | None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "match": self.match,
            "scalar": None if self.scalar is None else rat_to_str(self.scalar),
            "detail": self.detail,
        }


def s_expression(solP) -> Expression:
    """S_{r,n}(z) as an Expression in the 1/z frame."""
    e = Expression.rational(solP.D)
    inv = ArgFrame.INVERSE
    for rho in range(solP.r + 1):
        e = e + Expression.polylog(idx_two_ones_ls(rho), inv, solP.A[rho])
        e = e + Expression.polylog(idx_ones_ls(rho), inv, solP.B[rho])
        e = e + Expression.polylog(idx_ones_sl(rho), inv, solP.C[rho])
    return e


def shat_expression(r: int, Ahat, Bhat, Chat) -> Expression:
    e = Expression.rational(Chat)
    inv = ArgFrame.INVERSE
    for rho in range(r + 1):
        e = e + Expression.polylog(idx_ones_ls(rho), inv, Ahat[rho])
        e = e + Expression.polylog(idx_ones_sl(rho), inv, Bhat[rho])
    return e


def decompose_shat(e: Expression, r: int, n: int):
    """Write a canonical Expression as sum Ahat Li_{{1}_{2rho+2}} + Bhat Li_{{1}_{2rho+1}} + Chat
    (1/z frame), peeling off one basis function per weight from the top.

    Raises MismatchError if a polylogarithm outside the basis survives or a
    coefficient is not a polynomial of degree <= n.
    """
    rem = canonicalize(e)
    inv = ArgFrame.INVERSE
    h: dict[int, RatFunc] = {}
    for w in range(2 * r + 2, 0, -1):
        pivot = (ones(w, (S,) * (w - 1)), inv)
        c = rem.terms.get(pivot, RatFunc(RatPoly()))
        h[w] = c
        basis = idx_ones_ls(w // 2 - 1) if w % 2 == 0 else idx_ones_sl((w - 1) // 2)
        rem = rem - canonicalize(Expression.polylog(basis, inv, c))
    if rem.terms:
        key, val = sorted(rem.terms.items(), key=_sort_key)[0]
        raise MismatchError(
            "polylogarithm outside the Q basis survives",
            f"Li[{format_index(key[0])}]({_ARG[key[1]]})", str(val),
        )
    pieces = {f"Ahat{rho}": h[2 * rho + 2] for rho in range(r + 1)}
    pieces.update({f"Bhat{rho}": h[2 * rho + 1] for rho in range(r + 1)})
    pieces["Chat"] = rem.rat
    for name, f in pieces.items():
        if not f.is_polynomial():
            raise MismatchError("coefficient keeps a pole (divisibility fails)", name, str(f))
        if f.num.degree > n:
            raise MismatchError("coefficient degree exceeds n", name, str(f))
    Ahat = [h[2 * rho + 2].num for rho in range(r + 1)]
    Bhat = [h[2 * rho + 1].num for rho in range(r + 1)]
    return Ahat, Bhat, rem.rat.num


def _vector(polys: Iterable[RatPoly], n: int) -> tuple[Fraction, ...]:
    return tuple(p[i] for p in polys for i in range(n + 1))


def reduce_check(r: int, n: int, solP, solQ, strict: bool = False) -> ReduceReport:
    """Differentiate S_{r,n} from ``solP`` and compare it with ``solQ``.

    ``match`` is True when the result lies in the Q basis with polynomial
    coefficients of degree <= n proportional to the Q solution; ``scalar`` is
    the constant with derived = scalar * solQ. With ``strict`` a mismatch
    raises MismatchError instead of being reported.
    """
    if (solP.r, solP.n, solQ.r, solQ.n) != (r, n, r, n):
        raise ValueError("solutions belong to different (r, n)")
    try:
        shat = scaled_derivative(s_expression(solP), n)
        Ahat, Bhat, Chat = decompose_shat(shat, r, n)
        derived = _vector(list(Ahat) + list(Bhat) + [Chat], n)
        target = tuple(solQ.vector)
        scalar = None
        for x, y in zip(derived, target):
            if y:
                scalar = x / y
                break
        if not scalar:
            raise MismatchError("derived Q data vanishes identically")
        for i, (x, y) in enumerate(zip(derived, target)):
            if x != scalar * y:
                raise MismatchError("not proportional to the Q solution", f"coordinate {i}", f"{x} vs {scalar * y}")
        return ReduceReport(True, scalar, derived)
    except MismatchError as err:
        if strict:
            raise
        return ReduceReport(False, None, None, str(err))


# --------------------------------------------------------------------------
# evaluation


def expr_eval(e: Expression, z, prec: int = 128, K: int | None = None) -> BallReal:
    """Ball enclosing the value of ``e`` at the rational point ``z``."""
    from .numerics import eval_polylog

    z = as_rational(z)
    total = _rat_ball(e.rat, z, prec)
    for (idx, frame), c in sorted(e.terms.items(), key=_sort_key):
        total = total + _rat_ball(c, z, prec) * eval_polylog(idx, frame, z, prec=prec, K=K)
    return total


def _rat_ball(f: RatFunc, z: Fraction, prec: int) -> BallReal:
    if f.is_zero():
        return BallReal.exact(0, prec)
    if (f.a and z == 0) or (f.b and z == 1):
        raise ZeroDivisionError("rational coefficient has a pole at the point")
    return BallReal.exact(f(z), prec)


def laurent_at_infinity(e: Expression, upto: int) -> dict[int, Fraction]:
    """Exact expansion of an Expression whose polylogarithms are all in the
    1/z frame, in powers u^k of u = 1/z, for all k <= upto.

    The rational coefficients are expanded at infinity:
    num(z) / (z^a (1-z)^b) = (-1)^b u^(a+b) num(1/u) (1-u)^-b.
    """
    from .coeffs import taylor

    out: dict[int, Fraction] = {}

    def add_series(f: RatFunc, series: dict[int, Fraction]):
        # f as a Laurent series in u: sum over num coefficients and binomial expansion
        for i, ni in enumerate(f.num.coeffs):
            if not ni:
                continue
            shift = f.a + f.b - i
            for k0, s in series.items():
                for j in range(0, upto - shift - k0 + 1):
                    w = _binom_neg(f.b, j)
                    if w:
                        k = shift + k0 + j
                        out[k] = out.get(k, Fraction(0)) + (-1) ** f.b * ni * w * s

    if not e.rat.is_zero():
        add_series(e.rat, {0: Fraction(1)})
    for (idx, frame), c in e.terms.items():
        if frame != ArgFrame.INVERSE:
            raise ValueError("only the 1/z frame expands at infinity")
        lo = c.a + c.b - c.num.degree
        K = max(1, upto - lo)
        tab = taylor(idx, K).c
        add_series(c, {k: tab[k] for k in range(1, K + 1) if tab[k]})
    return {k: v for k, v in sorted(out.items()) if v and k <= upto}


def _binom_neg(b: int, j: int) -> int:
    """Coefficient of u^j in (1-u)^-b."""
    from math import comb

    if b == 0:
        return 1 if j == 0 else 0
    return comb(b - 1 + j, j)

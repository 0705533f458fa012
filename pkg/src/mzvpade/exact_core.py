"""Exact rationals, rational polynomials, ball reals and a fraction-free kernel solver."""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Sequence

import mpmath
from mpmath import iv
from mpmath.libmp import mpf_neg

Rational = Fraction

DEFAULT_PREC = 128


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to build an exact rational from a float")
    return Fraction(x)


def rat_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


# --------------------------------------------------------------------------
# polynomials


class RatPoly:
    """Dense polynomial over Q; ``coeffs[i]`` is the coefficient of z^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def monomial(cls, k: int, c=1) -> "RatPoly":
        return cls([0] * k + [c])

    @classmethod
    def one_minus_z_power(cls, k: int) -> "RatPoly":
        return cls([comb(k, i) * (-1) ** i for i in range(k + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly([{', '.join(rat_to_str(c) for c in self.coeffs)}])"

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __add__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = RatPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = RatPoly([other])
        return self + (-other)

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = as_rational(other)
            return RatPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod_linear(self, root: Fraction) -> tuple["RatPoly", Fraction]:
        """Synthetic division by (z - root)."""
        if self.is_zero():
            return RatPoly(), Fraction(0)
        out = []
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return RatPoly(reversed(out)), rem

    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "RatPoly":
        return cls(Fraction(s) for s in data)


def poly_rebase_at_one(p: RatPoly) -> RatPoly:
    """Return q with p(z) = q(1 - z)."""
    n = len(p.coeffs)
    return RatPoly(
        [(-1) ** t * sum(p[i] * comb(i, t) for i in range(t, n)) for t in range(n)]
    )


# --------------------------------------------------------------------------
# kernel


@dataclass(frozen=True)
class KernelReport:
    dimension: int
    rank: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivot_columns: tuple[int, ...] = ()


def _primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def kernel(matrix: Sequence[Sequence]) -> KernelReport:
    """Exact null space of a rational matrix by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers. Pivoting is deterministic: the first column
    with a nonzero candidate, the candidate of largest absolute value, ties broken
    by row index. Basis vectors are primitive integer vectors whose first nonzero
    entry is positive.
    """
    if not matrix:
        raise ValueError("empty matrix")
    ncols = len(matrix[0])
    if any(len(row) != ncols for row in matrix):
        raise ValueError("ragged matrix")
    rows = []
    for row in matrix:
        fr = [as_rational(x) for x in row]
        den = 1
        for x in fr:
            den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in fr])

    m = len(rows)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        best = None
        for i in range(r, m):
            v = rows[i][c]
            if v and (best is None or abs(v) > abs(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        p = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (row[j] * p - f * prow[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1

    rank = len(pivots)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i in range(rank - 1, -1, -1):
            pc = pivots[i]
            s = sum((rows[i][j] * x[j] for j in range(pc + 1, ncols) if x[j]), Fraction(0))
            x[pc] = -s / rows[i][pc]
        basis.append(_primitive(x))
    return KernelReport(len(free), rank, tuple(basis), tuple(pivots))


def mat_vec(matrix: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((as_rational(a) * b for a, b in zip(row, v)), Fraction(0)) for row in matrix]


# --------------------------------------------------------------------------
# ball reals


@contextmanager
def _ivprec(prec: int):
    # mpmath's interval context keeps precision as context state
    old = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = old


def mpf_to_fraction(x) -> Fraction:
    """Exact value of a finite mpf, without re-rounding to the context precision."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    sign, man, exp, _ = x._mpf_
    if not man:
        if exp:
            raise ValueError("infinite or nan mpf")
        return Fraction(0)
    val = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -val if sign else val


def _endpoints(x):
    a, b = x._mpi_
    return mpmath.mp.make_mpf(a), mpmath.mp.make_mpf(b)


def _exact_iv(x):
    """Interval enclosing an int, Fraction, mpf or float exactly (at the current iv precision)."""
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    if isinstance(x, float):
        return iv.mpf(mpmath.mp.make_mpf(mpmath.mpf(x)._mpf_))
    return iv.mpf(x)


def _up(x):
    return _endpoints(x)[1]


def _split(x):
    """Nearest midpoint of an interval and an upward-rounded radius covering it."""
    a, b = _endpoints(x)
    with mpmath.workprec(iv.prec + 8):
        m = (a + b) / 2
    rad = max(_up(iv.mpf(b) - iv.mpf(m)), _up(iv.mpf(m) - iv.mpf(a)))
    return m, rad


class BallReal:
    """Midpoint-radius enclosure of a real number, with a rigor flag.

    Radii are propagated with upward rounding, so a rigorous ball always
    contains the true value. A heuristic operand makes the result heuristic.
    """

    __slots__ = ("mid", "rad", "rigorous", "prec")

    def __init__(self, mid, rad=0, rigorous: bool = True, prec: int = DEFAULT_PREC):
        if rad < 0:
            raise ValueError("negative radius")
        self.mid = mpmath.mp.make_mpf(mpmath.mpf(mid)._mpf_) if not isinstance(mid, mpmath.mpf) else mid
        self.rad = rad if isinstance(rad, mpmath.mpf) else _up(_exact_iv(rad) if not isinstance(rad, float) else _exact_iv(rad))
        self.rigorous = bool(rigorous)
        self.prec = int(prec)

    # construction -------------------------------------------------------
    @classmethod
    def _from_iv(cls, x, extra_rad=None, rigorous=True, prec=DEFAULT_PREC) -> "BallReal":
        with _ivprec(prec):
            m, r = _split(x)
            if extra_rad is not None:
                r = _up(iv.mpf(r) + extra_rad)
        return cls(m, r, rigorous, prec)

    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PREC) -> "BallReal":
        with _ivprec(prec):
            val = _exact_iv(as_rational(x) if isinstance(x, (int, str)) else x)
        return cls._from_iv(val, prec=prec)

    @classmethod
    def from_bounds(cls, lo, hi, rigorous: bool = True, prec: int = DEFAULT_PREC) -> "BallReal":
        with _ivprec(prec):
            val = iv.mpf([_endpoints(_exact_iv(lo))[0], _endpoints(_exact_iv(hi))[1]])
        return cls._from_iv(val, rigorous=rigorous, prec=prec)

    @classmethod
    def from_mid_rad(cls, mid, rad, rigorous: bool = True, prec: int = DEFAULT_PREC) -> "BallReal":
        if rad < 0:
            raise ValueError("negative radius")
        with _ivprec(prec):
            m, r0 = _split(_exact_iv(mid))
            r = _up(iv.mpf(r0) + _exact_iv(rad))
        return cls(m, r, rigorous, prec)

    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC) -> "BallReal":
        with _ivprec(prec):
            return cls._from_iv(+iv.pi, prec=prec)

    # accessors ----------------------------------------------------------
    @property
    def midpoint(self):
        return self.mid

    @property
    def radius(self):
        return self.rad

    def _iv(self):
        return iv.mpf([_endpoints(iv.mpf(self.mid) - iv.mpf(self.rad))[0], _endpoints(iv.mpf(self.mid) + iv.mpf(self.rad))[1]])

    @property
    def lower(self):
        with _ivprec(self.prec):
            return _endpoints(self._iv())[0]

    @property
    def upper(self):
        with _ivprec(self.prec):
            return _endpoints(self._iv())[1]

    def contains(self, x) -> bool:
        m = mpf_to_fraction(self.mid)
        r = mpf_to_fraction(self.rad)
        if isinstance(x, BallReal):
            return abs(mpf_to_fraction(x.mid) - m) + mpf_to_fraction(x.rad) <= r
        if isinstance(x, (int, Fraction)):
            return abs(Fraction(x) - m) <= r
        return abs(mpf_to_fraction(x) - m) <= r

    def overlaps(self, other: "BallReal") -> bool:
        d = abs(mpf_to_fraction(self.mid) - mpf_to_fraction(other.mid))
        return d <= mpf_to_fraction(self.rad) + mpf_to_fraction(other.rad)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        tag = "" if self.rigorous else ", heuristic"
        return f"BallReal({mpmath.nstr(self.mid, 17)} +/- {mpmath.nstr(self.rad, 3)}{tag})"

    def to_json(self) -> dict:
        return {
            "value": mpmath.nstr(self.mid, max(17, int(self.prec * 0.30103))),
            "radius": mpmath.nstr(self.rad, 6),
            "rigor": "rigorous" if self.rigorous else "heuristic",
        }

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "BallReal":
        if isinstance(other, BallReal):
            return other
        if isinstance(other, float):
            raise TypeError("mixing floats into a ball needs an explicit radius")
        return BallReal.exact(as_rational(other), self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        with _ivprec(prec):
            val = iv.mpf(self.mid) + iv.mpf(o.mid)
            return BallReal._from_iv(val, iv.mpf(self.rad) + iv.mpf(o.rad), self.rigorous and o.rigorous, prec)

    __radd__ = __add__

    def __neg__(self):
        # mpf negation rounds to the context precision; mpf_neg without prec is exact
        return BallReal(mpmath.mp.make_mpf(mpf_neg(self.mid._mpf_)), self.rad, self.rigorous, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        with _ivprec(prec):
            val = iv.mpf(self.mid) * iv.mpf(o.mid)
            spread = (abs(iv.mpf(self.mid)) * iv.mpf(o.rad) + abs(iv.mpf(o.mid)) * iv.mpf(self.rad)
                      + iv.mpf(self.rad) * iv.mpf(o.rad))
            return BallReal._from_iv(val, spread, self.rigorous and o.rigorous, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if abs(o.mid) <= o.rad:
            raise ZeroDivisionError("divisor ball contains 0")
        prec = max(self.prec, o.prec)
        with _ivprec(prec):
            my = abs(iv.mpf(o.mid))
            val = iv.mpf(self.mid) / iv.mpf(o.mid)
            spread = (iv.mpf(self.rad) * my + abs(iv.mpf(self.mid)) * iv.mpf(o.rad)) / (my * (my - iv.mpf(o.rad)))
            return BallReal._from_iv(val, spread, self.rigorous and o.rigorous, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise TypeError("nonnegative integer powers only")
        out = BallReal.exact(1, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def log(self) -> "BallReal":
        if self.mid - self.rad <= 0:
            raise ValueError("log of a ball reaching nonpositive values")
        with _ivprec(self.prec):
            val = iv.log(iv.mpf(self.mid))
            spread = iv.mpf(self.rad) / (iv.mpf(self.mid) - iv.mpf(self.rad))
            return BallReal._from_iv(val, spread, self.rigorous, self.prec)

    def with_rigor(self, rigorous: bool) -> "BallReal":
        return BallReal(self.mid, self.rad, self.rigorous and rigorous, self.prec)

    def widen(self, rad, rigorous: bool = True) -> "BallReal":
        """Grow the radius by ``rad``."""
        with _ivprec(self.prec):
            r = _up(iv.mpf(self.rad) + _exact_iv(rad))
        return BallReal(self.mid, r, self.rigorous and rigorous, self.prec)

"""Exact Taylor coefficients of extended polylogarithms, tail bounds, and exact
Laurent expansions at infinity of the hypergeometric integrals.

The Laurent routines are the exact oracles for every identity between an
integral and a Pade combination.
"""
from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from mpmath import iv

from .exact_core import _ivprec, mpf_to_fraction, rat_to_str
from .words import L, Index, format_index


@dataclass(frozen=True)
class CoeffTable:
    """``c[k]`` is the coefficient of x^k, for k = 0..K."""

    index: Index
    K: int
    c: tuple[Fraction, ...]

    @property
    def start(self) -> int:
        return 0 if self.index.depth == 0 else 1

    def to_json(self) -> dict:
        return {
            "index": format_index(self.index),
            "K": self.K,
            "coefficients": [rat_to_str(x) for x in self.c],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


_cache: dict[Index, tuple[Fraction, ...]] = {}
_cache_lock = threading.Lock()


def _taylor_exact(idx: Index, K: int) -> tuple[Fraction, ...]:
    if idx.depth == 0:
        return tuple(Fraction(1) for _ in range(K + 1))
    p = idx.depth
    # level p
    f = [Fraction(0)] + [Fraction(1, k ** idx.b[p - 1]) for k in range(1, K + 1)]
    for j in range(p - 2, -1, -1):
        prefix = [Fraction(0)] * (K + 1)
        acc = Fraction(0)
        for k in range(1, K + 1):
            acc += f[k]
            prefix[k] = acc
        large = idx.a[j] == L
        bj = idx.b[j]
        f = [Fraction(0)] + [
            (prefix[k] if large else prefix[k - 1]) / k ** bj for k in range(1, K + 1)
        ]
    return tuple(f)


def taylor(idx: Index, K: int) -> CoeffTable:
    """Exact coefficients of Li_idx(x) = sum_k c_k x^k through x^K.

    Chain dynamic programming from the innermost sum outward: the prefix sum
    feeding level j includes k for a large separator and stops at k-1 for a
    strict one. Tables are memoized per index and sliced for smaller K.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    cached = _cache.get(idx)
    if cached is None or len(cached) <= K:
        table = _taylor_exact(idx, K)
        with _cache_lock:
            prev = _cache.get(idx)
            if prev is None or len(prev) < len(table):
                _cache[idx] = table
        cached = table
    return CoeffTable(idx, K, cached[: K + 1])


def taylor_bruteforce(idx: Index, K: int) -> list[Fraction]:
    """Direct enumeration of summation chains; exponential, for testing only."""
    out = [Fraction(0)] * (K + 1)
    if idx.depth == 0:
        return [Fraction(1)] * (K + 1)

    def rec(j, upper, strict):
        if j == idx.depth:
            yield Fraction(1)
            return
        top = upper - 1 if strict else upper
        for k in range(1, top + 1):
            w = Fraction(1, k ** idx.b[j])
            nxt_strict = j < len(idx.a) and idx.a[j] != L
            for rest in rec(j + 1, k, nxt_strict):
                yield w * rest

    for k1 in range(1, K + 1):
        w = Fraction(1, k1 ** idx.b[0])
        strict = idx.depth > 1 and idx.a[0] != L
        out[k1] = w * sum(rec(1, k1, strict), Fraction(0))
    return out


# --------------------------------------------------------------------------
# tail bounds


def ln_upper(k: int) -> Fraction:
    """Rational upper bound for log(k)."""
    with _ivprec(80):
        return mpf_to_fraction(iv.log(iv.mpf(k)).b)


def ln_lower(k: int) -> Fraction:
    with _ivprec(80):
        return mpf_to_fraction(iv.log(iv.mpf(k)).a)


def tail_bound(idx: Index, K: int, x_abs) -> Fraction:
    """Certified upper bound on sum_{k>K} c_k x_abs^k.

    Uses c_k <= (1 + log k)^(p-1) / k^b1, which follows from letting every
    inner summation variable range freely over 1..k. For x_abs < 1 the bound
    is geometric; at x_abs = 1 it is the integral of the majorant from K to
    infinity, in closed form.
    """
    x = Fraction(x_abs)
    if x < 0 or x > 1:
        raise ValueError("x_abs must lie in [0, 1]")
    if K < 1:
        raise ValueError("K must be >= 1")
    if x == 0:
        return Fraction(0)
    if idx.depth == 0:
        if x == 1:
            raise ValueError("divergent: empty index at x = 1")
        return x ** (K + 1) / (1 - x)
    p, b1 = idx.depth, idx.b[0]
    m = p - 1
    if x < 1:
        k0 = K + 1
        g = (1 + ln_upper(k0)) ** m / Fraction(k0) ** b1
        q = (1 + 1 / (k0 * (1 + ln_lower(k0)))) ** m
        if x * q >= 1:
            raise ValueError("K too small for the geometric tail majorant")
        return g * x ** k0 / (1 - x * q)
    if b1 < 2:
        raise ValueError("divergent: leading exponent 1 at x = 1")
    if m and (1 + ln_lower(K)) * b1 < m:
        raise ValueError("K too small: the majorant is not yet decreasing")
    beta = b1 - 1
    s0 = 1 + ln_upper(K)
    total = sum(
        Fraction(factorial(m), factorial(m - i)) * s0 ** (m - i) / Fraction(beta) ** (i + 1)
        for i in range(m + 1)
    )
    return total / Fraction(K) ** beta


# --------------------------------------------------------------------------
# Laurent expansions at infinity


@dataclass(frozen=True)
class Laurent:
    """Truncated expansion sum_i coeffs[i] * z^-(order + i)."""

    order: int
    coeffs: tuple[Fraction, ...]

    def coeff(self, e: int) -> Fraction:
        i = e - self.order
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @property
    def last(self) -> int:
        return self.order + len(self.coeffs) - 1

    def window(self, start: int, count: int) -> tuple[Fraction, ...]:
        return tuple(self.coeff(e) for e in range(start, start + count))

    def leading_order(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.order + i
        return None

    def scale(self, c) -> "Laurent":
        return Laurent(self.order, tuple(c * x for x in self.coeffs))


@lru_cache(maxsize=None)
def _beta_int(a: int, b: int) -> Fraction:
    # int_0^1 u^(a-1) (1-u)^(b-1) du for integers a, b >= 1
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


def prefix_integral_laurent(alphas, betas, prefixes, power, lead, sign, K) -> Laurent:
    """Laurent expansion of
        sign * z^lead * int prod_t w_t^alpha_t (1-w_t)^beta_t / prod_m (z - W_m)^power,
    with W_m the product of the first ``prefixes[m]`` variables.

    Every denominator is expanded as sum_i binom(power-1+i, i) W^i z^(-power-i)
    and each monomial integrated as a Beta value. Brute force over all index
    tuples: the cost grows like K^len(prefixes).
    """
    D = len(prefixes)
    V = len(alphas)
    order = D * power - lead
    out = [Fraction(0)] * K
    for total in range(K):
        acc = Fraction(0)
        for cut in itertools.combinations(range(total + D - 1), D - 1):
            parts = []
            prev = -1
            for c in cut + (total + D - 1,):
                parts.append(c - prev - 1)
                prev = c
            w = Fraction(1)
            for i in parts:
                w *= comb(power - 1 + i, i)
            for t in range(V):
                e = alphas[t] + sum(parts[m] for m in range(D) if prefixes[m] > t)
                w *= _beta_int(e + 1, betas[t] + 1)
            acc += w
        out[total] = sign * acc
    return Laurent(order, tuple(out))


def integral_laurent(r: int, n: int, sigma: int, K: int, max_terms: int = 2_000_000) -> Laurent:
    """Exact leading K Laurent coefficients at infinity of the (2r+3)-fold
    integral S_{r,n,sigma}(z) (sigma = 1 gives S_{r,n})."""
    if r < 0 or n < 0 or not 1 <= sigma <= r + 2:
        raise ValueError("need r, n >= 0 and 1 <= sigma <= r+2")
    D = 2 * r + 2
    if comb(K + D - 1, D) > max_terms:
        raise OverflowError("truncation budget exceeded")
    alphas = [(r - sigma + 2) * n + r]
    betas = [sigma * n]
    for j in range(1, r + 2):
        alphas += [(r - j + 2) * (n + 1) - 1] * 2
        betas += [n, n]
    prefixes = list(range(2, 2 * r + 4))
    lead = (r + sigma) * n + r + 1
    sign = (-1) ** (sigma * n + 1)
    return prefix_integral_laurent(alphas, betas, prefixes, n + 1, lead, sign, K)


def sorokin_laurent(r: int, n: int, K: int) -> Laurent:
    """Exact Laurent coefficients of Sorokin's (2r+2)-fold integral

        (-1)^((r+1)n) int prod_j x_j^n (1-x_j)^n y_j^n (1-y_j)^n
                              / (z/(x_1 y_1 ... x_{j-1} y_{j-1}) - x_j y_j)^(n+1).
    """
    alphas, betas = [], []
    for i in range(1, r + 2):
        alphas += [n + (n + 1) * (r + 1 - i)] * 2
        betas += [n, n]
    prefixes = [2 * j for j in range(1, r + 2)]
    return prefix_integral_laurent(alphas, betas, prefixes, n + 1, 0, (-1) ** ((r + 1) * n), K)


# --------------------------------------------------------------------------
# integral operator chains


def b_step_order(a: int, b: int, n: int, omega: int) -> int:
    return omega + a + b - n - 1


def b_chain_laurent(chain: Sequence[tuple[int, int, int]], K: int) -> Laurent:
    """Laurent coefficients of B^{n1+1}_{a1,b1} ... B^{np+1}_{ap,bp}(1).

    ``chain`` lists (a, b, n) outermost first. Each step integrates
    (x - z)^n x^-M from z to infinity termwise after expanding (1-x)^-b at
    infinity, which is valid as long as every order stays >= 1.
    """
    steps = list(chain)
    orders = [0]
    for k, (a, b, n) in enumerate(reversed(steps)):
        w = b_step_order(a, b, n, orders[-1])
        if w < 1:
            raise ValueError(f"order hypothesis fails at step {len(steps) - k} (a={a}, b={b}, n={n}): {w}")
        orders.append(w)
    # needed top exponents, outermost first
    need = [orders[-1] + K - 1]
    for (a, b, n) in steps:
        need.append(need[-1] - (a + b - n - 1))
    need = need[::-1]  # need[0] for the constant, need[k] after k inner steps

    F = Laurent(0, (Fraction(1),))
    for k, (a, b, n) in enumerate(reversed(steps)):
        omega_out = orders[k + 1]
        top = need[k + 1]
        sgn = (-1) ** (n + 1 + b)
        nf = factorial(n)
        out = []
        for e in range(omega_out, top + 1):
            M = e + n + 1
            acc = Fraction(0)
            for m in range(F.order, F.last + 1):
                fm = F.coeff(m)
                if not fm:
                    continue
                i = M - a - b - m
                if i < 0:
                    continue
                if b == 0:
                    if i:
                        continue
                    binom = 1
                else:
                    binom = comb(b - 1 + i, i)
                acc += fm * binom
            out.append(sgn * acc * Fraction(nf * factorial(M - n - 2), factorial(M - 1)))
        F = Laurent(omega_out, tuple(out))
    return F


def opa_chain(n: int, times: int = 1) -> list[tuple[int, int, int]]:
    """B^{n+1}_{n+1,0} B^{n+1}_{n+1,n+1}, repeated."""
    return [(n + 1, 0, n), (n + 1, n + 1, n)] * times


def opb_chain(n: int, times: int = 1) -> list[tuple[int, int, int]]:
    """B^{n+1}_{0,n+1} B^{n+1}_{n+1,n+1}, repeated (the reflection of opa)."""
    return [(0, n + 1, n), (n + 1, n + 1, n)] * times


def swapped_chain(chain):
    return [(b, a, n) for (a, b, n) in chain]


def s_chain(r: int, n: int, sigma: int = 1) -> list[tuple[int, int, int]]:
    """Operator chain whose value at 1 is S_{r,n,sigma}: B^{sigma n+1}_{n+1,0} opb^(r+1)."""
    return [(n + 1, 0, sigma * n)] + opb_chain(n, r + 1)


# --------------------------------------------------------------------------
# nested Pochhammer series


SERIES_PRINTED = "printed"
SERIES_MATCHED = "matched"


def _poch(a: int, k: int) -> int:
    p = 1
    for i in range(k):
        p *= a + i
    return p


def s_series_laurent(r: int, n: int, K: int, variant: str = SERIES_PRINTED) -> Laurent:
    """Exact coefficients of the nested Pochhammer series over
    k_0 >= k_1 >= ... >= k_{2r+1} >= 1, in powers z^-(k_0 + r(n+1)), k_0 = 1..K.

    ``printed`` uses the leading factors (k_{2j} + (r-j+1)(n+1))_{n+1}^{e_j}.
    ``matched`` uses (k_{2j} + (r-j)(n+1))_{n+1}^{e_j} and an overall sign
    (-1)^{n+1}; that version reproduces integral_laurent exactly.
    """
    if variant not in (SERIES_PRINTED, SERIES_MATCHED):
        raise ValueError(f"unknown variant {variant!r}")
    even_shift = (lambda j: r - j + 1) if variant == SERIES_PRINTED else (lambda j: r - j)
    sign = 1 if variant == SERIES_PRINTED else (-1) ** (n + 1)
    last = 2 * r + 1

    def den(i: int, k: int) -> int:
        j = i // 2
        if i % 2 == 0:
            return _poch(k + even_shift(j) * (n + 1), n + 1) ** (2 if j == 0 else 1)
        return _poch(k + (r - j) * (n + 1), n + 1)

    g = [Fraction(0)] + [Fraction(_poch(k - n, n), den(last, k)) for k in range(1, K + 1)]
    for i in range(last - 1, -1, -1):
        # convolution with the neighbour factor (k - k' + 1)_n
        g = [Fraction(0)] + [
            sum((_poch(k - kk + 1, n) * g[kk] for kk in range(1, k + 1) if g[kk]), Fraction(0)) / den(i, k)
            for k in range(1, K + 1)
        ]
    nf = factorial(n)
    return Laurent(1 + r * (n + 1), tuple(sign * nf * x for x in g[1:]))

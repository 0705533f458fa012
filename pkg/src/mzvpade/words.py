"""Extended polylogarithm indices, the l->s reduction and Chen form-words.

An index is a word ``b`` of positive integers together with a separator word
``a`` over {"l", "s"}: "s" means a strict inequality between consecutive
summation variables, "l" a large one.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

S = "s"
L = "l"
SEPARATORS = (S, L)

W0 = "W0"  # dx/x
WS = "Ws"  # dx/(1-x)
WL = "Wl"  # dx/(x(1-x))
LETTERS = (W0, WS, WL)


@dataclass(frozen=True)
class Index:
    b: tuple[int, ...]
    a: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "a", tuple(self.a))
        if any(x < 1 for x in self.b):
            raise ValueError(f"exponents must be positive: {self.b}")
        if len(self.a) != max(len(self.b) - 1, 0):
            raise ValueError(f"need {max(len(self.b) - 1, 0)} separators, got {self.a}")
        if any(x not in SEPARATORS for x in self.a):
            raise ValueError(f"separators must be 'l' or 's': {self.a}")

    @property
    def depth(self) -> int:
        return len(self.b)

    @property
    def weight(self) -> int:
        return sum(self.b)

    @property
    def is_strict(self) -> bool:
        return L not in self.a

    def __str__(self) -> str:
        return format_index(self)

    def __repr__(self) -> str:
        return f"Index({format_index(self)!r})"


EMPTY = Index(())


def power_word(word: Sequence, j: int) -> tuple:
    """``word`` concatenated ``j`` times; ``j = 0`` gives the empty word."""
    if j < 0:
        raise ValueError("negative power")
    return tuple(word) * j


def parse_index(text: str) -> Index:
    """Parse ``"2,1,1,1;lsl"``. A missing ``;`` part means no separators."""
    text = text.strip()
    bpart, _, apart = text.partition(";")
    bpart, apart = bpart.strip(), apart.strip()
    b = tuple(int(x) for x in bpart.split(",") if x.strip()) if bpart else ()
    return Index(b, tuple(apart))


def format_index(idx: Index) -> str:
    return ",".join(map(str, idx.b)) + ";" + "".join(idx.a)


def reduce_large(idx: Index) -> list[Index]:
    """Rewrite every large separator with Li^{..l..} = Li^{..s..} + Li_{merged}.

    Returns the strict indices whose (unit-coefficient) sum equals ``idx``.
    """
    if L not in idx.a:
        return [idx]
    j = idx.a.index(L)
    strict = Index(idx.b, idx.a[:j] + (S,) + idx.a[j + 1:])
    merged = Index(
        idx.b[:j] + (idx.b[j] + idx.b[j + 1],) + idx.b[j + 2:],
        idx.a[:j] + idx.a[j + 1:],
    )
    return reduce_large(strict) + reduce_large(merged)


def encode_chen(idx: Index) -> tuple[str, ...]:
    """Form-word of the iterated-integral representation (outermost letter first)."""
    if idx.depth == 0:
        raise ValueError("the empty index has no form-word")
    out: list[str] = []
    for j, bj in enumerate(idx.b):
        out.extend([W0] * (bj - 1))
        if j < len(idx.a):
            out.append(WS if idx.a[j] == S else WL)
        else:
            out.append(WS)
    return tuple(out)


def decode_chen(word: Sequence[str]) -> Index:
    word = tuple(word)
    if not word or word[-1] != WS:
        raise ValueError("a decodable form-word ends with Ws")
    if any(x not in LETTERS for x in word):
        raise ValueError(f"unknown letters in {word}")
    b: list[int] = []
    a: list[str] = []
    run = 0
    for letter in word:
        run += 1
        if letter == W0:
            continue
        b.append(run)
        a.append(S if letter == WS else L)
        run = 0
    a.pop()  # the terminating Ws is not a separator
    return Index(tuple(b), tuple(a))


_SWAP = {W0: WS, WS: W0, WL: WL}


def dual(word: Sequence[str]) -> tuple[str, ...]:
    """Reverse and swap dx/x <-> dx/(1-x); the x(1-x) letter is fixed."""
    return tuple(_SWAP[x] for x in reversed(tuple(word)))


def dual_index(idx: Index) -> Index:
    return decode_chen(dual(encode_chen(idx)))


def converges_at_one(idx: Index) -> bool:
    return idx.depth >= 1 and idx.b[0] >= 2


def ones(m: int, seps: Iterable[str] = ()) -> Index:
    """Index {1}_m with the given separator word."""
    return Index((1,) * m, tuple(seps))


# Families used by the approximation problems ---------------------------------


def ls_word(rho: int) -> tuple[str, ...]:
    """{l s}_rho l"""
    return power_word((L, S), rho) + (L,)


def sl_word(rho: int) -> tuple[str, ...]:
    """{s l}_rho"""
    return power_word((S, L), rho)


def idx_two_ones_ls(rho: int) -> Index:
    """2{1}_{2rho+1} with separators {ls}_rho l."""
    return Index((2,) + (1,) * (2 * rho + 1), ls_word(rho))


def idx_ones_ls(rho: int) -> Index:
    """{1}_{2rho+2} with separators {ls}_rho l."""
    return Index((1,) * (2 * rho + 2), ls_word(rho))


def idx_ones_sl(rho: int) -> Index:
    """{1}_{2rho+1} with separators {sl}_rho."""
    return Index((1,) * (2 * rho + 1), sl_word(rho))


def idx_ones_even(m: int) -> Index:
    """{1}_{2m} with separators {ls}_{m-1} l; the empty index when m = 0."""
    return EMPTY if m == 0 else idx_ones_ls(m - 1)


def idx_one_twos_l(m: int) -> Index:
    """1{2}_m with separators {l}_m."""
    return Index((1,) + (2,) * m, (L,) * m)


def idx_twos_l(m: int) -> Index:
    """{2}_{m+1} with separators {l}_m."""
    return Index((2,) * (m + 1), (L,) * m)


def idx_two_ones_sl(k: int) -> Index:
    """2{1}_{2k} with separators {sl}_k."""
    return Index((2,) + (1,) * (2 * k), sl_word(k))


def dual_pair_ones(k: int) -> Index:
    """2{1}_{2k-1} with separators {ls}_{k-1} l."""
    return Index((2,) + (1,) * (2 * k - 1), power_word((L, S), k - 1) + (L,))


def dual_pair_twos(k: int) -> Index:
    """{2}_k 1 with separators {l}_k."""
    return Index((2,) * k + (1,), (L,) * k)


class ArgFrame(str, Enum):
    """Argument in which a polylogarithm is evaluated."""

    DIRECT = "direct"  # z
    INVERSE = "inverse"  # 1/z
    ONE_MINUS = "oneminus"  # 1 - z

    def __str__(self) -> str:
        return self.value

from hypothesis import given
from hypothesis import strategies as st

from mzvpade.coeffs import taylor
from mzvpade.words import (
    EMPTY,
    Index,
    converges_at_one,
    decode_chen,
    dual,
    dual_index,
    encode_chen,
    format_index,
    idx_ones_even,
    parse_index,
    dual_pair_ones,
    dual_pair_twos,
    reduce_large,
)


@st.composite
def indices(draw, max_depth=4, max_b=3):
    p = draw(st.integers(1, max_depth))
    b = tuple(draw(st.integers(1, max_b)) for _ in range(p))
    a = tuple(draw(st.sampled_from("ls")) for _ in range(p - 1))
    return Index(b, a)


def test_parse_and_format():
    idx = parse_index("2,1,1,1;lsl")
    assert idx.b == (2, 1, 1, 1) and idx.a == ("l", "s", "l")
    assert format_index(idx) == "2,1,1,1;lsl"
    assert parse_index("1;") == Index((1,))


@given(indices())
def test_chen_round_trip(idx):
    word = encode_chen(idx)
    assert len(word) == idx.weight
    assert decode_chen(word) == idx


@given(indices())
def test_duality_is_an_involution(idx):
    w = encode_chen(idx)
    assert dual(dual(w)) == w


@given(indices())
def test_dual_preserves_weight_when_defined(idx):
    if idx.b[0] >= 2:  # then the dual word ends with Ws and decodes
        assert dual_index(idx).weight == idx.weight


def test_duality_sends_odd_family_to_twos():
    for k in range(1, 9):
        assert dual_index(dual_pair_ones(k)) == dual_pair_twos(k)


@given(indices(max_depth=3))
def test_reduce_large_matches_taylor(idx):
    K = 9
    pieces = reduce_large(idx)
    assert all(p.is_strict for p in pieces)
    total = [sum(taylor(p, K).c[k] for p in pieces) for k in range(K + 1)]
    assert total[1:] == list(taylor(idx, K).c[1:])


def test_families():
    assert idx_ones_even(0) == EMPTY
    assert format_index(idx_ones_even(2)) == "1,1,1,1;lsl"
    assert converges_at_one(parse_index("2,1;l"))
    assert not converges_at_one(parse_index("1,2;l"))

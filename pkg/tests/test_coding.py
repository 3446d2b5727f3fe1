import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fbmclink import ConvCode, conv_encode, viterbi_decode

# Hand-traced impulse response of the (133, 171) encoder: the seven
# interleaved (g1, g2) tap pairs of 1011011 / 1111001.
IMPULSE_RESPONSE = [1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1]


def test_generator_taps_match_octal():
    taps = ConvCode().taps()
    assert taps[0].tolist() == [1, 0, 1, 1, 0, 1, 1]   # 133 octal
    assert taps[1].tolist() == [1, 1, 1, 1, 0, 0, 1]   # 171 octal


def test_all_zero_input_encodes_to_zero():
    assert not conv_encode(np.zeros(50, dtype=int)).any()


def test_impulse_response():
    out = conv_encode([1])
    assert out.tolist() == IMPULSE_RESPONSE
    assert out.size == 14


def test_linearity_over_gf2():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.integers(0, 2, 40)
        b = rng.integers(0, 2, 40)
        lhs = conv_encode(a ^ b)
        rhs = conv_encode(a) ^ conv_encode(b)
        assert np.array_equal(lhs, rhs)


def test_output_length():
    assert conv_encode(np.zeros(80, dtype=int)).size == 2 * (80 + 6)


def test_noiseless_round_trip_many_blocks():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        b = rng.integers(0, 2, 80)
        assert np.array_equal(viterbi_decode(conv_encode(b)), b)


def test_exhaustive_double_error_correction():
    """Free distance 10 corrects any 2 flipped coded bits exhaustively
    on a length-20 block."""
    rng = np.random.default_rng(2)
    b = rng.integers(0, 2, 20)
    coded = conv_encode(b)
    for i, j in itertools.combinations(range(coded.size), 2):
        noisy = coded.copy()
        noisy[i] ^= 1
        noisy[j] ^= 1
        assert np.array_equal(viterbi_decode(noisy), b), (i, j)


def test_tail_only_frame_decodes_to_empty():
    coded = conv_encode(np.zeros(0, dtype=int))
    assert coded.size == 12
    assert viterbi_decode(coded).size == 0


def test_odd_length_rejected():
    with pytest.raises(ValueError):
        viterbi_decode([0, 1, 0])


def test_non_binary_rejected():
    with pytest.raises(ValueError):
        conv_encode([0, 2, 1])


def test_maximum_likelihood_against_exhaustive_search():
    """The decoded word re-encodes at least as close to the received
    word as any other candidate (checked against brute force over all
    2^10 information words)."""
    rng = np.random.default_rng(3)
    table = {tuple(conv_encode(np.array(bits))): np.array(bits)
             for bits in itertools.product((0, 1), repeat=10)}
    codewords = np.array([list(k) for k in table])
    for _ in range(20):
        b = rng.integers(0, 2, 10)
        received = conv_encode(b)
        flips = rng.choice(received.size, size=3, replace=False)
        received[flips] ^= 1
        decoded = viterbi_decode(received)
        d_dec = int(np.sum(conv_encode(decoded) != received))
        d_best = int(np.min(np.sum(codewords != received, axis=1)))
        assert d_dec == d_best
        assert int(np.sum(conv_encode(b) != received)) >= d_dec


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=0, max_size=200))
def test_round_trip_property(bits):
    b = np.asarray(bits, dtype=np.int64)
    assert np.array_equal(viterbi_decode(conv_encode(b)), b)

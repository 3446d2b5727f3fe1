"""Rate-1/2 convolutional code (133, 171 octal, K = 7) with Viterbi decoding.

Zero-terminated: six tail zeros flush the register, so a length-n
message encodes to 2*(n + 6) coded bits.  Decoding is hard-decision
maximum likelihood over the 64-state trellis with full traceback to the
terminating all-zero state.  The hot loops are numba-compiled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

CONSTRAINT_LENGTH = 7
NUM_STATES = 1 << (CONSTRAINT_LENGTH - 1)
TAIL_BITS = CONSTRAINT_LENGTH - 1


@dataclass(frozen=True)
class ConvCode:
    generators: tuple[int, int] = (0o133, 0o171)
    constraint_length: int = CONSTRAINT_LENGTH

    def __post_init__(self):
        if self.constraint_length != CONSTRAINT_LENGTH:
            raise ValueError("only constraint length 7 is supported")
        for g in self.generators:
            if g >> self.constraint_length:
                raise ValueError(f"generator {g:o} too long")

    @property
    def rate(self) -> float:
        return 0.5

    def taps(self) -> np.ndarray:
        """Generator taps as two MSB-first 0/1 rows of length 7."""
        out = np.zeros((2, CONSTRAINT_LENGTH), dtype=np.int64)
        for i, g in enumerate(self.generators):
            for k in range(CONSTRAINT_LENGTH):
                out[i, k] = (g >> (CONSTRAINT_LENGTH - 1 - k)) & 1
        return out


def _tables(code: ConvCode):
    """(next_state, output_pair) tables indexed by [state, input_bit].

    The state register holds the last six input bits, newest in the most
    significant position; ``output_pair`` packs the two coded bits as
    g1*2 + g2.
    """
    taps = code.taps()
    nxt = np.zeros((NUM_STATES, 2), dtype=np.int64)
    out = np.zeros((NUM_STATES, 2), dtype=np.int64)
    for state in range(NUM_STATES):
        for bit in (0, 1):
            window = (bit << TAIL_BITS) | state  # [u, s5..s0] MSB-first
            bits7 = [(window >> (CONSTRAINT_LENGTH - 1 - k)) & 1
                     for k in range(CONSTRAINT_LENGTH)]
            o1 = sum(b * t for b, t in zip(bits7, taps[0])) & 1
            o2 = sum(b * t for b, t in zip(bits7, taps[1])) & 1
            nxt[state, bit] = window >> 1
            out[state, bit] = (o1 << 1) | o2
    return nxt, out


_DEFAULT_CODE = ConvCode()
_NEXT, _OUT = _tables(_DEFAULT_CODE)


@njit(cache=True)
def _encode_kernel(bits, nxt, out):
    n = bits.size
    coded = np.empty(2 * (n + TAIL_BITS), dtype=np.int64)
    state = 0
    for i in range(n + TAIL_BITS):
        b = bits[i] if i < n else 0
        pair = out[state, b]
        coded[2 * i] = pair >> 1
        coded[2 * i + 1] = pair & 1
        state = nxt[state, b]
    return coded


@njit(cache=True)
def _viterbi_kernel(coded, nxt, out):
    steps = coded.size // 2
    n_info = steps - TAIL_BITS
    metrics = np.full(NUM_STATES, 1 << 30, dtype=np.int64)
    metrics[0] = 0
    decisions = np.empty((steps, NUM_STATES), dtype=np.uint8)
    new_metrics = np.empty(NUM_STATES, dtype=np.int64)
    prev_state = np.empty((NUM_STATES, 2), dtype=np.int64)
    prev_bit = np.empty((NUM_STATES, 2), dtype=np.int64)
    # invert the transition table once: each state has two predecessors
    count = np.zeros(NUM_STATES, dtype=np.int64)
    for s in range(NUM_STATES):
        for b in range(2):
            t = nxt[s, b]
            prev_state[t, count[t]] = s
            prev_bit[t, count[t]] = b
            count[t] += 1
    for step in range(steps):
        r = coded[2 * step] * 2 + coded[2 * step + 1]
        for t in range(NUM_STATES):
            best = 1 << 31
            choice = 0
            for k in range(2):
                s = prev_state[t, k]
                b = prev_bit[t, k]
                sym = out[s, b]
                d = ((sym >> 1) ^ (r >> 1)) + ((sym ^ r) & 1)
                m = metrics[s] + d
                if m < best:
                    best = m
                    choice = k
            new_metrics[t] = best
            decisions[step, t] = choice
        metrics[:] = new_metrics
    # traceback from the zero-terminated state
    bits = np.empty(steps, dtype=np.int64)
    state = 0
    for step in range(steps - 1, -1, -1):
        k = decisions[step, state]
        bits[step] = prev_bit[state, k]
        state = prev_state[state, k]
    return bits[:n_info]


def conv_encode(bits, code: ConvCode = _DEFAULT_CODE) -> np.ndarray:
    """Encode and zero-terminate; output has 2*(len(bits)+6) bits."""
    bits = np.asarray(bits, dtype=np.int64).ravel()
    if bits.size and (bits.min() < 0 or bits.max() > 1):
        raise ValueError("bits must be 0/1")
    nxt, out = (_NEXT, _OUT) if code.generators == (0o133, 0o171) \
        else _tables(code)
    return _encode_kernel(bits, nxt, out)


def viterbi_decode(coded, code: ConvCode = _DEFAULT_CODE) -> np.ndarray:
    """Hard-decision ML decode of a zero-terminated codeword."""
    coded = np.asarray(coded, dtype=np.int64).ravel()
    if coded.size % 2:
        raise ValueError("coded length must be even")
    if coded.size < 2 * TAIL_BITS:
        raise ValueError("coded word shorter than the tail")
    nxt, out = (_NEXT, _OUT) if code.generators == (0o133, 0o171) \
        else _tables(code)
    return _viterbi_kernel(coded, nxt, out)

"""Synthesis and analysis filter banks (direct spreading form).

The subcarrier pulse is

    g_{m,n}(l) = g(l - n*M/2) * exp(j*2*pi/M * m * (l - D)) * theta_{m,n},
    theta_{m,n} = j^(m+n) * (-1)^(m*n),   D = (L_g - 1)/2.

The extra (-1)^(m*n) beside the usual j^(m+n) staggering phase is what
gives the first-order interference weights their subcarrier-parity sign
structure (it cancels the (-1)^(m*n) picked up by the modulation across
the half-symbol shift, making the weight stencil time-invariant).

Both transforms are evaluated per half-symbol block; the M-point DFT
inside each block is an exact rewrite of the direct double sum, not an
approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import FrameGrid
from .prototype import PrototypeFilter


@dataclass(frozen=True)
class TimeSignal:
    """Complex baseband samples of one frame."""

    samples: np.ndarray
    num_subcarriers: int
    num_cols: int
    filter_length: int

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", s)

    @property
    def sample_count(self) -> int:
        return self.samples.size

    @classmethod
    def frame_length(cls, M: int, N: int, Lg: int) -> int:
        return (N - 1) * M // 2 + Lg


@dataclass(frozen=True)
class AfbOutput:
    """M x N complex lattice observed at the analysis filter bank."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values",
                           np.asarray(self.values, dtype=complex))


def _phase_table(M: int, N: int, D: float) -> np.ndarray:
    m = np.arange(M)[:, None]
    n = np.arange(N)[None, :]
    return 1j ** ((m + n) % 4) * np.exp(-2j * np.pi / M * m * D)


def synthesize(grid, filter: PrototypeFilter) -> TimeSignal:
    """Spread an OQAM grid into the time-domain frame signal."""
    symbols = grid.symbols if isinstance(grid, FrameGrid) else np.asarray(
        grid, dtype=complex)
    M = filter.num_subcarriers
    if symbols.ndim != 2 or symbols.shape[0] != M:
        raise ValueError(
            f"grid has {symbols.shape[0]} subcarriers, filter expects {M}")
    N = symbols.shape[1]
    g = filter.coefficients
    Lg = filter.length
    K = filter.overlap_factor
    c = symbols * _phase_table(M, N, filter.phase_center)
    blocks = np.tile(M * np.fft.ifft(c, axis=0), (K, 1)) * g[:, None]
    s = np.zeros(TimeSignal.frame_length(M, N, Lg), dtype=complex)
    half = M // 2
    for n in range(N):
        s[n * half:n * half + Lg] += blocks[:, n]
    return TimeSignal(s, M, N, Lg)


def analyze(signal, filter: PrototypeFilter, M: int, N: int) -> AfbOutput:
    """Correlate a received signal against every lattice pulse."""
    samples = signal.samples if isinstance(signal, TimeSignal) else (
        np.asarray(signal, dtype=complex))
    if M != filter.num_subcarriers:
        raise ValueError("M does not match the filter")
    g = filter.coefficients
    Lg = filter.length
    need = TimeSignal.frame_length(M, N, Lg)
    if samples.size < need:
        raise ValueError(
            f"signal too short: {samples.size} samples, need {need}")
    half = M // 2
    windows = np.lib.stride_tricks.sliding_window_view(
        samples[:need], Lg)[::half].T        # (Lg, N) overlapping windows
    folded = (windows * g[:, None]).reshape(
        filter.overlap_factor, M, N).sum(axis=0)
    y = np.conj(_phase_table(M, N, filter.phase_center)) * np.fft.fft(
        folded, axis=0)
    return AfbOutput(y)


def signal_to_csv(signal: TimeSignal, path) -> None:
    """Debug dump: lines of ``index,re,im``."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for i, v in enumerate(signal.samples):
            f.write(f"{i},{v.real:.12g},{v.imag:.12g}\n")

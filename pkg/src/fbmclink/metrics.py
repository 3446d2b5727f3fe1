"""BER, NMSE, PAPR and CCDF computation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .transceiver import TimeSignal


@dataclass(frozen=True)
class MetricRecord:
    """Aggregated result of one (scheme, channel, M, SNR) cell."""

    scheme: str
    channel: str
    num_subcarriers: int
    snr_db: float
    trials: int
    bit_errors: int
    bits_total: int
    nmse_linear: float

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_total if self.bits_total else 0.0

    @property
    def nmse_db(self) -> float:
        if self.nmse_linear <= 0.0:
            return -math.inf
        return 10.0 * math.log10(self.nmse_linear)


def ber(tx_bits, rx_bits) -> tuple[int, int, float]:
    """Exact (errors, total, ratio) between two equal-length bit arrays."""
    tx = np.asarray(tx_bits, dtype=np.int64).ravel()
    rx = np.asarray(rx_bits, dtype=np.int64).ravel()
    if tx.size != rx.size:
        raise ValueError(f"length mismatch: {tx.size} vs {rx.size}")
    errors = int(np.count_nonzero(tx != rx))
    return errors, tx.size, errors / tx.size if tx.size else 0.0


def nmse(h_true, h_est) -> float:
    """Per-trial normalized estimation error ||H - H^||^2 / ||H||^2."""
    h = np.asarray(h_true, dtype=complex).ravel()
    e = np.asarray(h_est, dtype=complex).ravel()
    if h.size != e.size:
        raise ValueError(f"length mismatch: {h.size} vs {e.size}")
    denom = float(np.sum(np.abs(h) ** 2))
    if denom == 0.0:
        raise ValueError("true CFR has zero energy")
    return float(np.sum(np.abs(h - e) ** 2)) / denom


def papr(signal) -> float:
    """Peak-to-average power ratio (linear) over the frame's samples.

    |s(l)|^2 is used for complex signals.
    """
    samples = signal.samples if isinstance(signal, TimeSignal) else (
        np.asarray(signal, dtype=complex))
    power = np.abs(samples) ** 2
    mean = float(np.mean(power))
    if mean == 0.0:
        raise ValueError("all-zero signal has no PAPR")
    return float(np.max(power)) / mean


def ccdf(samples_linear, thresholds_db) -> list[tuple[float, float]]:
    """Empirical P(PAPR > threshold) per threshold (thresholds in dB)."""
    s = np.asarray(samples_linear, dtype=float).ravel()
    if s.size == 0:
        raise ValueError("no PAPR samples")
    s_db = 10.0 * np.log10(s)
    return [(float(t), float(np.mean(s_db > t))) for t in thresholds_db]

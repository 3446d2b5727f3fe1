"""CFR estimation from the pilot column, one-tap equalization, demapping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import PREAMBLE_COLS, PseudoPilotVector, Scheme
from .transceiver import AfbOutput

DEEP_FADE_THRESHOLD = 1e-9


class DegeneratePilotError(ValueError):
    """A pseudo-pilot magnitude is (numerically) zero.

    Cannot happen for the four supported preambles, whose magnitudes are
    bounded below by the pilot amplitude; it signals a broken preamble.
    """


@dataclass(frozen=True)
class CfrEstimate:
    values: np.ndarray
    scheme: Scheme | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if not np.all(np.isfinite(v)):
            raise ValueError("CFR estimate contains non-finite values")
        object.__setattr__(self, "values", v)


def estimate_cfr(afb: AfbOutput, pilots: PseudoPilotVector,
                 scheme: Scheme | None = None) -> CfrEstimate:
    """Least-squares per-subcarrier estimate H_p = y_{p,1} / C_p."""
    y = afb.values if isinstance(afb, AfbOutput) else np.asarray(
        afb, dtype=complex)
    c = pilots.values
    if np.min(np.abs(c)) < 1e-12:
        raise DegeneratePilotError("pseudo-pilot magnitude below 1e-12")
    return CfrEstimate(y[:, 1] / c, scheme)


def equalize(afb: AfbOutput, cfr: CfrEstimate,
             payload_start: int = PREAMBLE_COLS):
    """Zero-forcing one-tap equalization of the payload columns.

    Returns ``(lattice, deep_fade)``: the real part of y / H per payload
    cell, and a boolean mask of subcarriers whose estimated CFR
    magnitude is below the deep-fade threshold (those cells are passed
    through unequalized and flagged for diagnostics).
    """
    y = afb.values if isinstance(afb, AfbOutput) else np.asarray(
        afb, dtype=complex)
    h = cfr.values
    deep = np.abs(h) < DEEP_FADE_THRESHOLD
    h_safe = np.where(deep, 1.0, h)
    lattice = (y[:, payload_start:] / h_safe[:, None]).real
    return lattice, deep


def oqam_demap(lattice: np.ndarray, M: int, n_symbols: int) -> np.ndarray:
    """Hard-decision inverse of ``qpsk_to_oqam``.

    Sign decisions on consecutive column pairs reassemble the Gray map
    (negative value -> bit 1).
    """
    lattice = np.asarray(lattice, dtype=float)
    if lattice.shape != (M, 2 * n_symbols):
        raise ValueError(
            f"lattice shape {lattice.shape} != ({M}, {2 * n_symbols})")
    bits = np.empty((n_symbols, M, 2), dtype=np.int64)
    bits[:, :, 0] = (lattice[:, 0::2] < 0).T
    bits[:, :, 1] = (lattice[:, 1::2] < 0).T
    return bits.reshape(-1)

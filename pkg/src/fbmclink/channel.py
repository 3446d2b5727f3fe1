"""Tapped-delay-line channels, block fading, AWGN, and exact CFR.

Tap tables live in ``data/channels/*.txt`` (lines of ``delay_ns
power_db`` under a ``# name source`` header).  Delays are mapped to the
sample grid of the given rate by rounding; taps that land on the same
sample are combined by power.  Fading is block fading: one draw per
realization, constant over the frame.  The AWGN and the two IEEE
profiles are time-invariant (deterministic real tap gains); Rayleigh,
Rician and Veh-A redraw per seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

PROFILE_FILES = {
    "AWGN": "awgn.txt",
    "RAYLEIGH": "rayleigh.txt",
    "RICIAN": "rician.txt",
    "VEH_A": "veh_a.txt",
    "IEEE80222": "ieee80222.txt",
    "IEEE80211": "ieee80211.txt",
}
_FADING = {
    "AWGN": "none",
    "IEEE80222": "none",
    "IEEE80211": "none",
    "RAYLEIGH": "rayleigh",
    "VEH_A": "rayleigh",
    "RICIAN": "rician",
}
DEFAULT_RICIAN_K_DB = 10.0


@dataclass(frozen=True)
class ChannelProfile:
    name: str
    delays_s: np.ndarray
    powers_lin: np.ndarray      # normalized, sums to 1
    fading: str                 # none | rayleigh | rician
    sample_rate: float
    rician_k_db: float = DEFAULT_RICIAN_K_DB

    def __post_init__(self):
        d = np.asarray(self.delays_s, dtype=float)
        p = np.asarray(self.powers_lin, dtype=float)
        if np.any(d < 0) or np.any(np.diff(d) <= 0) and d.size > 1:
            raise ValueError("delays must be non-negative and increasing")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError("tap powers must sum to 1")
        object.__setattr__(self, "delays_s", d)
        object.__setattr__(self, "powers_lin", p)

    @property
    def num_taps(self) -> int:
        return self.delays_s.size


@dataclass(frozen=True)
class ChannelRealization:
    """One block-fading draw with its exact frequency response."""

    impulse_response: np.ndarray   # complex taps on the sample grid
    cfr: np.ndarray                # length-M exact DFT of the taps
    seed: int

    @property
    def memory(self) -> int:
        return self.impulse_response.size - 1


def _read_taps(name: str) -> tuple[np.ndarray, np.ndarray]:
    ref = resources.files("fbmclink.data.channels").joinpath(
        PROFILE_FILES[name])
    delays, powers = [], []
    for line in ref.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        d_ns, p_db = line.split()
        delays.append(float(d_ns) * 1e-9)
        powers.append(10.0 ** (float(p_db) / 10.0))
    return np.asarray(delays), np.asarray(powers)


def make_profile(name: str, sample_rate: float,
                 rician_k_db: float = DEFAULT_RICIAN_K_DB) -> ChannelProfile:
    """Named tapped-delay-line profile at the given sample rate."""
    key = name.upper()
    if key not in PROFILE_FILES:
        raise ValueError(
            f"unknown channel {name!r}; choose from {sorted(PROFILE_FILES)}")
    if sample_rate <= 0:
        raise ValueError("sample_rate must be positive")
    delays, powers = _read_taps(key)
    return ChannelProfile(key, delays, powers / powers.sum(), _FADING[key],
                          float(sample_rate), rician_k_db)


def realize(profile: ChannelProfile, seed: int,
            num_subcarriers: int) -> ChannelRealization:
    """Draw tap gains, place them on the sample grid, compute the CFR.

    Fractional delays round to the nearest sample; coincident taps add
    as complex gains.  The CFR is the exact DFT of the gridded impulse
    response at the ``num_subcarriers`` subcarrier frequencies.
    """
    n_k = np.round(profile.delays_s * profile.sample_rate).astype(int)
    amp = np.sqrt(profile.powers_lin)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    if profile.fading == "none":
        gains = amp.astype(complex)
    elif profile.fading == "rayleigh":
        gains = amp / math.sqrt(2.0) * (
            rng.standard_normal(profile.num_taps)
            + 1j * rng.standard_normal(profile.num_taps))
    elif profile.fading == "rician":
        k_lin = 10.0 ** (profile.rician_k_db / 10.0)
        scatter = rng.standard_normal(profile.num_taps) + \
            1j * rng.standard_normal(profile.num_taps)
        gains = amp * scatter / math.sqrt(2.0 * (k_lin + 1.0))
        gains[0] += amp[0] * math.sqrt(k_lin / (k_lin + 1.0))
    else:  # pragma: no cover
        raise ValueError(f"unknown fading kind {profile.fading!r}")

    h = np.zeros(int(n_k.max()) + 1, dtype=complex)
    np.add.at(h, n_k, gains)
    p = np.arange(num_subcarriers)
    cfr = np.zeros(num_subcarriers, dtype=complex)
    for nk, gain in zip(n_k, gains):
        cfr += gain * np.exp(-2j * np.pi * p * nk / num_subcarriers)
    return ChannelRealization(h, cfr, seed)


def apply_channel(signal, realization: ChannelRealization):
    """Linear convolution with the realized impulse response."""
    from .transceiver import TimeSignal

    if isinstance(signal, TimeSignal):
        out = np.convolve(signal.samples, realization.impulse_response)
        return TimeSignal(out, signal.num_subcarriers, signal.num_cols,
                          signal.filter_length)
    return np.convolve(np.asarray(signal, dtype=complex),
                       realization.impulse_response)


def add_awgn(signal, snr_db: float, seed: int,
             signal_power_reference: float):
    """Add circularly symmetric white Gaussian noise.

    Per-sample noise variance is ``signal_power_reference * 10^(-snr/10)``
    where the reference is the mean transmitted payload power, so the
    SNR axis is identical for every preamble scheme.  ``snr_db = inf``
    returns the input unchanged.
    """
    from .transceiver import TimeSignal

    if math.isinf(snr_db) and snr_db > 0:
        return signal
    if not math.isfinite(snr_db):
        raise ValueError(f"snr_db must be finite or +inf, got {snr_db}")
    samples = signal.samples if isinstance(signal, TimeSignal) else (
        np.asarray(signal, dtype=complex))
    sigma2 = signal_power_reference * 10.0 ** (-snr_db / 10.0)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    noise = rng.standard_normal(2 * samples.size)
    noise = math.sqrt(sigma2 / 2.0) * (noise[0::2] + 1j * noise[1::2])
    out = samples + noise
    if isinstance(signal, TimeSignal):
        return TimeSignal(out, signal.num_subcarriers, signal.num_cols,
                          signal.filter_length)
    return out

"""OQAM time-frequency frame: QPSK payload staggering and the training
preambles of the four estimation schemes.

Preamble layouts (columns are half-symbol instants q = 0, 1, 2; the
pilot column is q = 1; d is the pilot amplitude; patterns repeat with
period 4 in the subcarrier index p and wrap cyclically, so M must be a
multiple of 4):

IAM-C     middle column d * [+1, -j, -1, +j], side columns null.  The
          base real pattern [+1, +1, -1, -1] has its odd-indexed entries
          rotated onto the imaginary axis; the rotation sense is the one
          that makes the neighbor interference add in phase (the other
          sense subtracts, which the construction check rejects).
E-IAM-C   middle as IAM-C; left_p = (-1)^p * j * middle_p and
          right = -left, which turns the time-direction interference
          coherent as well.
M-IAM     middle column d * [+1, +1, -1, -1]; every odd-indexed row is
          flanked by (-middle_p, +middle_p); even rows keep null sides.
NPS       middle column d * [+1, +1, -1, -1]; side cells all nonzero
          with the asymmetric per-row-class map
            p % 4 == 0: (+d, -d),  p % 4 == 1: (-d, -d),
            p % 4 == 2: (+d, +d),  p % 4 == 3: (+d, +d).

Each layout is verified at construction time against the closed-form
pseudo-pilot magnitudes (see ``expected_magnitudes``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .prototype import InterferenceWeightTable

PREAMBLE_COLS = 3
PAYLOAD_AMPLITUDE = 1.0 / np.sqrt(2.0)

# Gray-mapped QPSK: bit pair (b0, b1) -> ((1-2*b0) + 1j*(1-2*b1))/sqrt(2)
# b0 selects the in-phase sign, b1 the quadrature sign; 00 -> (+,+).


class Scheme(str, enum.Enum):
    IAM_C = "IAM_C"
    E_IAM_C = "E_IAM_C"
    NPS = "NPS"
    M_IAM = "M_IAM"


@dataclass(frozen=True)
class PreambleSpec:
    scheme: Scheme
    pilot_amplitude: float = PAYLOAD_AMPLITUDE

    def __post_init__(self):
        if self.pilot_amplitude <= 0:
            raise ValueError("pilot_amplitude must be positive")
        object.__setattr__(self, "scheme", Scheme(self.scheme))


@dataclass(frozen=True)
class FrameGrid:
    """M x N lattice: 3 preamble columns followed by real payload."""

    symbols: np.ndarray
    num_subcarriers: int
    num_cols: int
    preamble_cols: int = PREAMBLE_COLS

    def __post_init__(self):
        s = np.asarray(self.symbols, dtype=complex)
        object.__setattr__(self, "symbols", s)
        if s.shape != (self.num_subcarriers, self.num_cols):
            raise ValueError("symbol array shape mismatch")
        if self.num_cols > self.preamble_cols:
            pay = s[:, self.preamble_cols:]
            if np.max(np.abs(pay.imag)) > 0:
                raise ValueError("payload cells must be real-valued")

    @property
    def payload(self) -> np.ndarray:
        return self.symbols[:, self.preamble_cols:].real


@dataclass(frozen=True)
class PseudoPilotVector:
    """Effective complex pilots C_p of the middle preamble column."""

    values: np.ndarray

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)


def qpsk_to_oqam(bits, M: int, n_symbols: int) -> np.ndarray:
    """Map Gray-coded QPSK bits onto real OQAM payload columns.

    Each complex symbol occupies two consecutive half-symbol columns
    (in-phase first, quadrature second) at amplitude 1/sqrt(2) per
    component.  The serial bit stream fills the band symbol instant by
    symbol instant (all M subcarriers of symbol 0, then symbol 1, ...),
    so consecutive coded bits land on different subcarriers and a faded
    subcarrier never produces a long error burst at the decoder.
    Returns an M x (2*n_symbols) float array.
    """
    bits = np.asarray(bits, dtype=np.int64).ravel()
    if bits.size != 2 * M * n_symbols:
        raise ValueError(
            f"expected {2 * M * n_symbols} bits, got {bits.size}")
    pairs = bits.reshape(n_symbols, M, 2)
    cols = np.empty((M, 2 * n_symbols))
    cols[:, 0::2] = ((1 - 2 * pairs[:, :, 0]) * PAYLOAD_AMPLITUDE).T
    cols[:, 1::2] = ((1 - 2 * pairs[:, :, 1]) * PAYLOAD_AMPLITUDE).T
    return cols


def build_preamble(spec: PreambleSpec, M: int,
                   weights: InterferenceWeightTable) -> np.ndarray:
    """Construct the scheme's M x 3 preamble columns.

    The returned grid is checked against the per-row closed-form
    pseudo-pilot magnitudes; a mismatch raises RuntimeError since it
    can only come from a construction bug.
    """
    if M % 4:
        raise ValueError("M must be a multiple of 4 (patterns have period 4)")
    spec = PreambleSpec(spec.scheme, spec.pilot_amplitude)
    d = spec.pilot_amplitude
    p = np.arange(M)
    base = np.where(p % 4 < 2, 1.0, -1.0)        # [+, +, -, -]
    grid = np.zeros((M, PREAMBLE_COLS), dtype=complex)

    if spec.scheme is Scheme.IAM_C:
        mid = base.astype(complex)
        mid[1::2] *= -1j
        grid[:, 1] = d * mid
    elif spec.scheme is Scheme.E_IAM_C:
        mid = base.astype(complex)
        mid[1::2] *= -1j
        left = ((-1.0) ** p) * 1j * mid
        grid[:, 0] = d * left
        grid[:, 1] = d * mid
        grid[:, 2] = -d * left
    elif spec.scheme is Scheme.M_IAM:
        grid[:, 1] = d * base
        odd = p[p % 2 == 1]
        grid[odd, 0] = -d * base[odd]
        grid[odd, 2] = +d * base[odd]
    elif spec.scheme is Scheme.NPS:
        grid[:, 1] = d * base
        side = {0: (+d, -d), 1: (-d, -d), 2: (+d, +d), 3: (+d, +d)}
        for r, (lv, rv) in side.items():
            grid[p % 4 == r, 0] = lv
            grid[p % 4 == r, 2] = rv
    else:  # pragma: no cover - Scheme() already validates
        raise ValueError(f"unknown scheme {spec.scheme}")

    got = np.abs(compute_pseudo_pilots(grid, weights).values)
    want = expected_magnitudes(spec.scheme, M, d, weights)
    if np.max(np.abs(got - want)) > 1e-9:
        raise RuntimeError(
            f"{spec.scheme.value} preamble violates its magnitude "
            f"constraint (max err {np.max(np.abs(got - want)):.3e})")
    return grid


def build_frame(preamble: np.ndarray, payload: np.ndarray) -> FrameGrid:
    """Concatenate preamble columns and real payload into a FrameGrid."""
    M = preamble.shape[0]
    if payload.shape[0] != M:
        raise ValueError("preamble/payload subcarrier count mismatch")
    symbols = np.concatenate(
        [preamble, payload.astype(complex)], axis=1)
    return FrameGrid(symbols, M, symbols.shape[1])


def compute_pseudo_pilots(grid: np.ndarray,
                          weights: InterferenceWeightTable
                          ) -> PseudoPilotVector:
    """Pseudo-pilots C_p = d_{p,1} + j * v_p of a 3-column preamble.

    v_p sums the first-order neighborhood {(p, q+-1), (p+-1, q+-1),
    (p+-1, q)} with the signed pattern of the active prototype;
    subcarrier indices wrap modulo M.
    """
    grid = np.asarray(grid, dtype=complex)
    if grid.ndim != 2 or grid.shape[1] != PREAMBLE_COLS:
        raise ValueError("preamble grid must have exactly 3 columns")
    M = grid.shape[0]
    pat = weights.signed_pattern
    up = np.roll(grid, 1, axis=0)    # row p-1
    dn = np.roll(grid, -1, axis=0)   # row p+1
    parity = np.arange(M) % 2
    v = np.zeros(M, dtype=complex)
    for dm, rows in ((-1, up), (0, grid), (1, dn)):
        for dq in (-1, 0, 1):
            if dm == 0 and dq == 0:
                continue
            w = pat[parity, dm + 2, dq + 1]
            v += rows[:, 1 + dq] * w
    return PseudoPilotVector(grid[:, 1] + 1j * v)


def magnitude_closed_form(scheme: Scheme, parity: str, d: float,
                          weights: InterferenceWeightTable) -> float:
    """Closed-form pseudo-pilot magnitude for a scheme and parity.

    These are the published per-parity expressions (the linear-looking
    IAM entries read as d*(1 + 2*beta) etc.).  For M-IAM they hold at
    every subcarrier of the given parity; for NPS the asymmetric layout
    realizes each one on half of its parity class -- see
    ``expected_magnitudes`` for the exact per-row map.
    """
    if parity not in ("odd", "even"):
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")
    b = abs(weights.beta)
    g = abs(weights.gamma)
    dl = abs(weights.delta)
    scheme = Scheme(scheme)
    if scheme is Scheme.IAM_C:
        return d * (1.0 + 2.0 * b)
    if scheme is Scheme.E_IAM_C:
        return d * (1.0 + 2.0 * (b + g))
    if scheme is Scheme.M_IAM:
        if parity == "odd":
            return d * np.sqrt(1.0 + 4.0 * (b + g) ** 2)
        return d * np.sqrt(1.0 + 4.0 * b ** 2)
    if parity == "odd":  # NPS
        return d * np.sqrt(1.0 + 4.0 * (b + dl) ** 2)
    return d * np.sqrt(1.0 + 4.0 * (b - g) ** 2)


def expected_magnitudes(scheme: Scheme, M: int, d: float,
                        weights: InterferenceWeightTable) -> np.ndarray:
    """Exact per-subcarrier |C_p| of the constructed preamble.

    IAM-C, E-IAM-C and M-IAM follow their closed forms at every row.
    NPS realizes the published even form at p%4==0 and the published
    odd form at p%4==1; its remaining rows evaluate to
    d*sqrt(1+4*beta^2) (p%4==2) and d*sqrt(1+4*(beta-delta)^2) (p%4==3).
    """
    b = abs(weights.beta)
    g = abs(weights.gamma)
    dl = abs(weights.delta)
    p = np.arange(M)
    scheme = Scheme(scheme)
    if scheme is Scheme.NPS:
        per_class = np.array([
            np.sqrt(1.0 + 4.0 * (b - g) ** 2),
            np.sqrt(1.0 + 4.0 * (b + dl) ** 2),
            np.sqrt(1.0 + 4.0 * b ** 2),
            np.sqrt(1.0 + 4.0 * (b - dl) ** 2),
        ])
        return d * per_class[p % 4]
    odd = magnitude_closed_form(scheme, "odd", d, weights)
    even = magnitude_closed_form(scheme, "even", d, weights)
    return np.where(p % 2 == 1, odd, even)


def grid_to_csv(grid: np.ndarray, path) -> None:
    """Debug dump: one row per subcarrier, cells as ``re+imj`` strings."""
    grid = np.asarray(grid, dtype=complex)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in grid:
            f.write(",".join(f"{c.real:g}{c.imag:+g}j" for c in row) + "\n")

"""Link-level FBMC/OQAM simulation with preamble-based channel estimation.

The package covers the full chain: prototype filter design, OQAM frame
construction with one of four training preambles (IAM-C, E-IAM-C, NPS,
M-IAM), synthesis/analysis filter banks, tapped-delay-line fading
channels, least-squares CFR estimation with one-tap equalization,
rate-1/2 convolutional coding, and a Monte Carlo sweep harness with a
batch CLI.
"""

from .prototype import (
    PrototypeFilter,
    InterferenceWeightTable,
    design_prototype,
    ambiguity,
    compute_weights,
)
from .lattice import (
    Scheme,
    PreambleSpec,
    FrameGrid,
    PseudoPilotVector,
    qpsk_to_oqam,
    build_preamble,
    build_frame,
    compute_pseudo_pilots,
    magnitude_closed_form,
    expected_magnitudes,
)
from .transceiver import TimeSignal, AfbOutput, synthesize, analyze
from .channel import (
    ChannelProfile,
    ChannelRealization,
    make_profile,
    realize,
    apply_channel,
    add_awgn,
)
from .estimation import CfrEstimate, estimate_cfr, equalize, oqam_demap
from .coding import ConvCode, conv_encode, viterbi_decode
from .metrics import MetricRecord, ber, nmse, papr, ccdf
from .harness import SimConfig, run_cell, run_sweep

__version__ = "0.1.0"

"""Monte Carlo sweep harness: scheme x channel x M x SNR cells.

Seeding: every stochastic draw comes from ``numpy`` PCG64 generators
keyed by ``SeedSequence(master_seed, spawn_key=(trial, stream))`` with
stream 0 = payload bits, 1 = channel draw, 2 = noise.  The derivation
depends only on (master_seed, trial index), never on the scheme or SNR,
so all schemes see identical data, channels and noise per trial (common
random numbers), SNR points reuse draws, and results are independent of
execution order.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import coding, estimation, lattice, metrics, transceiver
from .channel import add_awgn, apply_channel, make_profile, realize
from .lattice import PreambleSpec, Scheme
from .prototype import design_prototype, compute_weights

STREAM_BITS, STREAM_CHANNEL, STREAM_NOISE = 0, 1, 2
DEFAULT_SUBCARRIER_SPACING = 15e3
METRICS_HEADER = "scheme,channel,M,snr_db,trials,bit_errors,bits_total,ber,nmse_db"
CCDF_HEADER = "scheme,M,papr0_db,ccdf"
DEFAULT_CCDF_THRESHOLDS = [round(4.0 + 0.25 * i, 2) for i in range(81)]


@dataclass(frozen=True)
class SimConfig:
    schemes: tuple[str, ...] = tuple(s.value for s in Scheme)
    channels: tuple[str, ...] = ("VEH_A",)
    subcarrier_counts: tuple[int, ...] = (512,)
    snr_grid_db: tuple[float, ...] = tuple(float(v) for v in range(0, 31, 5))
    trials: int = 100
    payload_symbols: int = 40
    master_seed: int = 1
    pilot_amplitude: float = lattice.PAYLOAD_AMPLITUDE
    overlap_factor: int = 4
    rolloff: float = 1.0
    subcarrier_spacing: float = DEFAULT_SUBCARRIER_SPACING
    coding_enabled: bool = True
    early_stop_errors: int | None = None
    jobs: int = 1
    output_dir: str = "out"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.schemes:
            raise ValueError("scheme list is empty")
        if not self.channels:
            raise ValueError("channel list is empty")
        snrs = tuple(float(v) for v in self.snr_grid_db)
        if any(b <= a for a, b in zip(snrs, snrs[1:])):
            raise ValueError("snr grid must be strictly increasing")
        if any(m % 2 for m in self.subcarrier_counts):
            raise ValueError("subcarrier counts must be even")
        object.__setattr__(self, "schemes",
                           tuple(Scheme(s).value for s in self.schemes))
        object.__setattr__(self, "channels", tuple(self.channels))
        object.__setattr__(self, "subcarrier_counts",
                           tuple(int(m) for m in self.subcarrier_counts))
        object.__setattr__(self, "snr_grid_db", snrs)

    def config_hash(self) -> str:
        """Hash of the result-determining fields only; the output path
        and worker count do not change what is simulated."""
        fields = dataclasses.asdict(self)
        fields.pop("output_dir")
        fields.pop("jobs")
        blob = repr(sorted(fields.items())).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


def trial_seeds(master_seed: int, trial: int) -> tuple[int, int, int]:
    """Derived (bits, channel, noise) seeds for one trial index."""
    out = []
    for stream in (STREAM_BITS, STREAM_CHANNEL, STREAM_NOISE):
        ss = np.random.SeedSequence(master_seed, spawn_key=(trial, stream))
        out.append(int(ss.generate_state(1, np.uint64)[0]))
    return tuple(out)


@dataclass
class _CellContext:
    """Everything deterministic that a cell's trials share."""

    config: SimConfig
    scheme: str
    channel: str
    M: int
    filter: object = field(init=False)
    weights: object = field(init=False)
    preamble: np.ndarray = field(init=False)
    pilots: np.ndarray = field(init=False)
    profile: object = field(init=False)
    payload_power: float = field(init=False)

    def __post_init__(self):
        cfg = self.config
        self.filter = design_prototype(self.M, cfg.overlap_factor, cfg.rolloff)
        self.weights = compute_weights(self.filter)
        spec = PreambleSpec(Scheme(self.scheme), cfg.pilot_amplitude)
        self.preamble = lattice.build_preamble(spec, self.M, self.weights)
        self.pilots = lattice.compute_pseudo_pilots(self.preamble,
                                                    self.weights)
        self.profile = make_profile(self.channel,
                                    self.M * cfg.subcarrier_spacing)
        # mean payload power per sample, measured once on a reference frame
        ref_bits = np.random.default_rng(
            np.random.SeedSequence(cfg.master_seed, spawn_key=(0, 97))
        ).integers(0, 2, 2 * self.M * cfg.payload_symbols)
        pay = lattice.qpsk_to_oqam(ref_bits, self.M, cfg.payload_symbols)
        ref = transceiver.synthesize(
            np.concatenate([np.zeros((self.M, 3)), pay], axis=1).astype(complex),
            self.filter)
        self.payload_power = float(np.mean(np.abs(ref.samples) ** 2))


def _run_trial(ctx: _CellContext, snr_db: float, trial: int):
    """One frame through the full chain; returns (errors, bits, nmse, papr)."""
    cfg = ctx.config
    M = ctx.M
    seed_b, seed_c, seed_n = trial_seeds(cfg.master_seed, trial)
    rng_bits = np.random.default_rng(np.random.SeedSequence(seed_b))

    n_payload_cols = 2 * cfg.payload_symbols
    if cfg.coding_enabled:
        n_coded = 2 * M * cfg.payload_symbols
        n_info = n_coded // 2 - coding.TAIL_BITS
        info_bits = rng_bits.integers(0, 2, n_info)
        tx_bits = coding.conv_encode(info_bits)
    else:
        info_bits = rng_bits.integers(0, 2, 2 * M * cfg.payload_symbols)
        tx_bits = info_bits
    payload = lattice.qpsk_to_oqam(tx_bits, M, cfg.payload_symbols)
    frame = lattice.build_frame(ctx.preamble, payload)

    tx_signal = transceiver.synthesize(frame, ctx.filter)
    papr_value = metrics.papr(tx_signal)

    realization = realize(ctx.profile, seed_c, M)
    rx = apply_channel(tx_signal, realization)
    rx = add_awgn(rx, snr_db, seed_n, ctx.payload_power)

    afb = transceiver.analyze(rx, ctx.filter, M, frame.num_cols)
    cfr = estimation.estimate_cfr(afb, ctx.pilots, Scheme(ctx.scheme))
    trial_nmse = metrics.nmse(realization.cfr, cfr.values)
    eq, _ = estimation.equalize(afb, cfr)
    rx_bits = estimation.oqam_demap(eq, M, cfg.payload_symbols)
    if cfg.coding_enabled:
        decoded = coding.viterbi_decode(rx_bits)
    else:
        decoded = rx_bits
    errors, total, _ = metrics.ber(info_bits, decoded)
    return errors, total, trial_nmse, papr_value


def _run_trial_star(args):
    return _run_trial(*args)


def run_cell(config: SimConfig, scheme: str, channel: str, M: int,
             snr_db: float, executor: ProcessPoolExecutor | None = None,
             ctx: _CellContext | None = None):
    """All trials of one cell; returns (MetricRecord, papr sample list).

    Trials run independently with derived seeds and are reduced in trial
    order, so parallel execution is bit-identical to sequential.  With
    ``early_stop_errors`` set, accumulation stops at the first trial
    boundary where the error count reaches the threshold (evaluated in
    trial order regardless of execution order).
    """
    try:
        if ctx is None:
            ctx = _CellContext(config, Scheme(scheme).value, channel, M)
        results = []
        if executor is not None and config.jobs > 1:
            args = [(ctx, snr_db, t) for t in range(config.trials)]
            results = list(executor.map(_run_trial_star, args,
                                        chunksize=max(1, config.trials // (4 * config.jobs))))
        else:
            for t in range(config.trials):
                results.append(_run_trial(ctx, snr_db, t))
                if (config.early_stop_errors is not None
                        and sum(r[0] for r in results) >= config.early_stop_errors):
                    break
        if (executor is not None and config.jobs > 1
                and config.early_stop_errors is not None):
            acc = 0
            for i, r in enumerate(results):
                acc += r[0]
                if acc >= config.early_stop_errors:
                    results = results[:i + 1]
                    break
        errors = sum(r[0] for r in results)
        total = sum(r[1] for r in results)
        nmse_sum = 0.0
        for r in results:                 # fixed reduction order
            nmse_sum += r[2]
        record = metrics.MetricRecord(
            scheme=Scheme(scheme).value, channel=channel,
            num_subcarriers=M, snr_db=snr_db, trials=len(results),
            bit_errors=errors, bits_total=total,
            nmse_linear=nmse_sum / len(results))
        return record, [r[3] for r in results]
    except Exception as exc:
        raise RuntimeError(
            f"cell (scheme={scheme}, channel={channel}, M={M}, "
            f"snr_db={snr_db}) failed: {exc}") from exc


def _fmt(x: float) -> str:
    return repr(float(x))


def run_sweep(config: SimConfig, papr_only: bool = False,
              verbose: bool = False) -> list[str]:
    """Run the full sweep and write the CSV files.

    One metrics CSV row per (scheme, channel, M, snr_db); one PAPR CCDF
    CSV per (scheme, M).  Returns the list of written file paths.
    """
    out_dir = config.output_dir
    os.makedirs(out_dir, exist_ok=True)
    probe = os.path.join(out_dir, ".write_probe")
    try:
        with open(probe, "w") as f:
            f.write("")
        os.remove(probe)
    except OSError as exc:
        raise OSError(f"output path {out_dir!r} is not writable") from exc

    stamp = (f"# config_hash={config.config_hash()} "
             f"fbmclink_version={_tool_version()}")
    executor = None
    if config.jobs > 1:
        executor = ProcessPoolExecutor(max_workers=config.jobs)
    written = []
    try:
        metric_rows = []
        papr_samples = {}  # (scheme, M) -> list
        for scheme in config.schemes:
            for M in config.subcarrier_counts:
                key = (scheme, M)
                papr_samples.setdefault(key, [])
                for channel in config.channels:
                    ctx = _CellContext(config, scheme, channel, M)
                    if papr_only:
                        papr_samples[key].extend(
                            _papr_only_cell(config, ctx, executor))
                        break  # PAPR does not depend on the channel
                    for snr_db in config.snr_grid_db:
                        record, paprs = run_cell(config, scheme, channel, M,
                                                 snr_db, executor, ctx)
                        metric_rows.append(record)
                        papr_samples[key].extend(paprs)
                        if verbose:
                            print(f"{scheme} {channel} M={M} "
                                  f"snr={snr_db:g}: ber={record.ber:.3e} "
                                  f"nmse={record.nmse_db:+.2f} dB")
        if not papr_only:
            path = os.path.join(out_dir, "metrics.csv")
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(stamp + "\n")
                f.write(METRICS_HEADER + "\n")
                for r in metric_rows:
                    f.write(",".join([
                        r.scheme, r.channel, str(r.num_subcarriers),
                        _fmt(r.snr_db), str(r.trials), str(r.bit_errors),
                        str(r.bits_total), _fmt(r.ber), _fmt(r.nmse_db),
                    ]) + "\n")
            written.append(path)
        for (scheme, M), samples in papr_samples.items():
            if not samples:
                continue
            path = os.path.join(out_dir, f"ccdf_{scheme}_{M}.csv")
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(stamp + "\n")
                f.write(CCDF_HEADER + "\n")
                for thr, prob in metrics.ccdf(samples,
                                              DEFAULT_CCDF_THRESHOLDS):
                    f.write(f"{scheme},{M},{_fmt(thr)},{_fmt(prob)}\n")
            written.append(path)
    finally:
        if executor is not None:
            executor.shutdown()
    return written


def _papr_only_cell(config: SimConfig, ctx: _CellContext, executor):
    """Transmit-side only: PAPR of every trial frame (no channel/RX)."""
    vals = []
    for t in range(config.trials):
        seed_b, _, _ = trial_seeds(config.master_seed, t)
        rng_bits = np.random.default_rng(np.random.SeedSequence(seed_b))
        if config.coding_enabled:
            n_info = ctx.M * config.payload_symbols - coding.TAIL_BITS
            tx_bits = coding.conv_encode(rng_bits.integers(0, 2, n_info))
        else:
            tx_bits = rng_bits.integers(
                0, 2, 2 * ctx.M * config.payload_symbols)
        payload = lattice.qpsk_to_oqam(tx_bits, ctx.M,
                                       config.payload_symbols)
        frame = lattice.build_frame(ctx.preamble, payload)
        vals.append(metrics.papr(transceiver.synthesize(frame, ctx.filter)))
    return vals


def _tool_version() -> str:
    from . import __version__
    return __version__


def parse_config_file(path) -> dict:
    """Flat ``key=value`` config file (UTF-8, ``#`` comments)."""
    out = {}
    with open(path, encoding="utf-8") as f:
        for ln, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{ln}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key] = value
    return out

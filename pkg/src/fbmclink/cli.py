"""Batch CLI for the Monte Carlo sweep harness.

Example:
    fbmclink --schemes M_IAM,NPS --channels VEH_A --subcarriers 512 \
             --snr 0:5:30 --trials 200 --seed 7 --out results/
"""

from __future__ import annotations

import argparse
import math
import sys

from .harness import SimConfig, parse_config_file, run_sweep
from .lattice import Scheme


def _parse_snr(text: str) -> tuple[float, ...]:
    """``start:step:stop`` (inclusive stop), or a comma list, or ``inf``."""
    if ":" in text:
        start_s, step_s, stop_s = text.split(":")
        start, step, stop = float(start_s), float(step_s), float(stop_s)
        if step <= 0:
            raise ValueError("snr step must be positive")
        vals = []
        v = start
        while v <= stop + 1e-9:
            vals.append(round(v, 9))
            v += step
        return tuple(vals)
    return tuple(math.inf if v.strip().lower() in ("inf", "infinity")
                 else float(v) for v in text.split(","))


def _parse_list(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fbmclink",
        description="FBMC/OQAM link simulation sweep "
                    "(BER / NMSE / PAPR per preamble scheme)")
    p.add_argument("--schemes", type=_parse_list,
                   help="comma list of " + ",".join(s.value for s in Scheme))
    p.add_argument("--channels", type=_parse_list,
                   help="comma list of AWGN,RAYLEIGH,RICIAN,VEH_A,"
                        "IEEE80222,IEEE80211")
    p.add_argument("--subcarriers", type=_parse_list,
                   help="comma list of subcarrier counts, e.g. 512,2048")
    p.add_argument("--snr", type=_parse_snr, metavar="START:STEP:STOP",
                   help="SNR grid in dB (or comma list; 'inf' allowed)")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, help="64-bit master seed")
    p.add_argument("--out", help="output directory for CSV files")
    p.add_argument("--config", help="key=value config file; flags override")
    p.add_argument("--payload-symbols", type=int)
    p.add_argument("--pilot-amplitude", type=float)
    p.add_argument("--jobs", type=int, help="parallel worker processes")
    p.add_argument("--early-stop", type=int, metavar="ERRORS",
                   help="stop a cell once this many bit errors accumulate")
    p.add_argument("--papr-only", action="store_true",
                   help="transmit-side PAPR sweep only (no channel/receiver)")
    p.add_argument("--no-coding", action="store_true",
                   help="diagnostic: bypass the convolutional code")
    p.add_argument("--verbose", action="store_true")
    return p


_FILE_KEYS = {
    "schemes": ("schemes", _parse_list),
    "channels": ("channels", _parse_list),
    "subcarriers": ("subcarrier_counts", _parse_list),
    "snr": ("snr_grid_db", _parse_snr),
    "trials": ("trials", int),
    "seed": ("master_seed", int),
    "out": ("output_dir", str),
    "payload_symbols": ("payload_symbols", int),
    "pilot_amplitude": ("pilot_amplitude", float),
    "jobs": ("jobs", int),
    "early_stop": ("early_stop_errors", int),
    "no_coding": ("coding_enabled", lambda v: v.lower() not in ("1", "true", "yes")),
}


def config_from_args(args: argparse.Namespace) -> SimConfig:
    fields: dict = {}
    if args.config:
        for key, value in parse_config_file(args.config).items():
            if key not in _FILE_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            name, conv = _FILE_KEYS[key]
            fields[name] = conv(value)
    if args.schemes is not None:
        fields["schemes"] = args.schemes
    if args.channels is not None:
        fields["channels"] = args.channels
    if args.subcarriers is not None:
        fields["subcarrier_counts"] = args.subcarriers
    if args.snr is not None:
        fields["snr_grid_db"] = args.snr
    if args.trials is not None:
        fields["trials"] = args.trials
    if args.seed is not None:
        fields["master_seed"] = args.seed
    if args.out is not None:
        fields["output_dir"] = args.out
    if args.payload_symbols is not None:
        fields["payload_symbols"] = args.payload_symbols
    if args.pilot_amplitude is not None:
        fields["pilot_amplitude"] = args.pilot_amplitude
    if args.jobs is not None:
        fields["jobs"] = args.jobs
    if args.early_stop is not None:
        fields["early_stop_errors"] = args.early_stop
    if args.no_coding:
        fields["coding_enabled"] = False
    if "subcarrier_counts" in fields:
        fields["subcarrier_counts"] = tuple(
            int(m) for m in fields["subcarrier_counts"])
    return SimConfig(**fields)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        written = run_sweep(config, papr_only=args.papr_only,
                            verbose=args.verbose)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

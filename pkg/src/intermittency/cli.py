"""
Command-line front end.

    intermittency generate --kind markov --rho 0.8 --length 688000 > prices.csv
    intermittency analyze prices.csv --format json --output report.json
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .moments import Mode, MomentSpec, moment
from .series import PriceSeries, compute_signs, parse_csv, read_csv
from .synth import GeneratorSpec, Kind, generate_series
from .uncertainty import DEFAULT_RESAMPLES, MIN_RESAMPLES, bootstrap_stat, default_offsets, systematic_offset_scan
from .windowing import WindowConfig, partition

SEED_ENV = "INTERMITTENCY_SEED"
REPORT_COLUMNS = ("mode", "q", "n_bins", "resolution", "F", "stat_err", "syst_err", "n_events", "log_F")


@dataclass(frozen=True)
class RunConfig:
    input: Optional[str] = None
    generator: Optional[GeneratorSpec] = None
    window_len: int = 200
    bins_list: tuple[int, ...] = (1, 2, 4, 10, 20)
    modes: tuple[Mode, ...] = (Mode.PP, Mode.MM, Mode.PM)
    order: int = 2
    n_resamples: int = DEFAULT_RESAMPLES
    offsets: Optional[tuple[int, ...]] = None
    seed: int = 0
    output_format: str = "csv"
    output: str = "-"
    price_column: str = "0"
    has_header: bool = False
    delimiter: str = ","
    timestamp_column: Optional[str] = None
    sample_interval: float = 5.0

    def validate(self) -> None:
        if (self.input is None) == (self.generator is None):
            raise ValueError("give exactly one of an input file or a generator spec")
        WindowConfig(self.window_len)
        spec = MomentSpec(self.order, self.modes, self.bins_list)
        spec.validate(self.window_len)
        if self.n_resamples < MIN_RESAMPLES:
            raise ValueError(f"resamples must be >= {MIN_RESAMPLES}")
        if self.offsets is not None and (not self.offsets or min(self.offsets) < 0):
            raise ValueError("offsets must be a non-empty list of values >= 0")
        if self.output_format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if not self.sample_interval > 0:
            raise ValueError("sample interval must be positive")

    @property
    def offsets_used(self) -> tuple[int, ...]:
        return self.offsets if self.offsets is not None else default_offsets(self.window_len)


def _load(cfg: RunConfig) -> PriceSeries:
    if cfg.generator is not None:
        return generate_series(cfg.generator)
    kwargs = dict(
        price_column=cfg.price_column,
        has_header=cfg.has_header,
        delimiter=cfg.delimiter,
        timestamp_column=cfg.timestamp_column,
        sample_interval=cfg.sample_interval,
    )
    if cfg.input == "-":
        return read_csv(sys.stdin, **kwargs)
    return parse_csv(cfg.input, **kwargs)


def analyze(cfg: RunConfig) -> list[dict]:
    """Report records, ordered by mode (as configured) then ascending ``n_bins``."""
    cfg.validate()
    signs = compute_signs(_load(cfg))
    events = partition(signs, WindowConfig(cfg.window_len))
    records = []
    for mode in MomentSpec(cfg.order, cfg.modes, cfg.bins_list).modes:
        for n_bins in sorted(cfg.bins_list):
            res = moment(events, n_bins, mode, cfg.order)
            stat = bootstrap_stat(events, n_bins, mode, cfg.order, cfg.n_resamples, cfg.seed)
            syst = systematic_offset_scan(
                signs, WindowConfig(cfg.window_len, n_bins), mode, cfg.order, cfg.offsets_used
            )
            records.append(
                {
                    "mode": mode.value,
                    "q": cfg.order,
                    "n_bins": n_bins,
                    "resolution": cfg.window_len * cfg.sample_interval / n_bins,
                    "F": res.value,
                    "stat_err": stat,
                    "syst_err": syst,
                    "n_events": res.n_events,
                    "log_F": res.log_value,
                }
            )
    return records


def _csv_field(value) -> str:
    if isinstance(value, float):
        return f"{value:.12f}" if math.isfinite(value) else str(value)
    return str(value)


def format_csv(records: Sequence[dict]) -> str:
    lines = [",".join(REPORT_COLUMNS)]
    for rec in records:
        lines.append(",".join(_csv_field(rec[c]) for c in REPORT_COLUMNS))
    return "\n".join(lines) + "\n"


def format_json(records: Sequence[dict], cfg: RunConfig) -> str:
    rows = []
    for rec in records:
        row = {c: rec[c] for c in REPORT_COLUMNS}
        if not math.isfinite(row["log_F"]):
            row["log_F"] = None
        rows.append(row)
    meta = {
        "window_len": cfg.window_len,
        "sample_interval": cfg.sample_interval,
        "order": cfg.order,
        "n_resamples": cfg.n_resamples,
        "offsets": list(cfg.offsets_used),
        "seed": cfg.seed,
    }
    return json.dumps({"meta": meta, "records": rows}, indent=2) + "\n"


def _write(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(output).write_text(text, encoding="utf-8")


def run_analyze(cfg: RunConfig) -> int:
    records = analyze(cfg)
    text = format_csv(records) if cfg.output_format == "csv" else format_json(records, cfg)
    _write(text, cfg.output)
    return 0


def format_series(series: PriceSeries) -> str:
    buf = io.StringIO()
    for p in series.prices:
        buf.write(f"{int(p)}\n" if p.is_integer() and abs(p) < 2**53 else f"{float(p)!r}\n")
    return buf.getvalue()


def run_generate(spec: GeneratorSpec, out: str = "-") -> int:
    """Write a one-column, headerless price CSV that ``analyze`` reads with default flags."""
    _write(format_series(generate_series(spec)), out)
    return 0


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _mode_list(text: str) -> tuple[Mode, ...]:
    try:
        return tuple(Mode.parse(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _add_generator_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--kind", required=required, choices=[k.value for k in Kind] + ["iid-bernoulli", "markov-persistent"],
                   help="generator: iid, markov or gaussian-walk")
    p.add_argument("--length", type=int, default=688_000,
                   help="signs to generate (samples for gaussian-walk) (default: %(default)s)")
    p.add_argument("--p-plus", type=float, default=0.5, help="P(+1) for iid (default: %(default)s)")
    p.add_argument("--rho", type=float, default=0.5,
                   help="P(sign repeats) for markov (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intermittency",
        description="Factorial moments of return-sign multiplicities in binned time windows.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="compute F2 (or Fq) versus n_bins with uncertainties",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    a.add_argument("input", nargs="?", default=None,
                   help="price CSV path, '-' for stdin; omit when using --kind")
    a.add_argument("--price-column", default="0", help="zero-based index, or header name with --header")
    a.add_argument("--header", action="store_true", help="first row is a header")
    a.add_argument("--delimiter", default=",", help="CSV field separator")
    a.add_argument("--timestamp-column", default=None, help="optional timestamp column (metadata only)")
    a.add_argument("--sample-interval", type=float, default=5.0,
                   help="spacing of samples; resolution is reported in this unit")
    a.add_argument("--window-len", type=int, default=200, help="samples per event")
    a.add_argument("--bins", type=_int_list, default=(1, 2, 4, 10, 20), help="bin counts to scan")
    a.add_argument("--modes", type=_mode_list, default=(Mode.PP, Mode.MM, Mode.PM), help="PP, MM, PM, ALL")
    a.add_argument("--order", type=int, default=2, help="factorial moment order q")
    a.add_argument("--resamples", type=int, default=DEFAULT_RESAMPLES, help="bootstrap resamples")
    a.add_argument("--offsets", type=_int_list, default=None,
                   help="event-grid offsets for the systematic scan (default: 0, window/4, window/2)")
    a.add_argument("--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV} or 0)")
    a.add_argument("--format", choices=("csv", "json"), default="csv", help="report format")
    a.add_argument("--output", default="-", help="report path, '-' for stdout")
    gen = a.add_argument_group("in-memory generator (instead of an input file)")
    _add_generator_args(gen, required=False)
    gen.add_argument("--gen-seed", type=int, default=None, help="generator seed (default: --seed)")

    g = sub.add_parser("generate", help="write a synthetic price CSV",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_generator_args(g, required=True)
    g.add_argument("--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV} or 0)")
    g.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    return parser


def _config_from_args(args: argparse.Namespace, seed: int) -> RunConfig:
    generator = None
    if args.kind is not None:
        gen_seed = seed if args.gen_seed is None else args.gen_seed
        generator = GeneratorSpec(args.kind, args.length, args.p_plus, args.rho, gen_seed)
    return RunConfig(
        input=args.input,
        generator=generator,
        window_len=args.window_len,
        bins_list=args.bins,
        modes=args.modes,
        order=args.order,
        n_resamples=args.resamples,
        offsets=args.offsets,
        seed=seed,
        output_format=args.format,
        output=args.output,
        price_column=args.price_column,
        has_header=args.header,
        delimiter=args.delimiter,
        timestamp_column=args.timestamp_column,
        sample_interval=args.sample_interval,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        if args.command == "generate":
            spec = GeneratorSpec(args.kind, args.length, args.p_plus, args.rho, seed)
            return run_generate(spec, args.output)
        return run_analyze(_config_from_args(args, seed))
    except (ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"intermittency: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

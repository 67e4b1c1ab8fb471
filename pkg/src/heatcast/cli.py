"""Command-line surface: synth, scalogram, train, predict, evaluate, plot.

Run configuration is a flat key=value file whose keys mirror RunConfig;
command-line flags override file values, which override built-in defaults.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
import tempfile
from dataclasses import dataclass, fields
from datetime import date

import numpy as np

from . import checkpoint as ckpt
from . import metrics, plots, synth
from .calendars import Calendar, CalendarError, parse_calendar_csv, write_calendar_csv
from .dataset import AssemblyError, build_dataset, make_example
from .network import ModelConfig, NetworkError, predict_window
from .series import (HOUR, HourlySeries, Scaler, SeriesError, SeriesKind, SplitSpec,
                     accumulate, clean_and_differentiate, format_timestamp, normalize,
                     parse_series_csv, parse_timestamp, split_dataset, write_series_csv)
from .synth import SynthConfig, SynthError
from .training import train as run_training
from .training import write_training_log
from .wavelet import Boundary, WaveletConfig, WaveletError, cwt, scalogram_to_csv, scalogram_to_pgm

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_DATA = 4
EXIT_CHECKPOINT = 5

OUT_DIR_ENV = "HEATCAST_OUT"


class RunConfigError(ValueError):
    """Invalid run configuration."""


@dataclass
class RunConfig:
    consumption: str | None = None
    weather: str | None = None
    calendar: str | None = None
    model: str | None = None
    out: str | None = None
    consumption_kind: str = "rate"
    h: int = 24
    n: int = 24
    s: int = 24
    boundary: str = "reflect"
    train_days: int = 730
    val_days: int = 180
    test_days: int = 180
    seed: int = 0
    zone: str = "zone1"
    conv_widths: tuple[int, ...] = (32, 64, 128)
    kernel_size: int = 3
    dense_widths: tuple[int, ...] = (512, 128)
    leaky_slope: float = 0.01
    dropout_rate: float = 0.2
    learning_rate: float = 1e-3
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    batch_size: int = 7
    max_epochs: int = 100
    patience: int = 20

    def validate(self) -> None:
        if self.h != self.n:
            raise RunConfigError(
                f"h ({self.h}) must equal n ({self.n}): the channel concatenation "
                "requires history and horizon of the same length")
        for key in ("h", "s", "train_days", "val_days", "test_days"):
            if getattr(self, key) < 1:
                raise RunConfigError(f"{key} must be a positive integer")
        if self.consumption_kind not in ("rate", "accumulated"):
            raise RunConfigError(f"consumption_kind must be rate or accumulated, "
                                 f"got {self.consumption_kind!r}")
        if self.boundary not in ("reflect", "zeropad"):
            raise RunConfigError(f"boundary must be reflect or zeropad, got {self.boundary!r}")

    def require_paths(self, *keys: str) -> None:
        for key in keys:
            value = getattr(self, key)
            if value is None:
                raise RunConfigError(f"missing required path {key!r} (set it in the "
                                     "config file or pass the flag)")
            if key != "out" and not os.path.exists(value):
                raise RunConfigError(f"{key} path does not exist: {value}")

    @property
    def out_dir(self) -> str:
        return self.out or os.environ.get(OUT_DIR_ENV) or "."

    def wavelet_config(self) -> WaveletConfig:
        boundary = Boundary.REFLECT if self.boundary == "reflect" else Boundary.ZERO_PAD
        return WaveletConfig(scales=self.s, boundary=boundary)

    def model_config(self) -> ModelConfig:
        try:
            return ModelConfig(
                conv_widths=tuple(self.conv_widths),
                kernel_size=self.kernel_size,
                dense_widths=tuple(self.dense_widths),
                output_size=self.n,
                input_channels=5,
                input_rows=self.s,
                input_cols=self.h,
                leaky_slope=self.leaky_slope,
                dropout_rate=self.dropout_rate,
                learning_rate=self.learning_rate,
                adam_beta1=self.adam_beta1,
                adam_beta2=self.adam_beta2,
                adam_eps=self.adam_eps,
                batch_size=self.batch_size,
                max_epochs=self.max_epochs,
                patience=self.patience)
        except NetworkError as exc:
            raise RunConfigError(str(exc)) from None


_INT_KEYS = {"h", "n", "s", "train_days", "val_days", "test_days", "seed",
             "kernel_size", "batch_size", "max_epochs", "patience"}
_FLOAT_KEYS = {"leaky_slope", "dropout_rate", "learning_rate",
               "adam_beta1", "adam_beta2", "adam_eps"}
_TUPLE_KEYS = {"conv_widths", "dense_widths"}
_CONFIG_KEYS = {f.name for f in fields(RunConfig)}


def _parse_value(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _TUPLE_KEYS:
            return tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise RunConfigError(f"invalid value for {key}: {raw!r}") from None
    return raw


def parse_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise RunConfigError(f"{path}:{line_no}: expected key=value, got {line!r}")
                key, _, raw = line.partition("=")
                key = key.strip()
                if key not in _CONFIG_KEYS:
                    raise RunConfigError(f"{path}:{line_no}: unknown config key {key!r}")
                values[key] = _parse_value(key, raw.strip())
    except OSError as exc:
        raise RunConfigError(f"cannot read config file: {exc}") from None
    return values


def load_run_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        for key, value in parse_config_file(args.config).items():
            setattr(cfg, key, value)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, _parse_value(key, value) if isinstance(value, str) else value)
    cfg.validate()
    return cfg


def _write_atomic(path: str, data) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-heatcast-")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_series(path: str, kind: SeriesKind) -> HourlySeries:
    with open(path, encoding="utf-8") as fh:
        return parse_series_csv(fh, kind)


def _read_calendar(path: str) -> Calendar:
    with open(path, encoding="utf-8") as fh:
        return parse_calendar_csv(fh)


def _load_consumption(cfg: RunConfig) -> HourlySeries:
    if cfg.consumption_kind == "accumulated":
        acc = _read_series(cfg.consumption, SeriesKind.ACCUMULATED)
        return clean_and_differentiate(acc)
    return _read_series(cfg.consumption, SeriesKind.RATE)


def _series_to_text(series: HourlySeries) -> str:
    buf = io.StringIO()
    write_series_csv(series, buf)
    return buf.getvalue()


def _window_index(series: HourlySeries, start_ts, label: str) -> int:
    delta = start_ts - series.start
    hours = delta // HOUR
    if delta != hours * HOUR or hours < 0 or hours >= len(series):
        raise SeriesError(f"{label} {format_timestamp(start_ts)} is not an hour "
                          f"within the series ({format_timestamp(series.start)} "
                          f"+ {len(series)} hours)")
    return int(hours)


# --- subcommands ---

def cmd_synth(args: argparse.Namespace) -> int:
    holidays = tuple(date.fromisoformat(part) for part in args.holidays.split(",")
                     if part.strip()) if args.holidays else ()
    try:
        cfg = SynthConfig(
            days=args.days, seed=args.seed, holiday_dates=holidays,
            base_load=args.base_load, daily_amplitude=args.daily_amplitude,
            weekly_weekend_uplift=args.weekend_uplift, annual_amplitude=args.annual_amplitude,
            temp_mean=args.temp_mean, temp_annual_amplitude=args.temp_annual_amplitude,
            temp_daily_amplitude=args.temp_daily_amplitude,
            temp_sensitivity=args.temp_sensitivity,
            noise_std=args.noise_std, temp_noise_std=args.temp_noise_std,
            start=date.fromisoformat(args.start))
    except ValueError as exc:
        raise SynthError(f"invalid synth configuration: {exc}") from None

    consumption, temperature, calendar = synth.generate(cfg)
    # Meter readings at the start of each hour; same row count as the rates.
    readings = accumulate(consumption).slice_hours(0, len(consumption))

    out = args.out or os.environ.get(OUT_DIR_ENV) or "."
    paths = {
        "consumption.csv": _series_to_text(consumption),
        "accumulated.csv": _series_to_text(readings),
        "weather.csv": _series_to_text(temperature),
    }
    for name, text in paths.items():
        _write_atomic(os.path.join(out, name), text)
    buf = io.StringIO()
    write_calendar_csv(calendar, buf)
    _write_atomic(os.path.join(out, "calendar.csv"), buf.getvalue())

    print(f"wrote {len(consumption)} hours ({cfg.days} days) to {out}: "
          "consumption.csv, accumulated.csv, weather.csv, calendar.csv")
    return EXIT_OK


def cmd_scalogram(args: argparse.Namespace) -> int:
    cfg = load_run_config(args)
    cfg.require_paths("consumption" if args.source == "consumption" else "weather")
    if args.source == "consumption":
        series = _load_consumption(cfg)
    else:
        series = _read_series(cfg.weather, SeriesKind.TEMPERATURE)

    start_ts = parse_timestamp(args.window_start)
    index = _window_index(series, start_ts, "window start")
    if index + cfg.h > len(series):
        raise SeriesError(f"window of {cfg.h} hours starting {args.window_start} "
                          "runs past the end of the series")
    window = series.values[index:index + cfg.h]
    # Per-window min-max scaling keeps the image comparable across windows.
    scalogram = cwt(Scaler(float(window.min()), float(window.max())).transform(window),
                    cfg.wavelet_config(), source_kind=series.kind)

    stamp = start_ts.strftime("%Y%m%dT%H%M%SZ")
    base = os.path.join(cfg.out_dir, f"scalogram_{args.source}_{stamp}")
    buf = io.StringIO()
    scalogram_to_csv(scalogram, buf)
    _write_atomic(base + ".csv", buf.getvalue())
    _write_atomic(base + ".pgm", scalogram_to_pgm(scalogram))
    print(f"wrote {base}.csv and {base}.pgm ({cfg.s}x{cfg.h})")
    return EXIT_OK


def _prepare_splits(cfg: RunConfig):
    cons = _load_consumption(cfg)
    weather = _read_series(cfg.weather, SeriesKind.TEMPERATURE)
    calendar = _read_calendar(cfg.calendar)
    spec = SplitSpec(cfg.train_days, cfg.val_days, cfg.test_days)
    splits = split_dataset({"consumption": cons, "weather": weather}, spec)
    return splits, calendar


def cmd_train(args: argparse.Namespace) -> int:
    cfg = load_run_config(args)
    cfg.require_paths("consumption", "weather", "calendar")
    splits, calendar = _prepare_splits(cfg)
    wavelet_cfg = cfg.wavelet_config()

    train_examples = build_dataset(splits.train["consumption"], splits.train["weather"],
                                   calendar, wavelet_cfg, cfg.h)
    val_examples = build_dataset(splits.val["consumption"], splits.val["weather"],
                                 calendar, wavelet_cfg, cfg.h)

    result = run_training(cfg.model_config(), train_examples, val_examples,
                          seed=cfg.seed, scalers=splits.scalers)

    out = cfg.out_dir
    log_path = os.path.join(out, "training_log.csv")
    model_path = os.path.join(out, "model.ckpt")
    buf = io.StringIO()
    write_training_log(result.log, buf)
    _write_atomic(log_path, buf.getvalue())
    os.makedirs(out, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=out, prefix=".tmp-heatcast-")
    os.close(fd)
    try:
        ckpt.save_model(result.model, tmp_path, metadata={
            "seed": cfg.seed, "epochs_run": len(result.log),
            "best_epoch": result.best_epoch, "best_val_mse": result.best_val_mse})
        os.replace(tmp_path, model_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise

    print(f"trained {len(result.log)} epochs on {len(train_examples)} examples; "
          f"best val MSE {result.best_val_mse:.6g} at epoch {result.best_epoch}; "
          f"wrote {model_path} and {log_path}")
    return EXIT_OK


def _scaled_with(series: HourlySeries, scaler: Scaler) -> HourlySeries:
    return normalize(series, scaler)


def _model_scalers(model) -> tuple[Scaler, Scaler]:
    try:
        return model.scalers["consumption"], model.scalers["weather"]
    except KeyError as exc:
        raise ckpt.CheckpointError(f"checkpoint lacks the {exc.args[0]} scaler") from None


def cmd_predict(args: argparse.Namespace) -> int:
    cfg = load_run_config(args)
    cfg.require_paths("model", "consumption", "weather", "calendar")
    model, _ = ckpt.load_model(cfg.model)
    cons_scaler, weather_scaler = _model_scalers(model)

    cons = _scaled_with(_load_consumption(cfg), cons_scaler)
    weather = _scaled_with(_read_series(cfg.weather, SeriesKind.TEMPERATURE), weather_scaler)
    calendar = _read_calendar(cfg.calendar)

    h = model.config.input_cols
    n = model.config.output_size
    start_ts = parse_timestamp(args.window_start)
    index = _window_index(cons, start_ts, "window start")
    if index + h > len(cons) or index + h + n > len(weather):
        raise SeriesError(f"window starting {args.window_start} needs {h} history hours "
                          f"and {n} forecast-weather hours inside the series")

    hist = slice(index, index + h)
    fut = slice(index + h, index + h + n)
    example = make_example(
        cons.values[hist], weather.values[hist], weather.values[fut],
        calendar.day_of(cons.timestamp_at(fut.start - 1)),
        calendar.day_of(cons.timestamp_at(fut.start)),
        np.zeros(n), cfg.wavelet_config(), window_start=start_ts)
    forecast_kw = predict_window(model, example.input)

    lines = ["timestamp,kw"]
    for i in range(n):
        ts = format_timestamp(cons.timestamp_at(fut.start + i))
        lines.append(f"{ts},{float(forecast_kw[i])!r}")
    stamp = start_ts.strftime("%Y%m%dT%H%M%SZ")
    path = os.path.join(cfg.out_dir, f"prediction_{stamp}.csv")
    _write_atomic(path, "\n".join(lines) + "\n")
    print(f"wrote {n}-hour forecast to {path}")
    return EXIT_OK


def _test_windows(cfg: RunConfig, model):
    """Test-split forecast windows scaled with the checkpoint's scalers."""
    cons_scaler, weather_scaler = _model_scalers(model)
    cons = _load_consumption(cfg)
    weather = _read_series(cfg.weather, SeriesKind.TEMPERATURE)
    calendar = _read_calendar(cfg.calendar)
    spec = SplitSpec(cfg.train_days, cfg.val_days, cfg.test_days)
    if spec.total_days * 24 > len(cons):
        raise SeriesError(f"insufficient data: need {spec.total_days} days, "
                          f"have {len(cons) // 24}")
    offset = (spec.train_days + spec.val_days) * 24
    test_hours = spec.test_days * 24
    cons_test = _scaled_with(cons.slice_hours(offset, test_hours), cons_scaler)
    weather_test = _scaled_with(weather.slice_hours(offset, test_hours), weather_scaler)
    return metrics.build_forecast_windows(cons_test, weather_test, calendar,
                                          cfg.wavelet_config(), cfg.h,
                                          cons_scaler, zone=cfg.zone)


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = load_run_config(args)
    cfg.require_paths("model", "consumption", "weather", "calendar")
    model, _ = ckpt.load_model(cfg.model)
    windows = _test_windows(cfg, model)

    reports = {"cnn": metrics.evaluate(metrics.cnn_predictor(model), windows)}
    if args.against == "naive":
        reports["naive"] = metrics.evaluate(metrics.naive_predictor(), windows)

    out = cfg.out_dir
    for name, report in reports.items():
        buf = io.StringIO()
        metrics.write_report_csv(report, buf)
        _write_atomic(os.path.join(out, f"report_{name}.csv"), buf.getvalue())
    buf = io.StringIO()
    metrics.write_summary_csv(reports, buf)
    _write_atomic(os.path.join(out, "summary.csv"), buf.getvalue())

    line = (f"cnn: MAPE {reports['cnn'].aggregate_mape:.2f}% "
            f"RMSE {reports['cnn'].aggregate_rmse:.1f} kW over {len(windows)} windows")
    if "naive" in reports:
        line += (f" | naive: MAPE {reports['naive'].aggregate_mape:.2f}% "
                 f"RMSE {reports['naive'].aggregate_rmse:.1f} kW")
    print(line + f"; reports in {out}")
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    cfg = load_run_config(args)
    cfg.require_paths("model", "consumption", "weather", "calendar")
    model, _ = ckpt.load_model(cfg.model)
    cons_scaler, weather_scaler = _model_scalers(model)

    cons_raw = _load_consumption(cfg)
    cons = _scaled_with(cons_raw, cons_scaler)
    weather = _scaled_with(_read_series(cfg.weather, SeriesKind.TEMPERATURE), weather_scaler)
    calendar = _read_calendar(cfg.calendar)

    h = model.config.input_cols
    n = model.config.output_size
    start_ts = parse_timestamp(args.window_start)
    index = _window_index(cons, start_ts, "window start")
    if index + h + n > len(cons):
        raise SeriesError(f"window starting {args.window_start} needs {h} history "
                          f"and {n} truth hours inside the series")
    hist = slice(index, index + h)
    fut = slice(index + h, index + h + n)
    example = make_example(
        cons.values[hist], weather.values[hist], weather.values[fut],
        calendar.day_of(cons.timestamp_at(fut.start - 1)),
        calendar.day_of(cons.timestamp_at(fut.start)),
        cons.values[fut], cfg.wavelet_config(), window_start=start_ts)
    window = metrics.ForecastWindow(
        window_start=start_ts, example=example,
        history_kw=cons_raw.values[hist], truth_kw=cons_raw.values[fut], zone=cfg.zone)
    prediction = predict_window(model, example.input)

    stamp = start_ts.strftime("%Y%m%dT%H%M%SZ")
    base = os.path.join(cfg.out_dir, f"window_{stamp}")
    buf = io.StringIO()
    metrics.write_window_csv(window, prediction, buf)
    _write_atomic(base + ".csv", buf.getvalue())
    title = f"24h forecast from {format_timestamp(start_ts)}"
    _write_atomic(base + ".svg", plots.render_forecast_svg(window.truth_kw, prediction, title))
    print(f"wrote {base}.csv and {base}.svg")
    return EXIT_OK


# --- argument wiring ---

def _add_config_flags(parser: argparse.ArgumentParser, *, paths=True, training=False) -> None:
    parser.add_argument("--config", help="key=value run configuration file")
    if paths:
        parser.add_argument("--consumption", help="consumption series CSV")
        parser.add_argument("--weather", help="weather series CSV")
        parser.add_argument("--calendar", help="calendar CSV (date,is_holiday)")
        parser.add_argument("--consumption-kind", dest="consumption_kind",
                            choices=("rate", "accumulated"))
        parser.add_argument("--model", help="model checkpoint path")
    parser.add_argument("--out", help=f"output directory (default ${OUT_DIR_ENV} or .)")
    parser.add_argument("--h", type=int, help="history window hours")
    parser.add_argument("--n", type=int, help="forecast horizon hours (must equal h)")
    parser.add_argument("--s", type=int, help="number of wavelet scales")
    parser.add_argument("--boundary", choices=("reflect", "zeropad"))
    parser.add_argument("--zone", help="zone label for reports")
    if training:
        parser.add_argument("--train-days", dest="train_days", type=int)
        parser.add_argument("--val-days", dest="val_days", type=int)
        parser.add_argument("--test-days", dest="test_days", type=int)
        parser.add_argument("--seed", type=int)
        parser.add_argument("--conv-widths", dest="conv_widths")
        parser.add_argument("--kernel-size", dest="kernel_size", type=int)
        parser.add_argument("--dense-widths", dest="dense_widths")
        parser.add_argument("--dropout-rate", dest="dropout_rate", type=float)
        parser.add_argument("--leaky-slope", dest="leaky_slope", type=float)
        parser.add_argument("--learning-rate", dest="learning_rate", type=float)
        parser.add_argument("--batch-size", dest="batch_size", type=int)
        parser.add_argument("--max-epochs", dest="max_epochs", type=int)
        parser.add_argument("--patience", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heatcast",
        description="24-hours-ahead district heating load forecasting "
                    "from wavelet scalograms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic dataset")
    p.add_argument("--days", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--start", default="2015-01-01", help="first day (ISO date)")
    p.add_argument("--base-load", dest="base_load", type=float, default=1000.0)
    p.add_argument("--daily-amplitude", dest="daily_amplitude", type=float, default=150.0)
    p.add_argument("--weekend-uplift", dest="weekend_uplift", type=float, default=0.15)
    p.add_argument("--annual-amplitude", dest="annual_amplitude", type=float, default=300.0)
    p.add_argument("--temp-mean", dest="temp_mean", type=float, default=8.0)
    p.add_argument("--temp-annual-amplitude", dest="temp_annual_amplitude",
                   type=float, default=9.0)
    p.add_argument("--temp-daily-amplitude", dest="temp_daily_amplitude",
                   type=float, default=3.0)
    p.add_argument("--temp-sensitivity", dest="temp_sensitivity", type=float, default=-40.0)
    p.add_argument("--noise-std", dest="noise_std", type=float, default=20.0)
    p.add_argument("--temp-noise-std", dest="temp_noise_std", type=float, default=0.5)
    p.add_argument("--holidays", help="comma-separated ISO holiday dates")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("scalogram", help="export CSV+PGM scalograms for one window")
    _add_config_flags(p)
    p.add_argument("--source", choices=("consumption", "weather"), default="consumption")
    p.add_argument("--window-start", dest="window_start", required=True,
                   help="ISO timestamp of the window's first hour")
    p.set_defaults(func=cmd_scalogram)

    p = sub.add_parser("train", help="train a model end to end")
    _add_config_flags(p, training=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="24-hour forecast from a checkpoint")
    _add_config_flags(p)
    p.add_argument("--window-start", dest="window_start", required=True,
                   help="ISO timestamp of the history window's first hour")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="test-set report, CNN vs baseline")
    _add_config_flags(p, training=True)
    p.add_argument("--against", choices=("naive", "none"), default="naive")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("plot", help="truth-vs-prediction CSV and SVG for one window")
    _add_config_flags(p)
    p.add_argument("--window-start", dest="window_start", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RunConfigError as exc:
        print(f"heatcast {args.command}: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ckpt.CheckpointError as exc:
        print(f"heatcast {args.command}: checkpoint error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except (SeriesError, CalendarError, AssemblyError, WaveletError,
            SynthError, metrics.MetricError, NetworkError, OSError) as exc:
        print(f"heatcast {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - last-resort diagnostics
        print(f"heatcast {args.command}: unexpected error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

"""Forecast metrics, the seasonal-naive baseline, and evaluation reports."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Callable, Mapping, Sequence

import numpy as np

from .calendars import Calendar, meteorological_season
from .dataset import Example, build_dataset
from .network import Model, predict_window
from .series import HOUR, HourlySeries, Scaler, format_timestamp
from .wavelet import WaveletConfig


class MetricError(ValueError):
    """Undefined or inconsistent metric computation."""


def mape(pred, truth) -> float:
    """Mean absolute percentage error over hours with nonzero truth.

    Zero-truth hours are excluded from the mean rather than epsilon-smoothed;
    if every hour is zero the metric is undefined and raises.
    """
    pred = np.asarray(pred, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    if pred.shape != truth.shape:
        raise MetricError(f"prediction shape {pred.shape} != truth shape {truth.shape}")
    included = truth != 0.0
    if not np.any(included):
        raise MetricError("MAPE undefined: every truth value is zero")
    return float(100.0 * np.mean(np.abs(pred[included] - truth[included])
                                 / np.abs(truth[included])))


def rmse(pred, truth) -> float:
    """Root mean squared error in the inputs' physical units (kW here)."""
    pred = np.asarray(pred, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    if pred.shape != truth.shape:
        raise MetricError(f"prediction shape {pred.shape} != truth shape {truth.shape}")
    diff = pred - truth
    return float(np.sqrt(np.mean(diff * diff)))


def seasonal_naive(history, horizon: int = 24) -> np.ndarray:
    """Forecast = the previous day's same-hour values, unchanged."""
    history = np.asarray(history, dtype=np.float64)
    if history.ndim != 1 or history.size < horizon:
        raise MetricError(f"seasonal naive needs {horizon} history values, got {history.size}")
    return history[-horizon:].copy()


@dataclass(frozen=True)
class ForecastWindow:
    """One evaluable 24-hour window with its unscaled context."""

    window_start: datetime
    example: Example
    history_kw: np.ndarray
    truth_kw: np.ndarray
    zone: str = "zone1"


@dataclass(frozen=True)
class WindowScore:
    window_start: datetime
    zone: str
    season: str
    mape: float
    rmse: float


@dataclass(frozen=True)
class GroupScore:
    mean_mape: float
    mean_rmse: float
    mape_variance: float
    windows: int


@dataclass(frozen=True)
class EvalReport:
    per_window: tuple[WindowScore, ...]
    aggregate_mape: float
    aggregate_rmse: float
    breakdown: Mapping[tuple[str, str], GroupScore]


def build_forecast_windows(cons: HourlySeries, weather: HourlySeries,
                           calendar: Calendar, cfg: WaveletConfig, horizon: int,
                           cons_scaler: Scaler, zone: str = "zone1") -> list[ForecastWindow]:
    """Pair each dataset example with its inverse-scaled history and truth."""
    examples = build_dataset(cons, weather, calendar, cfg, horizon)
    windows = []
    for j, example in enumerate(examples):
        hist = slice(j * horizon, (j + 1) * horizon)
        fut = slice((j + 1) * horizon, (j + 2) * horizon)
        windows.append(ForecastWindow(
            window_start=example.input.window_start,
            example=example,
            history_kw=cons_scaler.inverse(cons.values[hist]),
            truth_kw=cons_scaler.inverse(cons.values[fut]),
            zone=zone))
    return windows


def cnn_predictor(model: Model) -> Callable[[ForecastWindow], np.ndarray]:
    return lambda window: predict_window(model, window.example.input)


def naive_predictor() -> Callable[[ForecastWindow], np.ndarray]:
    return lambda window: seasonal_naive(window.history_kw, window.truth_kw.size)


def evaluate(predictor: Callable[[ForecastWindow], np.ndarray],
             windows: Sequence[ForecastWindow],
             season_of: Callable[[datetime], str] | None = None) -> EvalReport:
    """Score a predictor per window and aggregate by (zone, season).

    Per-window MAPE/RMSE are computed on inverse-scaled kW values; aggregates
    are arithmetic means of the per-window scores, and the breakdown reports
    the population variance of MAPE within each group.
    """
    if not windows:
        raise MetricError("cannot evaluate an empty window set")
    if season_of is None:
        season_of = lambda ts: meteorological_season(ts.date())

    scores = []
    for window in windows:
        pred = predictor(window)
        scores.append(WindowScore(
            window_start=window.window_start,
            zone=window.zone,
            season=season_of(window.window_start),
            mape=mape(pred, window.truth_kw),
            rmse=rmse(pred, window.truth_kw)))

    groups: dict[tuple[str, str], list[WindowScore]] = {}
    for score in scores:
        groups.setdefault((score.zone, score.season), []).append(score)
    breakdown = {
        key: GroupScore(
            mean_mape=float(np.mean([s.mape for s in members])),
            mean_rmse=float(np.mean([s.rmse for s in members])),
            mape_variance=float(np.var([s.mape for s in members])),
            windows=len(members))
        for key, members in groups.items()
    }
    return EvalReport(
        per_window=tuple(scores),
        aggregate_mape=float(np.mean([s.mape for s in scores])),
        aggregate_rmse=float(np.mean([s.rmse for s in scores])),
        breakdown=breakdown)


def write_report_csv(report: EvalReport, stream) -> None:
    stream.write("window_start,zone,season,mape,rmse\n")
    for s in report.per_window:
        ts = s.window_start.strftime("%Y-%m-%dT%H:%M:%SZ")
        stream.write(f"{ts},{s.zone},{s.season},{s.mape!r},{s.rmse!r}\n")


def write_summary_csv(reports: Mapping[str, EvalReport], stream) -> None:
    """One row per (model, zone, season), plus an `all` row per model."""
    stream.write("model,zone,season,mean_mape,mean_rmse,mape_variance,windows\n")
    for name, report in reports.items():
        overall_var = float(np.var([s.mape for s in report.per_window]))
        stream.write(f"{name},all,all,{report.aggregate_mape!r},{report.aggregate_rmse!r},"
                     f"{overall_var!r},{len(report.per_window)}\n")
        for (zone, season), g in sorted(report.breakdown.items()):
            stream.write(f"{name},{zone},{season},{g.mean_mape!r},{g.mean_rmse!r},"
                         f"{g.mape_variance!r},{g.windows}\n")


def write_window_csv(window: ForecastWindow, prediction: np.ndarray, stream) -> None:
    """Truth-vs-prediction plot data for one window."""
    stream.write("hour,timestamp,truth_kw,predicted_kw\n")
    horizon = window.truth_kw.size
    first_forecast = window.window_start + horizon * HOUR
    for i in range(horizon):
        ts = format_timestamp(first_forecast + i * HOUR)
        stream.write(f"{i},{ts},{float(window.truth_kw[i])!r},{float(prediction[i])!r}\n")

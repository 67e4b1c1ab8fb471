"""Assembly of 5-channel input tensors and targets from aligned series."""

from __future__ import annotations

import os
from dataclasses import dataclass
from datetime import datetime

import numpy as np

from .calendars import Calendar, CalendarDay
from .series import HOUR, HourlySeries
from .wavelet import Scalogram, WaveletConfig, cwt

CHANNEL_NAMES = ("past_consumption", "past_weather", "forecast_weather",
                 "current_day_flag", "next_day_flag")


class AssemblyError(ValueError):
    """Inconsistent inputs while building tensors."""


@dataclass(frozen=True)
class InputTensor:
    """The 5 x s x h channel stack fed to the network.

    Channel order is fixed: past-consumption scalogram, past-weather
    scalogram, forecast-weather scalogram, current-day flag matrix,
    next-day flag matrix.  The two flag channels are constant all-zeros or
    all-ones.
    """

    channels: np.ndarray
    window_start: datetime

    def __post_init__(self):
        ch = np.asarray(self.channels, dtype=np.float64)
        if ch.ndim != 3 or ch.shape[0] != len(CHANNEL_NAMES):
            raise AssemblyError(f"expected {len(CHANNEL_NAMES)} channels, got shape {ch.shape}")
        if not np.all(np.isfinite(ch)):
            raise AssemblyError("input tensor contains non-finite values")
        for index in (3, 4):
            flat = ch[index].ravel()
            if not (np.all(flat == 0.0) or np.all(flat == 1.0)):
                raise AssemblyError(f"flag channel {index} must be constant all-0 or all-1")
        ch = ch.copy()
        ch.setflags(write=False)
        object.__setattr__(self, "channels", ch)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.channels.shape


@dataclass(frozen=True)
class Example:
    input: InputTensor
    target: np.ndarray

    def __post_init__(self):
        target = np.asarray(self.target, dtype=np.float64)
        if target.ndim != 1 or target.size != self.input.shape[2]:
            raise AssemblyError(
                f"target length {target.size} must equal window length {self.input.shape[2]}")
        target = target.copy()
        target.setflags(write=False)
        object.__setattr__(self, "target", target)


def encode_day_flags(day: CalendarDay, scales: int, hours: int) -> np.ndarray:
    """All-ones s x h matrix for weekends/holidays, all-zeros otherwise."""
    fill = 1.0 if day.is_special else 0.0
    return np.full((scales, hours), fill)


def make_example(past_cons, past_weather, fut_weather,
                 today: CalendarDay, tomorrow: CalendarDay,
                 target, cfg: WaveletConfig,
                 window_start: datetime) -> Example:
    """Stack the three scalograms and two flag matrices into one Example.

    All series inputs are expected already scaled to [0, 1]; the forecast
    horizon must equal the history length.
    """
    past_cons = np.asarray(past_cons, dtype=np.float64)
    past_weather = np.asarray(past_weather, dtype=np.float64)
    fut_weather = np.asarray(fut_weather, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    h = past_cons.size
    if past_weather.size != h:
        raise AssemblyError(f"past weather length {past_weather.size} != history length {h}")
    if fut_weather.size != h:
        raise AssemblyError(
            f"forecast horizon {fut_weather.size} must equal history length {h}")
    if target.size != h:
        raise AssemblyError(f"target length {target.size} must equal history length {h}")

    channels = np.stack([
        cwt(past_cons, cfg).coefficients,
        cwt(past_weather, cfg).coefficients,
        cwt(fut_weather, cfg).coefficients,
        encode_day_flags(today, cfg.scales, h),
        encode_day_flags(tomorrow, cfg.scales, h),
    ])
    return Example(InputTensor(channels, window_start), target)


def build_dataset(cons: HourlySeries, weather: HourlySeries, calendar: Calendar,
                  cfg: WaveletConfig, horizon: int) -> list[Example]:
    """Cut aligned scaled series into non-overlapping stride-h examples.

    Example j uses hours [j*h, (j+1)*h) as history and [(j+1)*h, (j+2)*h) as
    target and forecast-weather window (retrospective mode: recorded weather
    stands in for the forecast), giving floor(N/h) - 1 examples.  The
    current-day flag comes from the day containing the last history hour,
    the next-day flag from the day containing the first forecast hour.
    """
    if horizon < 1:
        raise AssemblyError("horizon must be >= 1")
    if cons.start != weather.start or len(cons) != len(weather):
        raise AssemblyError("consumption and weather series are not aligned")
    n_hours = len(cons)
    if n_hours < 2 * horizon:
        raise AssemblyError(
            f"need at least {2 * horizon} hours to build one example, have {n_hours}")

    examples = []
    for j in range(n_hours // horizon - 1):
        hist = slice(j * horizon, (j + 1) * horizon)
        fut = slice((j + 1) * horizon, (j + 2) * horizon)
        today = calendar.day_of(cons.timestamp_at(fut.start - 1))
        tomorrow = calendar.day_of(cons.timestamp_at(fut.start))
        examples.append(make_example(
            cons.values[hist], weather.values[hist], weather.values[fut],
            today, tomorrow, cons.values[fut], cfg,
            window_start=cons.timestamp_at(hist.start)))
    return examples


def export_examples(examples, directory) -> None:
    """Debug dump: one CSV per channel plus the target, per example."""
    for index, example in enumerate(examples):
        subdir = os.path.join(directory, f"example_{index:04d}")
        os.makedirs(subdir, exist_ok=True)
        for c, name in enumerate(CHANNEL_NAMES):
            path = os.path.join(subdir, f"channel_{c}_{name}.csv")
            with open(path, "w", encoding="ascii") as fh:
                for row in example.input.channels[c]:
                    fh.write(",".join(repr(float(v)) for v in row) + "\n")
        with open(os.path.join(subdir, "target.csv"), "w", encoding="ascii") as fh:
            for v in example.target:
                fh.write(f"{float(v)!r}\n")

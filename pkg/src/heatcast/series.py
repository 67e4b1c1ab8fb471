"""Hourly series ingestion, cleaning, scaling, and chronological splitting."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Iterable, Mapping

import numpy as np

HOUR = timedelta(hours=1)
HOURS_PER_DAY = 24


class SeriesError(ValueError):
    """Malformed or inconsistent series data."""


class SeriesKind(enum.Enum):
    ACCUMULATED = "accumulated"
    RATE = "rate"
    TEMPERATURE = "temperature"
    # dimensionless min-max scaled values; may leave [0,1] outside the fit range
    NORMALIZED = "normalized"


def parse_timestamp(text: str) -> datetime:
    """Parse an ISO-8601 timestamp into an aware UTC datetime."""
    raw = text.strip()
    # Python 3.10 fromisoformat does not accept a trailing 'Z'.
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(raw)
    except ValueError as exc:
        raise SeriesError(f"invalid timestamp {text!r}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class HourlySeries:
    """A contiguous hourly-sampled sequence of values starting at `start`.

    `start` is a UTC, hour-aligned timestamp; contiguity is by construction
    (sample i lives at start + i hours).
    """

    start: datetime
    values: np.ndarray
    kind: SeriesKind

    def __post_init__(self):
        if self.start.tzinfo is None or self.start.utcoffset() != timedelta(0):
            raise SeriesError("series start must be a UTC timestamp")
        if self.start.minute or self.start.second or self.start.microsecond:
            raise SeriesError("series start must be hour-aligned")
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 1:
            raise SeriesError("series needs at least one sample")
        if not np.all(np.isfinite(values)):
            raise SeriesError("series contains non-finite values")
        if self.kind is SeriesKind.RATE and np.any(values < 0):
            raise SeriesError("rate series must be non-negative everywhere")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def timestamp_at(self, index: int) -> datetime:
        return self.start + index * HOUR

    @property
    def end(self) -> datetime:
        """Timestamp one hour past the final sample."""
        return self.start + len(self) * HOUR

    def slice_hours(self, offset: int, length: int) -> "HourlySeries":
        if offset < 0 or offset + length > len(self):
            raise SeriesError("slice outside series range")
        return HourlySeries(self.timestamp_at(offset),
                            self.values[offset:offset + length], self.kind)

    def with_values(self, values: np.ndarray) -> "HourlySeries":
        return HourlySeries(self.start, values, self.kind)


def parse_series_csv(stream, kind: SeriesKind) -> HourlySeries:
    """Read a `timestamp,value` CSV into an HourlySeries.

    `stream` may be text, bytes, or a file-like object.  Rows must be
    hour-aligned, strictly ascending, and gap-free; violations are reported
    with their line number (header is line 1).
    """
    if isinstance(stream, bytes):
        stream = stream.decode("utf-8")
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)

    header = next(reader, None)
    if header is None:
        raise SeriesError("empty input: missing 'timestamp,value' header")
    if [h.strip().lower() for h in header] != ["timestamp", "value"]:
        raise SeriesError(f"line 1: expected header 'timestamp,value', got {','.join(header)!r}")

    start: datetime | None = None
    expected: datetime | None = None
    values: list[float] = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise SeriesError(f"line {line_no}: expected 2 columns, got {len(row)}")
        try:
            ts = parse_timestamp(row[0])
        except SeriesError as exc:
            raise SeriesError(f"line {line_no}: {exc}") from None
        if ts.minute or ts.second or ts.microsecond:
            raise SeriesError(f"line {line_no}: timestamp {row[0].strip()} is not hour-aligned")
        try:
            value = float(row[1])
        except ValueError:
            raise SeriesError(f"line {line_no}: invalid value {row[1]!r}") from None

        if expected is None:
            start = ts
        elif ts == expected - HOUR:
            raise SeriesError(f"line {line_no}: duplicate timestamp {format_timestamp(ts)}")
        elif ts < expected:
            raise SeriesError(f"line {line_no}: timestamps not ascending at {format_timestamp(ts)}")
        elif ts > expected:
            raise SeriesError(
                f"line {line_no}: gap in hours, missing {format_timestamp(expected)}")
        expected = ts + HOUR
        values.append(value)

    if start is None:
        raise SeriesError("empty input: no data rows after header")
    return HourlySeries(start, np.array(values), kind)


def write_series_csv(series: HourlySeries, stream) -> None:
    """Write a series in the `timestamp,value` format parse_series_csv reads."""
    stream.write("timestamp,value\n")
    for i, v in enumerate(series.values):
        stream.write(f"{format_timestamp(series.timestamp_at(i))},{float(v)!r}\n")


def clean_and_differentiate(acc: HourlySeries) -> HourlySeries:
    """First-difference an accumulated meter series into hourly rates.

    Meter readings are checked for monotonic increase; hours with a negative
    rate are adjusted to a zero consumption state.  Output sample i is the
    consumption during [t_i, t_i+1h), so the result keeps `acc.start` and is
    one sample shorter.
    """
    if acc.kind is not SeriesKind.ACCUMULATED:
        raise SeriesError(f"expected an accumulated series, got {acc.kind.value}")
    if len(acc) < 2:
        raise SeriesError("accumulated series needs at least 2 samples to difference")
    rates = np.maximum(0.0, np.diff(acc.values))
    return HourlySeries(acc.start, rates, SeriesKind.RATE)


def accumulate(rate: HourlySeries, initial: float = 0.0) -> HourlySeries:
    """Inverse of clean_and_differentiate for non-negative rates.

    Returns n+1 readings: `initial` at the series start, then one reading per
    hour boundary.
    """
    if rate.kind is not SeriesKind.RATE:
        raise SeriesError(f"expected a rate series, got {rate.kind.value}")
    readings = np.concatenate(([0.0], np.cumsum(rate.values))) + initial
    return HourlySeries(rate.start, readings, SeriesKind.ACCUMULATED)


def aggregate_zone(meters: Iterable[HourlySeries]) -> HourlySeries:
    """Pointwise sum of per-meter rate series sharing start and length."""
    meters = list(meters)
    if not meters:
        raise SeriesError("no meter series to aggregate")
    first = meters[0]
    for m in meters[1:]:
        if m.start != first.start:
            raise SeriesError(
                f"misaligned meter starts: {format_timestamp(m.start)} vs "
                f"{format_timestamp(first.start)}")
        if len(m) != len(first):
            raise SeriesError(f"misaligned meter lengths: {len(m)} vs {len(first)}")
        if m.kind is not first.kind:
            raise SeriesError("cannot aggregate series of different kinds")
    total = np.sum([m.values for m in meters], axis=0)
    return HourlySeries(first.start, total, first.kind)


@dataclass(frozen=True)
class Scaler:
    """Min-max scaler mapping [min, max] onto [0, 1]."""

    min: float
    max: float

    def __post_init__(self):
        if not (np.isfinite(self.min) and np.isfinite(self.max)):
            raise SeriesError("scaler bounds must be finite")
        if self.max < self.min:
            raise SeriesError("scaler max must be >= min")

    @property
    def span(self) -> float:
        return self.max - self.min

    def transform(self, values):
        values = np.asarray(values, dtype=np.float64)
        if self.span == 0.0:
            return np.zeros_like(values)
        return (values - self.min) / self.span

    def inverse(self, values):
        values = np.asarray(values, dtype=np.float64)
        if self.span == 0.0:
            return np.full_like(values, self.min)
        return values * self.span + self.min


def scaler_fit(series: HourlySeries) -> Scaler:
    return Scaler(float(series.values.min()), float(series.values.max()))


def normalize(series: HourlySeries, scaler: Scaler) -> HourlySeries:
    """Scaled copy of a series, tagged dimensionless."""
    return HourlySeries(series.start, scaler.transform(series.values), SeriesKind.NORMALIZED)


@dataclass(frozen=True)
class SplitSpec:
    train_days: int
    val_days: int
    test_days: int

    def __post_init__(self):
        if min(self.train_days, self.val_days, self.test_days) <= 0:
            raise SeriesError("split day counts must all be positive")

    @property
    def total_days(self) -> int:
        return self.train_days + self.val_days + self.test_days


@dataclass(frozen=True)
class DatasetSplits:
    """Chronological train/val/test segments, min-max scaled per series.

    Scalers are fit on the train segment only and applied to every split;
    `scalers` maps series name to the fitted parameters for inversion.
    """

    train: Mapping[str, HourlySeries]
    val: Mapping[str, HourlySeries]
    test: Mapping[str, HourlySeries]
    scalers: Mapping[str, Scaler]


def split_dataset(series: Mapping[str, HourlySeries], spec: SplitSpec) -> DatasetSplits:
    """Split aligned series into contiguous train -> val -> test segments."""
    if not series:
        raise SeriesError("no series to split")
    items = list(series.items())
    first = items[0][1]
    for name, s in items[1:]:
        if s.start != first.start or len(s) != len(first):
            raise SeriesError(f"series {name!r} is not aligned with {items[0][0]!r}")

    needed = spec.total_days * HOURS_PER_DAY
    if needed > len(first):
        raise SeriesError(
            f"insufficient data: need {spec.total_days} days "
            f"({needed} hours), have {len(first) // HOURS_PER_DAY} days ({len(first)} hours)")

    bounds = (spec.train_days * HOURS_PER_DAY,
              spec.val_days * HOURS_PER_DAY,
              spec.test_days * HOURS_PER_DAY)
    splits: list[dict[str, HourlySeries]] = [{}, {}, {}]
    scalers: dict[str, Scaler] = {}
    for name, s in items:
        offset = 0
        segments = []
        for length in bounds:
            segments.append(s.slice_hours(offset, length))
            offset += length
        scaler = scaler_fit(segments[0])
        scalers[name] = scaler
        for split, segment in zip(splits, segments):
            split[name] = normalize(segment, scaler)
    return DatasetSplits(train=splits[0], val=splits[1], test=splits[2], scalers=scalers)

"""Deterministic synthetic district-heating data with known structure.

Stands in for proprietary meter data: consumption carries daily, weekly, and
annual patterns plus a negative coupling to temperature, so the inverse
weather/heat relationship holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timezone
from typing import Sequence

import numpy as np

from .calendars import CalendarDay, calendar_range
from .series import HourlySeries, SeriesKind

# Rates are quantized to this dyadic grid so cumulative sums stay exactly
# representable in float64 and accumulate/difference round trips are bit-exact.
RATE_QUANTUM = 1.0 / 1024.0


class SynthError(ValueError):
    """Invalid generator configuration."""


@dataclass(frozen=True)
class SynthConfig:
    days: int
    base_load: float = 1000.0          # kW
    daily_amplitude: float = 150.0     # kW
    weekly_weekend_uplift: float = 0.15
    annual_amplitude: float = 300.0    # kW, peaks in winter
    temp_mean: float = 8.0             # degC
    temp_annual_amplitude: float = 9.0
    temp_daily_amplitude: float = 3.0
    temp_sensitivity: float = -40.0    # kW per degC above the mean
    holiday_dates: tuple[date, ...] = ()
    noise_std: float = 20.0            # kW
    temp_noise_std: float = 0.5        # degC
    seed: int = 0
    start: date = date(2015, 1, 1)

    def __post_init__(self):
        if self.days < 1:
            raise SynthError("need at least one day")
        if self.noise_std < 0 or self.temp_noise_std < 0:
            raise SynthError("noise levels must be non-negative")
        object.__setattr__(self, "holiday_dates", tuple(self.holiday_dates))


def _quantize(values: np.ndarray) -> np.ndarray:
    return np.round(values / RATE_QUANTUM) * RATE_QUANTUM


def generate(cfg: SynthConfig) -> tuple[HourlySeries, HourlySeries, list[CalendarDay]]:
    """Generate (consumption rate, temperature, calendar) for cfg.days days.

    Same seed, same output, bit for bit; noise comes from numpy's seeded
    PCG64 generator (temperature draws first, then consumption).
    """
    n = cfg.days * 24
    rng = np.random.default_rng(cfg.seed)
    hours = np.arange(n)
    hour_of_day = hours % 24
    day_index = hours // 24

    calendar = calendar_range(cfg.start, cfg.days, cfg.holiday_dates)
    start_of_year = date(cfg.start.year, 1, 1)
    year_day = (cfg.start - start_of_year).days + (day_index + hour_of_day / 24.0)
    annual = np.cos(2.0 * np.pi * year_day / 365.25)   # +1 mid-winter

    temperature = (cfg.temp_mean
                   - cfg.temp_annual_amplitude * annual
                   + cfg.temp_daily_amplitude * np.sin(2.0 * np.pi * (hour_of_day - 9) / 24.0))
    if cfg.temp_noise_std > 0:
        temperature = temperature + rng.normal(0.0, cfg.temp_noise_std, n)

    special_by_day = np.array([d.is_special for d in calendar], dtype=np.float64)
    special = special_by_day[day_index]
    consumption = (cfg.base_load
                   + cfg.daily_amplitude * np.cos(2.0 * np.pi * (hour_of_day - 18) / 24.0)
                   + cfg.annual_amplitude * annual
                   + cfg.temp_sensitivity * (temperature - cfg.temp_mean)
                   + cfg.weekly_weekend_uplift * cfg.base_load * special)
    if cfg.noise_std > 0:
        consumption = consumption + rng.normal(0.0, cfg.noise_std, n)
    consumption = _quantize(np.maximum(0.0, consumption))

    start_ts = datetime(cfg.start.year, cfg.start.month, cfg.start.day, tzinfo=timezone.utc)
    return (HourlySeries(start_ts, consumption, SeriesKind.RATE),
            HourlySeries(start_ts, temperature, SeriesKind.TEMPERATURE),
            calendar)


def inject_meter_resets(acc: HourlySeries, reset_hours: Sequence[int],
                        drop: float = 1000.0) -> HourlySeries:
    """Add negative reading jumps (meter resets) to an accumulated series.

    Every reading from each reset hour onward drops by `drop`, so the hour
    before the reset shows a negative rate for the cleaning path to clamp.
    """
    if acc.kind is not SeriesKind.ACCUMULATED:
        raise SynthError("meter resets apply to accumulated series")
    values = acc.values.copy()
    for hour in reset_hours:
        if not 1 <= hour < len(values):
            raise SynthError(f"reset hour {hour} outside series interior")
        values[hour:] -= drop
    return HourlySeries(acc.start, values, acc.kind)

"""Tensor assembly and calendar tests."""

from datetime import date, datetime, timezone

import numpy as np
import pytest

from heatcast.calendars import (Calendar, CalendarDay, CalendarError, calendar_range,
                                meteorological_season, parse_calendar_csv,
                                write_calendar_csv)
from heatcast.dataset import (AssemblyError, CHANNEL_NAMES, InputTensor, build_dataset,
                              encode_day_flags, export_examples, make_example)
from heatcast.series import HourlySeries, SeriesKind
from heatcast.wavelet import WaveletConfig

T0 = datetime(2017, 1, 2, tzinfo=timezone.utc)   # a Monday
CFG24 = WaveletConfig(scales=24)


def norm_series(values, start=T0):
    return HourlySeries(start, np.asarray(values, dtype=np.float64), SeriesKind.NORMALIZED)


class TestCalendar:
    def test_weekend_derived_from_date(self):
        assert CalendarDay(date(2017, 1, 7)).is_weekend          # Saturday
        assert CalendarDay(date(2017, 1, 8)).is_weekend          # Sunday
        assert not CalendarDay(date(2017, 1, 4)).is_weekend      # Wednesday

    def test_parse_round_trip(self):
        import io
        days = calendar_range(date(2017, 1, 1), 10, holidays=[date(2017, 1, 5)])
        buf = io.StringIO()
        write_calendar_csv(days, buf)
        cal = parse_calendar_csv(buf.getvalue())
        assert cal.day(date(2017, 1, 5)).is_holiday
        assert not cal.day(date(2017, 1, 6)).is_holiday

    def test_parse_rejects_bad_flag(self):
        with pytest.raises(CalendarError, match="is_holiday"):
            parse_calendar_csv("date,is_holiday\n2017-01-01,yes\n")

    def test_missing_day_reported(self):
        cal = Calendar.from_days(calendar_range(date(2017, 1, 1), 2))
        with pytest.raises(CalendarError, match="2017-02-01"):
            cal.day(date(2017, 2, 1))

    def test_seasons(self):
        assert meteorological_season(date(2017, 1, 15)) == "DJF"
        assert meteorological_season(date(2017, 12, 1)) == "DJF"
        assert meteorological_season(date(2017, 4, 1)) == "MAM"
        assert meteorological_season(date(2017, 7, 31)) == "JJA"
        assert meteorological_season(date(2017, 10, 2)) == "SON"


class TestEncodeDayFlags:
    def test_holiday_wednesday_all_ones(self):
        day = CalendarDay(date(2017, 1, 4), is_holiday=True)
        flags = encode_day_flags(day, 24, 24)
        assert flags.shape == (24, 24)
        assert np.all(flags == 1.0)

    def test_ordinary_tuesday_all_zeros(self):
        flags = encode_day_flags(CalendarDay(date(2017, 1, 3)), 24, 24)
        assert np.all(flags == 0.0)

    def test_saturday_without_holiday_all_ones(self):
        flags = encode_day_flags(CalendarDay(date(2017, 1, 7)), 24, 24)
        assert np.all(flags == 1.0)


class TestMakeExample:
    def test_paper_configuration_shapes(self):
        rng = np.random.default_rng(0)
        example = make_example(rng.uniform(0, 1, 24), rng.uniform(0, 1, 24),
                               rng.uniform(0, 1, 24),
                               CalendarDay(date(2017, 1, 2)), CalendarDay(date(2017, 1, 3)),
                               rng.uniform(0, 1, 24), CFG24, window_start=T0)
        assert example.input.shape == (5, 24, 24)
        assert example.target.size == 24

    def test_all_zero_weekday_inputs_give_zero_tensor(self):
        zeros = np.zeros(24)
        example = make_example(zeros, zeros, zeros,
                               CalendarDay(date(2017, 1, 2)), CalendarDay(date(2017, 1, 3)),
                               zeros, CFG24, window_start=T0)
        assert np.array_equal(example.input.channels, np.zeros((5, 24, 24)))

    def test_horizon_mismatch_rejected(self):
        with pytest.raises(AssemblyError, match="horizon"):
            make_example(np.zeros(24), np.zeros(24), np.zeros(23),
                         CalendarDay(date(2017, 1, 2)), CalendarDay(date(2017, 1, 3)),
                         np.zeros(24), CFG24, window_start=T0)

    def test_channel_order_is_meaningful(self):
        rng = np.random.default_rng(1)
        cons = rng.uniform(0, 1, 24)
        weather = rng.uniform(0, 1, 24)
        example = make_example(cons, weather, weather,
                               CalendarDay(date(2017, 1, 2)), CalendarDay(date(2017, 1, 3)),
                               cons, CFG24, window_start=T0)
        swapped = make_example(weather, cons, weather,
                               CalendarDay(date(2017, 1, 2)), CalendarDay(date(2017, 1, 3)),
                               cons, CFG24, window_start=T0)
        assert not np.array_equal(example.input.channels, swapped.input.channels)
        assert CHANNEL_NAMES[0] == "past_consumption"
        assert CHANNEL_NAMES[2] == "forecast_weather"


class TestInputTensor:
    def test_flag_channels_must_be_constant(self):
        channels = np.zeros((5, 4, 4))
        channels[3, 1, 1] = 0.5
        with pytest.raises(AssemblyError, match="flag channel"):
            InputTensor(channels, T0)

    def test_channel_count_enforced(self):
        with pytest.raises(AssemblyError, match="channels"):
            InputTensor(np.zeros((4, 4, 4)), T0)


class TestBuildDataset:
    def _calendar(self, days=10):
        return Calendar.from_days(calendar_range(date(2017, 1, 2), days))

    def _series_pair(self, hours):
        rng = np.random.default_rng(2)
        return (norm_series(rng.uniform(0, 1, hours)),
                norm_series(rng.uniform(0, 1, hours)))

    def test_48_hours_single_example(self):
        cons, weather = self._series_pair(48)
        examples = build_dataset(cons, weather, self._calendar(), CFG24, 24)
        assert len(examples) == 1

    def test_96_hours_three_examples(self):
        cons, weather = self._series_pair(96)
        examples = build_dataset(cons, weather, self._calendar(), CFG24, 24)
        assert len(examples) == 3

    def test_47_hours_is_an_error(self):
        cons, weather = self._series_pair(47)
        with pytest.raises(AssemblyError, match="48 hours"):
            build_dataset(cons, weather, self._calendar(), CFG24, 24)

    def test_no_leakage_between_history_and_target(self):
        hours = 8 * 24
        cons = norm_series(np.arange(hours) / hours)
        weather = norm_series(np.zeros(hours))
        examples = build_dataset(cons, weather, self._calendar(), CFG24, 24)
        seen = set()
        for j, ex in enumerate(examples):
            history = set(range(j * 24, (j + 1) * 24))
            target_hours = set(range((j + 1) * 24, (j + 2) * 24))
            assert not history & target_hours
            assert not seen & history        # consecutive examples share no hours
            seen |= history
            start_hour = int((ex.input.window_start - T0).total_seconds() // 3600)
            assert start_hour == j * 24
            # the target is exactly the next day's values
            np.testing.assert_array_equal(ex.target, cons.values[(j + 1) * 24:(j + 2) * 24])

    def test_flags_follow_calendar(self):
        hours = 7 * 24
        cons, weather = self._series_pair(hours)
        cal = Calendar.from_days(calendar_range(date(2017, 1, 2), 7,
                                                holidays=[date(2017, 1, 4)]))
        examples = build_dataset(cons, weather, cal, CFG24, 24)
        # example 1: history Tue Jan 3, forecast Wed Jan 4 (holiday)
        assert np.all(examples[1].input.channels[3] == 0.0)   # Tuesday, ordinary
        assert np.all(examples[1].input.channels[4] == 1.0)   # Wednesday holiday
        # example 4: history Fri Jan 6, forecast Sat Jan 7
        assert np.all(examples[4].input.channels[3] == 0.0)
        assert np.all(examples[4].input.channels[4] == 1.0)   # Saturday

    def test_deterministic(self):
        cons, weather = self._series_pair(96)
        cal = self._calendar()
        a = build_dataset(cons, weather, cal, CFG24, 24)
        b = build_dataset(cons, weather, cal, CFG24, 24)
        for left, right in zip(a, b):
            assert np.array_equal(left.input.channels, right.input.channels)
            assert np.array_equal(left.target, right.target)

    def test_misaligned_series_rejected(self):
        cons, _ = self._series_pair(48)
        weather = norm_series(np.zeros(48), start=datetime(2017, 1, 3, tzinfo=timezone.utc))
        with pytest.raises(AssemblyError, match="not aligned"):
            build_dataset(cons, weather, self._calendar(), CFG24, 24)

    def test_export_examples_layout(self, tmp_path):
        cons, weather = self._series_pair(48)
        examples = build_dataset(cons, weather, self._calendar(), CFG24, 24)
        export_examples(examples, tmp_path)
        base = tmp_path / "example_0000"
        for c, name in enumerate(CHANNEL_NAMES):
            path = base / f"channel_{c}_{name}.csv"
            assert path.exists()
            loaded = np.loadtxt(path, delimiter=",")
            np.testing.assert_array_equal(loaded, examples[0].input.channels[c])
        target = np.loadtxt(base / "target.csv")
        np.testing.assert_array_equal(target, examples[0].target)

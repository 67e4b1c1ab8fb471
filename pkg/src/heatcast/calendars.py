"""Calendar days, holiday files, and season grouping."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import date, datetime, timedelta
from typing import Iterable, Mapping


class CalendarError(ValueError):
    """Malformed calendar data or missing coverage."""


@dataclass(frozen=True)
class CalendarDay:
    """One civil day; weekend status is derived from the date itself."""

    date: date
    is_holiday: bool = False

    @property
    def is_weekend(self) -> bool:
        return self.date.weekday() >= 5

    @property
    def is_special(self) -> bool:
        """True when the day gets the all-ones flag matrix."""
        return self.is_weekend or self.is_holiday


@dataclass(frozen=True)
class Calendar:
    days: Mapping[date, CalendarDay]

    def day(self, d: date) -> CalendarDay:
        try:
            return self.days[d]
        except KeyError:
            raise CalendarError(f"calendar does not cover {d.isoformat()}") from None

    def day_of(self, ts: datetime) -> CalendarDay:
        return self.day(ts.date())

    @staticmethod
    def from_days(days: Iterable[CalendarDay]) -> "Calendar":
        return Calendar({d.date: d for d in days})


def parse_calendar_csv(stream) -> Calendar:
    """Read a `date,is_holiday` CSV (is_holiday in {0,1}) into a Calendar."""
    if isinstance(stream, bytes):
        stream = stream.decode("utf-8")
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header] != ["date", "is_holiday"]:
        raise CalendarError("expected header 'date,is_holiday'")
    days = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise CalendarError(f"line {line_no}: expected 2 columns, got {len(row)}")
        try:
            d = date.fromisoformat(row[0].strip())
        except ValueError:
            raise CalendarError(f"line {line_no}: invalid date {row[0]!r}") from None
        flag = row[1].strip()
        if flag not in ("0", "1"):
            raise CalendarError(f"line {line_no}: is_holiday must be 0 or 1, got {row[1]!r}")
        days.append(CalendarDay(d, is_holiday=flag == "1"))
    if not days:
        raise CalendarError("empty calendar: no data rows after header")
    return Calendar.from_days(days)


def write_calendar_csv(days: Iterable[CalendarDay], stream) -> None:
    stream.write("date,is_holiday\n")
    for d in days:
        stream.write(f"{d.date.isoformat()},{1 if d.is_holiday else 0}\n")


def calendar_range(first: date, num_days: int,
                   holidays: Iterable[date] = ()) -> list[CalendarDay]:
    holidays = set(holidays)
    return [CalendarDay(first + timedelta(days=i), is_holiday=(first + timedelta(days=i)) in holidays)
            for i in range(num_days)]


def meteorological_season(d: date) -> str:
    """Month-based season label: DJF, MAM, JJA, or SON."""
    return {12: "DJF", 1: "DJF", 2: "DJF",
            3: "MAM", 4: "MAM", 5: "MAM",
            6: "JJA", 7: "JJA", 8: "JJA",
            9: "SON", 10: "SON", 11: "SON"}[d.month]

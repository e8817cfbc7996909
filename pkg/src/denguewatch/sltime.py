"""Time handling: UTC instants internally, Sri Lanka wall-clock for display.

All stored timestamps are timezone-aware UTC datetimes truncated to whole
seconds. Display rendering (CSV exports, printable tables, the live-update
table) uses the Asia/Colombo zone and the DD-MM-YYYY HH:MM:SS format; absent
timestamps render as the literal "Nil".
"""
from __future__ import annotations

import re
from datetime import date, datetime, timedelta, timezone
from zoneinfo import ZoneInfo

SL_TZ = ZoneInfo("Asia/Colombo")
NIL = "Nil"

_WEEK_RE = re.compile(r"^(\d{4})-W(\d{1,2})$")

# Offset in days applied before taking the ISO week, per week-start convention.
# "saturday" gives Saturday-to-Friday weeks (the WER-style return cycle).
WEEK_CONVENTIONS = {"iso": 0, "monday": 0, "sunday": 1, "saturday": 2}


def to_utc(dt: datetime) -> datetime:
    """Normalise an aware datetime to UTC, truncated to whole seconds."""
    if dt.tzinfo is None:
        raise ValueError("naive datetime; timestamps must be timezone-aware")
    return dt.astimezone(timezone.utc).replace(microsecond=0)


def iso_utc(dt: datetime) -> str:
    """Render a UTC instant as YYYY-MM-DDTHH:MM:SSZ."""
    return to_utc(dt).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_iso(text: str) -> datetime:
    """Parse an ISO-8601 instant; 'Z' suffix accepted."""
    cleaned = text.strip()
    if cleaned.endswith("Z"):
        cleaned = cleaned[:-1] + "+00:00"
    return to_utc(datetime.fromisoformat(cleaned))


def fmt_sl(dt: datetime, tz: ZoneInfo = SL_TZ) -> str:
    """Display format DD-MM-YYYY HH:MM:SS in Sri Lanka time."""
    return to_utc(dt).astimezone(tz).strftime("%d-%m-%Y %H:%M:%S")


def fmt_sl_opt(dt: datetime | None, tz: ZoneInfo = SL_TZ) -> str:
    return NIL if dt is None else fmt_sl(dt, tz)


def sl_date(dt: datetime, tz: ZoneInfo = SL_TZ) -> date:
    """Calendar date of an instant on the Sri Lanka wall clock."""
    return to_utc(dt).astimezone(tz).date()


def epi_week(d: date | datetime, convention: str = "iso") -> tuple[int, int]:
    """Bucket a calendar date into an (year, week_no) epi week.

    The default is the ISO-8601 week. Other conventions shift the week start
    day; e.g. "saturday" buckets Saturday..Friday together.
    """
    if isinstance(d, datetime):
        d = sl_date(d)
    shift = WEEK_CONVENTIONS[convention]
    year, week, _ = (d + timedelta(days=shift)).isocalendar()
    return (year, week)


def epi_week_start(year: int, week: int, convention: str = "iso") -> date:
    shift = WEEK_CONVENTIONS[convention]
    return date.fromisocalendar(year, week, 1) - timedelta(days=shift)


def parse_week(text: str) -> tuple[int, int]:
    m = _WEEK_RE.match(text.strip())
    if m is None:
        raise ValueError(f"bad week {text!r}; expected e.g. 2014-W01")
    return (int(m.group(1)), int(m.group(2)))


def format_week(week: tuple[int, int]) -> str:
    return f"{week[0]}-W{week[1]:02d}"


class Clock:
    """Source of the authoritative service time (UTC, second resolution)."""

    def now(self) -> datetime:
        raise NotImplementedError


class SystemClock(Clock):
    def now(self) -> datetime:
        return datetime.now(timezone.utc).replace(microsecond=0)


class ManualClock(Clock):
    """Fixed clock for tests, seeding and replay/demo servers."""

    def __init__(self, start: datetime):
        self._now = to_utc(start)

    def now(self) -> datetime:
        return self._now

    def set(self, dt: datetime) -> None:
        self._now = to_utc(dt)

    def advance(self, delta: timedelta) -> None:
        self._now = self._now + delta

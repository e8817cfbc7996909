from datetime import date, datetime, timedelta, timezone

import pytest

from denguewatch import sltime

SL = timezone(timedelta(hours=5, minutes=30))


def test_display_format_matches_sl_wall_clock():
    # 31-12-2013 22:31:33 on the Sri Lanka clock is 17:01:33 UTC
    instant = datetime(2013, 12, 31, 17, 1, 33, tzinfo=timezone.utc)
    assert sltime.fmt_sl(instant) == "31-12-2013 22:31:33"
    assert sltime.fmt_sl_opt(None) == "Nil"


def test_to_utc_truncates_and_requires_awareness():
    aware = datetime(2013, 12, 31, 22, 31, 33, 999999, tzinfo=SL)
    assert sltime.to_utc(aware).microsecond == 0
    with pytest.raises(ValueError):
        sltime.to_utc(datetime(2013, 12, 31))


def test_iso_round_trip():
    instant = datetime(2013, 12, 31, 17, 1, 33, tzinfo=timezone.utc)
    assert sltime.parse_iso(sltime.iso_utc(instant)) == instant
    assert sltime.iso_utc(instant) == "2013-12-31T17:01:33Z"


def test_sl_date_rolls_with_wall_clock():
    # 19:00 UTC is already the next calendar day in Colombo
    assert sltime.sl_date(datetime(2013, 12, 31, 19, 0, 0, tzinfo=timezone.utc)) == date(2014, 1, 1)
    assert sltime.sl_date(datetime(2013, 12, 31, 17, 0, 0, tzinfo=timezone.utc)) == date(2013, 12, 31)


def test_iso_epi_week():
    assert sltime.epi_week(date(2013, 12, 31)) == (2014, 1)
    assert sltime.epi_week(date(2014, 1, 5)) == (2014, 1)
    assert sltime.epi_week(date(2014, 1, 6)) == (2014, 2)


def test_saturday_weeks_group_sat_to_fri():
    # 2014-01-04 is a Saturday; Friday the 10th closes the same week
    assert sltime.epi_week(date(2014, 1, 4), "saturday") == sltime.epi_week(
        date(2014, 1, 10), "saturday"
    )
    assert sltime.epi_week(date(2014, 1, 3), "saturday") != sltime.epi_week(
        date(2014, 1, 4), "saturday"
    )
    start = sltime.epi_week_start(*sltime.epi_week(date(2014, 1, 4), "saturday"), "saturday")
    assert start == date(2014, 1, 4)
    assert start.strftime("%A") == "Saturday"


def test_week_parse_format_round_trip():
    assert sltime.parse_week("2014-W01") == (2014, 1)
    assert sltime.format_week((2014, 1)) == "2014-W01"
    with pytest.raises(ValueError):
        sltime.parse_week("2014/01")


def test_manual_clock():
    clock = sltime.ManualClock(datetime(2013, 12, 31, 17, 1, 33, tzinfo=timezone.utc))
    assert clock.now() == datetime(2013, 12, 31, 17, 1, 33, tzinfo=timezone.utc)
    clock.advance(timedelta(hours=1))
    assert clock.now().hour == 18

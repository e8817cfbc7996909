"""Live district statistics, weekly returns, timeliness and the response cycle.

The live table mirrors the public dashboard: one row per configured health
district, alphabetical, with today's case count, the last case time, risk
places identified over the trailing 10 days and the last risk-place time.
Weekly returns summarize each MOH area's suspected and confirmed cases per
epi week; generating one for every area is what drives return timeliness
to 1.0. The stage-latency baseline keeps the postal cycle (6 + 2 + 2 + 2 =
12 days) on hand as the comparison constant for the electronic cycle.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta

from .errors import FutureWeek
from .gazetteer import Gazetteer, normalize_name
from .registry import CaseStore
from .sltime import epi_week, epi_week_start, fmt_sl, fmt_sl_opt, iso_utc, sl_date
from .travel import DEFAULT_WINDOW_DAYS, RiskPlaceStore
from .workflow import IDRegister

DISEASE = "dengue"

# Postal-notification stage model: label and approximate days per hop.
BASELINE_STAGES = (
    ("Hospital to MOH office", 6),
    ("MOH office to PHI", 2),
    ("PHI visits the patient home", 2),
    ("PHI reports back to MOH", 2),
)


@dataclass(frozen=True)
class LiveUpdateRow:
    district: str
    cases_today: int
    last_case_at: datetime | None
    risk_places_10d: int
    last_risk_at: datetime | None

    def to_dict(self) -> dict:
        return {
            "district": self.district,
            "cases_today": self.cases_today,
            "last_case_at": iso_utc(self.last_case_at) if self.last_case_at else None,
            "risk_places_10d": self.risk_places_10d,
            "last_risk_at": iso_utc(self.last_risk_at) if self.last_risk_at else None,
        }


def live_update(
    cases: CaseStore,
    risk_places: RiskPlaceStore,
    gazetteer: Gazetteer,
    now: datetime,
    window_days: int = DEFAULT_WINDOW_DAYS,
) -> list[LiveUpdateRow]:
    """One row per configured district, alphabetical.

    cases_today counts cases whose residence district matches and whose
    registration falls on the same Sri Lanka calendar date as `now`; cases
    later ruled NotDengue stay counted (they were notifications that day).
    """
    today = sl_date(now)
    rows = []
    for district in gazetteer.district_names():
        wanted = normalize_name(district)
        registered = [
            c.registered_at
            for c in cases.all()
            if normalize_name(c.path.district) == wanted
        ]
        todays = [t for t in registered if sl_date(t) == today]
        count, latest_risk = risk_places.in_window(district, now, window_days)
        rows.append(
            LiveUpdateRow(
                district=district,
                cases_today=len(todays),
                last_case_at=max(registered) if registered else None,
                risk_places_10d=count,
                last_risk_at=latest_risk,
            )
        )
    return rows


def render_live_table(rows: list[LiveUpdateRow], now: datetime) -> dict:
    """Display strings for exports and the CLI: SL wall clock, Nil for absent."""
    return {
        "title": f"Dengue Live Update: {fmt_sl(now)}",
        "generated_at": fmt_sl(now),
        "rows": [
            {
                "s_no": i + 1,
                "district": row.district,
                "cases_today": str(row.cases_today),
                "last_case_at": fmt_sl_opt(row.last_case_at),
                "risk_places_10d": str(row.risk_places_10d),
                "last_risk_at": fmt_sl_opt(row.last_risk_at),
            }
            for i, row in enumerate(rows)
        ],
    }


@dataclass(frozen=True)
class WeeklyReturn:
    moh_area: str
    epi_week: tuple[int, int]
    disease: str
    suspected_count: int
    confirmed_count: int
    generated_at: datetime

    def to_dict(self) -> dict:
        return {
            "moh_area": self.moh_area,
            "epi_week": list(self.epi_week),
            "disease": self.disease,
            "suspected_count": self.suspected_count,
            "confirmed_count": self.confirmed_count,
            "generated_at": iso_utc(self.generated_at),
        }


def count_week(
    cases: CaseStore,
    id_register: IDRegister,
    moh_area: str,
    week: tuple[int, int],
    convention: str,
) -> tuple[int, int]:
    """Suspected and confirmed counts for one MOH area and week.

    Suspected = every case registered in the area that week (notification is
    on suspicion). Confirmed = those of them holding an ID register entry,
    attributed to the registration week so confirmed never exceeds suspected.
    """
    wanted = normalize_name(moh_area)
    suspected = 0
    confirmed = 0
    for record in cases.all():
        if normalize_name(record.path.moh_area) != wanted:
            continue
        if epi_week(record.registered_at, convention) != week:
            continue
        suspected += 1
        if id_register.has(record.case_id):
            confirmed += 1
    return suspected, confirmed


class ReturnsLedger:
    """Which MOH areas have a generated return, per week.

    Operational bookkeeping for the timeliness metric; returns themselves are
    recomputed deterministically from the registry.
    """

    def __init__(self):
        self._by_week: dict[tuple[int, int], dict[str, WeeklyReturn]] = {}

    def record(self, ret: WeeklyReturn) -> None:
        self._by_week.setdefault(ret.epi_week, {})[normalize_name(ret.moh_area)] = ret

    def generated(self, week: tuple[int, int]) -> list[WeeklyReturn]:
        by_area = self._by_week.get(week, {})
        return sorted(by_area.values(), key=lambda r: normalize_name(r.moh_area))

    def weeks(self) -> list[tuple[int, int]]:
        return sorted(self._by_week)

    def timeliness(self, week: tuple[int, int], all_areas: list[str]) -> float:
        if not all_areas:
            return 1.0
        have = self._by_week.get(week, {})
        count = sum(1 for area in all_areas if normalize_name(area) in have)
        return count / len(all_areas)


def check_week_not_future(week: tuple[int, int], now: datetime, convention: str) -> None:
    if epi_week_start(*week, convention) > epi_week_start(*epi_week(now, convention), convention):
        raise FutureWeek(week)


@dataclass(frozen=True)
class StageLatencyModel:
    stages: tuple[tuple[str, int], ...]

    @property
    def total(self) -> int:
        return sum(days for _, days in self.stages)

    def to_dict(self) -> dict:
        return {
            "stages": [[label, days] for label, days in self.stages],
            "total_days": self.total,
        }


def baseline() -> StageLatencyModel:
    """The paper-form notification cycle the service replaces: 12 days."""
    return StageLatencyModel(BASELINE_STAGES)


@dataclass(frozen=True)
class ResponseCycle:
    case_id: str
    milestones: tuple[tuple[str, datetime], ...]
    complete: bool

    @property
    def stages(self) -> list[tuple[str, timedelta]]:
        out = []
        for (prev_label, prev_at), (label, at) in zip(self.milestones, self.milestones[1:]):
            out.append((f"{prev_label} to {label}", at - prev_at))
        return out

    @property
    def total(self) -> timedelta | None:
        if not self.complete or not self.milestones:
            return None
        return self.milestones[-1][1] - self.milestones[0][1]

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "milestones": [[label, iso_utc(at)] for label, at in self.milestones],
            "stages": [[label, delta.total_seconds()] for label, delta in self.stages],
            "total_seconds": self.total.total_seconds() if self.total is not None else None,
            "complete": self.complete,
        }


MILESTONE_ORDER = ("registered", "alert_dispatched", "assigned", "attended", "outcome")


def response_cycle(case_id: str, milestones: dict[str, datetime], terminal: bool) -> ResponseCycle:
    present = tuple(
        (label, milestones[label]) for label in MILESTONE_ORDER if label in milestones
    )
    return ResponseCycle(case_id=case_id, milestones=present, complete=terminal)


def h399_csv(returns: list[WeeklyReturn]) -> str:
    lines = ["moh_area,epi_week,disease,suspected,confirmed,generated_at"]
    for ret in returns:
        week = f"{ret.epi_week[0]}-W{ret.epi_week[1]:02d}"
        lines.append(
            f"{ret.moh_area},{week},{ret.disease},{ret.suspected_count},"
            f"{ret.confirmed_count},{fmt_sl(ret.generated_at)}"
        )
    return "\n".join(lines) + "\n"


def h399_table(returns: list[WeeklyReturn]) -> str:
    """Printable weekly-return summary."""
    if not returns:
        return "(no returns)\n"
    week = f"{returns[0].epi_week[0]}-W{returns[0].epi_week[1]:02d}"
    header = f"Weekly Return of Communicable Diseases (H399) - {DISEASE} - week {week}"
    name_width = max(len("MOH Area"), max(len(r.moh_area) for r in returns))
    lines = [header, "=" * len(header)]
    lines.append(f"{'MOH Area':<{name_width}}  {'Suspected':>9}  {'Confirmed':>9}")
    for ret in returns:
        lines.append(
            f"{ret.moh_area:<{name_width}}  {ret.suspected_count:>9}  {ret.confirmed_count:>9}"
        )
    return "\n".join(lines) + "\n"


def risk_csv(places) -> str:
    lines = ["district,door_no,street,gn_division,identified_at,n_sources"]
    for place in places:
        lines.append(
            f"{place.district},{place.door_no},{place.street},{place.gn_division},"
            f"{fmt_sl(place.identified_at)},{len(place.source_cases)}"
        )
    return "\n".join(lines) + "\n"

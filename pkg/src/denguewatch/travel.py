"""Patient travel history and risk-place derivation.

Each case can carry up to 14 per-day locations (day k dated registration
minus k days, inheriting the registration clock time). A risk place is each
distinct normalized location appearing in any patient's travel history,
excluding that patient's own residence: the home is already covered by the
field visit, while every other visited location is a potential breeding
site. Places are deduplicated by normalized (door_no, street, gn_division,
district); the identification timestamp is the earliest contributing entry
date and only ever moves earlier as new sources merge in. Places are never
hard-deleted; they age out of the live 10-day window.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Iterable, Mapping

from .gazetteer import normalize_name
from .sltime import iso_utc, parse_iso

MAX_DAYS = 14
DEFAULT_WINDOW_DAYS = 10

PlaceKey = tuple[str, str, str, str]


def place_key(door_no: str, street: str, gn_division: str, district: str) -> PlaceKey:
    return (
        normalize_name(door_no),
        normalize_name(street),
        normalize_name(gn_division),
        normalize_name(district),
    )


@dataclass(frozen=True)
class TravelEntryForm:
    """One day of the travel-history wizard, as submitted."""

    day_index: int
    door_no: str
    street: str
    gn_division: str
    contact_tp: str
    district_hint: str | None = None


def entry_forms_from_list(items) -> list[TravelEntryForm]:
    from .errors import ValidationError

    if not isinstance(items, list):
        raise ValidationError("entries", "expected a JSON list")
    forms = []
    for item in items:
        try:
            forms.append(
                TravelEntryForm(
                    day_index=int(item["day_index"]),
                    door_no=str(item["door_no"]),
                    street=str(item["street"]),
                    gn_division=str(item["gn_division"]),
                    contact_tp=str(item["contact_tp"]),
                    district_hint=item.get("district_hint") or item.get("district"),
                )
            )
        except KeyError as exc:
            raise ValidationError(str(exc.args[0]), "required") from None
        except (TypeError, ValueError) as exc:
            raise ValidationError("entries", str(exc)) from None
    return forms


@dataclass(frozen=True)
class TravelHistoryEntry:
    case_id: str
    day_index: int
    entry_date: datetime  # registration time minus day_index days
    door_no: str
    street: str
    gn_division: str
    district: str  # resolved via the gazetteer
    contact_tp: str

    @property
    def key(self) -> PlaceKey:
        return place_key(self.door_no, self.street, self.gn_division, self.district)

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "day_index": self.day_index,
            "entry_date": iso_utc(self.entry_date),
            "door_no": self.door_no,
            "street": self.street,
            "gn_division": self.gn_division,
            "district": self.district,
            "contact_tp": self.contact_tp,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "TravelHistoryEntry":
        return cls(
            case_id=obj["case_id"],
            day_index=obj["day_index"],
            entry_date=parse_iso(obj["entry_date"]),
            door_no=obj["door_no"],
            street=obj["street"],
            gn_division=obj["gn_division"],
            district=obj["district"],
            contact_tp=obj["contact_tp"],
        )


@dataclass
class RiskPlace:
    key: PlaceKey
    district: str
    door_no: str
    street: str
    gn_division: str
    identified_at: datetime
    source_cases: set[str] = field(default_factory=set)
    source_entries: set[tuple[str, int]] = field(default_factory=set)

    def to_dict(self) -> dict:
        return {
            "key": list(self.key),
            "district": self.district,
            "door_no": self.door_no,
            "street": self.street,
            "gn_division": self.gn_division,
            "identified_at": iso_utc(self.identified_at),
            "source_cases": sorted(self.source_cases),
            "source_entries": sorted([c, d] for c, d in self.source_entries),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RiskPlace":
        return cls(
            key=tuple(obj["key"]),
            district=obj["district"],
            door_no=obj["door_no"],
            street=obj["street"],
            gn_division=obj["gn_division"],
            identified_at=parse_iso(obj["identified_at"]),
            source_cases=set(obj["source_cases"]),
            source_entries={(c, d) for c, d in obj["source_entries"]},
        )


def derive_risk_places(
    entries: Iterable[TravelHistoryEntry],
    residences: Mapping[str, PlaceKey],
) -> dict[PlaceKey, RiskPlace]:
    """Pure derivation over the full entry set; order-independent.

    `residences` maps case_id to that patient's own residence key, which is
    excluded for entries of that patient only.
    """
    places: dict[PlaceKey, RiskPlace] = {}
    for entry in entries:
        key = entry.key
        if residences.get(entry.case_id) == key:
            continue
        existing = places.get(key)
        if existing is None:
            places[key] = RiskPlace(
                key=key,
                district=entry.district,
                door_no=entry.door_no,
                street=entry.street,
                gn_division=entry.gn_division,
                identified_at=entry.entry_date,
                source_cases={entry.case_id},
                source_entries={(entry.case_id, entry.day_index)},
            )
        else:
            if entry.entry_date < existing.identified_at:
                existing.identified_at = entry.entry_date
            existing.source_cases.add(entry.case_id)
            existing.source_entries.add((entry.case_id, entry.day_index))
    return places


class TravelStore:
    """Latest submitted entry per (case, day index)."""

    def __init__(self):
        self._by_case: dict[str, dict[int, TravelHistoryEntry]] = {}

    def record(self, entries: Iterable[TravelHistoryEntry]) -> None:
        for entry in entries:
            self._by_case.setdefault(entry.case_id, {})[entry.day_index] = entry

    def for_case(self, case_id: str) -> list[TravelHistoryEntry]:
        days = self._by_case.get(case_id, {})
        return [days[i] for i in sorted(days)]

    def all_entries(self) -> list[TravelHistoryEntry]:
        return [
            days[i] for _, days in sorted(self._by_case.items()) for i in sorted(days)
        ]

    def to_state(self) -> list[dict]:
        return [e.to_dict() for e in self.all_entries()]


class RiskPlaceStore:
    """Persistent merge target for derived risk places.

    Merging is commutative and idempotent: identification timestamps take
    the minimum, source sets union, display fields keep the first writer.
    Places are never removed.
    """

    def __init__(self):
        self.places: dict[PlaceKey, RiskPlace] = {}

    def __len__(self) -> int:
        return len(self.places)

    def merge(self, derived: Mapping[PlaceKey, RiskPlace]) -> list[RiskPlace]:
        """Fold a derivation result in; returns places that changed."""
        changed = []
        for key, new in derived.items():
            existing = self.places.get(key)
            if existing is None:
                self.places[key] = RiskPlace(
                    key=key,
                    district=new.district,
                    door_no=new.door_no,
                    street=new.street,
                    gn_division=new.gn_division,
                    identified_at=new.identified_at,
                    source_cases=set(new.source_cases),
                    source_entries=set(new.source_entries),
                )
                changed.append(self.places[key])
                continue
            before = (
                existing.identified_at,
                len(existing.source_cases),
                len(existing.source_entries),
            )
            if new.identified_at < existing.identified_at:
                existing.identified_at = new.identified_at
            existing.source_cases |= new.source_cases
            existing.source_entries |= new.source_entries
            after = (
                existing.identified_at,
                len(existing.source_cases),
                len(existing.source_entries),
            )
            if before != after:
                changed.append(existing)
        return changed

    def in_window(
        self, district: str, now: datetime, window_days: int = DEFAULT_WINDOW_DAYS
    ) -> tuple[int, datetime | None]:
        """Count and latest identification inside (now - window, now]."""
        wanted = normalize_name(district)
        cutoff = now - timedelta(days=window_days)
        hits = [
            p.identified_at
            for p in self.places.values()
            if normalize_name(p.district) == wanted and cutoff < p.identified_at <= now
        ]
        return (len(hits), max(hits) if hits else None)

    def list_places(
        self,
        district: str | None = None,
        now: datetime | None = None,
        window_days: int | None = None,
    ) -> list[RiskPlace]:
        out = []
        for place in self.places.values():
            if district and normalize_name(place.district) != normalize_name(district):
                continue
            if now is not None and window_days is not None:
                if not (now - timedelta(days=window_days) < place.identified_at <= now):
                    continue
            out.append(place)
        out.sort(key=lambda p: (p.identified_at, p.key))
        return out

    def to_state(self) -> list[dict]:
        return [self.places[k].to_dict() for k in sorted(self.places)]

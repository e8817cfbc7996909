"""Case intake: the electronic notification form, validation and storage.

A hospital's Infection Control Nurse submits the intake form; the whole form
is validated against the controlled vocabularies and the gazetteer before
anything is persisted. Rejection leaves no observable state change.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime
from enum import Enum

from .errors import (
    AmbiguousDivision,
    NotFound,
    UnknownDivision,
    ValidationError,
)
from .gazetteer import Gazetteer, ResidencePath, normalize_name
from .sltime import iso_utc, parse_iso, sl_date
from .vocab import Vocabulary
from .workflow import AttentionStatus

GENDERS = ("female", "male")
AGE_UNITS = ("years", "months")
MAX_AGE_YEARS = 130
MAX_AGE_MONTHS = 36


class ClinicalClass(str, Enum):
    DF = "DF"
    DHF = "DHF"
    UNSPECIFIED = "unspecified"


@dataclass(frozen=True)
class Address:
    door_no: str
    street: str
    land_type: str
    gn_division: str
    district_hint: str | None = None

    def to_dict(self) -> dict:
        return {
            "door_no": self.door_no,
            "street": self.street,
            "land_type": self.land_type,
            "gn_division": self.gn_division,
            "district_hint": self.district_hint,
        }


@dataclass(frozen=True)
class Age:
    value: int
    unit: str

    def display(self) -> str:
        unit = self.unit if self.value != 1 else self.unit.rstrip("s")
        return f"{self.value} {unit}"


@dataclass(frozen=True)
class CaseIntakeForm:
    opd_no: str
    ward_no: str
    ward_ticket_no: str
    title: str
    first_name: str
    last_name: str
    age: Age
    gender: str
    residence: Address
    mobile: str | None = None
    employment: str | None = None
    clinical_class: str | None = None


@dataclass
class CaseRecord:
    case_id: str
    opd_no: str
    ward_no: str
    ward_ticket_no: str
    title: str
    first_name: str
    last_name: str
    age: Age
    gender: str
    residence: Address
    mobile: str | None
    employment: str | None
    clinical_class: str | None
    registered_at: datetime
    attention: AttentionStatus
    path: ResidencePath

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "opd_no": self.opd_no,
            "ward_no": self.ward_no,
            "ward_ticket_no": self.ward_ticket_no,
            "title": self.title,
            "first_name": self.first_name,
            "last_name": self.last_name,
            "age": {"value": self.age.value, "unit": self.age.unit},
            "gender": self.gender,
            "residence": self.residence.to_dict(),
            "mobile": self.mobile,
            "employment": self.employment,
            "clinical_class": self.clinical_class,
            "registered_at": iso_utc(self.registered_at),
            "attention": self.attention.value,
            "path": self.path.to_dict(),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "CaseRecord":
        res = obj["residence"]
        return cls(
            case_id=obj["case_id"],
            opd_no=obj["opd_no"],
            ward_no=obj["ward_no"],
            ward_ticket_no=obj["ward_ticket_no"],
            title=obj["title"],
            first_name=obj["first_name"],
            last_name=obj["last_name"],
            age=Age(obj["age"]["value"], obj["age"]["unit"]),
            gender=obj["gender"],
            residence=Address(
                res["door_no"],
                res["street"],
                res["land_type"],
                res["gn_division"],
                res.get("district_hint"),
            ),
            mobile=obj["mobile"],
            employment=obj["employment"],
            clinical_class=obj["clinical_class"],
            registered_at=parse_iso(obj["registered_at"]),
            attention=AttentionStatus(obj["attention"]),
            path=ResidencePath(**obj["path"]),
        )


def intake_from_dict(obj: dict) -> CaseIntakeForm:
    """Build an intake form from a wire payload, checking shape only."""
    if not isinstance(obj, dict):
        raise ValidationError("body", "expected a JSON object")
    try:
        age = obj["age"]
        res = obj["residence"]
        return CaseIntakeForm(
            opd_no=str(obj["opd_no"]),
            ward_no=str(obj["ward_no"]),
            ward_ticket_no=str(obj["ward_ticket_no"]),
            title=str(obj["title"]),
            first_name=str(obj["first_name"]),
            last_name=str(obj["last_name"]),
            age=Age(int(age["value"]), str(age["unit"])),
            gender=str(obj["gender"]),
            residence=Address(
                door_no=str(res["door_no"]),
                street=str(res["street"]),
                land_type=str(res["land_type"]),
                gn_division=str(res["gn_division"]),
                district_hint=res.get("district_hint"),
            ),
            mobile=obj.get("mobile"),
            employment=obj.get("employment"),
            clinical_class=obj.get("clinical_class"),
        )
    except KeyError as exc:
        raise ValidationError(str(exc.args[0]), "required") from None
    except (TypeError, ValueError) as exc:
        raise ValidationError("body", str(exc)) from None


def validate_intake(
    form: CaseIntakeForm,
    gazetteer: Gazetteer,
    vocabularies: dict[str, Vocabulary],
) -> ResidencePath:
    """Validate the whole intake form; returns the resolved residence path.

    Raises ValidationError naming the first offending field. The caller
    persists nothing on failure.
    """
    for fname in ("opd_no", "ward_no", "ward_ticket_no", "first_name", "last_name"):
        if not str(getattr(form, fname)).strip():
            raise ValidationError(fname, "required")
    if not vocabularies["titles"].contains(form.title):
        raise ValidationError("title", f"{form.title!r} not in titles vocabulary")
    if form.gender not in GENDERS:
        raise ValidationError("gender", f"{form.gender!r} not one of {GENDERS}")
    if form.age.unit not in AGE_UNITS:
        raise ValidationError("age", f"unit {form.age.unit!r} not one of {AGE_UNITS}")
    if form.age.value < 0:
        raise ValidationError("age", "value must be non-negative")
    if form.age.unit == "years" and form.age.value > MAX_AGE_YEARS:
        raise ValidationError("age", f"{form.age.value} years exceeds {MAX_AGE_YEARS}")
    if form.age.unit == "months" and form.age.value > MAX_AGE_MONTHS:
        raise ValidationError("age", f"{form.age.value} months exceeds {MAX_AGE_MONTHS}")
    if not form.residence.door_no.strip():
        raise ValidationError("door_no", "required")
    if not form.residence.street.strip():
        raise ValidationError("street", "required")
    if not vocabularies["land_types"].contains(form.residence.land_type):
        raise ValidationError(
            "land_type", f"{form.residence.land_type!r} not in land_types vocabulary"
        )
    if form.mobile is not None:
        digits = form.mobile.strip()
        if not digits.isdigit() or len(digits) not in (9, 10):
            raise ValidationError("mobile", f"{form.mobile!r} is not 9 or 10 digits")
    if form.employment is not None and not vocabularies["employment"].contains(form.employment):
        raise ValidationError(
            "employment", f"{form.employment!r} not in employment vocabulary"
        )
    if form.clinical_class is not None:
        try:
            ClinicalClass(form.clinical_class)
        except ValueError:
            raise ValidationError(
                "clinical_class", f"{form.clinical_class!r} not DF/DHF/unspecified"
            ) from None
    try:
        return gazetteer.resolve(form.residence.gn_division, form.residence.district_hint)
    except (UnknownDivision, AmbiguousDivision) as exc:
        raise ValidationError("gn_division", str(exc)) from None


class CaseStore:
    """Registered cases keyed by id, preserving event order."""

    def __init__(self):
        self._cases: dict[str, CaseRecord] = {}

    def __len__(self) -> int:
        return len(self._cases)

    def next_case_id(self) -> str:
        return f"C{len(self._cases) + 1:06d}"

    def add(self, record: CaseRecord) -> None:
        self._cases[record.case_id] = record

    def get(self, case_id: str) -> CaseRecord:
        record = self._cases.get(case_id)
        if record is None:
            raise NotFound("case", case_id)
        return record

    def all(self) -> list[CaseRecord]:
        return list(self._cases.values())

    def list_cases(
        self,
        district: str | None = None,
        moh_area: str | None = None,
        phi_area: str | None = None,
        day: date | None = None,
        status: AttentionStatus | None = None,
    ) -> list[CaseRecord]:
        """Conjunction filter, ordered by registered_at then case_id."""
        out = []
        for record in self._cases.values():
            if district and normalize_name(record.path.district) != normalize_name(district):
                continue
            if moh_area and normalize_name(record.path.moh_area) != normalize_name(moh_area):
                continue
            if phi_area and normalize_name(record.path.phi_area) != normalize_name(phi_area):
                continue
            if day and sl_date(record.registered_at) != day:
                continue
            if status and record.attention != status:
                continue
            out.append(record)
        out.sort(key=lambda r: (r.registered_at, r.case_id))
        return out

    def to_state(self) -> list[dict]:
        return [r.to_dict() for r in self._cases.values()]

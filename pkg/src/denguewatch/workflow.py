"""Case attention state machine, work orders and the ID register.

Legal path: Reported -> Assigned -> Attended -> Confirmed | NotDengue.
No skips, no regressions; attendance and its outcome land in one call, so
Attended is passed through atomically on the way to the terminal status.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum

from .errors import IllegalTransition
from .sltime import iso_utc, parse_iso


class AttentionStatus(str, Enum):
    REPORTED = "Reported"
    ASSIGNED = "Assigned"
    ATTENDED = "Attended"
    CONFIRMED = "Confirmed"
    NOT_DENGUE = "NotDengue"


LEGAL_TRANSITIONS: dict[AttentionStatus, set[AttentionStatus]] = {
    AttentionStatus.REPORTED: {AttentionStatus.ASSIGNED},
    AttentionStatus.ASSIGNED: {AttentionStatus.ATTENDED},
    AttentionStatus.ATTENDED: {AttentionStatus.CONFIRMED, AttentionStatus.NOT_DENGUE},
    AttentionStatus.CONFIRMED: set(),
    AttentionStatus.NOT_DENGUE: set(),
}

TERMINAL = {AttentionStatus.CONFIRMED, AttentionStatus.NOT_DENGUE}

# Figure-style action label for the worklist "Case Attention" column.
ATTENTION_LABELS = {
    AttentionStatus.REPORTED: "Reported",
    AttentionStatus.ASSIGNED: "Attend",
    AttentionStatus.ATTENDED: "Attended",
    AttentionStatus.CONFIRMED: "Confirmed",
    AttentionStatus.NOT_DENGUE: "Not Dengue",
}


def check_transition(case_id: str, current: AttentionStatus, target: AttentionStatus) -> None:
    if target not in LEGAL_TRANSITIONS[current]:
        raise IllegalTransition(case_id, current.value, target.value)


class Outcome(str, Enum):
    CONFIRMED = "confirmed"
    NOT_DENGUE = "not_dengue"


@dataclass
class WorkOrder:
    order_id: str
    case_id: str
    phi_area: str
    assigned_to: str
    assigned_by: str
    created_at: datetime
    attended_at: datetime | None = None
    outcome: Outcome | None = None

    def to_dict(self) -> dict:
        return {
            "order_id": self.order_id,
            "case_id": self.case_id,
            "phi_area": self.phi_area,
            "assigned_to": self.assigned_to,
            "assigned_by": self.assigned_by,
            "created_at": iso_utc(self.created_at),
            "attended_at": iso_utc(self.attended_at) if self.attended_at else None,
            "outcome": self.outcome.value if self.outcome else None,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "WorkOrder":
        return cls(
            order_id=obj["order_id"],
            case_id=obj["case_id"],
            phi_area=obj["phi_area"],
            assigned_to=obj["assigned_to"],
            assigned_by=obj["assigned_by"],
            created_at=parse_iso(obj["created_at"]),
            attended_at=parse_iso(obj["attended_at"]) if obj["attended_at"] else None,
            outcome=Outcome(obj["outcome"]) if obj["outcome"] else None,
        )


@dataclass(frozen=True)
class IDRegisterEntry:
    case_id: str
    moh_area: str
    confirmed_at: datetime
    entered_by: str

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "moh_area": self.moh_area,
            "confirmed_at": iso_utc(self.confirmed_at),
            "entered_by": self.entered_by,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "IDRegisterEntry":
        return cls(
            case_id=obj["case_id"],
            moh_area=obj["moh_area"],
            confirmed_at=parse_iso(obj["confirmed_at"]),
            entered_by=obj["entered_by"],
        )


class WorkOrderStore:
    def __init__(self):
        self._orders: dict[str, WorkOrder] = {}
        self._by_case: dict[str, str] = {}

    def __len__(self) -> int:
        return len(self._orders)

    def next_order_id(self) -> str:
        return f"W{len(self._orders) + 1:06d}"

    def add(self, order: WorkOrder) -> None:
        self._orders[order.order_id] = order
        self._by_case[order.case_id] = order.order_id

    def get(self, order_id: str) -> WorkOrder | None:
        return self._orders.get(order_id)

    def for_case(self, case_id: str) -> WorkOrder | None:
        order_id = self._by_case.get(case_id)
        return self._orders.get(order_id) if order_id else None

    def to_state(self) -> list[dict]:
        return [o.to_dict() for o in self._orders.values()]


class IDRegister:
    """One entry per Confirmed case; nothing for any other status."""

    def __init__(self):
        self._entries: dict[str, IDRegisterEntry] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def add(self, entry: IDRegisterEntry) -> None:
        self._entries[entry.case_id] = entry

    def has(self, case_id: str) -> bool:
        return case_id in self._entries

    def all(self) -> list[IDRegisterEntry]:
        return list(self._entries.values())

    def to_state(self) -> list[dict]:
        return [e.to_dict() for e in self._entries.values()]

"""The surveillance service: commands, event sourcing and queries.

Every state change goes through the single event log (commands validate
against current state, append, then apply); queries read the in-memory
stores built by applying events. Replaying the log from empty rebuilds the
identical state, which is what the replay-check and snapshot machinery rely
on. One writer lock serializes commands; reads are lock-free snapshots.
"""
from __future__ import annotations

import json
import logging
import os
import threading
from datetime import datetime, timedelta

from . import alerting, reporting
from .alerting import (
    AlertRule,
    Notification,
    NotificationState,
    NotificationStore,
    RISK_PLACE_TRIGGER,
    address_for,
    render_template,
    resolve_audience,
    retry_due,
)
from .errors import IllegalTransition, NotFound, ScopeViolation, TooManyDays
from .errors import DuplicateDayIndex, UnknownVocabulary, ValidationError, WrongOfficer
from .events import Event, EventKind, EventLog
from .gazetteer import Gazetteer
from .officers import Officer, OfficerRegistry, Role
from .registry import CaseIntakeForm, CaseRecord, CaseStore, validate_intake
from .reporting import ResponseCycle, ReturnsLedger, WeeklyReturn
from .sltime import Clock, SystemClock, fmt_sl, iso_utc, parse_iso, to_utc
from .travel import (
    TravelEntryForm,
    TravelHistoryEntry,
    TravelStore,
    RiskPlaceStore,
    derive_risk_places,
    place_key,
    MAX_DAYS,
)
from .vocab import Vocabulary, suggest_tokens
from .workflow import (
    ATTENTION_LABELS,
    AttentionStatus,
    IDRegister,
    IDRegisterEntry,
    Outcome,
    TERMINAL,
    WorkOrder,
    WorkOrderStore,
    check_transition,
)

logger = logging.getLogger(__name__)


class SurveillanceService:
    def __init__(
        self,
        gazetteer: Gazetteer,
        vocabularies: dict[str, Vocabulary],
        officers: OfficerRegistry,
        alert_rules: list[AlertRule],
        log: EventLog,
        clock: Clock | None = None,
        transport=None,
        auto_assign: bool = True,
        epi_convention: str = "iso",
        max_retries: int = 3,
        snapshot_path: str | None = None,
        snapshot_every: int = 0,
    ):
        self.gazetteer = gazetteer
        self.vocabularies = vocabularies
        self.officers = officers
        self.alert_rules = alert_rules
        self.log = log
        self.clock = clock or SystemClock()
        self.transport = transport or alerting.MemoryTransport()
        self.auto_assign = auto_assign
        self.epi_convention = epi_convention
        self.max_retries = max_retries
        self.snapshot_path = snapshot_path
        self.snapshot_every = snapshot_every

        self.cases = CaseStore()
        self.orders = WorkOrderStore()
        self.id_register = IDRegister()
        self.travel = TravelStore()
        self.risk_places = RiskPlaceStore()
        self.notifications = NotificationStore()
        self.returns_ledger = ReturnsLedger()

        self._status_history: dict[str, list[AttentionStatus]] = {}
        self._milestones: dict[str, dict[str, datetime]] = {}
        self._last_registered_at: datetime | None = None
        self._residence_keys: dict[str, tuple] = {}
        self._last_travel_changed: list = []
        self._lock = threading.RLock()
        self._replaying = False
        self._last_snapshot_id = 0

    # -- construction ---------------------------------------------------------

    @classmethod
    def replay(cls, log: EventLog, **kwargs) -> "SurveillanceService":
        """Rebuild state by applying the whole log; no side effects run."""
        service = cls(log=log, **kwargs)
        service._replaying = True
        for event in log.events:
            service._apply(event)
        service._replaying = False
        service._last_snapshot_id = log.last_id
        return service

    @classmethod
    def from_snapshot(
        cls, snapshot: dict, log: EventLog, **kwargs
    ) -> "SurveillanceService":
        """Load a state snapshot, then apply only the log tail after it."""
        service = cls(log=log, **kwargs)
        service._load_state(snapshot)
        service._replaying = True
        for event in log.events:
            if event.event_id > snapshot["last_event_id"]:
                service._apply(event)
        service._replaying = False
        service._last_snapshot_id = log.last_id
        return service

    # -- clock ----------------------------------------------------------------

    def _now(self, now: datetime | None) -> datetime:
        return self.clock.now() if now is None else to_utc(now)

    # -- commands ---------------------------------------------------------------

    def register_case(self, form: CaseIntakeForm, now: datetime | None = None) -> CaseRecord:
        """Validate and persist a notification; rejection changes nothing.

        Registration commits even if every alert transport is down: the
        notifications stay pending for retry. With auto_assign on and exactly
        one PHI on file for the residence PHI area, the work order is created
        in the same call.
        """
        with self._lock:
            at = self._now(now)
            if self._last_registered_at is not None and at < self._last_registered_at:
                at = self._last_registered_at  # single authoritative clock never regresses
            path = validate_intake(form, self.gazetteer, self.vocabularies)
            record = CaseRecord(
                case_id=self.cases.next_case_id(),
                opd_no=form.opd_no,
                ward_no=form.ward_no,
                ward_ticket_no=form.ward_ticket_no,
                title=form.title,
                first_name=form.first_name,
                last_name=form.last_name,
                age=form.age,
                gender=form.gender,
                residence=form.residence,
                mobile=form.mobile,
                employment=form.employment,
                clinical_class=form.clinical_class,
                registered_at=at,
                attention=AttentionStatus.REPORTED,
                path=path,
            )
            items = [(EventKind.CASE_REGISTERED, at, {"case": record.to_dict()})]
            if self.auto_assign:
                candidates = [
                    o for o in self.officers.by_role(Role.PHI) if o.covers_phi_area(path.phi_area)
                ]
                if len(candidates) == 1:
                    order = WorkOrder(
                        order_id=self.orders.next_order_id(),
                        case_id=record.case_id,
                        phi_area=path.phi_area,
                        assigned_to=candidates[0].officer_id,
                        assigned_by="auto",
                        created_at=at,
                    )
                    items.append((EventKind.CASE_ASSIGNED, at, {"order": order.to_dict()}))
            events = self._append(items)
            logger.info(
                "case %s registered in %s / %s", record.case_id,
                path.phi_area, path.district,
            )
            self._dispatch(
                events[0],
                EventKind.CASE_REGISTERED.value,
                self._case_context(record),
                at,
            )
            return self.cases.get(record.case_id)

    def assign(
        self,
        case_id: str,
        assigner_id: str,
        assignee_id: str,
        now: datetime | None = None,
    ) -> WorkOrder:
        with self._lock:
            at = self._now(now)
            case = self.cases.get(case_id)
            assigner = self._officer(assigner_id)
            assignee = self._officer(assignee_id)
            check_transition(case_id, case.attention, AttentionStatus.ASSIGNED)
            if assigner.role != Role.MOH or not assigner.covers_moh_area(case.path.moh_area):
                raise ScopeViolation(
                    f"{assigner_id} is not the MOH officer for {case.path.moh_area}"
                )
            if assignee.role != Role.PHI or not assignee.covers_phi_area(case.path.phi_area):
                raise ScopeViolation(
                    f"{assignee_id} does not cover PHI area {case.path.phi_area}"
                )
            order = WorkOrder(
                order_id=self.orders.next_order_id(),
                case_id=case_id,
                phi_area=case.path.phi_area,
                assigned_to=assignee.officer_id,
                assigned_by=assigner.officer_id,
                created_at=at,
            )
            self._append([(EventKind.CASE_ASSIGNED, at, {"order": order.to_dict()})])
            return self.orders.get(order.order_id)

    def record_attendance(
        self,
        order_id: str,
        officer_id: str,
        outcome: str | Outcome,
        now: datetime | None = None,
    ) -> WorkOrder:
        """Attendance and its outcome in one submission.

        Confirmation also enters the case in the ID register and alerts the
        Regional Epidemiologist and the Epidemiology Unit.
        """
        with self._lock:
            at = self._now(now)
            order = self.orders.get(order_id)
            if order is None:
                raise NotFound("work order", order_id)
            if at < order.created_at:
                at = order.created_at  # attendance never precedes assignment
            officer = self._officer(officer_id)
            if officer.role != Role.PHI:
                raise ScopeViolation(f"{officer_id} is not a PHI officer")
            if officer.officer_id != order.assigned_to:
                raise WrongOfficer(order_id, order.assigned_to, officer.officer_id)
            case = self.cases.get(order.case_id)
            check_transition(case.case_id, case.attention, AttentionStatus.ATTENDED)
            outcome = Outcome(outcome)
            items = [
                (
                    EventKind.CASE_ATTENDED,
                    at,
                    {
                        "order_id": order_id,
                        "case_id": case.case_id,
                        "officer_id": officer.officer_id,
                        "outcome": outcome.value,
                    },
                )
            ]
            if outcome == Outcome.CONFIRMED:
                entry = IDRegisterEntry(
                    case_id=case.case_id,
                    moh_area=case.path.moh_area,
                    confirmed_at=at,
                    entered_by=officer.officer_id,
                )
                items.append((EventKind.CASE_CONFIRMED, at, {"entry": entry.to_dict()}))
            events = self._append(items)
            logger.info(
                "case %s attended by %s: %s", case.case_id, officer.officer_id, outcome.value
            )
            if outcome == Outcome.CONFIRMED:
                ctx = self._case_context(case)
                ctx["confirmed_at"] = fmt_sl(at)
                ctx["officer"] = officer.officer_id
                self._dispatch(events[-1], EventKind.CASE_CONFIRMED.value, ctx, at)
            return self.orders.get(order_id)

    def submit_travel_history(
        self,
        case_id: str,
        officer_id: str,
        entries: list[TravelEntryForm],
        now: datetime | None = None,
    ) -> list:
        """Record up to 14 per-day locations and refresh risk places.

        Returns the risk places created or updated by this submission.
        Resubmitting the identical history is a no-op on risk-place state.
        """
        with self._lock:
            at = self._now(now)
            case = self.cases.get(case_id)
            officer = self._officer(officer_id)
            if officer.role != Role.PHI:
                raise ScopeViolation(f"{officer_id} is not a PHI officer")
            if case.attention == AttentionStatus.REPORTED:
                raise IllegalTransition(case_id, case.attention.value, "travel history")
            if len(entries) > MAX_DAYS:
                raise TooManyDays(len(entries))
            if not entries:
                raise ValidationError("entries", "at least one day is required")
            seen_days: set[int] = set()
            resolved: list[TravelHistoryEntry] = []
            for entry in entries:
                if entry.day_index in seen_days:
                    raise DuplicateDayIndex(entry.day_index)
                seen_days.add(entry.day_index)
                if not 1 <= entry.day_index <= MAX_DAYS:
                    raise ValidationError(
                        "day_index", f"{entry.day_index} outside 1..{MAX_DAYS}"
                    )
                if not entry.door_no.strip():
                    raise ValidationError("door_no", f"day {entry.day_index}: required")
                if not entry.street.strip():
                    raise ValidationError("street", f"day {entry.day_index}: required")
                if not entry.contact_tp.strip().isdigit():
                    raise ValidationError(
                        "contact_tp", f"day {entry.day_index}: digits required"
                    )
                path = self.gazetteer.resolve(entry.gn_division, entry.district_hint)
                resolved.append(
                    TravelHistoryEntry(
                        case_id=case_id,
                        day_index=entry.day_index,
                        entry_date=case.registered_at - timedelta(days=entry.day_index),
                        door_no=entry.door_no,
                        street=entry.street,
                        gn_division=entry.gn_division,
                        district=path.district,
                        contact_tp=entry.contact_tp,
                    )
                )
            payload = {
                "case_id": case_id,
                "officer_id": officer.officer_id,
                "entries": [e.to_dict() for e in resolved],
            }
            before = len(self.risk_places)
            events = self._append([(EventKind.TRAVEL_HISTORY_RECORDED, at, payload)])
            changed = self._last_travel_changed
            new_places = len(self.risk_places) - before
            if new_places > 0:
                ctx = self._case_context(case)
                ctx["new_places"] = str(new_places)
                self._dispatch(events[0], RISK_PLACE_TRIGGER, ctx, at)
            return changed

    def retry_pending(self, now: datetime | None = None) -> int:
        """Re-attempt due pending notifications; returns how many were tried."""
        with self._lock:
            at = self._now(now)
            tried = 0
            for notification in self.notifications.pending():
                if not retry_due(notification, at):
                    continue
                self._attempt_send(notification, at)
                tried += 1
            return tried

    # -- event machinery --------------------------------------------------------

    def _append(self, items: list[tuple[EventKind, datetime, dict]]) -> list[Event]:
        events = self.log.append_many(items)
        for event in events:
            self._apply(event)
        self._maybe_snapshot()
        return events

    def _apply(self, event: Event) -> None:
        kind = event.kind
        if kind == EventKind.CASE_REGISTERED:
            record = CaseRecord.from_dict(event.payload["case"])
            self.cases.add(record)
            self._status_history[record.case_id] = [record.attention]
            self._milestones[record.case_id] = {"registered": record.registered_at}
            self._residence_keys[record.case_id] = place_key(
                record.residence.door_no,
                record.residence.street,
                record.residence.gn_division,
                record.path.district,
            )
            if self._last_registered_at is None or record.registered_at > self._last_registered_at:
                self._last_registered_at = record.registered_at
        elif kind == EventKind.CASE_ASSIGNED:
            order = WorkOrder.from_dict(event.payload["order"])
            self.orders.add(order)
            case = self.cases.get(order.case_id)
            case.attention = AttentionStatus.ASSIGNED
            self._status_history[case.case_id].append(AttentionStatus.ASSIGNED)
            self._milestones[case.case_id].setdefault("assigned", event.occurred_at)
        elif kind == EventKind.CASE_ATTENDED:
            order = self.orders.get(event.payload["order_id"])
            outcome = Outcome(event.payload["outcome"])
            order.attended_at = event.occurred_at
            order.outcome = outcome
            case = self.cases.get(order.case_id)
            history = self._status_history[case.case_id]
            history.append(AttentionStatus.ATTENDED)
            self._milestones[case.case_id].setdefault("attended", event.occurred_at)
            if outcome == Outcome.NOT_DENGUE:
                case.attention = AttentionStatus.NOT_DENGUE
                history.append(AttentionStatus.NOT_DENGUE)
                self._milestones[case.case_id].setdefault("outcome", event.occurred_at)
            else:
                case.attention = AttentionStatus.ATTENDED
        elif kind == EventKind.CASE_CONFIRMED:
            entry = IDRegisterEntry.from_dict(event.payload["entry"])
            self.id_register.add(entry)
            case = self.cases.get(entry.case_id)
            case.attention = AttentionStatus.CONFIRMED
            self._status_history[case.case_id].append(AttentionStatus.CONFIRMED)
            self._milestones[case.case_id].setdefault("outcome", event.occurred_at)
        elif kind == EventKind.TRAVEL_HISTORY_RECORDED:
            entries = [TravelHistoryEntry.from_dict(e) for e in event.payload["entries"]]
            self.travel.record(entries)
            derived = derive_risk_places(self.travel.all_entries(), self._residence_keys)
            self._last_travel_changed = self.risk_places.merge(derived)
        elif kind == EventKind.NOTIFICATION_STATE_CHANGED:
            notification = Notification.from_dict(event.payload["notification"])
            self.notifications.add(notification)
            if (
                notification.case_id
                and notification.trigger == EventKind.CASE_REGISTERED.value
            ):
                self._milestones[notification.case_id].setdefault(
                    "alert_dispatched", event.occurred_at
                )

    # -- alerting -----------------------------------------------------------------

    def _dispatch(self, event: Event, trigger: str, ctx: dict, at: datetime) -> list[Notification]:
        """Fan an event out to notifications; idempotent per (event, recipient, channel)."""
        touched: list[Notification] = []
        for rule in self.alert_rules:
            if rule.trigger != trigger:
                continue
            for officer in resolve_audience(rule, self.officers, ctx):
                for channel in rule.channels:
                    address = address_for(officer, channel)
                    if address is None:
                        continue
                    key = (event.event_id, officer.officer_id, channel.value)
                    existing = self.notifications.get_by_key(key)
                    if existing is not None:
                        touched.append(existing)
                        continue
                    subject, body = render_template(rule.template, channel, ctx)
                    notification = Notification(
                        notification_id=self.notifications.next_id(),
                        event_id=event.event_id,
                        recipient_id=officer.officer_id,
                        channel=channel,
                        address=address,
                        subject=subject,
                        body=body,
                        state=NotificationState.PENDING,
                        attempts=0,
                        created_at=at,
                        case_id=ctx.get("case_id"),
                        trigger=trigger,
                    )
                    self._append(
                        [
                            (
                                EventKind.NOTIFICATION_STATE_CHANGED,
                                at,
                                {"notification": notification.to_dict()},
                            )
                        ]
                    )
                    touched.append(self.notifications.get(notification.notification_id))
        for notification in touched:
            if notification.state == NotificationState.PENDING:
                self._attempt_send(notification, at)
        return [self.notifications.get(n.notification_id) for n in touched]

    def _attempt_send(self, notification: Notification, at: datetime) -> None:
        try:
            self.transport.send(
                notification.channel.value,
                notification.address,
                notification.subject,
                notification.body,
                at,
            )
            delivered = True
        except alerting.TransportError:
            delivered = False
        updated = notification.to_dict()
        updated["attempts"] = notification.attempts + 1
        updated["last_attempt_at"] = iso_utc(at)
        if delivered:
            updated["state"] = NotificationState.SENT.value
            updated["sent_at"] = iso_utc(at)
        elif updated["attempts"] >= self.max_retries + 1:
            updated["state"] = NotificationState.FAILED.value
        self._append(
            [(EventKind.NOTIFICATION_STATE_CHANGED, at, {"notification": updated})]
        )

    def _case_context(self, record: CaseRecord) -> dict:
        return {
            "case_id": record.case_id,
            "patient": f"{record.title} {record.first_name} {record.last_name}",
            "gn": record.path.gn,
            "phi_area": record.path.phi_area,
            "moh_area": record.path.moh_area,
            "district": record.path.district,
            "registered_at": fmt_sl(record.registered_at),
        }

    def _officer(self, officer_id: str) -> Officer:
        officer = self.officers.get(officer_id)
        if officer is None:
            raise NotFound("officer", officer_id)
        return officer

    # -- queries --------------------------------------------------------------

    def get_case(self, case_id: str) -> CaseRecord:
        return self.cases.get(case_id)

    def list_cases(self, **filters) -> list[CaseRecord]:
        return self.cases.list_cases(**filters)

    def suggest(self, source: str, prefix: str, limit: int) -> list[str]:
        if limit < 1:
            raise ValidationError("limit", "must be a positive integer")
        gazetteer_sources = {
            "gn_divisions": self.gazetteer.gn_division_names,
            "phi_areas": self.gazetteer.phi_area_names,
            "moh_areas": self.gazetteer.moh_area_names,
            "districts": self.gazetteer.district_names,
        }
        if source in gazetteer_sources:
            tokens = gazetteer_sources[source]()
        elif source in self.vocabularies:
            tokens = list(self.vocabularies[source].entries)
        else:
            raise UnknownVocabulary(source)
        return suggest_tokens(tokens, prefix, limit)

    def phi_worklist(self, officer_id: str) -> dict:
        """Per-area summary and detail rows for a PHI's scope.

        Counts cover cases not yet Confirmed or ruled out; detail rows carry
        the registration columns plus the pending action label.
        """
        officer = self._officer(officer_id)
        if officer.role != Role.PHI:
            raise ScopeViolation(f"{officer_id} is not a PHI officer")
        areas = []
        for area in officer.scope:
            parents = self.gazetteer.parents_of_phi(area)
            moh_area, district = parents if parents else ("", "")
            active = [
                c
                for c in self.cases.list_cases(phi_area=area)
                if c.attention not in TERMINAL
            ]
            rows = []
            for i, case in enumerate(active, start=1):
                order = self.orders.for_case(case.case_id)
                rows.append(
                    {
                        "s_no": i,
                        "case_id": case.case_id,
                        "opd_no": case.opd_no,
                        "ward_no": case.ward_no,
                        "ward_ticket_no": case.ward_ticket_no,
                        "title": case.title,
                        "first_name": case.first_name,
                        "last_name": case.last_name,
                        "age": case.age.display(),
                        "gender": case.gender.capitalize(),
                        "door_no": case.residence.door_no,
                        "street": case.residence.street,
                        "land_type": case.residence.land_type.capitalize(),
                        "gn_division": case.residence.gn_division,
                        "mobile": case.mobile or "",
                        "employment": case.employment or "",
                        "registered_at": iso_utc(case.registered_at),
                        "register_date_display": fmt_sl(case.registered_at),
                        "attention": ATTENTION_LABELS[case.attention],
                        "order_id": order.order_id if order else None,
                    }
                )
            areas.append(
                {
                    "phi_area": area,
                    "moh_area": moh_area,
                    "district": district,
                    "count": len(active),
                    "rows": rows,
                }
            )
        return {
            "officer": officer.to_dict(),
            "areas": areas,
        }

    def live_update(self, now: datetime | None = None) -> list[reporting.LiveUpdateRow]:
        return reporting.live_update(
            self.cases, self.risk_places, self.gazetteer, self._now(now)
        )

    def render_live_update(self, now: datetime | None = None) -> dict:
        at = self._now(now)
        return reporting.render_live_table(self.live_update(at), at)

    def weekly_return(
        self, moh_area: str, week: tuple[int, int], now: datetime | None = None
    ) -> WeeklyReturn:
        at = self._now(now)
        canonical = self.gazetteer.canonical_moh_name(moh_area)
        if canonical is None:
            raise NotFound("moh_area", moh_area)
        reporting.check_week_not_future(week, at, self.epi_convention)
        suspected, confirmed = reporting.count_week(
            self.cases, self.id_register, canonical, week, self.epi_convention
        )
        ret = WeeklyReturn(
            moh_area=canonical,
            epi_week=week,
            disease=reporting.DISEASE,
            suspected_count=suspected,
            confirmed_count=confirmed,
            generated_at=at,
        )
        self.returns_ledger.record(ret)
        return ret

    def generate_all(self, week: tuple[int, int], now: datetime | None = None) -> list[WeeklyReturn]:
        return [
            self.weekly_return(area, week, now) for area in self.gazetteer.moh_area_names()
        ]

    def timeliness(self, week: tuple[int, int]) -> float:
        return self.returns_ledger.timeliness(week, self.gazetteer.moh_area_names())

    def response_cycle(self, case_id: str) -> ResponseCycle:
        case = self.cases.get(case_id)
        milestones = self._milestones.get(case_id, {})
        return reporting.response_cycle(case_id, milestones, case.attention in TERMINAL)

    def baseline(self) -> reporting.StageLatencyModel:
        return reporting.baseline()

    def status_history(self, case_id: str) -> list[AttentionStatus]:
        return list(self._status_history.get(case_id, []))

    # -- state serialization ----------------------------------------------------

    def state_dict(self) -> dict:
        """Canonical event-sourced state; identical across replays."""
        return {
            "v": 1,
            "last_event_id": self.log.last_id,
            "last_registered_at": (
                iso_utc(self._last_registered_at) if self._last_registered_at else None
            ),
            "cases": self.cases.to_state(),
            "orders": self.orders.to_state(),
            "id_register": self.id_register.to_state(),
            "travel": self.travel.to_state(),
            "risk_places": self.risk_places.to_state(),
            "notifications": self.notifications.to_state(),
            "status_history": {
                case_id: [s.value for s in history]
                for case_id, history in self._status_history.items()
            },
            "milestones": {
                case_id: {label: iso_utc(at) for label, at in sorted(ms.items())}
                for case_id, ms in self._milestones.items()
            },
        }

    def _load_state(self, state: dict) -> None:
        from .travel import RiskPlace

        for obj in state["cases"]:
            record = CaseRecord.from_dict(obj)
            self.cases.add(record)
            self._residence_keys[record.case_id] = place_key(
                record.residence.door_no,
                record.residence.street,
                record.residence.gn_division,
                record.path.district,
            )
        for obj in state["orders"]:
            self.orders.add(WorkOrder.from_dict(obj))
        for obj in state["id_register"]:
            self.id_register.add(IDRegisterEntry.from_dict(obj))
        self.travel.record(TravelHistoryEntry.from_dict(obj) for obj in state["travel"])
        for obj in state["risk_places"]:
            place = RiskPlace.from_dict(obj)
            self.risk_places.places[place.key] = place
        for obj in state["notifications"]:
            self.notifications.add(Notification.from_dict(obj))
        self._status_history = {
            case_id: [AttentionStatus(s) for s in history]
            for case_id, history in state["status_history"].items()
        }
        self._milestones = {
            case_id: {label: parse_iso(at) for label, at in ms.items()}
            for case_id, ms in state["milestones"].items()
        }
        self._last_registered_at = (
            parse_iso(state["last_registered_at"]) if state["last_registered_at"] else None
        )

    def save_snapshot(self) -> None:
        if self.snapshot_path is None:
            return
        tmp = self.snapshot_path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.state_dict(), fh, ensure_ascii=False, separators=(",", ":"))
        os.replace(tmp, self.snapshot_path)
        self._last_snapshot_id = self.log.last_id

    def _maybe_snapshot(self) -> None:
        if (
            self.snapshot_path is not None
            and self.snapshot_every > 0
            and self.log.last_id - self._last_snapshot_id >= self.snapshot_every
        ):
            self.save_snapshot()

"""Email/SMS alerting with exactly-once observable delivery.

Surveillance events fan out to notifications through configured alert rules.
The idempotency key (event_id, recipient, channel) is the gate: at most one
Notification ever exists per key, so re-dispatching an event creates
nothing new and a message is never successfully delivered twice. Transport
failures leave the notification pending; retry_pending re-attempts with
exponential backoff until max_retries is exhausted, then marks it failed.

Transports are pluggable. The default file transport appends one JSON
record per line to the outbox file:

    {"timestamp": "2013-12-31T17:01:33Z", "channel": "sms",
     "recipient": "0771023762", "body": "..."}

Real SMS/email carrier gateways are adapter implementations out of scope.

Rule file format (UTF-8, '#' comments):

    trigger | roles | channels | template
    CaseRegistered | MOH; PHI | email; sms | case_registered
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from enum import Enum

from .errors import ParseError, TransportError
from .events import EventKind
from .officers import Officer, OfficerRegistry, Role
from .sltime import iso_utc, parse_iso

SMS_MAX_LEN = 160
RETRY_BASE_SECONDS = 60

# Rules may also trigger on a risk place being identified, which the event
# log carries as a travel-history record that produced new places.
RISK_PLACE_TRIGGER = "RiskPlaceIdentified"
VALID_TRIGGERS = (
    EventKind.CASE_REGISTERED.value,
    EventKind.CASE_CONFIRMED.value,
    RISK_PLACE_TRIGGER,
)


class Channel(str, Enum):
    EMAIL = "email"
    SMS = "sms"


class NotificationState(str, Enum):
    PENDING = "pending"
    SENT = "sent"
    FAILED = "failed"


@dataclass
class Notification:
    notification_id: str
    event_id: int
    recipient_id: str
    channel: Channel
    address: str
    subject: str
    body: str
    state: NotificationState
    attempts: int
    created_at: datetime
    case_id: str | None = None
    trigger: str | None = None
    sent_at: datetime | None = None
    last_attempt_at: datetime | None = None

    @property
    def idempotency_key(self) -> tuple[int, str, str]:
        return (self.event_id, self.recipient_id, self.channel.value)

    def to_dict(self) -> dict:
        return {
            "notification_id": self.notification_id,
            "event_id": self.event_id,
            "recipient_id": self.recipient_id,
            "channel": self.channel.value,
            "address": self.address,
            "subject": self.subject,
            "body": self.body,
            "state": self.state.value,
            "attempts": self.attempts,
            "created_at": iso_utc(self.created_at),
            "case_id": self.case_id,
            "trigger": self.trigger,
            "sent_at": iso_utc(self.sent_at) if self.sent_at else None,
            "last_attempt_at": iso_utc(self.last_attempt_at) if self.last_attempt_at else None,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Notification":
        return cls(
            notification_id=obj["notification_id"],
            event_id=obj["event_id"],
            recipient_id=obj["recipient_id"],
            channel=Channel(obj["channel"]),
            address=obj["address"],
            subject=obj["subject"],
            body=obj["body"],
            state=NotificationState(obj["state"]),
            attempts=obj["attempts"],
            created_at=parse_iso(obj["created_at"]),
            case_id=obj.get("case_id"),
            trigger=obj.get("trigger"),
            sent_at=parse_iso(obj["sent_at"]) if obj.get("sent_at") else None,
            last_attempt_at=parse_iso(obj["last_attempt_at"]) if obj.get("last_attempt_at") else None,
        )


@dataclass(frozen=True)
class AlertRule:
    trigger: str
    roles: tuple[Role, ...]
    channels: tuple[Channel, ...]
    template: str


def parse_rules(text: str) -> list[AlertRule]:
    rules = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ParseError("expected 'trigger | roles | channels | template'", line_no)
        trigger, roles_s, channels_s, template = parts
        if trigger not in VALID_TRIGGERS:
            raise ParseError(f"unknown trigger {trigger!r}", line_no)
        try:
            roles = tuple(Role(r.strip().upper()) for r in roles_s.split(";") if r.strip())
            channels = tuple(
                Channel(c.strip().lower()) for c in channels_s.split(";") if c.strip()
            )
        except ValueError as exc:
            raise ParseError(str(exc), line_no) from None
        if template not in TEMPLATES:
            raise ParseError(f"unknown template {template!r}", line_no)
        rules.append(AlertRule(trigger, roles, channels, template))
    return rules


def load_rules(path: str) -> list[AlertRule]:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh.read())


# -- templates ----------------------------------------------------------------
# Each template renders (subject, email_body, sms_body) from a context dict.
# Rendering must be total for any valid case fixture; SMS bodies are clipped
# to the 160-character carrier limit.


def _t_case_registered(ctx: dict) -> tuple[str, str, str]:
    subject = f"New dengue notification {ctx['case_id']} ({ctx['district']})"
    email = (
        f"A suspected dengue case was notified.\n"
        f"Case: {ctx['case_id']}\n"
        f"Patient: {ctx['patient']}\n"
        f"GN division: {ctx['gn']} / PHI area: {ctx['phi_area']}\n"
        f"MOH area: {ctx['moh_area']} / District: {ctx['district']}\n"
        f"Registered: {ctx['registered_at']}"
    )
    sms = f"Dengue case {ctx['case_id']}: {ctx['gn']}, {ctx['phi_area']}, {ctx['moh_area']} MOH. Reg {ctx['registered_at']}"
    return subject, email, _clip_sms(sms)


def _t_case_confirmed(ctx: dict) -> tuple[str, str, str]:
    subject = f"Dengue case confirmed {ctx['case_id']} ({ctx['district']})"
    email = (
        f"A dengue case was confirmed and entered in the ID register.\n"
        f"Case: {ctx['case_id']}\n"
        f"MOH area: {ctx['moh_area']} / District: {ctx['district']}\n"
        f"Confirmed: {ctx['confirmed_at']} by {ctx['officer']}"
    )
    sms = f"Dengue CONFIRMED {ctx['case_id']} {ctx['moh_area']} MOH {ctx['confirmed_at']}"
    return subject, email, _clip_sms(sms)


def _t_risk_places(ctx: dict) -> tuple[str, str, str]:
    subject = f"Risk places identified for case {ctx['case_id']} ({ctx['district']})"
    email = (
        f"Travel history for case {ctx['case_id']} identified "
        f"{ctx['new_places']} new potential breeding location(s).\n"
        f"District: {ctx['district']}"
    )
    sms = f"{ctx['new_places']} new dengue risk place(s) from case {ctx['case_id']} ({ctx['district']})"
    return subject, email, _clip_sms(sms)


def _clip_sms(body: str) -> str:
    return body if len(body) <= SMS_MAX_LEN else body[: SMS_MAX_LEN - 3] + "..."


TEMPLATES = {
    "case_registered": _t_case_registered,
    "case_confirmed": _t_case_confirmed,
    "risk_places": _t_risk_places,
}


def render_template(name: str, channel: Channel, ctx: dict) -> tuple[str, str]:
    subject, email_body, sms_body = TEMPLATES[name](ctx)
    if channel == Channel.SMS:
        return subject, sms_body
    return subject, email_body


# -- transports ---------------------------------------------------------------


class MemoryTransport:
    """Scriptable in-memory transport for tests.

    `script` is consumed one entry per send attempt: True delivers, False
    raises. An exhausted (or absent) script always delivers. `deliveries`
    is the observable transport log.
    """

    def __init__(self, script: list[bool] | None = None):
        self.script = list(script) if script else []
        self.deliveries: list[dict] = []
        self.attempts = 0

    def send(self, channel: str, recipient: str, subject: str, body: str, at: datetime) -> None:
        self.attempts += 1
        ok = self.script.pop(0) if self.script else True
        if not ok:
            raise TransportError(f"scripted failure for {recipient}")
        self.deliveries.append(
            {"timestamp": iso_utc(at), "channel": channel, "recipient": recipient, "body": body}
        )


class FileTransport:
    """Append-only outbox file; keeps the whole system runnable offline."""

    def __init__(self, path: str):
        self.path = path

    def send(self, channel: str, recipient: str, subject: str, body: str, at: datetime) -> None:
        import json

        record = {
            "timestamp": iso_utc(at),
            "channel": channel,
            "recipient": recipient,
            "body": body,
        }
        try:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")
        except OSError as exc:
            raise TransportError(str(exc)) from exc


class NotificationStore:
    def __init__(self):
        self._by_key: dict[tuple[int, str, str], Notification] = {}
        self._by_id: dict[str, Notification] = {}

    def __len__(self) -> int:
        return len(self._by_id)

    def next_id(self) -> str:
        return f"N{len(self._by_id) + 1:06d}"

    def get_by_key(self, key: tuple[int, str, str]) -> Notification | None:
        return self._by_key.get(key)

    def get(self, notification_id: str) -> Notification | None:
        return self._by_id.get(notification_id)

    def add(self, notification: Notification) -> None:
        self._by_key[notification.idempotency_key] = notification
        self._by_id[notification.notification_id] = notification

    def pending(self) -> list[Notification]:
        return [n for n in self._by_id.values() if n.state == NotificationState.PENDING]

    def all(self) -> list[Notification]:
        return list(self._by_id.values())

    def for_case(self, case_id: str) -> list[Notification]:
        return [n for n in self._by_id.values() if n.case_id == case_id]

    def to_state(self) -> list[dict]:
        return [n.to_dict() for n in self._by_id.values()]


def resolve_audience(
    rule: AlertRule, registry: OfficerRegistry, ctx: dict
) -> list[Officer]:
    """Officers a rule addresses for one event, scope-matched to the case path."""
    out = []
    for role in rule.roles:
        for officer in registry.by_role(role):
            if role == Role.MOH and not officer.covers_moh_area(ctx.get("moh_area", "")):
                continue
            if role == Role.PHI and not officer.covers_phi_area(ctx.get("phi_area", "")):
                continue
            if role == Role.RE and not officer.covers_district(ctx.get("district", "")):
                continue
            out.append(officer)
    out.sort(key=lambda o: o.officer_id)
    return out


def address_for(officer: Officer, channel: Channel) -> str | None:
    return officer.email if channel == Channel.EMAIL else officer.mobile


def retry_due(notification: Notification, now: datetime) -> bool:
    """Exponential backoff: attempt n waits base * 2^(n-1) after the last try."""
    if notification.attempts == 0 or notification.last_attempt_at is None:
        return True
    wait = timedelta(seconds=RETRY_BASE_SECONDS * 2 ** (notification.attempts - 1))
    return now >= notification.last_attempt_at + wait

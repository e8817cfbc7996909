"""Append-only event log.

Every state change in the service is an Event. The log is a UTF-8 file of
one JSON object per line:

    {"v": 1, "event_id": 1, "kind": "CaseRegistered",
     "occurred_at": "2013-12-31T17:01:33Z", "payload": {...}}

event_ids are gapless from 1 and the file is append-only; replaying the log
from empty deterministically rebuilds all module state.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import datetime
from enum import Enum

from .errors import CorruptLog
from .sltime import iso_utc, parse_iso

SCHEMA_VERSION = 1


class EventKind(str, Enum):
    CASE_REGISTERED = "CaseRegistered"
    CASE_ASSIGNED = "CaseAssigned"
    CASE_ATTENDED = "CaseAttended"
    CASE_CONFIRMED = "CaseConfirmed"
    TRAVEL_HISTORY_RECORDED = "TravelHistoryRecorded"
    NOTIFICATION_STATE_CHANGED = "NotificationStateChanged"


@dataclass(frozen=True)
class Event:
    event_id: int
    kind: EventKind
    occurred_at: datetime
    payload: dict

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "v": SCHEMA_VERSION,
                "event_id": self.event_id,
                "kind": self.kind.value,
                "occurred_at": iso_utc(self.occurred_at),
                "payload": self.payload,
            },
            ensure_ascii=False,
            separators=(",", ":"),
        )

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Event":
        return cls(
            event_id=int(obj["event_id"]),
            kind=EventKind(obj["kind"]),
            occurred_at=parse_iso(obj["occurred_at"]),
            payload=obj["payload"],
        )


class EventLog:
    """In-memory event sequence, optionally backed by an append-only file.

    Appends are fsynced when file-backed so a crash loses at most the
    uncommitted call. ``append_many`` writes all lines in a single OS write
    so multi-event operations hit the disk atomically.
    """

    def __init__(self, path: str | None = None):
        self.path = path
        self.events: list[Event] = []
        self._fh = None
        if path is not None:
            self._fh = open(path, "ab")

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    @property
    def last_id(self) -> int:
        return self.events[-1].event_id if self.events else 0

    def append(self, kind: EventKind, occurred_at: datetime, payload: dict) -> Event:
        return self.append_many([(kind, occurred_at, payload)])[0]

    def append_many(
        self, items: list[tuple[EventKind, datetime, dict]]
    ) -> list[Event]:
        created = []
        next_id = self.last_id + 1
        for kind, occurred_at, payload in items:
            created.append(Event(next_id, kind, occurred_at, payload))
            next_id += 1
        if self._fh is not None:
            data = "".join(e.to_json_line() + "\n" for e in created)
            self._fh.write(data.encode("utf-8"))
            self._fh.flush()
            os.fsync(self._fh.fileno())
        self.events.extend(created)
        return created

    @classmethod
    def open(cls, path: str, repair: bool = False) -> "EventLog":
        """Open an existing (or new) log file, validating integrity.

        An event is committed only once its newline lands on disk, so a torn
        final line is corruption. Corruption raises CorruptLog with the line
        and byte position; with repair=True the file is truncated to the last
        valid event instead.
        """
        events: list[Event] = []
        if os.path.exists(path):
            with open(path, "rb") as fh:
                raw = fh.read()
            chunks = raw.split(b"\n")
            body, tail = chunks[:-1], chunks[-1]
            corrupt: tuple[str, int, int] | None = None
            good_bytes = 0
            for i, chunk in enumerate(body):
                line_no = i + 1
                problem = None
                event = None
                if chunk.strip() == b"":
                    problem = "blank line"
                else:
                    try:
                        event = Event.from_json_obj(json.loads(chunk.decode("utf-8")))
                    except (ValueError, KeyError, TypeError) as exc:
                        problem = str(exc)
                if problem is None:
                    expected = events[-1].event_id + 1 if events else 1
                    if event.event_id != expected:
                        problem = f"event_id {event.event_id}, expected {expected}"
                if problem is not None:
                    corrupt = (problem, line_no, good_bytes)
                    break
                events.append(event)
                good_bytes += len(chunk) + 1
            if corrupt is None and tail != b"":
                corrupt = ("torn final line (missing newline)", len(chunks), good_bytes)
            if corrupt is not None:
                if not repair:
                    raise CorruptLog(*corrupt)
                with open(path, "r+b") as fh:
                    fh.truncate(good_bytes)
        log = cls(path)
        log.events = events
        return log

"""Service configuration: a JSON file plus environment overrides.

Relative paths are resolved against the config file's directory. The env
vars DENGUEWATCH_DATA_DIR and DENGUEWATCH_LISTEN override the data
directory and listen address without editing the file.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from zoneinfo import ZoneInfo

from .alerting import FileTransport, load_rules
from .errors import ConfigError
from .events import EventLog
from .gazetteer import load_gazetteer
from .officers import load_officers
from .service import SurveillanceService
from .sltime import WEEK_CONVENTIONS, Clock
from .vocab import load_vocabulary

REQUIRED_VOCABULARIES = ("titles", "land_types", "employment")

DEFAULTS = {
    "auto_assign": True,
    "epi_week": "iso",
    "timezone": "Asia/Colombo",
    "listen": "127.0.0.1:8434",
    "data_dir": ".",
    "max_retries": 3,
    "snapshot_every": 500,
    "outbox": "outbox.jsonl",
}


@dataclass
class ServiceConfig:
    gazetteer: str
    vocabularies: dict[str, str]
    officers: str
    alert_rules: str
    auto_assign: bool
    epi_week: str
    timezone: str
    listen: str
    data_dir: str
    max_retries: int
    snapshot_every: int
    outbox: str

    @property
    def event_log_path(self) -> str:
        return os.path.join(self.data_dir, "events.jsonl")

    @property
    def snapshot_path(self) -> str:
        return os.path.join(self.data_dir, "snapshot.json")

    @property
    def outbox_path(self) -> str:
        return os.path.join(self.data_dir, self.outbox)


def load_config(path: str) -> ServiceConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc

    base = os.path.dirname(os.path.abspath(path))

    def resolve(p: str) -> str:
        return p if os.path.isabs(p) else os.path.join(base, p)

    merged = {**DEFAULTS, **raw}
    for key in ("gazetteer", "vocabularies", "officers", "alert_rules"):
        if key not in merged:
            raise ConfigError(f"config missing {key!r}")
    if not isinstance(merged["vocabularies"], dict):
        raise ConfigError("vocabularies must map names to file paths")

    vocabularies = {name: resolve(p) for name, p in merged["vocabularies"].items()}
    for name in REQUIRED_VOCABULARIES:
        if name not in vocabularies:
            raise ConfigError(f"config missing vocabulary {name!r}")

    data_dir = os.environ.get("DENGUEWATCH_DATA_DIR") or resolve(merged["data_dir"])
    listen = os.environ.get("DENGUEWATCH_LISTEN") or merged["listen"]

    config = ServiceConfig(
        gazetteer=resolve(merged["gazetteer"]),
        vocabularies=vocabularies,
        officers=resolve(merged["officers"]),
        alert_rules=resolve(merged["alert_rules"]),
        auto_assign=bool(merged["auto_assign"]),
        epi_week=merged["epi_week"],
        timezone=merged["timezone"],
        listen=listen,
        data_dir=data_dir,
        max_retries=int(merged["max_retries"]),
        snapshot_every=int(merged["snapshot_every"]),
        outbox=merged["outbox"],
    )

    for p in [config.gazetteer, config.officers, config.alert_rules, *config.vocabularies.values()]:
        if not os.path.exists(p):
            raise ConfigError(f"configured path does not exist: {p}")
    if config.epi_week not in WEEK_CONVENTIONS:
        raise ConfigError(
            f"unknown epi_week convention {config.epi_week!r}; "
            f"expected one of {sorted(WEEK_CONVENTIONS)}"
        )
    try:
        ZoneInfo(config.timezone)
    except Exception as exc:
        raise ConfigError(f"bad timezone {config.timezone!r}: {exc}") from exc
    if config.max_retries < 0:
        raise ConfigError("max_retries must be >= 0")
    return config


def build_service(
    config: ServiceConfig,
    clock: Clock | None = None,
    repair: bool = False,
    transport=None,
    use_snapshot: bool = True,
) -> SurveillanceService:
    """Load all configured documents and recover state from the event log."""
    os.makedirs(config.data_dir, exist_ok=True)
    gazetteer = load_gazetteer(config.gazetteer)
    vocabularies = {
        name: load_vocabulary(name, path) for name, path in config.vocabularies.items()
    }
    officers = load_officers(config.officers, gazetteer)
    rules = load_rules(config.alert_rules)
    log = EventLog.open(config.event_log_path, repair=repair)
    kwargs = dict(
        gazetteer=gazetteer,
        vocabularies=vocabularies,
        officers=officers,
        alert_rules=rules,
        clock=clock,
        transport=transport or FileTransport(config.outbox_path),
        auto_assign=config.auto_assign,
        epi_convention=config.epi_week,
        max_retries=config.max_retries,
        snapshot_path=config.snapshot_path,
        snapshot_every=config.snapshot_every,
    )
    snapshot = None
    if use_snapshot and os.path.exists(config.snapshot_path):
        try:
            with open(config.snapshot_path, encoding="utf-8") as fh:
                snapshot = json.load(fh)
        except ValueError:
            snapshot = None  # unreadable snapshot: fall back to full replay
    if snapshot is not None and snapshot.get("last_event_id", 0) <= log.last_id:
        return SurveillanceService.from_snapshot(snapshot, log, **kwargs)
    return SurveillanceService.replay(log, **kwargs)

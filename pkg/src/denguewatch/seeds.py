"""Deployable fixture documents and scripted demo scenarios.

`seed` writes a self-contained deployment directory (config plus the
gazetteer, vocabulary, officer and alert-rule documents) and optionally
plays a scripted scenario into the event log with a manual clock:

* figure5 - the single Jaffna registration at 2013-12-31 22:31:33 (+05:30)
* figure6 - figure5 plus the 14-day travel history that yields five risk
  places, the latest identified 30-12-2013 22:31:33
* timeliness - a four-MOH-area hierarchy for weekly-return exercises
* blank - configuration files only
"""
from __future__ import annotations

import json
import os
from datetime import datetime, timedelta, timezone

from .config import build_service, load_config
from .registry import Address, Age, CaseIntakeForm
from .travel import TravelEntryForm

SL = timezone(timedelta(hours=5, minutes=30))

FIGURE5_REGISTERED_AT = datetime(2013, 12, 31, 22, 31, 33, tzinfo=SL)
FIGURE6_SUBMITTED_AT = datetime(2013, 12, 31, 22, 44, 0, tzinfo=SL)
PHI_OFFICER_ID = "771023762V"
ICN_OFFICER_ID = "845612378V"
MOH_OFFICER_ID = "623451789V"

GAZETTEER_DOC = """\
# Health administrative hierarchy: district / moh / phi / gn.
# Seeded with the 11 districts shown on the public live table; deployments
# may load the full national list instead.
district: Ampara @ 7.2917, 81.6724
district: Anuradhapura @ 8.3114, 80.4037
district: Badulla @ 6.9934, 81.0550
district: Batticaloa @ 7.7310, 81.6747
district: Colombo @ 6.9271, 79.8612
  moh: Colombo
    phi: Colombo Central
      gn: Fort
      gn: Pettah
district: Galle @ 6.0535, 80.2210
  moh: Galle
    phi: Galle Four Gravets
      gn: Galle Fort
district: Gampaha @ 7.0917, 79.9999
district: Hambantota @ 6.1429, 81.1212
district: Jaffna @ 9.6615, 80.0255
  moh: Jaffna
    phi: Gurunagar I
      gn: Gurunagar East
      gn: Gurunagar West
    phi: Gurunagar II
      gn: Chundikul North
      gn: Navanthurai South
      gn: Small Bazaar
district: Kalmunai @ 7.4098, 81.8358
district: Kalutara @ 6.5854, 79.9607
"""

TIMELINESS_GAZETTEER_DOC = """\
# Compact two-district, four-MOH-area hierarchy for return exercises.
district: Colombo
  moh: Colombo
    phi: Colombo Central
      gn: Fort
  moh: Dehiwala
    phi: Dehiwala I
      gn: Dehiwala West
district: Jaffna
  moh: Jaffna
    phi: Gurunagar I
      gn: Gurunagar East
  moh: Nallur
    phi: Nallur I
      gn: Nallur North
"""

OFFICERS_DOC = """\
# officer_id | name | role | scope | email | mobile
845612378V | Nilani | ICN | Jaffna Teaching Hospital | icn.jth@health.example.lk | 0770000001
771023762V | Rukshan | PHI | Gurunagar I; Gurunagar II | phi.gurunagar@health.example.lk | 0771023762
623451789V | Suren | MOH | Jaffna | moh.jaffna@health.example.lk | 0770000002
901234567V | Kamala | PHI | Colombo Central | phi.colombo@health.example.lk | 0770000003
650987654V | Dilshan | MOH | Colombo | moh.colombo@health.example.lk | 0770000004
198034500123 | Priya | RE | Jaffna | re.jaffna@health.example.lk | 0770000005
556677889V | Asela | EPID | - | epid@health.example.lk | 0770000006
"""

TIMELINESS_OFFICERS_DOC = """\
# officer_id | name | role | scope | email | mobile
845612378V | Nilani | ICN | Central Hospital | icn@health.example.lk | 0770000001
771023762V | Rukshan | PHI | Gurunagar I; Nallur I | phi.north@health.example.lk | 0771023762
901234567V | Kamala | PHI | Colombo Central; Dehiwala I | phi.west@health.example.lk | 0770000003
623451789V | Suren | MOH | Jaffna | moh.jaffna@health.example.lk | 0770000002
556677889V | Asela | EPID | - | epid@health.example.lk | 0770000006
"""

ALERT_RULES_DOC = """\
# trigger | roles | channels | template
CaseRegistered | MOH; PHI | email; sms | case_registered
CaseConfirmed | RE; EPID | email; sms | case_confirmed
"""

VOCABULARIES = {
    "titles": ["baby", "mr", "mrs", "miss", "rev", "other"],
    "land_types": ["private", "government", "other"],
    "employment": [
        "government_employment",
        "private_employment",
        "self_employed",
        "student",
        "unemployed",
        "other",
    ],
    "streets": [
        "Hospital Road",
        "Main Street",
        "KKS Road",
        "Beach Road",
        "Temple Road",
        "Navalar Road",
        "Press Road",
        "Clock Tower Road",
    ],
}


def figure5_intake() -> CaseIntakeForm:
    return CaseIntakeForm(
        opd_no="001",
        ward_no="1",
        ward_ticket_no="001_1",
        title="baby",
        first_name="Sorjaniya",
        last_name="Rukshan",
        age=Age(2, "years"),
        gender="female",
        residence=Address(
            door_no="878",
            street="Hospital Road",
            land_type="private",
            gn_division="Chundikul North",
        ),
        mobile="776544652",
        employment="government_employment",
    )


def figure6_entries() -> list[TravelEntryForm]:
    """Fourteen days: five distinct non-residence locations on days 1-5,
    days 6-9 repeating locations 2-5, days 10-14 the home residence."""
    locations = [
        ("12", "Main Street", "Navanthurai South"),
        ("25", "Beach Road", "Small Bazaar"),
        ("7", "Temple Road", "Gurunagar East"),
        ("31", "KKS Road", "Chundikul North"),
        ("48", "Navalar Road", "Gurunagar West"),
    ]
    residence = ("878", "Hospital Road", "Chundikul North")
    per_day = locations + locations[1:] + [residence] * 5
    return [
        TravelEntryForm(
            day_index=i + 1,
            door_no=door,
            street=street,
            gn_division=gn,
            contact_tp=f"07712345{i:02d}",
        )
        for i, (door, street, gn) in enumerate(per_day)
    ]


def _config_doc(gazetteer_file: str) -> dict:
    return {
        "v": 1,
        "gazetteer": gazetteer_file,
        "vocabularies": {name: f"vocab_{name}.txt" for name in VOCABULARIES},
        "officers": "officers.txt",
        "alert_rules": "alert_rules.txt",
        "auto_assign": True,
        "epi_week": "iso",
        "timezone": "Asia/Colombo",
        "listen": "127.0.0.1:8434",
        "data_dir": "data",
        "max_retries": 3,
        "snapshot_every": 500,
        "outbox": "outbox.jsonl",
    }


def write_deployment(dest: str, scenario: str = "figure5") -> str:
    """Write config + documents into `dest`; returns the config path."""
    os.makedirs(dest, exist_ok=True)
    if scenario == "timeliness":
        gazetteer_doc, officers_doc = TIMELINESS_GAZETTEER_DOC, TIMELINESS_OFFICERS_DOC
    else:
        gazetteer_doc, officers_doc = GAZETTEER_DOC, OFFICERS_DOC
    _write(dest, "gazetteer.txt", gazetteer_doc)
    _write(dest, "officers.txt", officers_doc)
    _write(dest, "alert_rules.txt", ALERT_RULES_DOC)
    for name, tokens in VOCABULARIES.items():
        _write(dest, f"vocab_{name}.txt", "\n".join(tokens) + "\n")
    config_path = os.path.join(dest, "config.json")
    with open(config_path, "w", encoding="utf-8") as fh:
        json.dump(_config_doc("gazetteer.txt"), fh, indent=2)
        fh.write("\n")
    os.makedirs(os.path.join(dest, "data"), exist_ok=True)
    return config_path


def seed(dest: str, scenario: str = "figure5") -> str:
    """Write a deployment directory and play the scenario's events."""
    config_path = write_deployment(dest, scenario)
    if scenario in ("blank", "timeliness"):
        return config_path
    if scenario not in ("figure5", "figure6"):
        raise ValueError(f"unknown scenario {scenario!r}")
    config = load_config(config_path)
    service = build_service(config)
    record = service.register_case(figure5_intake(), now=FIGURE5_REGISTERED_AT)
    if scenario == "figure6":
        service.submit_travel_history(
            record.case_id, PHI_OFFICER_ID, figure6_entries(), now=FIGURE6_SUBMITTED_AT
        )
    service.log.close()
    return config_path


def _write(dest: str, name: str, content: str) -> None:
    with open(os.path.join(dest, name), "w", encoding="utf-8") as fh:
        fh.write(content)

"""Health-officer registry: who may do what, where, and how to reach them.

Registry file format (UTF-8, '#' comments), pipe-separated:

    officer_id | name | role | scope1; scope2 | email | mobile

'-' marks an absent field. Scope meaning depends on role: PHI lists the PHI
areas the inspector covers, MOH names one MOH area, RE one health district,
ICN carries the institution as free text, EPID and PUBLIC take none.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import DuplicateName, ParseError
from .gazetteer import Gazetteer, normalize_name

# National identity card: 9 digits + V/X, or the newer 12-digit form.
NIC_RE = re.compile(r"^(?:\d{9}[VX]|\d{12})$")


class Role(str, Enum):
    ICN = "ICN"
    PHI = "PHI"
    MOH = "MOH"
    RE = "RE"
    EPID = "EPID"
    PUBLIC = "PUBLIC"


@dataclass(frozen=True)
class Officer:
    officer_id: str
    name: str
    role: Role
    scope: tuple[str, ...]
    email: str | None = None
    mobile: str | None = None

    def covers_phi_area(self, phi_area: str) -> bool:
        wanted = normalize_name(phi_area)
        return any(normalize_name(s) == wanted for s in self.scope)

    def covers_moh_area(self, moh_area: str) -> bool:
        wanted = normalize_name(moh_area)
        return any(normalize_name(s) == wanted for s in self.scope)

    def covers_district(self, district: str) -> bool:
        wanted = normalize_name(district)
        return any(normalize_name(s) == wanted for s in self.scope)

    def to_dict(self) -> dict:
        return {
            "officer_id": self.officer_id,
            "name": self.name,
            "role": self.role.value,
            "scope": list(self.scope),
        }


class OfficerRegistry:
    def __init__(self, officers: list[Officer]):
        self._by_id: dict[str, Officer] = {}
        for officer in officers:
            if officer.officer_id in self._by_id:
                raise DuplicateName(officer.officer_id, "officer")
            self._by_id[officer.officer_id] = officer

    def get(self, officer_id: str) -> Officer | None:
        return self._by_id.get(officer_id.strip().upper())

    def by_role(self, role: Role) -> list[Officer]:
        return [o for o in self._by_id.values() if o.role == role]

    def all(self) -> list[Officer]:
        return list(self._by_id.values())


def parse_officers(text: str, gazetteer: Gazetteer | None = None) -> OfficerRegistry:
    officers = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 6:
            raise ParseError(
                f"expected 'id | name | role | scope | email | mobile', got {len(parts)} fields",
                line_no,
            )
        nic, name, role_s, scope_s, email, mobile = parts
        nic = nic.upper()
        if not NIC_RE.match(nic):
            raise ParseError(f"bad NIC {nic!r}", line_no)
        try:
            role = Role(role_s.upper())
        except ValueError:
            raise ParseError(f"unknown role {role_s!r}", line_no) from None
        scope = tuple(
            s.strip() for s in scope_s.split(";") if s.strip() and s.strip() != "-"
        )
        _check_scope(role, scope, gazetteer, line_no)
        officers.append(
            Officer(
                officer_id=nic,
                name=name,
                role=role,
                scope=scope,
                email=email if email and email != "-" else None,
                mobile=mobile if mobile and mobile != "-" else None,
            )
        )
    return OfficerRegistry(officers)


def load_officers(path: str, gazetteer: Gazetteer | None = None) -> OfficerRegistry:
    with open(path, encoding="utf-8") as fh:
        return parse_officers(fh.read(), gazetteer)


def _check_scope(
    role: Role, scope: tuple[str, ...], gazetteer: Gazetteer | None, line_no: int
) -> None:
    if role == Role.MOH and len(scope) != 1:
        raise ParseError("MOH officers take exactly one MOH area", line_no)
    if role == Role.RE and len(scope) != 1:
        raise ParseError("RE officers take exactly one district", line_no)
    if gazetteer is None:
        return
    if role == Role.PHI:
        for area in scope:
            if not gazetteer.has_phi_area(area):
                raise ParseError(f"unknown PHI area {area!r}", line_no)
    elif role == Role.MOH:
        if not gazetteer.has_moh_area(scope[0]):
            raise ParseError(f"unknown MOH area {scope[0]!r}", line_no)
    elif role == Role.RE:
        if not gazetteer.has_district(scope[0]):
            raise ParseError(f"unknown district {scope[0]!r}", line_no)

"""Administrative-geography hierarchy and residence resolution.

The tree is HealthDistrict -> MOHArea -> PHIArea -> GNDivision. A patient's
GN division name resolves to the full path, which decides the responsible
MOH office and field officer.

Document format (UTF-8, human-editable; indentation is cosmetic):

    # comment
    district: Jaffna @ 9.6615, 80.0255
      moh: Jaffna
        phi: Gurunagar II
          gn: Chundikul North

An optional " @ lat, lon" suffix attaches a centroid to any node. Names are
compared case-folded with internal whitespace collapsed; sibling names (and
GN names across one MOH area) must be unique under that normalization.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AmbiguousDivision, DuplicateName, EmptyLevel, ParseError, UnknownDivision

LEVELS = ("district", "moh", "phi", "gn")


def normalize_name(name: str) -> str:
    return " ".join(name.split()).casefold()


@dataclass
class GNDivision:
    name: str
    centroid: tuple[float, float] | None = None


@dataclass
class PHIArea:
    name: str
    centroid: tuple[float, float] | None = None
    gn_divisions: list[GNDivision] = field(default_factory=list)


@dataclass
class MOHArea:
    name: str
    centroid: tuple[float, float] | None = None
    phi_areas: list[PHIArea] = field(default_factory=list)


@dataclass
class HealthDistrict:
    name: str
    centroid: tuple[float, float] | None = None
    moh_areas: list[MOHArea] = field(default_factory=list)


@dataclass(frozen=True)
class ResidencePath:
    gn: str
    phi_area: str
    moh_area: str
    district: str

    def to_dict(self) -> dict:
        return {
            "gn": self.gn,
            "phi_area": self.phi_area,
            "moh_area": self.moh_area,
            "district": self.district,
        }


class Gazetteer:
    """Immutable after load; safe to share across concurrent readers."""

    def __init__(self, districts: list[HealthDistrict]):
        if not districts:
            raise EmptyLevel("district")
        self.districts = districts
        self._index: dict[str, list[ResidencePath]] = {}
        self._build_index()

    def _build_index(self) -> None:
        seen_districts: set[str] = set()
        for district in self.districts:
            _check_sibling(seen_districts, district.name, "district")
            seen_moh: set[str] = set()
            for moh in district.moh_areas:
                _check_sibling(seen_moh, moh.name, "moh")
                seen_phi: set[str] = set()
                seen_gn_in_moh: set[str] = set()
                for phi in moh.phi_areas:
                    _check_sibling(seen_phi, phi.name, "phi")
                    for gn in phi.gn_divisions:
                        _check_sibling(seen_gn_in_moh, gn.name, "gn")
                        path = ResidencePath(gn.name, phi.name, moh.name, district.name)
                        self._index.setdefault(normalize_name(gn.name), []).append(path)

    def resolve(self, gn_division: str, district_hint: str | None = None) -> ResidencePath:
        """Unique root-to-leaf path for a GN division name.

        Pure function of gazetteer content; ambiguous names (same GN name
        seeded in more than one district) require the hint.
        """
        paths = self._index.get(normalize_name(gn_division))
        if not paths:
            raise UnknownDivision(gn_division)
        if district_hint is not None:
            hint = normalize_name(district_hint)
            paths = [p for p in paths if normalize_name(p.district) == hint]
            if not paths:
                raise UnknownDivision(gn_division)
        if len(paths) > 1:
            raise AmbiguousDivision(gn_division, [p.district for p in paths])
        return paths[0]

    # -- enumeration helpers -------------------------------------------------

    def district_names(self) -> list[str]:
        return sorted((d.name for d in self.districts), key=normalize_name)

    def moh_area_names(self) -> list[str]:
        names = [m.name for d in self.districts for m in d.moh_areas]
        return sorted(names, key=normalize_name)

    def phi_area_names(self) -> list[str]:
        names = [p.name for d in self.districts for m in d.moh_areas for p in m.phi_areas]
        return sorted(names, key=normalize_name)

    def gn_division_names(self) -> list[str]:
        names = [
            g.name
            for d in self.districts
            for m in d.moh_areas
            for p in m.phi_areas
            for g in p.gn_divisions
        ]
        return sorted(names, key=normalize_name)

    def all_paths(self) -> list[ResidencePath]:
        return [path for paths in self._index.values() for path in paths]

    def district_of_moh(self, moh_area: str) -> str | None:
        wanted = normalize_name(moh_area)
        for district in self.districts:
            for moh in district.moh_areas:
                if normalize_name(moh.name) == wanted:
                    return district.name
        return None

    def canonical_moh_name(self, moh_area: str) -> str | None:
        wanted = normalize_name(moh_area)
        for name in self.moh_area_names():
            if normalize_name(name) == wanted:
                return name
        return None

    def parents_of_phi(self, phi_area: str) -> tuple[str, str] | None:
        """(moh_area, district) containing a PHI area name."""
        wanted = normalize_name(phi_area)
        for district in self.districts:
            for moh in district.moh_areas:
                for phi in moh.phi_areas:
                    if normalize_name(phi.name) == wanted:
                        return (moh.name, district.name)
        return None

    def has_phi_area(self, name: str) -> bool:
        wanted = normalize_name(name)
        return any(normalize_name(p) == wanted for p in self.phi_area_names())

    def has_moh_area(self, name: str) -> bool:
        wanted = normalize_name(name)
        return any(normalize_name(m) == wanted for m in self.moh_area_names())

    def has_district(self, name: str) -> bool:
        wanted = normalize_name(name)
        return any(normalize_name(d) == wanted for d in self.district_names())

    def centroid_of_district(self, name: str) -> tuple[float, float] | None:
        wanted = normalize_name(name)
        for district in self.districts:
            if normalize_name(district.name) == wanted:
                return district.centroid
        return None

    # -- serialization -------------------------------------------------------

    def serialize(self) -> str:
        lines = []
        for district in self.districts:
            lines.append(_node_line("district", district.name, district.centroid, 0))
            for moh in district.moh_areas:
                lines.append(_node_line("moh", moh.name, moh.centroid, 1))
                for phi in moh.phi_areas:
                    lines.append(_node_line("phi", phi.name, phi.centroid, 2))
                    for gn in phi.gn_divisions:
                        lines.append(_node_line("gn", gn.name, gn.centroid, 3))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "districts": [
                {
                    "name": d.name,
                    "centroid": list(d.centroid) if d.centroid else None,
                    "moh_areas": [
                        {
                            "name": m.name,
                            "centroid": list(m.centroid) if m.centroid else None,
                            "phi_areas": [
                                {
                                    "name": p.name,
                                    "centroid": list(p.centroid) if p.centroid else None,
                                    "gn_divisions": [
                                        {
                                            "name": g.name,
                                            "centroid": list(g.centroid) if g.centroid else None,
                                        }
                                        for g in p.gn_divisions
                                    ],
                                }
                                for p in m.phi_areas
                            ],
                        }
                        for m in d.moh_areas
                    ],
                }
                for d in self.districts
            ]
        }

    def __eq__(self, other) -> bool:
        return isinstance(other, Gazetteer) and self.to_dict() == other.to_dict()


def _check_sibling(seen: set[str], name: str, level: str) -> None:
    if not name.strip():
        raise ParseError(f"empty {level} name")
    key = normalize_name(name)
    if key in seen:
        raise DuplicateName(name, level)
    seen.add(key)


def _node_line(level: str, name: str, centroid: tuple[float, float] | None, depth: int) -> str:
    suffix = f" @ {centroid[0]}, {centroid[1]}" if centroid else ""
    return f"{'  ' * depth}{level}: {name}{suffix}"


def parse_gazetteer(text: str) -> Gazetteer:
    districts: list[HealthDistrict] = []
    current: dict[str, object] = {"district": None, "moh": None, "phi": None}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"expected 'level: name', got {line!r}", line_no)
        level, rest = line.split(":", 1)
        level = level.strip().lower()
        if level not in LEVELS:
            raise ParseError(f"unknown level {level!r}", line_no)
        name, centroid = _split_centroid(rest, line_no)
        if not name:
            raise ParseError(f"empty {level} name", line_no)
        if level == "district":
            node = HealthDistrict(name, centroid)
            districts.append(node)
            current = {"district": node, "moh": None, "phi": None}
        elif level == "moh":
            if current["district"] is None:
                raise ParseError("moh without an enclosing district", line_no)
            node = MOHArea(name, centroid)
            current["district"].moh_areas.append(node)
            current["moh"] = node
            current["phi"] = None
        elif level == "phi":
            if current["moh"] is None:
                raise ParseError("phi without an enclosing moh", line_no)
            node = PHIArea(name, centroid)
            current["moh"].phi_areas.append(node)
            current["phi"] = node
        else:
            if current["phi"] is None:
                raise ParseError("gn without an enclosing phi", line_no)
            current["phi"].gn_divisions.append(GNDivision(name, centroid))
    return Gazetteer(districts)


def load_gazetteer(path: str) -> Gazetteer:
    with open(path, encoding="utf-8") as fh:
        return parse_gazetteer(fh.read())


def _split_centroid(rest: str, line_no: int) -> tuple[str, tuple[float, float] | None]:
    if "@" not in rest:
        return rest.strip(), None
    name, coords = rest.rsplit("@", 1)
    parts = coords.split(",")
    if len(parts) != 2:
        raise ParseError(f"bad centroid {coords.strip()!r}", line_no)
    try:
        lat, lon = float(parts[0]), float(parts[1])
    except ValueError:
        raise ParseError(f"bad centroid {coords.strip()!r}", line_no) from None
    if not (-90.0 <= lat <= 90.0) or not (-180.0 <= lon <= 180.0):
        raise ParseError(f"centroid out of range: {lat}, {lon}", line_no)
    return name.strip(), (lat, lon)

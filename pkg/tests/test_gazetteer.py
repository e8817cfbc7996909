import random

import pytest

from denguewatch.errors import (
    AmbiguousDivision,
    DuplicateName,
    EmptyLevel,
    ParseError,
    UnknownDivision,
)
from denguewatch.gazetteer import (
    Gazetteer,
    normalize_name,
    parse_gazetteer,
)

FIGURE_TREE = """\
district: Jaffna
  moh: Jaffna
    phi: Gurunagar I
      gn: Gurunagar East
    phi: Gurunagar II
      gn: Chundikul North
"""

TWO_DISTRICT_TREE = """\
district: Jaffna
  moh: Jaffna
    phi: Gurunagar I
      gn: Hospital Ward
district: Colombo
  moh: Colombo
    phi: Colombo Central
      gn: Hospital Ward
"""


def test_fixture_tree_loads_with_depth_four():
    g = parse_gazetteer(FIGURE_TREE)
    assert g.district_names() == ["Jaffna"]
    assert g.moh_area_names() == ["Jaffna"]
    assert g.phi_area_names() == ["Gurunagar I", "Gurunagar II"]
    assert g.gn_division_names() == ["Chundikul North", "Gurunagar East"]


def test_resolve_figure_case_path():
    g = parse_gazetteer(FIGURE_TREE)
    path = g.resolve("Chundikul North")
    assert (path.phi_area, path.moh_area, path.district) == (
        "Gurunagar II",
        "Jaffna",
        "Jaffna",
    )


def test_empty_document_is_empty_level():
    with pytest.raises(EmptyLevel):
        parse_gazetteer("# only a comment\n")


def test_normalization_forces_duplicate_collision():
    doc = """\
district: Jaffna
  moh: Jaffna
    phi: Gurunagar I
      gn: chundikul north
      gn: Chundikul  North
"""
    with pytest.raises(DuplicateName):
        parse_gazetteer(doc)


def test_gn_names_unique_across_phi_areas_of_one_moh():
    doc = """\
district: Jaffna
  moh: Jaffna
    phi: Gurunagar I
      gn: Chundikul North
    phi: Gurunagar II
      gn: Chundikul North
"""
    with pytest.raises(DuplicateName):
        parse_gazetteer(doc)


def test_orphan_nodes_rejected():
    with pytest.raises(ParseError):
        parse_gazetteer("moh: Jaffna\n")
    with pytest.raises(ParseError):
        parse_gazetteer("district: Jaffna\n  phi: Gurunagar I\n")
    with pytest.raises(ParseError):
        parse_gazetteer("district: Jaffna\n  moh: Jaffna\n    gn: Chundikul North\n")


def test_unknown_division():
    g = parse_gazetteer(FIGURE_TREE)
    with pytest.raises(UnknownDivision):
        g.resolve("Atlantis")


def test_ambiguous_division_requires_hint():
    g = parse_gazetteer(TWO_DISTRICT_TREE)
    with pytest.raises(AmbiguousDivision):
        g.resolve("Hospital Ward")
    path = g.resolve("Hospital Ward", district_hint="Jaffna")
    # oracle: exhaustive scan of the tree for the hinted district
    expected = [
        (gn.name, phi.name, moh.name, d.name)
        for d in g.districts
        for moh in d.moh_areas
        for phi in moh.phi_areas
        for gn in phi.gn_divisions
        if normalize_name(gn.name) == normalize_name("Hospital Ward")
        and normalize_name(d.name) == normalize_name("Jaffna")
    ]
    assert len(expected) == 1
    assert (path.gn, path.phi_area, path.moh_area, path.district) == expected[0]


def test_resolve_every_division_by_exhaustive_enumeration(gaz):
    # every leaf resolves to the unique root-to-leaf path containing it
    for district in gaz.districts:
        for moh in district.moh_areas:
            for phi in moh.phi_areas:
                for gn in phi.gn_divisions:
                    path = gaz.resolve(gn.name)
                    assert path.gn == gn.name
                    assert path.phi_area == phi.name
                    assert path.moh_area == moh.name
                    assert path.district == district.name


def test_resolve_is_deterministic(gaz):
    first = gaz.resolve("Chundikul North")
    for _ in range(10):
        assert gaz.resolve("Chundikul North") == first


def test_serialize_round_trip(gaz):
    assert parse_gazetteer(gaz.serialize()) == gaz


def test_centroid_parsing_and_bounds():
    g = parse_gazetteer("district: Jaffna @ 9.6615, 80.0255\n")
    assert g.districts[0].centroid == (9.6615, 80.0255)
    with pytest.raises(ParseError):
        parse_gazetteer("district: Jaffna @ 91.0, 80.0\n")
    with pytest.raises(ParseError):
        parse_gazetteer("district: Jaffna @ banana\n")


def test_case_and_whitespace_insensitive_lookup(gaz):
    assert gaz.resolve("  chundikul   NORTH ") == gaz.resolve("Chundikul North")


def test_random_subtree_round_trips():
    rng = random.Random(7)
    for _ in range(20):
        lines = []
        for d in range(rng.randint(1, 3)):
            lines.append(f"district: District {d}")
            for m in range(rng.randint(1, 2)):
                lines.append(f"  moh: Moh {d}-{m}")
                for p in range(rng.randint(1, 2)):
                    lines.append(f"    phi: Phi {d}-{m}-{p}")
                    for g in range(rng.randint(0, 3)):
                        lines.append(f"      gn: Gn {d}-{m}-{p}-{g}")
        doc = "\n".join(lines) + "\n"
        g1 = parse_gazetteer(doc)
        assert parse_gazetteer(g1.serialize()) == g1

import json

import pytest

from teamforge.errors import (
    DuplicateDiscipline,
    DuplicateMember,
    InvalidTeamSize,
    MalformedDocument,
    ProficiencyOutOfRange,
    UnknownMember,
    WeightOutOfRange,
)
from teamforge.nsga2 import EvolveConfig, evolve
from teamforge.serde import (
    ArchiveFile,
    canonical_json,
    parse_roster,
    parse_spec,
    read_archive,
    roster_hash,
    roster_to_json,
    spec_to_json,
    write_archive,
)

MINIMAL_ROSTER = json.dumps(
    {
        "members": [
            {"id": "m1", "name": "Ada", "org": "u1", "expertise": {"hci": 1.0}},
            {"id": "m2", "name": "Ben", "org": "u2", "expertise": {}},
        ],
        "familiarity": [],
    }
)


def test_parse_minimal_roster():
    roster = parse_roster(MINIMAL_ROSTER)
    assert roster.ids == ("m1", "m2")
    assert roster.familiarity.edges == {}


def test_parse_roster_weight_out_of_range_names_pair():
    doc = json.loads(MINIMAL_ROSTER)
    doc["familiarity"] = [{"a": "m1", "b": "m2", "w": 1.5}]
    with pytest.raises(WeightOutOfRange) as excinfo:
        parse_roster(json.dumps(doc))
    assert "m1" in str(excinfo.value) and "m2" in str(excinfo.value)


def test_parse_roster_unknown_edge_member():
    doc = json.loads(MINIMAL_ROSTER)
    doc["familiarity"] = [{"a": "m1", "b": "m9", "w": 0.5}]
    with pytest.raises(UnknownMember) as excinfo:
        parse_roster(json.dumps(doc))
    assert "m9" in str(excinfo.value)


def test_parse_roster_duplicate_member():
    doc = json.loads(MINIMAL_ROSTER)
    doc["members"].append({"id": "m1", "name": "Imposter", "org": "x", "expertise": {}})
    with pytest.raises(DuplicateMember):
        parse_roster(json.dumps(doc))


def test_parse_roster_proficiency_out_of_range():
    doc = json.loads(MINIMAL_ROSTER)
    doc["members"][0]["expertise"]["hci"] = 2.0
    with pytest.raises(ProficiencyOutOfRange):
        parse_roster(json.dumps(doc))


def test_parse_roster_malformed_bytes():
    with pytest.raises(MalformedDocument):
        parse_roster(b"{not json")
    with pytest.raises(MalformedDocument):
        parse_roster(b"[1, 2, 3]")
    with pytest.raises(MalformedDocument):
        parse_roster(b"\xff\xfe\x00garbage")


def test_parse_spec_examples():
    spec = parse_spec(json.dumps({"team_size": 4, "required": []}))
    assert spec.team_size == 4 and spec.required == ()

    with pytest.raises(InvalidTeamSize):
        parse_spec(json.dumps({"team_size": 1, "required": []}))

    with pytest.raises(DuplicateDiscipline):
        parse_spec(
            json.dumps(
                {
                    "team_size": 3,
                    "required": [
                        {"discipline": "hci", "min_proficiency": 0.5},
                        {"discipline": "hci", "min_proficiency": 0.7},
                    ],
                }
            )
        )


def test_roster_serialization_idempotent():
    roster = parse_roster(MINIMAL_ROSTER)
    first = roster_to_json(roster)
    second = roster_to_json(parse_roster(first))
    assert first == second


def test_spec_serialization_idempotent():
    spec = parse_spec(json.dumps({"team_size": 3, "required": [{"discipline": "a", "min_proficiency": 0.25}]}))
    assert spec_to_json(parse_spec(spec_to_json(spec))) == spec_to_json(spec)


def test_archive_round_trip_bitwise(acceptance_fixture):
    roster, spec = acceptance_fixture
    archive = evolve(roster, spec, EvolveConfig(population_size=16, generations=6, rng_seed=5))
    payload = write_archive(
        ArchiveFile(roster_hash=roster_hash(roster), spec_hash="0" * 64, seed=5, archive=archive)
    )
    loaded = read_archive(payload)
    assert loaded.archive == archive
    assert write_archive(loaded) == payload


def test_read_archive_rejects_empty_entries():
    doc = {"roster_hash": "a", "spec_hash": "b", "seed": 1, "entries": []}
    with pytest.raises(MalformedDocument):
        read_archive(canonical_json(doc))


def test_read_archive_hand_built_single_entry():
    entry = {
        "member_ids": ["m1", "m2"],
        "objectives": {"diversity": 0.5, "cohesion": 0.25, "coverage": 1.0},
    }
    doc = {"roster_hash": "aa", "spec_hash": "bb", "seed": 9, "entries": [entry]}
    loaded = read_archive(canonical_json(doc))
    assert len(loaded.archive) == 1
    ev = loaded.archive.entries[0]
    assert ev.team.members == ("m1", "m2")
    assert ev.objectives.as_tuple() == (0.5, 0.25, 1.0)
    assert loaded.seed == 9


def test_read_archive_rejects_dominated_entries():
    good = {"member_ids": ["m1", "m2"], "objectives": {"diversity": 0.9, "cohesion": 0.9, "coverage": 1.0}}
    bad = {"member_ids": ["m3", "m4"], "objectives": {"diversity": 0.1, "cohesion": 0.1, "coverage": 0.5}}
    doc = {"roster_hash": "a", "spec_hash": "b", "seed": 0, "entries": [good, bad]}
    with pytest.raises(MalformedDocument):
        read_archive(canonical_json(doc))


def test_read_archive_rejects_unsorted_member_ids():
    entry = {"member_ids": ["m2", "m1"], "objectives": {"diversity": 0.5, "cohesion": 0.5, "coverage": 0.5}}
    doc = {"roster_hash": "a", "spec_hash": "b", "seed": 0, "entries": [entry]}
    with pytest.raises(MalformedDocument):
        read_archive(canonical_json(doc))


def test_canonical_json_sorts_keys():
    assert canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}\n'

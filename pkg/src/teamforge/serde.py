"""File formats: roster and project-spec ingestion, archive round-tripping.

All documents are JSON. Serialization is canonical (sorted object keys,
members sorted by id, edges by pair, compact separators, one trailing
newline) so that equal values produce identical bytes and archives diff
cleanly. Floats use Python's shortest round-trip representation, which is
bit-exact on re-parse.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .errors import (
    MalformedDocument,
    ProficiencyOutOfRange,
    TeamForgeError,
    WeightOutOfRange,
)
from .model import EvaluatedTeam, FamiliarityGraph, Member, ProjectSpec, Roster
from .nsga2 import ParetoArchive


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def document_hash(serialized: str | bytes) -> str:
    data = serialized.encode("utf-8") if isinstance(serialized, str) else serialized
    return hashlib.sha256(data).hexdigest()


def _load_json(data: bytes | str, what: str) -> dict:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument(f"{what} is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{what} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedDocument(f"{what} must be a JSON object, got {type(doc).__name__}")
    return doc


def _require(doc: dict, key: str, types, what: str):
    if key not in doc:
        raise MalformedDocument(f"{what} is missing required field {key!r}", field=key)
    value = doc[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise MalformedDocument(
            f"{what} field {key!r} has wrong type {type(value).__name__}", field=key
        )
    return value


def _number(value, field: str, err_cls, label: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocument(f"{label} must be a number", field=field)
    value = float(value)
    if not 0.0 <= value <= 1.0 or value != value:
        raise err_cls(f"{label} must be in [0, 1], got {value!r}", field=field)
    return value


# -- roster ------------------------------------------------------------------

def parse_roster(data: bytes | str) -> Roster:
    """Validated Roster, or a diagnostic naming the offending element."""
    doc = _load_json(data, "roster")
    members_doc = _require(doc, "members", list, "roster")
    members = []
    for idx, m in enumerate(members_doc):
        if not isinstance(m, dict):
            raise MalformedDocument(f"members[{idx}] must be an object", field=f"members[{idx}]")
        mid = _require(m, "id", str, f"members[{idx}]")
        name = m.get("name", "")
        org = m.get("org", "")
        if not isinstance(name, str) or not isinstance(org, str):
            raise MalformedDocument(f"member {mid!r} name/org must be strings", field=mid)
        expertise_doc = m.get("expertise", {})
        if not isinstance(expertise_doc, dict):
            raise MalformedDocument(f"member {mid!r} expertise must be an object", field=mid)
        expertise = {}
        for tag, value in expertise_doc.items():
            expertise[tag] = _number(
                value, f"members[{idx}].expertise.{tag}", ProficiencyOutOfRange,
                f"proficiency {tag!r} of member {mid!r}",
            )
        members.append(Member(id=mid, display_name=name, organization=org, expertise=expertise))

    edges_doc = doc.get("familiarity", [])
    if not isinstance(edges_doc, list):
        raise MalformedDocument("roster familiarity must be a list", field="familiarity")
    edges = []
    for idx, e in enumerate(edges_doc):
        if not isinstance(e, dict):
            raise MalformedDocument(f"familiarity[{idx}] must be an object", field=f"familiarity[{idx}]")
        a = _require(e, "a", str, f"familiarity[{idx}]")
        b = _require(e, "b", str, f"familiarity[{idx}]")
        w = _number(
            e.get("w"), f"familiarity[{idx}].w", WeightOutOfRange,
            f"familiarity weight of ({a}, {b})",
        )
        edges.append((a, b, w))

    graph = FamiliarityGraph.from_edge_list(edges)
    return Roster(members=tuple(members), familiarity=graph)


def roster_to_json(roster: Roster) -> str:
    return canonical_json(roster.to_doc())


def roster_hash(roster: Roster) -> str:
    return document_hash(roster_to_json(roster))


# -- project spec -------------------------------------------------------------

def parse_spec(data: bytes | str) -> ProjectSpec:
    doc = _load_json(data, "spec")
    team_size = _require(doc, "team_size", int, "spec")
    required_doc = doc.get("required", [])
    if not isinstance(required_doc, list):
        raise MalformedDocument("spec required must be a list", field="required")
    required = []
    for idx, r in enumerate(required_doc):
        if not isinstance(r, dict):
            raise MalformedDocument(f"required[{idx}] must be an object", field=f"required[{idx}]")
        discipline = _require(r, "discipline", str, f"required[{idx}]")
        threshold = _number(
            r.get("min_proficiency"), f"required[{idx}].min_proficiency",
            ProficiencyOutOfRange, f"min_proficiency of {discipline!r}",
        )
        required.append((discipline, threshold))
    return ProjectSpec(team_size=team_size, required=tuple(required))


def spec_to_json(spec: ProjectSpec) -> str:
    return canonical_json(spec.to_doc())


def spec_hash(spec: ProjectSpec) -> str:
    return document_hash(spec_to_json(spec))


# -- archive -------------------------------------------------------------------

@dataclass(frozen=True)
class ArchiveFile:
    """On-disk archive: provenance hashes, the evolve seed, and the entries."""

    roster_hash: str
    spec_hash: str
    seed: int
    archive: ParetoArchive


def write_archive(archive_file: ArchiveFile) -> str:
    doc = {
        "roster_hash": archive_file.roster_hash,
        "spec_hash": archive_file.spec_hash,
        "seed": archive_file.seed,
        "entries": archive_file.archive.to_doc(),
    }
    return canonical_json(doc)


def read_archive(data: bytes | str) -> ArchiveFile:
    doc = _load_json(data, "archive")
    rhash = _require(doc, "roster_hash", str, "archive")
    shash = _require(doc, "spec_hash", str, "archive")
    seed = _require(doc, "seed", int, "archive")
    entries_doc = _require(doc, "entries", list, "archive")
    if not entries_doc:
        raise MalformedDocument("archive entries must be nonempty", field="entries")
    entries = []
    for idx, e in enumerate(entries_doc):
        if not isinstance(e, dict):
            raise MalformedDocument(f"entries[{idx}] must be an object", field=f"entries[{idx}]")
        member_ids = _require(e, "member_ids", list, f"entries[{idx}]")
        if not member_ids or not all(isinstance(m, str) for m in member_ids):
            raise MalformedDocument(f"entries[{idx}].member_ids must be nonempty strings", field=f"entries[{idx}]")
        objectives = _require(e, "objectives", dict, f"entries[{idx}]")
        for key in ("diversity", "cohesion", "coverage"):
            _number(
                objectives.get(key), f"entries[{idx}].objectives.{key}",
                MalformedDocument, f"objective {key!r} of entry {idx}",
            )
        try:
            entries.append(EvaluatedTeam.from_doc(e))
        except TeamForgeError as exc:
            raise MalformedDocument(f"entries[{idx}]: {exc.message}", field=f"entries[{idx}]") from None
    try:
        archive = ParetoArchive(entries=tuple(entries))
    except TeamForgeError as exc:
        raise MalformedDocument(f"archive invariant violated: {exc.message}") from None
    return ArchiveFile(roster_hash=rhash, spec_hash=shash, seed=seed, archive=archive)

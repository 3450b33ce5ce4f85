"""Core domain types: members, rosters, project specs, teams, objective vectors.

All types are immutable after construction and validate their invariants in
``__post_init__``. Teams are stored in canonical form (member ids sorted
ascending by byte-wise string order) so that two teams with the same member
set compare equal and serialize identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    DuplicateDiscipline,
    DuplicateMember,
    InvalidTeamSize,
    MalformedDocument,
    ProficiencyOutOfRange,
    UnknownMember,
    WeightOutOfRange,
    WrongSize,
)


def _check_unit_interval(value: float, err_cls, label: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0 or value > 1.0:
        raise err_cls(f"{label} must be in [0, 1], got {value!r}", field=label)
    return value


@dataclass(frozen=True)
class Member:
    """One roster member with an expertise map from discipline tag to proficiency."""

    id: str
    display_name: str = ""
    organization: str = ""
    expertise: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise MalformedDocument("member id must be nonempty", field="id")
        for tag, value in self.expertise.items():
            _check_unit_interval(value, ProficiencyOutOfRange, f"expertise[{tag}] of member {self.id!r}")

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "name": self.display_name,
            "org": self.organization,
            "expertise": {tag: float(v) for tag, v in sorted(self.expertise.items())},
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "Member":
        return cls(
            id=doc["id"],
            display_name=doc.get("name", ""),
            organization=doc.get("org", ""),
            expertise=dict(doc.get("expertise", {})),
        )


@dataclass(frozen=True)
class FamiliarityGraph:
    """Undirected weighted graph of prior acquaintance; absent edge means weight 0.

    Edges are keyed by the sorted id pair, so at most one edge exists per
    unordered pair and lookups are symmetric by construction.
    """

    edges: dict[tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self):
        for (a, b), w in self.edges.items():
            if a == b:
                raise MalformedDocument(f"self-edge on member {a!r}", field=f"familiarity[{a},{b}]")
            if (a, b) != tuple(sorted((a, b))):
                raise MalformedDocument(
                    f"edge key ({a!r}, {b!r}) is not in canonical sorted order",
                    field=f"familiarity[{a},{b}]",
                )
            _check_unit_interval(w, WeightOutOfRange, f"familiarity weight of ({a}, {b})")

    @classmethod
    def from_edge_list(cls, edges) -> "FamiliarityGraph":
        """Build from an iterable of (a, b, weight); rejects duplicate pairs."""
        table: dict[tuple[str, str], float] = {}
        for a, b, w in edges:
            if a == b:
                raise MalformedDocument(f"self-edge on member {a!r}", field=f"familiarity[{a},{b}]")
            key = (a, b) if a < b else (b, a)
            if key in table:
                raise MalformedDocument(
                    f"duplicate familiarity edge for pair ({key[0]}, {key[1]})",
                    field=f"familiarity[{key[0]},{key[1]}]",
                )
            table[key] = float(w)
        return cls(edges=table)

    def weight(self, a: str, b: str) -> float:
        key = (a, b) if a < b else (b, a)
        return self.edges.get(key, 0.0)

    def member_ids(self):
        for a, b in self.edges:
            yield a
            yield b

    def to_doc(self) -> list[dict]:
        return [
            {"a": a, "b": b, "w": float(w)}
            for (a, b), w in sorted(self.edges.items())
        ]


@dataclass(frozen=True)
class Roster:
    """The member pool: expertise vectors plus the familiarity graph."""

    members: tuple[Member, ...]
    familiarity: FamiliarityGraph = field(default_factory=FamiliarityGraph)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        seen: set[str] = set()
        for m in self.members:
            if m.id in seen:
                raise DuplicateMember(f"duplicate member id {m.id!r}", field=m.id)
            seen.add(m.id)
        if len(self.members) < 2:
            raise MalformedDocument("roster needs at least 2 members", field="members")
        for mid in self.familiarity.member_ids():
            if mid not in seen:
                raise UnknownMember(f"familiarity edge references unknown member {mid!r}", field=mid)
        object.__setattr__(self, "_by_id", {m.id: m for m in self.members})

    def member(self, member_id: str) -> Member:
        try:
            return self._by_id[member_id]
        except KeyError:
            raise UnknownMember(f"unknown member {member_id!r}", field=member_id) from None

    def __contains__(self, member_id: str) -> bool:
        return member_id in self._by_id

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.members)

    def discipline_tags(self) -> tuple[str, ...]:
        """Union of all declared discipline tags, sorted."""
        tags: set[str] = set()
        for m in self.members:
            tags.update(m.expertise)
        return tuple(sorted(tags))

    def to_doc(self) -> dict:
        return {
            "members": [m.to_doc() for m in sorted(self.members, key=lambda m: m.id)],
            "familiarity": self.familiarity.to_doc(),
        }


@dataclass(frozen=True)
class ProjectSpec:
    """Desired team size plus per-discipline minimum proficiency requirements."""

    team_size: int
    required: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "required", tuple((d, float(t)) for d, t in self.required))
        if not isinstance(self.team_size, int) or self.team_size < 2:
            raise InvalidTeamSize(f"team_size must be an integer >= 2, got {self.team_size!r}", field="team_size")
        seen: set[str] = set()
        for discipline, threshold in self.required:
            if discipline in seen:
                raise DuplicateDiscipline(f"discipline {discipline!r} required twice", field=discipline)
            seen.add(discipline)
            _check_unit_interval(threshold, ProficiencyOutOfRange, f"min_proficiency of {discipline!r}")

    def to_doc(self) -> dict:
        return {
            "team_size": self.team_size,
            "required": [
                {"discipline": d, "min_proficiency": float(t)} for d, t in self.required
            ],
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "ProjectSpec":
        return cls(
            team_size=doc["team_size"],
            required=tuple((r["discipline"], r["min_proficiency"]) for r in doc.get("required", [])),
        )


@dataclass(frozen=True, order=True)
class Team:
    """A fixed-size subset of member ids in canonical sorted form."""

    members: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if list(self.members) != sorted(self.members):
            raise MalformedDocument("team member ids must be sorted ascending", field="members")
        if len(set(self.members)) != len(self.members):
            raise DuplicateMember("team contains a repeated member id", field="members")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, member_id: str) -> bool:
        return member_id in self.members


def canonicalize(member_ids, roster: Roster, team_size: int) -> Team:
    """Validate a raw id list against a roster and return the canonical Team.

    Raises DuplicateMember on repeats, UnknownMember for ids missing from the
    roster, and WrongSize when the count differs from ``team_size``.
    """
    ids = list(member_ids)
    seen: set[str] = set()
    for mid in ids:
        if mid in seen:
            raise DuplicateMember(f"member {mid!r} appears twice in team", field=mid)
        seen.add(mid)
        if mid not in roster:
            raise UnknownMember(f"team references unknown member {mid!r}", field=mid)
    if len(ids) != team_size:
        raise WrongSize(f"team has {len(ids)} members, project requires {team_size}")
    return Team(members=tuple(sorted(ids)))


@dataclass(frozen=True, order=True)
class ObjectiveVector:
    """Per-team scores, all in [0, 1], all maximized.

    Component order (diversity, cohesion, coverage) is fixed for
    serialization and crowding computations.
    """

    diversity: float
    cohesion: float
    coverage: float

    def __post_init__(self):
        for name in ("diversity", "cohesion", "coverage"):
            object.__setattr__(
                self, name, _check_unit_interval(getattr(self, name), MalformedDocument, name)
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.diversity, self.cohesion, self.coverage)

    def to_doc(self) -> dict:
        return {
            "diversity": self.diversity,
            "cohesion": self.cohesion,
            "coverage": self.coverage,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "ObjectiveVector":
        return cls(
            diversity=doc["diversity"],
            cohesion=doc["cohesion"],
            coverage=doc["coverage"],
        )


@dataclass(frozen=True, order=True)
class EvaluatedTeam:
    """A team together with its deterministic objective evaluation."""

    team: Team
    objectives: ObjectiveVector

    def to_doc(self) -> dict:
        return {
            "member_ids": list(self.team.members),
            "objectives": self.objectives.to_doc(),
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "EvaluatedTeam":
        return cls(
            team=Team(members=tuple(doc["member_ids"])),
            objectives=ObjectiveVector.from_doc(doc["objectives"]),
        )

"""Objective evaluation and Pareto dominance over teams.

Three objectives, all maximized, all in [0, 1]:

- diversity: one minus the mean pairwise cosine similarity of member
  expertise vectors (all-zero vectors count as similarity 0).
- cohesion: mean pairwise familiarity weight (missing edges count 0).
- coverage: fraction of the project's requirements met by at least one
  member at the required proficiency (empty requirements give 1.0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidTeam
from .model import EvaluatedTeam, ObjectiveVector, ProjectSpec, Roster, Team


def _clamp01(x: float) -> float:
    # Guard against float round-up past the mathematical bound.
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


def expertise_cosine(a: dict[str, float], b: dict[str, float]) -> float:
    """Cosine similarity of two sparse expertise maps.

    Proficiencies are non-negative, so the result lies in [0, 1]. Either
    vector being all-zero (or empty) yields 0 by convention.
    """
    dot = 0.0
    for tag, va in a.items():
        vb = b.get(tag)
        if vb is not None:
            dot += float(va) * float(vb)
    norm_a = math.sqrt(sum(float(v) * float(v) for v in a.values()))
    norm_b = math.sqrt(sum(float(v) * float(v) for v in b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return _clamp01(dot / (norm_a * norm_b))


@dataclass
class ObjectiveContext:
    """Roster + spec plus optional derived caches for repeated evaluation.

    With ``precompute=True`` all pairwise expertise similarities and
    familiarity weights are tabulated once; cached evaluation is bitwise
    identical to the on-the-fly path because both call the same functions.
    """

    roster: Roster
    spec: ProjectSpec
    precompute: bool = True
    _cosine: dict[tuple[str, str], float] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.precompute:
            ids = sorted(self.roster.ids)
            table: dict[tuple[str, str], float] = {}
            for i, a in enumerate(ids):
                ea = self.roster.member(a).expertise
                for b in ids[i + 1:]:
                    table[(a, b)] = expertise_cosine(ea, self.roster.member(b).expertise)
            self._cosine = table

    def pair_cosine(self, a: str, b: str) -> float:
        key = (a, b) if a < b else (b, a)
        if self._cosine is not None:
            return self._cosine[key]
        return expertise_cosine(self.roster.member(key[0]).expertise, self.roster.member(key[1]).expertise)

    def _validate(self, team: Team) -> None:
        if len(team) != self.spec.team_size:
            raise InvalidTeam(
                f"team has {len(team)} members, context requires {self.spec.team_size}"
            )
        for mid in team:
            if mid not in self.roster:
                raise InvalidTeam(f"team references unknown member {mid!r}", field=mid)


def diversity(team: Team, ctx: ObjectiveContext) -> float:
    """1 - mean pairwise cosine similarity of member expertise vectors."""
    ctx._validate(team)
    k = len(team)
    total = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            total += ctx.pair_cosine(team.members[i], team.members[j])
    return _clamp01(1.0 - total * 2.0 / (k * (k - 1)))


def cohesion(team: Team, ctx: ObjectiveContext) -> float:
    """Mean pairwise familiarity weight; absent edges contribute 0."""
    ctx._validate(team)
    k = len(team)
    graph = ctx.roster.familiarity
    total = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            total += graph.weight(team.members[i], team.members[j])
    return _clamp01(total * 2.0 / (k * (k - 1)))


def coverage(team: Team, ctx: ObjectiveContext) -> float:
    """Fraction of requirements met by some member at the threshold (inclusive)."""
    ctx._validate(team)
    required = ctx.spec.required
    if not required:
        return 1.0
    met = 0
    for discipline, threshold in required:
        for mid in team:
            if ctx.roster.member(mid).expertise.get(discipline, 0.0) >= threshold:
                met += 1
                break
    return _clamp01(met / len(required))


def evaluate(team: Team, ctx: ObjectiveContext) -> ObjectiveVector:
    """Deterministic, pure evaluation of all three objectives."""
    return ObjectiveVector(
        diversity=diversity(team, ctx),
        cohesion=cohesion(team, ctx),
        coverage=coverage(team, ctx),
    )


def evaluate_team(team: Team, ctx: ObjectiveContext) -> EvaluatedTeam:
    return EvaluatedTeam(team=team, objectives=evaluate(team, ctx))


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """Pareto dominance under maximization: a >= b everywhere, > somewhere."""
    at, bt = a.as_tuple(), b.as_tuple()
    strict = False
    for x, y in zip(at, bt):
        if x < y:
            return False
        if x > y:
            strict = True
    return strict

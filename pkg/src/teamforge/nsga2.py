"""Evolutionary search for the non-dominated pool of candidate teams.

Classic NSGA-II machinery over a set-encoded chromosome: fast non-dominated
sorting, per-front crowding distances, binary crowded tournaments, an
intersection-preserving subset crossover, per-slot resampling mutation, and
(mu + lambda) truncation. An archive accumulates every team ever evaluated
and is reduced to its non-dominated, deduplicated subset at the end.

Randomness comes from a single numpy PCG64 stream seeded with
``EvolveConfig.rng_seed``. Draw order is fixed: initialization first (one
integer draw per sampled member), then per generation and per offspring:
two index draws per tournament (two tournaments), one uniform for the
crossover coin, the crossover's subset draws, then one uniform per slot for
the mutation coin plus one integer draw per replaced member. Identical
inputs therefore produce bitwise-identical archives.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyFront,
    EmptyPopulation,
    InvalidConfig,
    InvalidTeam,
    SpecTooLarge,
)
from .model import EvaluatedTeam, ProjectSpec, Roster, Team
from .objectives import ObjectiveContext, dominates, evaluate_team


@dataclass(frozen=True)
class EvolveConfig:
    population_size: int = 64
    generations: int = 100
    crossover_prob: float = 0.9
    mutation_rate: float | None = None  # None means 1/k, resolved at run time
    tournament_arity: int = 2
    rng_seed: int = 0

    def __post_init__(self):
        if not isinstance(self.population_size, int) or self.population_size < 4 or self.population_size % 2:
            raise InvalidConfig(
                f"population_size must be an even integer >= 4, got {self.population_size!r}",
                field="population_size",
            )
        if not isinstance(self.generations, int) or self.generations < 1:
            raise InvalidConfig(f"generations must be >= 1, got {self.generations!r}", field="generations")
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise InvalidConfig(f"crossover_prob must be in [0, 1], got {self.crossover_prob!r}", field="crossover_prob")
        if self.mutation_rate is not None and not 0.0 <= self.mutation_rate <= 1.0:
            raise InvalidConfig(f"mutation_rate must be in [0, 1], got {self.mutation_rate!r}", field="mutation_rate")
        if self.tournament_arity != 2:
            raise InvalidConfig("tournament arity is fixed at 2", field="tournament_arity")
        if not isinstance(self.rng_seed, int) or not 0 <= self.rng_seed < 2**64:
            raise InvalidConfig(f"rng_seed must be a 64-bit unsigned integer, got {self.rng_seed!r}", field="rng_seed")


@dataclass(frozen=True)
class RankedIndividual:
    """A population member annotated with its front index and crowding distance."""

    evaluated: EvaluatedTeam
    rank: int
    crowding: float

    @property
    def team(self) -> Team:
        return self.evaluated.team

    @property
    def objectives(self):
        return self.evaluated.objectives


@dataclass(frozen=True)
class ParetoArchive:
    """Deduplicated, mutually non-dominated teams in canonical (team) order."""

    entries: tuple[EvaluatedTeam, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        teams = [e.team.members for e in self.entries]
        if len(set(teams)) != len(teams):
            raise InvalidTeam("archive contains duplicate teams")
        if list(teams) != sorted(teams):
            raise InvalidTeam("archive entries must be in canonical team order")
        _check_mutual_nondomination(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_doc(self) -> list[dict]:
        return [e.to_doc() for e in self.entries]


def _check_mutual_nondomination(entries) -> None:
    n = len(entries)
    if n < 2:
        return
    objs = np.array([e.objectives.as_tuple() for e in entries])
    # Chunked pairwise check keeps memory flat for large archives.
    for start in range(0, n, 256):
        block = objs[start:start + 256]
        ge = (block[:, None, :] >= objs[None, :, :]).all(axis=2)
        gt = (block[:, None, :] > objs[None, :, :]).any(axis=2)
        if (ge & gt).any():
            raise InvalidTeam("archive contains a dominated entry")


def fast_non_dominated_sort(pop) -> list[list[int]]:
    """Partition population indices into fronts (front 0 undominated).

    Domination counts and dominated-sets are computed with a vectorized
    pairwise comparison, then fronts are peeled iteratively. Fronts list
    indices in ascending order.
    """
    pop = list(pop)
    if not pop:
        raise EmptyPopulation("cannot sort an empty population")
    objs = np.array([e.objectives.as_tuple() for e in pop])
    ge = (objs[:, None, :] >= objs[None, :, :]).all(axis=2)
    gt = (objs[:, None, :] > objs[None, :, :]).any(axis=2)
    dom = ge & gt  # dom[i, j]: i dominates j
    counts = dom.sum(axis=0).astype(int)

    fronts: list[list[int]] = []
    current = [i for i in range(len(pop)) if counts[i] == 0]
    while current:
        fronts.append(current)
        nxt: list[int] = []
        for p in current:
            for q in np.nonzero(dom[p])[0]:
                counts[q] -= 1
                if counts[q] == 0:
                    nxt.append(int(q))
        current = sorted(nxt)
    return fronts


def crowding_distances(front) -> list[float]:
    """Crowding distance per front member, aligned with the input order.

    Per objective the front is sorted (ties broken by canonical team order);
    boundary individuals get +inf and interior ones accumulate the
    normalized neighbour gap. An objective with max == min contributes 0 to
    everyone. Fronts of size <= 2, and fronts whose vectors are all
    identical, are entirely +inf.
    """
    front = list(front)
    if not front:
        raise EmptyFront("cannot compute crowding of an empty front")
    n = len(front)
    if n <= 2:
        return [math.inf] * n

    dist = [0.0] * n
    any_spread = False
    for obj_idx in range(3):
        values = [e.objectives.as_tuple()[obj_idx] for e in front]
        vmin, vmax = min(values), max(values)
        if vmax == vmin:
            continue
        any_spread = True
        order = sorted(range(n), key=lambda i: (values[i], front[i].team.members))
        dist[order[0]] = math.inf
        dist[order[-1]] = math.inf
        span = vmax - vmin
        for pos in range(1, n - 1):
            i = order[pos]
            if dist[i] != math.inf:
                dist[i] += (values[order[pos + 1]] - values[order[pos - 1]]) / span
    if not any_spread:
        # All vectors identical: nothing discriminates, everyone is boundary.
        return [math.inf] * n
    return dist


def crowded_compare(a: RankedIndividual, b: RankedIndividual) -> int:
    """-1 if a wins, +1 if b wins. Lower rank, then larger crowding, then
    lexicographically smaller team; identical teams keep the first argument."""
    if a.rank != b.rank:
        return -1 if a.rank < b.rank else 1
    if a.crowding != b.crowding:
        return -1 if a.crowding > b.crowding else 1
    if a.team.members != b.team.members:
        return -1 if a.team.members < b.team.members else 1
    return -1


def selection_key(ind: RankedIndividual):
    """Sort key realizing the crowded-comparison total order."""
    return (ind.rank, -ind.crowding, ind.team.members)


def rank_population(pop) -> list[RankedIndividual]:
    """Annotate every individual with its front index and crowding distance."""
    pop = list(pop)
    fronts = fast_non_dominated_sort(pop)
    ranked: list[RankedIndividual | None] = [None] * len(pop)
    for rank, front in enumerate(fronts):
        dists = crowding_distances([pop[i] for i in front])
        for i, d in zip(front, dists):
            ranked[i] = RankedIndividual(evaluated=pop[i], rank=rank, crowding=d)
    return ranked


def _sample_without_replacement(pool: list[str], count: int, rng) -> list[str]:
    # Partial Fisher-Yates; one integer draw per selected element.
    items = list(pool)
    n = len(items)
    for i in range(count):
        j = i + int(rng.integers(0, n - i))
        items[i], items[j] = items[j], items[i]
    return items[:count]


def crossover(parent_a: Team, parent_b: Team, ctx: ObjectiveContext, rng) -> Team:
    """Keep the parents' intersection, fill the rest from their symmetric
    difference uniformly without replacement. The child is always a valid
    k-subset of the parents' union."""
    if len(parent_a) != len(parent_b):
        raise InvalidTeam("crossover parents must have the same size")
    k = len(parent_a)
    set_a, set_b = set(parent_a.members), set(parent_b.members)
    core = set_a & set_b
    need = k - len(core)
    if need == 0:
        return Team(members=tuple(sorted(core)))
    pool = sorted(set_a ^ set_b)
    picked = _sample_without_replacement(pool, need, rng)
    return Team(members=tuple(sorted(core | set(picked))))


def mutate(team: Team, ctx: ObjectiveContext, mutation_rate: float, rng) -> Team:
    """Per slot, with probability ``mutation_rate``, replace the member with a
    uniform draw from the roster members currently outside the team.
    Replacements apply sequentially, preserving distinctness; a slot whose
    coin fires when no outside member exists is skipped."""
    current = list(team.members)
    members = set(current)
    roster_ids = ctx.roster.ids
    for slot in range(len(current)):
        if rng.random() >= mutation_rate:
            continue
        candidates = sorted(set(roster_ids) - members)
        if not candidates:
            continue
        replacement = candidates[int(rng.integers(0, len(candidates)))]
        members.discard(current[slot])
        members.add(replacement)
        current[slot] = replacement
    return Team(members=tuple(sorted(current)))


class _ArchiveAccumulator:
    """Incrementally maintains the non-dominated, deduplicated subset of all
    teams offered so far. Pareto dominance is transitive, so rejecting or
    evicting against the current set is exact."""

    def __init__(self):
        self._by_team: dict[tuple[str, ...], EvaluatedTeam] = {}

    def offer(self, ev: EvaluatedTeam) -> None:
        key = ev.team.members
        if key in self._by_team:
            return
        evicted: list[tuple[str, ...]] = []
        for other_key, other in self._by_team.items():
            if dominates(other.objectives, ev.objectives):
                return
            if dominates(ev.objectives, other.objectives):
                evicted.append(other_key)
        for other_key in evicted:
            del self._by_team[other_key]
        self._by_team[key] = ev

    def freeze(self) -> ParetoArchive:
        entries = sorted(self._by_team.values(), key=lambda e: e.team.members)
        return ParetoArchive(entries=tuple(entries))


def _tournament(ranked: list[RankedIndividual], rng) -> RankedIndividual:
    i = int(rng.integers(0, len(ranked)))
    j = int(rng.integers(0, len(ranked)))
    return ranked[i] if crowded_compare(ranked[i], ranked[j]) < 0 else ranked[j]


def evolve(roster: Roster, spec: ProjectSpec, config: EvolveConfig, on_generation=None) -> ParetoArchive:
    """Run the generational loop and return the accumulated Pareto archive.

    ``on_generation(gen_index, population)`` is called after each survivor
    selection, with the generation's N evaluated teams (observers must not
    mutate their argument).
    """
    k = spec.team_size
    if k > len(roster.members):
        raise SpecTooLarge(
            f"team size {k} exceeds roster size {len(roster.members)}", field="team_size"
        )
    mutation_rate = config.mutation_rate if config.mutation_rate is not None else 1.0 / k
    rng = np.random.Generator(np.random.PCG64(config.rng_seed))
    ctx = ObjectiveContext(roster, spec)
    ids_sorted = sorted(roster.ids)
    archive = _ArchiveAccumulator()

    population: list[EvaluatedTeam] = []
    for _ in range(config.population_size):
        team = Team(members=tuple(sorted(_sample_without_replacement(ids_sorted, k, rng))))
        ev = evaluate_team(team, ctx)
        population.append(ev)
        archive.offer(ev)
    ranked = rank_population(population)

    for gen in range(config.generations):
        offspring: list[EvaluatedTeam] = []
        for _ in range(config.population_size):
            parent_a = _tournament(ranked, rng)
            parent_b = _tournament(ranked, rng)
            if rng.random() < config.crossover_prob:
                child = crossover(parent_a.team, parent_b.team, ctx, rng)
            else:
                child = parent_a.team
            child = mutate(child, ctx, mutation_rate, rng)
            ev = evaluate_team(child, ctx)
            offspring.append(ev)
            archive.offer(ev)

        merged = rank_population(population + offspring)
        survivors = sorted(merged, key=selection_key)[: config.population_size]
        population = [s.evaluated for s in survivors]
        ranked = rank_population(population)
        if on_generation is not None:
            on_generation(gen, tuple(population))

    return archive.freeze()


def exhaustive_front(roster: Roster, spec: ProjectSpec) -> ParetoArchive:
    """True Pareto front by full enumeration of all k-subsets.

    Independent of the evolutionary path: plain enumeration plus a
    quadratic dominance filter. Intended for small rosters; the CLI refuses
    when C(n, k) exceeds 200000.
    """
    k = spec.team_size
    if k > len(roster.members):
        raise SpecTooLarge(
            f"team size {k} exceeds roster size {len(roster.members)}", field="team_size"
        )
    ctx = ObjectiveContext(roster, spec)
    evaluated = [
        evaluate_team(Team(members=combo), ctx)
        for combo in itertools.combinations(sorted(roster.ids), k)
    ]
    keep: list[EvaluatedTeam] = []
    for candidate in evaluated:
        if any(dominates(other.objectives, candidate.objectives) for other in evaluated):
            continue
        keep.append(candidate)
    return ParetoArchive(entries=tuple(sorted(keep, key=lambda e: e.team.members)))

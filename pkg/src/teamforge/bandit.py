"""Best-arm identification over the archive's candidate teams.

Each round presents a slate of ``presentation_size`` teams; every presented
arm counts as a pull, the chosen arm earns reward 1, the rest earn 0 (a
skipped slate rewards nobody). Arms are scored with an iterated-logarithm
upper confidence index; unpulled arms rank first. The loop stops when one
arm's pull count exceeds ``1 + lam * (sum of the others)`` or when the round
budget runs out, at which point the best empirical mean wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    ChoiceNotPresented,
    EmptyArchive,
    InvalidConfig,
    SessionNotTerminal,
    SessionTerminal,
)
from .model import EvaluatedTeam
from .nsga2 import ParetoArchive

SKIP = "skip"

DEFAULT_MAX_ARMS = 8


@dataclass(frozen=True)
class Arm:
    """One selectable pool element with its stable per-session index."""

    arm_index: int
    evaluated_team: EvaluatedTeam


@dataclass(frozen=True)
class BanditParams:
    epsilon: float = 0.0
    beta: float = 0.5
    lam: float | None = None  # None means 1 + 10/A, resolved when arms are known
    delta: float = 0.1
    variance_bound: float = 0.25
    presentation_size: int = 3
    round_budget: int = 500

    def __post_init__(self):
        if self.epsilon < 0.0:
            raise InvalidConfig(f"epsilon must be >= 0, got {self.epsilon!r}", field="epsilon")
        if self.beta <= 0.0:
            raise InvalidConfig(f"beta must be > 0, got {self.beta!r}", field="beta")
        if self.lam is not None and self.lam <= 0.0:
            raise InvalidConfig(f"lam must be > 0, got {self.lam!r}", field="lam")
        if not 0.0 < self.delta < 1.0:
            raise InvalidConfig(f"delta must be in (0, 1), got {self.delta!r}", field="delta")
        if self.variance_bound <= 0.0:
            raise InvalidConfig(f"variance_bound must be > 0, got {self.variance_bound!r}", field="variance_bound")
        if not isinstance(self.presentation_size, int) or self.presentation_size < 1:
            raise InvalidConfig(f"presentation_size must be >= 1, got {self.presentation_size!r}", field="presentation_size")
        if not isinstance(self.round_budget, int) or self.round_budget < 1:
            raise InvalidConfig(f"round_budget must be >= 1, got {self.round_budget!r}", field="round_budget")

    def resolved(self, arm_count: int) -> "BanditParams":
        """Pin the arm-count-dependent defaults once the arm set is known.

        The slate can never exceed the arm count, so presentation_size is
        clamped down rather than rejected; a one-arm session still runs to a
        recommendation.
        """
        params = self
        if params.presentation_size > arm_count:
            params = replace(params, presentation_size=arm_count)
        if params.lam is None:
            params = replace(params, lam=1.0 + 10.0 / arm_count)
        return params


@dataclass(frozen=True)
class BanditState:
    """Per-arm pull counts and reward sums plus the stop/recommend flags."""

    arms: tuple[Arm, ...]
    params: BanditParams
    pulls: tuple[int, ...]
    wins: tuple[int, ...]
    rounds: int = 0
    terminal: bool = False
    recommended: int | None = None

    @classmethod
    def fresh(cls, arms, params: BanditParams) -> "BanditState":
        arms = tuple(arms)
        if not arms:
            raise EmptyArchive("cannot start a session with zero arms")
        return cls(
            arms=arms,
            params=params.resolved(len(arms)),
            pulls=(0,) * len(arms),
            wins=(0,) * len(arms),
        )

    def mean(self, i: int) -> float:
        # Unpulled arms count as mean 0 for budget-stop ranking.
        return self.wins[i] / self.pulls[i] if self.pulls[i] else 0.0


def select_arms(archive: ParetoArchive, max_arms: int = DEFAULT_MAX_ARMS) -> list[Arm]:
    """Pick the browsable subset of the archive and index it canonically.

    Small archives pass through whole. Larger ones are reduced by seeding
    with each objective's maximizer (ties going to the lexicographically
    smaller team) and then greedily adding the entry with the largest
    minimum Euclidean distance in objective space to the already-selected
    set. The chosen entries are ordered canonically before indexing.
    """
    if len(archive) == 0:
        raise EmptyArchive("archive has no entries")
    if max_arms < 1:
        raise InvalidConfig(f"max_arms must be >= 1, got {max_arms!r}", field="max_arms")

    entries = list(archive.entries)
    if len(entries) <= max_arms:
        chosen = entries
    else:
        selected: list[EvaluatedTeam] = []
        selected_keys: set[tuple[str, ...]] = set()

        def add(entry: EvaluatedTeam) -> None:
            selected.append(entry)
            selected_keys.add(entry.team.members)

        for obj_idx in range(3):
            if len(selected) >= max_arms:
                break
            best = min(
                entries,
                key=lambda e: (-e.objectives.as_tuple()[obj_idx], e.team.members),
            )
            if best.team.members not in selected_keys:
                add(best)

        def min_distance(entry: EvaluatedTeam) -> float:
            e = entry.objectives.as_tuple()
            return min(
                math.dist(e, s.objectives.as_tuple()) for s in selected
            )

        while len(selected) < max_arms:
            best = min(
                (e for e in entries if e.team.members not in selected_keys),
                key=lambda e: (-min_distance(e), e.team.members),
            )
            add(best)
        chosen = selected

    chosen = sorted(chosen, key=lambda e: e.team.members)
    return [Arm(arm_index=i, evaluated_team=e) for i, e in enumerate(chosen)]


def ucb_index(pulls: int, wins: int, params: BanditParams) -> float:
    """Empirical mean plus the iterated-logarithm exploration bonus.

    Unpulled arms return +inf so they are presented first.
    """
    if pulls == 0:
        return math.inf
    mean = wins / pulls
    eps = params.epsilon
    bonus = (1.0 + params.beta) * (1.0 + math.sqrt(eps)) * math.sqrt(
        2.0
        * params.variance_bound
        * (1.0 + eps)
        * math.log(math.log((1.0 + eps) * pulls + 2.0) / params.delta)
        / pulls
    )
    return mean + bonus


def next_presentation(state: BanditState) -> list[Arm]:
    """The slate: top arms by index, ties to fewer pulls, then lower arm index."""
    if state.terminal:
        raise SessionTerminal("session already produced a recommendation")
    scored = sorted(
        range(len(state.arms)),
        key=lambda i: (
            -ucb_index(state.pulls[i], state.wins[i], state.params),
            state.pulls[i],
            i,
        ),
    )
    return [state.arms[i] for i in scored[: state.params.presentation_size]]


def stopping_check(state: BanditState) -> int | None:
    """The count-based stop, then the budget stop; None if neither fires.

    On budget exhaustion the arm with the highest empirical mean wins,
    ties going to more pulls, then the lower arm index.
    """
    total = sum(state.pulls)
    lam = state.params.lam if state.params.lam is not None else 1.0 + 10.0 / len(state.arms)
    for i, t_i in enumerate(state.pulls):
        # Pull counts are integers but lam is a float (e.g. 1 + 10/3), so the
        # threshold carries representation error; the epsilon restores the
        # exact-arithmetic boundary.
        if t_i >= 1.0 + lam * (total - t_i) - 1e-9:
            return i
    if state.rounds >= state.params.round_budget:
        return min(
            range(len(state.arms)),
            key=lambda i: (-state.mean(i), -state.pulls[i], i),
        )
    return None


def record_choice(state: BanditState, presented: list[Arm], choice) -> BanditState:
    """Apply one round of feedback and run the stopping check.

    Every presented arm gains a pull; the chosen arm also gains a win;
    ``SKIP`` rewards nobody. ``choice`` is an arm index or ``SKIP``.
    """
    if state.terminal:
        raise SessionTerminal("session already produced a recommendation")
    presented_indices = [arm.arm_index for arm in presented]
    if choice != SKIP and choice not in presented_indices:
        raise ChoiceNotPresented(f"arm {choice!r} was not in the presented slate")

    pulls = list(state.pulls)
    wins = list(state.wins)
    for i in presented_indices:
        pulls[i] += 1
    if choice != SKIP:
        wins[choice] += 1

    updated = replace(
        state,
        pulls=tuple(pulls),
        wins=tuple(wins),
        rounds=state.rounds + 1,
    )
    stopped = stopping_check(updated)
    if stopped is not None:
        updated = replace(updated, terminal=True, recommended=stopped)
    return updated


def recommend(state: BanditState) -> EvaluatedTeam:
    """The stopped arm's team; only valid once the loop is terminal."""
    if not state.terminal or state.recommended is None:
        raise SessionNotTerminal("no recommendation before the loop stops")
    return state.arms[state.recommended].evaluated_team


def run_session(arms, params: BanditParams, choose) -> BanditState:
    """Drive a full elicitation loop with ``choose(presented_teams) -> index-in-slate | SKIP``.

    ``choose`` receives the slate's evaluated teams in presentation order and
    returns a position within the slate (not an arm index) or SKIP. Returns
    the terminal state.
    """
    state = BanditState.fresh(arms, params)
    while not state.terminal:
        slate = next_presentation(state)
        picked = choose([arm.evaluated_team for arm in slate])
        choice = SKIP if picked == SKIP else slate[picked].arm_index
        state = record_choice(state, slate, choice)
    return state

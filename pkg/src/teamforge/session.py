"""Event-sourced sessions driving the two-stage pipeline.

A session moves forward-only through four phases: created -> evolved ->
eliciting -> recommended. Every mutation appends exactly one event, state is
a pure fold over the event list, and replaying a persisted log reconstructs
the identical state. Logs are newline-delimited JSON, one file per session.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .bandit import (
    SKIP,
    Arm,
    BanditParams,
    BanditState,
    next_presentation,
    record_choice,
    recommend,
    select_arms,
)
from .errors import (
    MalformedDocument,
    SessionTerminal,
    SpecTooLarge,
    StaleNonce,
    TeamForgeError,
    UnknownSession,
    ValidationFailed,
    WrongPhase,
)
from .model import EvaluatedTeam, ProjectSpec, Roster
from .nsga2 import EvolveConfig, ParetoArchive, evolve
from .serde import canonical_json, parse_roster

CREATED = "created"
EVOLVED = "evolved"
ELICITING = "eliciting"
RECOMMENDED = "recommended"


def evolve_config_to_doc(config: EvolveConfig) -> dict:
    return {
        "population_size": config.population_size,
        "generations": config.generations,
        "crossover_prob": config.crossover_prob,
        "mutation_rate": config.mutation_rate,
        "rng_seed": config.rng_seed,
    }


def evolve_config_from_doc(doc: dict) -> EvolveConfig:
    return EvolveConfig(
        population_size=doc.get("population_size", 64),
        generations=doc.get("generations", 100),
        crossover_prob=doc.get("crossover_prob", 0.9),
        mutation_rate=doc.get("mutation_rate"),
        rng_seed=doc.get("rng_seed", 0),
    )


def bandit_params_to_doc(params: BanditParams) -> dict:
    return {
        "epsilon": params.epsilon,
        "beta": params.beta,
        "lam": params.lam,
        "delta": params.delta,
        "presentation_size": params.presentation_size,
        "round_budget": params.round_budget,
    }


def bandit_params_from_doc(doc: dict) -> BanditParams:
    return BanditParams(
        epsilon=doc.get("epsilon", 0.0),
        beta=doc.get("beta", 0.5),
        lam=doc.get("lam"),
        delta=doc.get("delta", 0.1),
        presentation_size=doc.get("presentation_size", 3),
        round_budget=doc.get("round_budget", 500),
    )


@dataclass
class Session:
    """In-memory session state plus its append-only event log.

    Mutating methods build one event, fold it into the state, and hand it to
    ``on_event`` for persistence. ``replay`` rebuilds a session from its log
    alone.
    """

    session_id: str
    events: list[dict] = field(default_factory=list)
    on_event: object = None  # callable(event_dict) or None

    phase: str = field(default=CREATED, init=False)
    roster: Roster | None = field(default=None, init=False)
    spec: ProjectSpec | None = field(default=None, init=False)
    evolve_config: EvolveConfig | None = field(default=None, init=False)
    bandit_params: BanditParams | None = field(default=None, init=False)
    max_arms: int = field(default=8, init=False)
    archive: ParetoArchive | None = field(default=None, init=False)
    arms: tuple[Arm, ...] = field(default=(), init=False)
    bandit: BanditState | None = field(default=None, init=False)
    recommendation: EvaluatedTeam | None = field(default=None, init=False)

    # -- event plumbing -----------------------------------------------------

    def _record(self, event_type: str, data: dict) -> None:
        event = {
            "seq": len(self.events),
            "ts": time.time(),
            "type": event_type,
            "data": data,
        }
        self._apply(event)
        self.events.append(event)
        if self.on_event is not None:
            self.on_event(event)

    def _apply(self, event: dict) -> None:
        etype = event["type"]
        data = event["data"]
        if etype == "created":
            self.roster = parse_roster(canonical_json(data["roster"]))
            self.spec = ProjectSpec.from_doc(data["spec"])
            self.evolve_config = evolve_config_from_doc(data["evolve_config"])
            self.bandit_params = bandit_params_from_doc(data["bandit_params"])
            self.max_arms = data["max_arms"]
            self.phase = CREATED
        elif etype == "evolved":
            self.archive = ParetoArchive(
                entries=tuple(EvaluatedTeam.from_doc(e) for e in data["entries"])
            )
            self.arms = tuple(select_arms(self.archive, self.max_arms))
            self.phase = EVOLVED
        elif etype == "elicitation_started":
            self.bandit = BanditState.fresh(self.arms, self.bandit_params)
            self.phase = ELICITING
        elif etype == "choice":
            presented = [self.arms[i] for i in data["presented"]]
            choice = data["choice"]
            self.bandit = record_choice(self.bandit, presented, choice)
            if self.bandit.terminal:
                self.recommendation = recommend(self.bandit)
                self.phase = RECOMMENDED
        else:
            raise MalformedDocument(f"unknown event type {etype!r}")

    # -- operations ----------------------------------------------------------

    def run_evolution(self) -> dict:
        if self.phase != CREATED:
            raise WrongPhase(f"run_evolution requires phase {CREATED!r}, session is {self.phase!r}")
        archive = evolve(self.roster, self.spec, self.evolve_config)
        self._record("evolved", {"entries": archive.to_doc()})
        return {"archive_size": len(self.archive), "arm_count": len(self.arms)}

    def current_nonce(self) -> str:
        return f"r{self.bandit.rounds}"

    def get_round(self) -> dict:
        if self.phase == RECOMMENDED:
            raise SessionTerminal("session already produced a recommendation")
        if self.phase == CREATED:
            raise WrongPhase("run_evolution before requesting a round")
        if self.phase == EVOLVED:
            self._record("elicitation_started", {})
        slate = next_presentation(self.bandit)
        return {"nonce": self.current_nonce(), "arms": slate}

    def submit_choice(self, nonce: str, choice) -> dict:
        if self.phase != ELICITING:
            raise WrongPhase(f"submit_choice requires phase {ELICITING!r}, session is {self.phase!r}")
        if nonce != self.current_nonce():
            raise StaleNonce(f"nonce {nonce!r} does not match the outstanding presentation")
        slate = next_presentation(self.bandit)
        self._record(
            "choice",
            {
                "nonce": nonce,
                "presented": [arm.arm_index for arm in slate],
                "choice": choice if choice == SKIP else int(choice),
            },
        )
        return {"phase": self.phase, "rounds_used": self.bandit.rounds}

    def get_recommendation(self) -> dict:
        if self.phase != RECOMMENDED:
            raise WrongPhase("no recommendation before the session stops")
        return {
            "team": self.recommendation,
            "rounds_used": self.bandit.rounds,
            "arms": [
                {"arm_index": arm.arm_index, "pulls": self.bandit.pulls[i], "wins": self.bandit.wins[i]}
                for i, arm in enumerate(self.bandit.arms)
            ],
        }


def create_session(
    roster: Roster,
    spec: ProjectSpec,
    evolve_config: EvolveConfig | None = None,
    bandit_params: BanditParams | None = None,
    max_arms: int = 8,
    session_id: str | None = None,
    on_event=None,
) -> Session:
    """New session in phase 'created'; performs the roster/spec pairing checks."""
    evolve_config = evolve_config if evolve_config is not None else EvolveConfig()
    bandit_params = bandit_params if bandit_params is not None else BanditParams()
    if spec.team_size > len(roster.members):
        raise ValidationFailed(
            SpecTooLarge(
                f"team size {spec.team_size} exceeds roster size {len(roster.members)}",
                field="team_size",
            )
        )
    session = Session(
        session_id=session_id if session_id is not None else uuid.uuid4().hex,
        on_event=on_event,
    )
    session._record(
        "created",
        {
            "roster": roster.to_doc(),
            "spec": spec.to_doc(),
            "evolve_config": evolve_config_to_doc(evolve_config),
            "bandit_params": bandit_params_to_doc(bandit_params),
            "max_arms": max_arms,
        },
    )
    return session


def replay(session_id: str, events) -> Session:
    """Rebuild a session purely from its event log."""
    session = Session(session_id=session_id)
    for event in events:
        session._apply(event)
        session.events.append(event)
    return session


class SessionStore:
    """Holds live sessions, serializes per-session mutations, persists logs.

    One append-only ``{session_id}.ndjson`` file per session under
    ``data_dir``; unknown ids are looked up on disk and replayed, so the
    store survives process restarts.
    """

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _log_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.ndjson"

    def _persister(self, session_id: str):
        path = self._log_path(session_id)

        def persist(event: dict) -> None:
            with open(path, "a", encoding="utf-8") as fh:
                fh.write(canonical_json(event))

        return persist

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def create(self, roster, spec, evolve_config=None, bandit_params=None, max_arms: int = 8) -> Session:
        session_id = uuid.uuid4().hex
        session = create_session(
            roster,
            spec,
            evolve_config,
            bandit_params,
            max_arms,
            session_id=session_id,
            on_event=self._persister(session_id),
        )
        with self._registry_lock:
            self._sessions[session_id] = session
            self._locks.setdefault(session_id, threading.Lock())
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is not None:
            return session
        path = self._log_path(session_id)
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        events = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line]
        try:
            session = replay(session_id, events)
        except TeamForgeError as exc:
            raise MalformedDocument(f"session log {session_id!r} is corrupt: {exc.message}") from None
        session.on_event = self._persister(session_id)
        with self._registry_lock:
            self._sessions.setdefault(session_id, session)
            self._locks.setdefault(session_id, threading.Lock())
        return self._sessions[session_id]

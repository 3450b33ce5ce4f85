"""teamforge: evolve Pareto-optimal candidate teams from a roster, then narrow
them to a single recommendation through an interactive preference loop.

Stage 1 evolves a non-dominated archive of teams scored on expertise
diversity, familiarity cohesion, and project-requirement coverage. Stage 2
presents slates of archived teams, learns from each selection with a
confidence-bound index, and stops with one recommended team.
"""

from .bandit import (
    SKIP,
    Arm,
    BanditParams,
    BanditState,
    next_presentation,
    recommend,
    record_choice,
    run_session,
    select_arms,
    stopping_check,
    ucb_index,
)
from .errors import TeamForgeError
from .model import (
    EvaluatedTeam,
    FamiliarityGraph,
    Member,
    ObjectiveVector,
    ProjectSpec,
    Roster,
    Team,
    canonicalize,
)
from .nsga2 import (
    EvolveConfig,
    ParetoArchive,
    crossover,
    crowding_distances,
    evolve,
    exhaustive_front,
    fast_non_dominated_sort,
    mutate,
)
from .objectives import ObjectiveContext, cohesion, coverage, diversity, dominates, evaluate
from .serde import parse_roster, parse_spec, read_archive, write_archive
from .session import Session, SessionStore, create_session, replay
from .simuser import SimulatedUser

__version__ = "0.1.0"

__all__ = [
    "SKIP",
    "Arm",
    "BanditParams",
    "BanditState",
    "EvaluatedTeam",
    "EvolveConfig",
    "FamiliarityGraph",
    "Member",
    "ObjectiveContext",
    "ObjectiveVector",
    "ParetoArchive",
    "ProjectSpec",
    "Roster",
    "Session",
    "SessionStore",
    "SimulatedUser",
    "Team",
    "TeamForgeError",
    "canonicalize",
    "cohesion",
    "coverage",
    "create_session",
    "crossover",
    "crowding_distances",
    "diversity",
    "dominates",
    "evaluate",
    "evolve",
    "exhaustive_front",
    "fast_non_dominated_sort",
    "mutate",
    "next_presentation",
    "parse_roster",
    "parse_spec",
    "read_archive",
    "recommend",
    "record_choice",
    "replay",
    "run_session",
    "select_arms",
    "stopping_check",
    "ucb_index",
    "write_archive",
]

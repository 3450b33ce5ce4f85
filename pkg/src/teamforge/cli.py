"""Command-line surface: evolve, simulate, recommend, serve, oracle.

Exit codes: 0 success, 1 validation error (bad flags or bad input files),
2 internal error. Randomness is a single numpy PCG64 stream per run, seeded
from --seed (evolution) or --user-seed + trial index (simulation); the draw
discipline is documented in the module that consumes each stream.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import click

from .bandit import (
    SKIP,
    BanditParams,
    BanditState,
    next_presentation,
    recommend as bandit_recommend,
    record_choice,
    run_session,
    select_arms,
)
from .errors import InvalidConfig, TeamForgeError
from .nsga2 import EvolveConfig, evolve, exhaustive_front
from .serde import (
    ArchiveFile,
    canonical_json,
    parse_roster,
    parse_spec,
    read_archive,
    roster_hash,
    spec_hash,
    write_archive,
)
from .simuser import SimulatedUser


def _read_file(path: str, what: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InvalidConfig(f"cannot read {what} file {path!r}: {exc}") from None


def _parse_weights(raw: str) -> tuple[float, float, float]:
    parts = raw.split(",")
    if len(parts) != 3:
        raise InvalidConfig(f"--user-weights needs three comma-separated values, got {raw!r}", field="user-weights")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise InvalidConfig(f"--user-weights values must be numbers, got {raw!r}", field="user-weights") from None


def _parse_mutation(raw: str) -> float | None:
    if raw == "auto":
        return None
    try:
        return float(raw)
    except ValueError:
        raise InvalidConfig(f"--mut must be 'auto' or a number, got {raw!r}", field="mut") from None


@click.group()
def cli():
    """Evolve candidate teams and narrow them to one through preference feedback."""


@cli.command("evolve")
@click.option("--roster", "roster_path", required=True, help="Roster JSON file.")
@click.option("--spec", "spec_path", required=True, help="Project spec JSON file.")
@click.option("--seed", required=True, type=int, help="64-bit evolution seed.")
@click.option("--pop", default=64, show_default=True, type=int, help="Population size (even).")
@click.option("--gens", default=100, show_default=True, type=int, help="Generations.")
@click.option("--cx", default=0.9, show_default=True, type=float, help="Crossover probability.")
@click.option("--mut", default="auto", show_default=True, help="Per-slot mutation rate, or 'auto' for 1/k.")
@click.option("--out", "out_path", required=True, help="Archive JSON output path.")
def evolve_command(roster_path, spec_path, seed, pop, gens, cx, mut, out_path):
    """Evolve the non-dominated team archive for a roster and project spec."""
    roster = parse_roster(_read_file(roster_path, "roster"))
    spec = parse_spec(_read_file(spec_path, "spec"))
    config = EvolveConfig(
        population_size=pop,
        generations=gens,
        crossover_prob=cx,
        mutation_rate=_parse_mutation(mut),
        rng_seed=seed,
    )
    archive = evolve(roster, spec, config)
    payload = write_archive(
        ArchiveFile(roster_hash=roster_hash(roster), spec_hash=spec_hash(spec), seed=seed, archive=archive)
    )
    Path(out_path).write_text(payload, encoding="utf-8")
    click.echo(f"wrote {len(archive)} non-dominated teams to {out_path}")


@cli.command("simulate")
@click.option("--archive", "archive_path", required=True, help="Archive JSON from 'evolve' or 'oracle'.")
@click.option("--user-weights", required=True, help="Three comma-separated objective weights summing to 1.")
@click.option("--tau", default=0.0, show_default=True, type=float, help="Softmax temperature (0 = deterministic).")
@click.option("--user-seed", default=0, show_default=True, type=int, help="Base seed; trial t uses user-seed + t.")
@click.option("--max-arms", default=8, show_default=True, type=int)
@click.option("--slate", default=3, show_default=True, type=int)
@click.option("--budget", default=500, show_default=True, type=int)
@click.option("--trials", default=1, show_default=True, type=int)
@click.option("--true-best", default=None, help="Comma-separated member ids of the known best team.")
@click.option("--out", "out_path", required=True, help="Results JSON output path.")
def simulate_command(archive_path, user_weights, tau, user_seed, max_arms, slate, budget, trials, true_best, out_path):
    """Run simulated elicitation sessions against an archive."""
    archive_file = read_archive(_read_file(archive_path, "archive"))
    arms = select_arms(archive_file.archive, max_arms)
    params = BanditParams(presentation_size=slate, round_budget=budget)
    weights = _parse_weights(user_weights)
    best_ids = tuple(sorted(true_best.split(","))) if true_best else None

    rows = []
    identified = 0
    for trial in range(trials):
        user = SimulatedUser(weights=weights, tau=tau, rng_seed=user_seed + trial)
        state = run_session(arms, params, user.choose)
        rec = bandit_recommend(state)
        total = sum(state.pulls)
        lam = state.params.lam
        count_stop = any(
            t_i >= 1.0 + lam * (total - t_i) for t_i in state.pulls
        )
        row = {
            "trial": trial,
            "user_seed": user_seed + trial,
            "recommended_member_ids": list(rec.team.members),
            "rounds_used": state.rounds,
            "stopped_by": "count" if count_stop else "budget",
        }
        if best_ids is not None:
            row["identified"] = rec.team.members == best_ids
            identified += int(row["identified"])
        rows.append(row)

    result = {"trials": rows}
    if best_ids is not None:
        result["identification_rate"] = identified / trials
    Path(out_path).write_text(canonical_json(result), encoding="utf-8")
    summary = f"{trials} trial(s) complete"
    if best_ids is not None:
        summary += f", identification rate {identified}/{trials}"
    click.echo(summary)


@cli.command("recommend")
@click.option("--archive", "archive_path", required=True, help="Archive JSON from 'evolve' or 'oracle'.")
@click.option("--max-arms", default=8, show_default=True, type=int)
@click.option("--slate", default=3, show_default=True, type=int)
@click.option("--budget", default=500, show_default=True, type=int)
def recommend_command(archive_path, max_arms, slate, budget):
    """Interactive terminal rounds: pick a team per slate until one is recommended."""
    archive_file = read_archive(_read_file(archive_path, "archive"))
    arms = select_arms(archive_file.archive, max_arms)
    params = BanditParams(presentation_size=slate, round_budget=budget)
    state = BanditState.fresh(arms, params)

    while not state.terminal:
        presented = next_presentation(state)
        click.echo(f"\nRound {state.rounds + 1}")
        for pos, arm in enumerate(presented, start=1):
            obj = arm.evaluated_team.objectives
            members = ", ".join(arm.evaluated_team.team.members)
            click.echo(
                f"  [{pos}] {members}  "
                f"(diversity {obj.diversity:.3f}, cohesion {obj.cohesion:.3f}, coverage {obj.coverage:.3f})"
            )
        raw = click.prompt(f"Choose 1..{len(presented)} or s to skip", type=str).strip().lower()
        if raw == "s":
            state = record_choice(state, presented, SKIP)
            continue
        try:
            pos = int(raw)
        except ValueError:
            click.echo("  not a valid choice, try again")
            continue
        if not 1 <= pos <= len(presented):
            click.echo("  not a valid choice, try again")
            continue
        state = record_choice(state, presented, presented[pos - 1].arm_index)

    rec = bandit_recommend(state)
    obj = rec.objectives
    click.echo(f"\nRecommended team after {state.rounds} round(s): {', '.join(rec.team.members)}")
    click.echo(
        f"  diversity {obj.diversity:.3f}, cohesion {obj.cohesion:.3f}, coverage {obj.coverage:.3f}"
    )


@cli.command("serve")
@click.option("--port", default=8080, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", default=None, help="Session log directory (default $TEAMFORGE_DATA_DIR or ./data).")
def serve_command(port, host, data_dir):
    """Serve the session HTTP API."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(data_dir), host=host, port=port)


@cli.command("oracle")
@click.option("--roster", "roster_path", required=True, help="Roster JSON file.")
@click.option("--spec", "spec_path", required=True, help="Project spec JSON file.")
@click.option("--out", "out_path", required=True, help="True-front JSON output path.")
def oracle_command(roster_path, spec_path, out_path):
    """Exhaustive true Pareto front for small rosters (refuses above 200000 candidates)."""
    roster = parse_roster(_read_file(roster_path, "roster"))
    spec = parse_spec(_read_file(spec_path, "spec"))
    candidates = math.comb(len(roster.members), spec.team_size)
    if candidates > 200000:
        raise InvalidConfig(
            f"{candidates} candidate teams exceed the exhaustive limit of 200000", field="team_size"
        )
    front = exhaustive_front(roster, spec)
    payload = write_archive(
        ArchiveFile(roster_hash=roster_hash(roster), spec_hash=spec_hash(spec), seed=0, archive=front)
    )
    Path(out_path).write_text(payload, encoding="utf-8")
    click.echo(f"wrote the true front of {len(front)} teams to {out_path}")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        return 1
    except click.UsageError as exc:
        exc.show()
        return 1
    except TeamForgeError as exc:
        location = f" ({exc.field})" if exc.field else ""
        click.echo(f"error[{exc.code}]{location}: {exc.message}", err=True)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        click.echo(f"internal error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

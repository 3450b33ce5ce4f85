# Stage 1: evolve the pool of non-dominated teams.
#
# Generates a 16-member roster, evolves a Pareto archive of candidate teams,
# checks it against the exhaustively computed true front (feasible at this
# size), and writes the archive to disk in the same format the CLI uses.

import pathlib

import numpy as np

from teamforge import (
    EvolveConfig,
    FamiliarityGraph,
    Member,
    ProjectSpec,
    Roster,
    evolve,
    exhaustive_front,
)
from teamforge.serde import ArchiveFile, roster_hash, spec_hash, write_archive

rng = np.random.default_rng(2024)
disciplines = ["hci", "med", "ml", "stat", "design"]

members = []
for i in range(16):
    primary = disciplines[i % len(disciplines)]
    expertise = {primary: round(0.6 + 0.4 * rng.random(), 3)}
    for d in disciplines:
        if d != primary and rng.random() < 0.35:
            expertise[d] = round(0.2 + 0.5 * rng.random(), 3)
    members.append(Member(id=f"p{i:02d}", display_name=f"Person {i}", expertise=expertise))

ids = [m.id for m in members]
edges = []
for i in range(16):
    for j in range(i + 1, 16):
        if rng.random() < 0.25:
            edges.append((ids[i], ids[j], round(float(rng.random()), 3)))

roster = Roster(members=tuple(members), familiarity=FamiliarityGraph.from_edge_list(edges))
spec = ProjectSpec(team_size=5, required=(("hci", 0.6), ("med", 0.6)))
print(f"roster: {len(roster.members)} members, {len(edges)} familiarity edges")
print(f"project: teams of {spec.team_size}, requirements {spec.required}")

config = EvolveConfig(population_size=64, generations=80, rng_seed=7)
trace = []
archive = evolve(roster, spec, config, on_generation=lambda g, pop: trace.append(
    max(e.objectives.diversity for e in pop)
))
print(f"\nevolved archive: {len(archive)} non-dominated teams "
      f"(best diversity went {trace[0]:.3f} -> {trace[-1]:.3f} over {len(trace)} generations)")

for entry in list(archive)[:6]:
    vec = entry.objectives
    print(f"  {'+'.join(entry.team.members):<28} "
          f"d={vec.diversity:.3f} c={vec.cohesion:.3f} v={vec.coverage:.3f}")
if len(archive) > 6:
    print(f"  ... and {len(archive) - 6} more")

# C(16,5) = 4368 teams is small enough to enumerate: how close did we get?
truth = exhaustive_front(roster, spec)
archive_teams = {e.team.members for e in archive}
truth_teams = {e.team.members for e in truth}
print(f"\ntrue front has {len(truth_teams)} teams")
print(f"archive covers {len(archive_teams & truth_teams)} of them "
      f"({100 * len(archive_teams & truth_teams) / len(truth_teams):.0f}%)")
print(f"archive entries outside the true front: {len(archive_teams - truth_teams)}")

out = pathlib.Path(__file__).parent / "demo_archive.json"
out.write_text(
    write_archive(
        ArchiveFile(
            roster_hash=roster_hash(roster),
            spec_hash=spec_hash(spec),
            seed=config.rng_seed,
            archive=archive,
        )
    )
)
print(f"\narchive written to {out.name} (same schema as `teamforge evolve --out`)")

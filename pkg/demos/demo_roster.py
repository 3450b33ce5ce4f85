# Shared roster builder for the demo scripts.

import numpy as np

from teamforge import FamiliarityGraph, Member, ProjectSpec, Roster

DISCIPLINES = ["hci", "med", "ml", "stat"]


def build_roster_and_spec(n_members: int = 12, team_size: int = 4, seed: int = 11):
    rng = np.random.default_rng(seed)
    members = []
    for i in range(n_members):
        primary = DISCIPLINES[i % len(DISCIPLINES)]
        expertise = {primary: round(0.6 + 0.4 * rng.random(), 3)}
        for d in DISCIPLINES:
            if d != primary and rng.random() < 0.3:
                expertise[d] = round(0.2 + 0.5 * rng.random(), 3)
        members.append(Member(id=f"m{i:02d}", display_name=f"Member {i}", expertise=expertise))
    ids = [m.id for m in members]
    edges = []
    for i in range(n_members):
        for j in range(i + 1, n_members):
            if rng.random() < 0.5:
                edges.append((ids[i], ids[j], round(float(rng.random()), 3)))
    roster = Roster(members=tuple(members), familiarity=FamiliarityGraph.from_edge_list(edges))
    spec = ProjectSpec(team_size=team_size, required=(("hci", 0.7), ("ml", 0.7)))
    return roster, spec

# What makes one team better than another?
#
# Builds a six-person roster by hand, scores a few candidate teams on the
# three objectives (expertise diversity, familiarity cohesion, requirement
# coverage), and shows how Pareto dominance compares score vectors.

import itertools

from teamforge import (
    FamiliarityGraph,
    Member,
    ObjectiveContext,
    ProjectSpec,
    Roster,
    canonicalize,
    dominates,
    evaluate,
)

roster = Roster(
    members=(
        Member(id="ana", display_name="Ana", organization="clinic", expertise={"hci": 1.0}),
        Member(id="bo", display_name="Bo", organization="lab", expertise={"med": 1.0}),
        Member(id="cy", display_name="Cy", organization="lab", expertise={"ml": 1.0}),
        Member(id="di", display_name="Di", organization="uni", expertise={"hci": 0.6, "ml": 0.6}),
        Member(id="ed", display_name="Ed", organization="uni", expertise={"med": 0.7}),
        Member(id="fi", display_name="Fi", organization="clinic", expertise={"hci": 0.9, "med": 0.2}),
    ),
    familiarity=FamiliarityGraph.from_edge_list(
        [
            ("ana", "bo", 0.9),  # long-time collaborators
            ("cy", "di", 0.8),
            ("ana", "fi", 0.7),
            ("bo", "ed", 0.6),
            ("di", "fi", 0.3),
        ]
    ),
)

# The project wants a team of three with at least one solid HCI person.
spec = ProjectSpec(team_size=3, required=(("hci", 0.5),))
ctx = ObjectiveContext(roster, spec)

print("All C(6,3) = 20 candidate teams, scored:\n")
scored = []
for ids in itertools.combinations(sorted(m.id for m in roster.members), 3):
    team = canonicalize(ids, roster, 3)
    vec = evaluate(team, ctx)
    scored.append((team, vec))
    print(f"  {'+'.join(team.members):<12}  diversity={vec.diversity:.3f}  "
          f"cohesion={vec.cohesion:.3f}  coverage={vec.coverage:.3f}")

# A team is Pareto-optimal when nobody beats it on every objective at once.
optimal = [
    (team, vec)
    for team, vec in scored
    if not any(dominates(other, vec) for _, other in scored)
]
print(f"\n{len(optimal)} team(s) are non-dominated:")
for team, vec in optimal:
    print(f"  {'+'.join(team.members):<12}  {tuple(round(x, 3) for x in vec.as_tuple())}")

# Dominance in isolation:
best = optimal[0][1]
worst = min(scored, key=lambda pair: sum(pair[1].as_tuple()))[1]
print(f"\nbest dominates worst? {dominates(best, worst)}")
print(f"worst dominates best? {dominates(worst, best)}")

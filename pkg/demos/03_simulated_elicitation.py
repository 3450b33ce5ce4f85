# Stage 2: narrow the archive to one team through simulated feedback.
#
# Loads the archive produced by demo 02 (run that first), selects a browsable
# arm set, and lets simulated users with different hidden preferences drive
# the elicitation loop. Shows how the slate presentation shifts toward each
# user's favourite and how often the loop identifies it.

import pathlib
import sys

from teamforge import BanditParams, SimulatedUser, recommend, run_session, select_arms
from teamforge.serde import read_archive

archive_path = pathlib.Path(__file__).parent / "demo_archive.json"
if not archive_path.exists():
    sys.exit("run demos/02_evolve_archive.py first to produce demo_archive.json")

archive = read_archive(archive_path.read_bytes()).archive
arms = select_arms(archive, max_arms=8)
print(f"{len(archive)} archived teams reduced to {len(arms)} arms:\n")
for arm in arms:
    vec = arm.evaluated_team.objectives
    print(f"  arm {arm.arm_index}: {'+'.join(arm.evaluated_team.team.members):<28} "
          f"d={vec.diversity:.3f} c={vec.cohesion:.3f} v={vec.coverage:.3f}")

params = BanditParams(presentation_size=3, round_budget=500)

personas = {
    "diversity-first": (0.8, 0.1, 0.1),
    "cohesion-first": (0.1, 0.8, 0.1),
    "balanced": (1 / 3, 1 / 3, 1 / 3),
}

print("\n-- deterministic users (tau = 0) --")
for name, weights in personas.items():
    user = SimulatedUser(weights=weights, tau=0.0, rng_seed=1)
    utilities = [user.utility(a.evaluated_team) for a in arms]
    target = utilities.index(max(utilities))
    state = run_session(arms, params, user.choose)
    team = recommend(state)
    hit = "correct" if state.recommended == target else "WRONG"
    print(f"  {name:<16} -> arm {state.recommended} {'+'.join(team.team.members)} "
          f"after {state.rounds} rounds ({hit})")

print("\n-- noisy user (tau = 0.1), 50 sessions --")
weights = personas["balanced"]
probe = SimulatedUser(weights=weights, tau=0.0, rng_seed=0)
utilities = [probe.utility(a.evaluated_team) for a in arms]
target = utilities.index(max(utilities))
ranked = sorted(utilities, reverse=True)
gap = ranked[0] - ranked[1]
hits = 0
rounds_used = []
for seed in range(1, 51):
    user = SimulatedUser(weights=weights, tau=0.1, rng_seed=seed)
    state = run_session(arms, params, user.choose)
    hits += int(state.recommended == target)
    rounds_used.append(state.rounds)
print(f"  top-two utility gap is only {gap:.4f}, so noise at tau=0.1 genuinely "
      f"blurs the choice:")
print(f"  identified the exact best arm in {hits}/50 sessions "
      f"(mean rounds {sum(rounds_used) / len(rounds_used):.0f})")
near_best = [i for i, u in enumerate(utilities) if ranked[0] - u <= 2 * gap]
print(f"  arms within twice the gap of the best: {near_best} -- any of these is "
      f"a near-optimal recommendation")

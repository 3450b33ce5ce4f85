# Sessions are append-only event logs: everything replays.
#
# Drives a full session (create -> evolve -> rounds -> recommendation)
# through the same session layer the HTTP service uses, prints the resulting
# event log, then rebuilds the session from the log alone and confirms the
# states match. The HTTP equivalents of each step are shown alongside.

import json
import tempfile

from teamforge import BanditParams, EvolveConfig, SimulatedUser
from teamforge.session import RECOMMENDED, SessionStore, replay
from demo_roster import build_roster_and_spec  # shared with this directory

roster, spec = build_roster_and_spec()

with tempfile.TemporaryDirectory() as data_dir:
    store = SessionStore(data_dir)

    # POST /sessions {roster, spec, evolve_config, bandit_params}
    session = store.create(
        roster,
        spec,
        EvolveConfig(population_size=32, generations=20, rng_seed=5),
        BanditParams(presentation_size=3, round_budget=40),
    )
    print(f"created session {session.session_id[:12]}... (phase={session.phase})")

    # POST /sessions/{id}/evolve
    summary = session.run_evolution()
    print(f"evolved: archive={summary['archive_size']} arms={summary['arm_count']}")

    # GET /round + POST /choice, driven by a simulated user
    user = SimulatedUser(weights=(0.5, 0.3, 0.2), tau=0.05, rng_seed=3)
    while session.phase != RECOMMENDED:
        round_info = session.get_round()
        teams = [arm.evaluated_team for arm in round_info["arms"]]
        pick = user.choose(teams)
        session.submit_choice(round_info["nonce"], round_info["arms"][pick].arm_index)

    # GET /sessions/{id}/recommendation
    rec = session.get_recommendation()
    print(f"recommended {'+'.join(rec['team'].team.members)} after {rec['rounds_used']} rounds\n")

    log_path = f"{data_dir}/{session.session_id}.ndjson"
    events = [json.loads(line) for line in open(log_path, encoding="utf-8")]
    print(f"event log ({len(events)} events):")
    for event in events[:6]:
        data_keys = ",".join(event["data"]) or "-"
        print(f"  #{event['seq']:<3} {event['type']:<20} data[{data_keys}]")
    if len(events) > 6:
        print(f"  ... {len(events) - 6} more choice events")

    twin = replay(session.session_id, events)
    print("\nreplaying the log reconstructs the identical session:")
    print(f"  phase equal:          {twin.phase == session.phase}")
    print(f"  bandit state equal:   {twin.bandit == session.bandit}")
    print(f"  recommendation equal: {twin.recommendation == session.recommendation}")

print("\nthe HTTP service exposes exactly this flow; start it with:")
print("  teamforge serve --port 8080 --data-dir ./data")

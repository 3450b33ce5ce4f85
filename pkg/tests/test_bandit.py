import math

import pytest

from teamforge.bandit import (
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
from teamforge.errors import (
    ChoiceNotPresented,
    EmptyArchive,
    InvalidConfig,
    SessionNotTerminal,
    SessionTerminal,
)
from teamforge.model import EvaluatedTeam, ObjectiveVector, Team
from teamforge.nsga2 import ParetoArchive


def _ev(vec, *members) -> EvaluatedTeam:
    return EvaluatedTeam(team=Team(members=tuple(members)), objectives=ObjectiveVector(*vec))


def _arms(*vecs) -> list[Arm]:
    return [
        Arm(arm_index=i, evaluated_team=_ev(v, f"a{i}", f"b{i}"))
        for i, v in enumerate(vecs)
    ]


# -- params ----------------------------------------------------------------------


def test_params_validation():
    with pytest.raises(InvalidConfig):
        BanditParams(epsilon=-0.1)
    with pytest.raises(InvalidConfig):
        BanditParams(beta=0.0)
    with pytest.raises(InvalidConfig):
        BanditParams(delta=1.0)
    with pytest.raises(InvalidConfig):
        BanditParams(presentation_size=0)
    with pytest.raises(InvalidConfig):
        BanditParams(round_budget=0)


def test_params_lam_default_resolves_from_arm_count():
    params = BanditParams().resolved(arm_count=8)
    assert params.lam == pytest.approx(1.0 + 10.0 / 8)
    pinned = BanditParams(lam=2.0).resolved(arm_count=8)
    assert pinned.lam == 2.0


def test_params_slate_clamped_to_arm_count():
    params = BanditParams(presentation_size=3).resolved(arm_count=2)
    assert params.presentation_size == 2


# -- arm selection -----------------------------------------------------------------


def test_select_arms_passthrough_canonical_order():
    # Mutually non-dominated entries, deliberately added out of order.
    entries = sorted(
        [
            _ev((1.0, 0.0, 0.0), "m1", "m2"),
            _ev((0.0, 1.0, 0.0), "m0", "m9"),
            _ev((0.0, 0.0, 1.0), "m4", "m5"),
            _ev((0.6, 0.6, 0.1), "m3", "m8"),
            _ev((0.1, 0.6, 0.6), "m6", "m7"),
        ],
        key=lambda e: e.team.members,
    )
    archive = ParetoArchive(entries=tuple(entries))
    arms = select_arms(archive, max_arms=8)
    assert len(arms) == 5
    assert [a.arm_index for a in arms] == [0, 1, 2, 3, 4]
    teams = [a.evaluated_team.team.members for a in arms]
    assert teams == sorted(teams)


def _greedy_archive() -> ParetoArchive:
    # Mutually non-dominated: the two interior points trade their third
    # component against the rest.
    entries = sorted(
        [
            _ev((1.0, 0.0, 0.0), "m1", "m2"),
            _ev((0.0, 1.0, 0.0), "m3", "m4"),
            _ev((0.0, 0.0, 1.0), "m5", "m6"),
            _ev((0.5, 0.5, 0.0), "m7", "m8"),
            _ev((0.45, 0.45, 0.2), "m0", "m9"),
        ],
        key=lambda e: e.team.members,
    )
    return ParetoArchive(entries=tuple(entries))


def test_select_arms_seeds_objective_maximizers():
    arms = select_arms(_greedy_archive(), max_arms=3)
    chosen = {a.evaluated_team.objectives.as_tuple() for a in arms}
    assert (1.0, 0.0, 0.0) in chosen
    assert (0.0, 1.0, 0.0) in chosen
    assert (0.0, 0.0, 1.0) in chosen


def test_select_arms_greedy_max_min_distance_hand_case():
    arms = select_arms(_greedy_archive(), max_arms=4)
    chosen = {a.evaluated_team.objectives.as_tuple() for a in arms}
    # Hand computation: min distance to the three unit-vector seeds is
    # sqrt(0.5) ~ 0.7071 for (0.5,0.5,0.0) but sqrt(0.545) ~ 0.7382 for
    # (0.45,0.45,0.2), so the greedy max-min step picks the latter.
    assert chosen == {(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (0.45, 0.45, 0.2)}


def test_select_arms_empty_archive_rejected():
    with pytest.raises(EmptyArchive):
        select_arms(ParetoArchive(entries=()), max_arms=4)


# -- index -------------------------------------------------------------------------


def test_ucb_unpulled_is_infinite():
    assert ucb_index(0, 0, BanditParams()) == math.inf


def test_ucb_numeric_hand_case():
    # Independent evaluation of the defaults at one pull, no wins.
    params = BanditParams()
    expected = 1.5 * math.sqrt(0.5 * math.log(math.log(3.0) / 0.1))
    got = ucb_index(1, 0, params)
    assert got == pytest.approx(expected, abs=1e-12)
    assert got == pytest.approx(1.6421, abs=1e-3)


def test_ucb_all_wins_decreases_toward_one():
    params = BanditParams()
    previous = math.inf
    for pulls in (1, 2, 5, 20, 100, 10_000, 1_000_000):
        value = ucb_index(pulls, pulls, params)
        assert value < previous
        assert value > 1.0
        previous = value
    assert previous == pytest.approx(1.0, abs=0.01)


def test_ucb_monotonicity():
    params = BanditParams()
    # Fixed wins, more pulls: strictly decreasing.
    for wins in (0, 1):
        values = [ucb_index(pulls, wins, params) for pulls in range(max(1, wins), 40)]
        assert all(a > b for a, b in zip(values, values[1:]))
    # Fixed pulls, more wins: strictly increasing.
    values = [ucb_index(10, wins, params) for wins in range(0, 11)]
    assert all(a < b for a, b in zip(values, values[1:]))


# -- presentation --------------------------------------------------------------------


def _fresh_state(n_arms=4, **params) -> BanditState:
    vecs = [(0.1 * i, 0.5, 0.5) for i in range(n_arms)]
    return BanditState.fresh(_arms(*vecs), BanditParams(**params))


def test_first_presentation_is_lowest_indices():
    state = _fresh_state(5, presentation_size=3)
    assert [a.arm_index for a in next_presentation(state)] == [0, 1, 2]


def test_unpulled_arm_always_presented():
    state = _fresh_state(4, presentation_size=2)
    # Pull arms 0..2 heavily, leave arm 3 untouched.
    state = BanditState(
        arms=state.arms, params=state.params,
        pulls=(9, 9, 9, 0), wins=(9, 5, 1, 0), rounds=9,
    )
    assert 3 in [a.arm_index for a in next_presentation(state)]


def test_presentation_is_top_by_index_value():
    state = _fresh_state(4, presentation_size=2)
    state = BanditState(
        arms=state.arms, params=state.params,
        pulls=(20, 4, 7, 40), wins=(2, 3, 4, 4), rounds=40,
    )
    params = state.params
    indices = [ucb_index(state.pulls[i], state.wins[i], params) for i in range(4)]
    expected = sorted(range(4), key=lambda i: (-indices[i], state.pulls[i], i))[:2]
    assert [a.arm_index for a in next_presentation(state)] == expected


def test_presentation_rejected_when_terminal():
    state = _fresh_state(3)
    state = BanditState(
        arms=state.arms, params=state.params,
        pulls=(1, 1, 1), wins=(1, 0, 0), rounds=3, terminal=True, recommended=0,
    )
    with pytest.raises(SessionTerminal):
        next_presentation(state)


# -- feedback ------------------------------------------------------------------------


def test_record_choice_updates_counts():
    state = _fresh_state(4, presentation_size=3)
    slate = next_presentation(state)
    updated = record_choice(state, slate, choice=1)
    assert updated.pulls == (1, 1, 1, 0)
    assert updated.wins == (0, 1, 0, 0)
    assert updated.rounds == 1


def test_record_choice_skip_rewards_nobody():
    state = _fresh_state(4, presentation_size=3)
    slate = next_presentation(state)
    updated = record_choice(state, slate, SKIP)
    assert updated.pulls == (1, 1, 1, 0)
    assert updated.wins == (0, 0, 0, 0)


def test_record_choice_rejects_unpresented_arm():
    state = _fresh_state(4, presentation_size=2)
    slate = next_presentation(state)
    with pytest.raises(ChoiceNotPresented):
        record_choice(state, slate, choice=3)


def test_record_choice_rejects_terminal_state():
    state = _fresh_state(3)
    state = BanditState(
        arms=state.arms, params=state.params,
        pulls=(1, 1, 1), wins=(1, 0, 0), rounds=3, terminal=True, recommended=0,
    )
    with pytest.raises(SessionTerminal):
        record_choice(state, [state.arms[0]], choice=0)


# -- stopping ---------------------------------------------------------------------------


def test_stopping_count_condition_hand_case():
    # Three arms, lam = 1 + 10/3: pulls (14, 2, 1) reach 14 >= 1 + (13/3)*3.
    state = _fresh_state(3, presentation_size=1)
    state = BanditState(
        arms=state.arms, params=state.params.resolved(3),
        pulls=(14, 2, 1), wins=(10, 1, 0), rounds=17,
    )
    assert state.params.lam == pytest.approx(1 + 10 / 3)
    assert stopping_check(state) == 0


def test_stopping_no_fire_on_uniform_single_pulls():
    state = _fresh_state(3, presentation_size=1)
    state = BanditState(
        arms=state.arms, params=state.params.resolved(3),
        pulls=(1, 1, 1), wins=(1, 0, 0), rounds=3,
    )
    assert stopping_check(state) is None


def test_stopping_budget_breaks_mean_ties_by_pulls():
    state = _fresh_state(3, presentation_size=1, round_budget=19)
    state = BanditState(
        arms=state.arms, params=state.params.resolved(3),
        pulls=(5, 10, 4), wins=(1, 6, 2), rounds=19,  # means 0.2, 0.6, 0.5
    )
    assert stopping_check(state) == 1
    tied = BanditState(
        arms=state.arms, params=state.params,
        pulls=(5, 10, 5), wins=(3, 6, 3), rounds=19,  # means 0.6, 0.6, 0.6
    )
    assert stopping_check(tied) == 1  # tie broken by more pulls


def test_recommend_requires_terminal():
    state = _fresh_state(3)
    with pytest.raises(SessionNotTerminal):
        recommend(state)


def test_count_stop_reached_by_driving_one_arm():
    # Slate of one and a small lam: repeatedly choosing the same arm must
    # trigger the count-based stop, which recommends that arm.
    arms = _arms((0.9, 0.9, 0.9), (0.1, 0.1, 0.1), (0.2, 0.2, 0.2))
    params = BanditParams(presentation_size=1, lam=3.0, round_budget=1000)
    state = BanditState.fresh(arms, params)
    while not state.terminal:
        slate = next_presentation(state)
        choice = slate[0].arm_index if slate[0].arm_index == 0 else SKIP
        state = record_choice(state, slate, choice)
    assert state.recommended == 0
    assert state.rounds < 1000  # stopped by count, not budget
    assert state.pulls[0] >= 1 + 3.0 * (sum(state.pulls) - state.pulls[0])


def test_conservation_of_pulls_and_wins():
    state = _fresh_state(5, presentation_size=2, round_budget=40)
    choices = 0
    while not state.terminal:
        slate = next_presentation(state)
        if state.rounds % 3 == 2:
            state = record_choice(state, slate, SKIP)
        else:
            state = record_choice(state, slate, slate[0].arm_index)
            choices += 1
        assert sum(state.pulls) == 2 * state.rounds
        assert sum(state.wins) == choices


def test_run_session_reaches_recommendation():
    arms = _arms((0.9, 0.8, 0.9), (0.2, 0.3, 0.1), (0.5, 0.4, 0.6), (0.3, 0.9, 0.2))
    params = BanditParams(presentation_size=2, round_budget=30)
    state = run_session(arms, params, lambda teams: 0)
    assert state.terminal
    assert state.recommended is not None


def test_elimination_best_arm_dominates_presentations():
    # Deterministic user: after 10*A rounds the true-best arm must have been
    # presented strictly more often than any other arm.
    vecs = [(0.9, 0.9, 0.9), (0.7, 0.6, 0.5), (0.4, 0.8, 0.3), (0.5, 0.5, 0.9),
            (0.3, 0.4, 0.6), (0.8, 0.3, 0.4), (0.2, 0.7, 0.7), (0.6, 0.2, 0.8)]
    arms = _arms(*vecs)
    best = max(range(len(vecs)), key=lambda i: sum(vecs[i]))
    params = BanditParams(presentation_size=3, round_budget=10 * len(arms))
    state = BanditState.fresh(arms, params)
    while not state.terminal:
        slate = next_presentation(state)
        utilities = [sum(a.evaluated_team.objectives.as_tuple()) for a in slate]
        state = record_choice(state, slate, slate[utilities.index(max(utilities))].arm_index)
    assert state.rounds == 10 * len(arms)
    top_pulls = state.pulls[best]
    assert all(top_pulls > p for i, p in enumerate(state.pulls) if i != best)
    # never-chosen arms keep an empirical mean of zero
    for i in range(len(arms)):
        if state.wins[i] == 0 and state.pulls[i] > 0:
            assert state.mean(i) == 0.0

import numpy as np
import pytest

from teamforge.model import FamiliarityGraph, Member, ProjectSpec, Roster

# The starlette build in this environment warns about its httpx-based test
# client; the warning is informational and the client works.
collect_ignore_glob: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("filterwarnings", "ignore::DeprecationWarning")


DISCIPLINES = ("hci", "med", "ml", "stat")


def build_acceptance_fixture() -> tuple[Roster, ProjectSpec]:
    """The n=12, k=4 roster used by the acceptance suite.

    Generated deterministically: each member has one strong primary
    discipline and a sparse scattering of secondary skills, and the
    familiarity graph is a moderately dense random weighted graph. The
    resulting landscape has a 15-team true Pareto front out of C(12,4)=495
    candidates.
    """
    rng = np.random.Generator(np.random.PCG64(11))
    members = []
    for i in range(12):
        primary = DISCIPLINES[i % 4]
        expertise = {primary: round(0.6 + 0.4 * float(rng.random()), 3)}
        for d in DISCIPLINES:
            if d != primary and rng.random() < 0.3:
                expertise[d] = round(0.2 + 0.5 * float(rng.random()), 3)
        members.append(
            Member(id=f"m{i:02d}", display_name=f"Member {i}", organization=f"org{i % 3}", expertise=expertise)
        )
    ids = [m.id for m in members]
    edges = []
    for i in range(12):
        for j in range(i + 1, 12):
            if rng.random() < 0.5:
                edges.append((ids[i], ids[j], round(float(rng.random()), 3)))
    roster = Roster(members=tuple(members), familiarity=FamiliarityGraph.from_edge_list(edges))
    spec = ProjectSpec(team_size=4, required=(("hci", 0.7), ("ml", 0.7)))
    return roster, spec


@pytest.fixture(scope="session")
def acceptance_fixture():
    return build_acceptance_fixture()


@pytest.fixture
def trio_roster():
    """Six members whose k=3, hci>=0.5 front has exactly three teams."""
    roster = Roster(
        members=(
            Member(id="m1", display_name="Ana", expertise={"hci": 1.0}),
            Member(id="m2", display_name="Bo", expertise={"med": 1.0}),
            Member(id="m3", display_name="Cy", expertise={"ml": 1.0}),
            Member(id="m4", display_name="Di", expertise={"hci": 0.6, "ml": 0.6}),
            Member(id="m5", display_name="Ed", expertise={"med": 0.7}),
            Member(id="m6", display_name="Fi", expertise={"hci": 0.9, "med": 0.2}),
        ),
        familiarity=FamiliarityGraph.from_edge_list(
            [("m1", "m2", 0.9), ("m3", "m4", 0.8), ("m1", "m6", 0.7), ("m2", "m5", 0.6), ("m4", "m6", 0.3)]
        ),
    )
    return roster, ProjectSpec(team_size=3, required=(("hci", 0.5),))


@pytest.fixture
def tiny_roster():
    """Four members, two disciplines, one familiarity edge."""
    return Roster(
        members=(
            Member(id="m1", display_name="Ada", organization="u1", expertise={"hci": 1.0}),
            Member(id="m2", display_name="Ben", organization="u1", expertise={"hci": 1.0, "med": 1.0}),
            Member(id="m3", display_name="Cam", organization="u2", expertise={"med": 1.0}),
            Member(id="m4", display_name="Dee", organization="u2", expertise={}),
        ),
        familiarity=FamiliarityGraph.from_edge_list([("m1", "m3", 0.5)]),
    )


def random_roster(rng: np.random.Generator, n_members: int, n_disciplines: int = 4, edge_prob: float = 0.4) -> Roster:
    """Arbitrary valid roster for fuzz-style property loops."""
    tags = [f"d{t}" for t in range(n_disciplines)]
    members = []
    for i in range(n_members):
        expertise = {
            tag: float(rng.random()) for tag in tags if rng.random() < 0.6
        }
        members.append(Member(id=f"m{i:03d}", expertise=expertise))
    ids = [m.id for m in members]
    edges = []
    for i in range(n_members):
        for j in range(i + 1, n_members):
            if rng.random() < edge_prob:
                edges.append((ids[i], ids[j], float(rng.random())))
    return Roster(members=tuple(members), familiarity=FamiliarityGraph.from_edge_list(edges))


# -- acceptance criterion reporting -------------------------------------------

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def record_criterion(name: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((name, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"{status}: {name}{suffix}")

"""HTTP surface for sessions: create, evolve, rounds, choices, recommendation.

Thin JSON layer over ``SessionStore``. All module errors map to structured
bodies ``{error_code, message, field?}`` with 400 for validation problems,
404 for unknown sessions, and 409 for wrong-phase / stale-nonce conflicts.
Mutations on one session are serialized behind its store lock.
"""

from __future__ import annotations

import os

from starlette.applications import Starlette
from starlette.concurrency import run_in_threadpool
from starlette.requests import Request
from starlette.responses import JSONResponse
from starlette.routing import Route

from .bandit import SKIP
from .errors import (
    MalformedDocument,
    SessionNotTerminal,
    SessionTerminal,
    StaleNonce,
    TeamForgeError,
    UnknownSession,
    WrongPhase,
)
from .serde import parse_roster, parse_spec, canonical_json
from .session import (
    SessionStore,
    bandit_params_from_doc,
    evolve_config_from_doc,
)

_CONFLICT_ERRORS = (WrongPhase, StaleNonce, SessionTerminal, SessionNotTerminal)

DEFAULT_DATA_DIR = "./data"
DATA_DIR_ENV = "TEAMFORGE_DATA_DIR"


def _error_response(exc: TeamForgeError) -> JSONResponse:
    if isinstance(exc, UnknownSession):
        status = 404
    elif isinstance(exc, _CONFLICT_ERRORS):
        status = 409
    else:
        status = 400
    body = {"error_code": exc.code, "message": exc.message}
    if exc.field is not None:
        body["field"] = exc.field
    return JSONResponse(body, status_code=status)


async def _read_body(request: Request) -> dict:
    try:
        doc = await request.json()
    except Exception:
        raise MalformedDocument("request body is not valid JSON") from None
    if not isinstance(doc, dict):
        raise MalformedDocument("request body must be a JSON object")
    return doc


def _team_payload(store_session, arm) -> dict:
    ev = arm.evaluated_team
    roster = store_session.roster
    # member_orgs/member_expertise are additive fields for UI cards; the
    # documented core fields stay exactly as specified.
    return {
        "arm_index": arm.arm_index,
        "member_ids": list(ev.team.members),
        "member_names": [roster.member(mid).display_name for mid in ev.team.members],
        "member_orgs": [roster.member(mid).organization for mid in ev.team.members],
        "member_expertise": [sorted(roster.member(mid).expertise) for mid in ev.team.members],
        "objectives": ev.objectives.to_doc(),
    }


def create_app(data_dir: str | None = None) -> Starlette:
    data_dir = data_dir or os.environ.get(DATA_DIR_ENV, DEFAULT_DATA_DIR)
    store = SessionStore(data_dir)

    async def create_session_endpoint(request: Request) -> JSONResponse:
        body = await _read_body(request)
        if "roster" not in body or "spec" not in body:
            raise MalformedDocument("body must contain 'roster' and 'spec'")

        def work():
            roster = parse_roster(canonical_json(body["roster"]))
            spec = parse_spec(canonical_json(body["spec"]))
            evolve_config = evolve_config_from_doc(body.get("evolve_config") or {})
            bandit_doc = dict(body.get("bandit_params") or {})
            max_arms = bandit_doc.pop("max_arms", 8)
            bandit_params = bandit_params_from_doc(bandit_doc)
            return store.create(roster, spec, evolve_config, bandit_params, max_arms)

        session = await run_in_threadpool(work)
        return JSONResponse({"session_id": session.session_id}, status_code=201)

    async def evolve_endpoint(request: Request) -> JSONResponse:
        session_id = request.path_params["session_id"]

        def work():
            session = store.get(session_id)
            with store.lock(session_id):
                return session.run_evolution()

        return JSONResponse(await run_in_threadpool(work))

    async def round_endpoint(request: Request) -> JSONResponse:
        session_id = request.path_params["session_id"]

        def work():
            session = store.get(session_id)
            with store.lock(session_id):
                round_info = session.get_round()
                return {
                    "nonce": round_info["nonce"],
                    "teams": [_team_payload(session, arm) for arm in round_info["arms"]],
                }

        return JSONResponse(await run_in_threadpool(work))

    async def choice_endpoint(request: Request) -> JSONResponse:
        session_id = request.path_params["session_id"]
        body = await _read_body(request)
        if "nonce" not in body or not isinstance(body["nonce"], str):
            raise MalformedDocument("body must contain a string 'nonce'", field="nonce")
        choice = body.get("choice")
        if choice == SKIP:
            parsed_choice = SKIP
        elif isinstance(choice, int) and not isinstance(choice, bool):
            parsed_choice = choice
        else:
            raise MalformedDocument("'choice' must be an arm index or \"skip\"", field="choice")

        def work():
            session = store.get(session_id)
            with store.lock(session_id):
                return session.submit_choice(body["nonce"], parsed_choice)

        return JSONResponse(await run_in_threadpool(work))

    async def recommendation_endpoint(request: Request) -> JSONResponse:
        session_id = request.path_params["session_id"]

        def work():
            session = store.get(session_id)
            with store.lock(session_id):
                result = session.get_recommendation()
                team = result["team"]
                return {
                    "team": {
                        "member_ids": list(team.team.members),
                        "member_names": [
                            session.roster.member(mid).display_name for mid in team.team.members
                        ],
                    },
                    "objectives": team.objectives.to_doc(),
                    "rounds_used": result["rounds_used"],
                    "arms": result["arms"],
                }

        return JSONResponse(await run_in_threadpool(work))

    async def archive_endpoint(request: Request) -> JSONResponse:
        session_id = request.path_params["session_id"]

        def work():
            session = store.get(session_id)
            with store.lock(session_id):
                if session.archive is None:
                    raise WrongPhase("archive not available before evolution")
                return {"entries": session.archive.to_doc()}

        return JSONResponse(await run_in_threadpool(work))

    async def healthz(request: Request) -> JSONResponse:
        return JSONResponse({"status": "ok"})

    async def teamforge_error_handler(request: Request, exc: TeamForgeError) -> JSONResponse:
        return _error_response(exc)

    return Starlette(
        routes=[
            Route("/sessions", create_session_endpoint, methods=["POST"]),
            Route("/sessions/{session_id}/evolve", evolve_endpoint, methods=["POST"]),
            Route("/sessions/{session_id}/round", round_endpoint, methods=["GET"]),
            Route("/sessions/{session_id}/choice", choice_endpoint, methods=["POST"]),
            Route("/sessions/{session_id}/recommendation", recommendation_endpoint, methods=["GET"]),
            Route("/sessions/{session_id}/archive", archive_endpoint, methods=["GET"]),
            Route("/healthz", healthz, methods=["GET"]),
        ],
        exception_handlers={TeamForgeError: teamforge_error_handler},
    )

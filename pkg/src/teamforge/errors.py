"""Exception hierarchy shared by every teamforge module.

Each error exposes a stable ``code`` (its class name) so the CLI and the
HTTP service can report machine-readable diagnostics without string
matching on messages.
"""

from __future__ import annotations


class TeamForgeError(Exception):
    """Base class for all teamforge errors.

    ``field`` optionally names the input element that caused the failure
    (a member id, an edge pair, a JSON path).
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.message = message
        self.field = field

    @property
    def code(self) -> str:
        return type(self).__name__


# -- document / input validation ------------------------------------------

class MalformedDocument(TeamForgeError):
    """Input bytes are not a well-formed document of the expected shape."""


class DuplicateMember(TeamForgeError):
    """A member id occurs more than once."""


class UnknownMember(TeamForgeError):
    """A member id is not present in the roster."""


class WrongSize(TeamForgeError):
    """A team has a different number of members than the project requires."""


class WeightOutOfRange(TeamForgeError):
    """A familiarity edge weight falls outside [0, 1]."""


class ProficiencyOutOfRange(TeamForgeError):
    """An expertise proficiency falls outside [0, 1]."""


class InvalidTeamSize(TeamForgeError):
    """A project's team size is below the minimum of 2."""


class DuplicateDiscipline(TeamForgeError):
    """A project requirement lists the same discipline twice."""


class InvalidTeam(TeamForgeError):
    """A team violates its invariants against the active roster/spec."""


# -- evolution -------------------------------------------------------------

class EmptyPopulation(TeamForgeError):
    """Non-dominated sorting was asked to rank an empty population."""


class EmptyFront(TeamForgeError):
    """Crowding distances were requested for an empty front."""


class SpecTooLarge(TeamForgeError):
    """The requested team size exceeds the roster size."""


class InvalidConfig(TeamForgeError):
    """An evolution or bandit configuration violates its invariants."""


# -- elicitation -----------------------------------------------------------

class EmptyArchive(TeamForgeError):
    """An operation requires a non-empty archive."""


class SessionTerminal(TeamForgeError):
    """The elicitation loop has already stopped."""


class SessionNotTerminal(TeamForgeError):
    """A recommendation was requested before the loop stopped."""


class ChoiceNotPresented(TeamForgeError):
    """A choice referenced an arm outside the presented slate."""


class EmptyPresentation(TeamForgeError):
    """A chooser received an empty slate."""


# -- sessions --------------------------------------------------------------

class ValidationFailed(TeamForgeError):
    """Session creation rejected its inputs; wraps the underlying error."""

    def __init__(self, cause: TeamForgeError):
        super().__init__(cause.message, cause.field)
        self.cause = cause

    @property
    def code(self) -> str:
        # Surface the specific module error, not the wrapper.
        return self.cause.code


class WrongPhase(TeamForgeError):
    """A session operation was invoked outside its allowed phase."""


class StaleNonce(TeamForgeError):
    """A choice was submitted for an outdated presentation."""


class UnknownSession(TeamForgeError):
    """No session exists with the requested id."""

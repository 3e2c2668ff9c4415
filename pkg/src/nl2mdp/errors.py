"""Exception hierarchy shared across the pipeline."""

from __future__ import annotations


class Nl2MdpError(Exception):
    """Base class for all package errors."""


# --- parsing ---------------------------------------------------------------

class NoPayloadFound(Nl2MdpError):
    """Model output contained no parseable payload of the expected kind."""


class MalformedPayload(Nl2MdpError):
    """A payload block was found but its structure is invalid."""


class ShapeSyntaxError(Nl2MdpError):
    """Shape source text violates the shape grammar."""


class NoCodeFound(Nl2MdpError):
    """Coding-stage output contained no extractable source."""


# --- gateway ---------------------------------------------------------------

class MissingSlotInput(Nl2MdpError):
    """A template slot has no artifact in the rendering context."""

    def __init__(self, slot: str):
        self.slot = slot
        super().__init__(f"no artifact supplied for template slot {{{slot}}}")


class TransportError(Nl2MdpError):
    """Backend unreachable after exhausting retries."""


class AuthError(Nl2MdpError):
    """Backend rejected the configured credential."""


class RateLimited(Nl2MdpError):
    """Backend rate limit hit; carries the advised wait."""

    def __init__(self, retry_after: float | None = None):
        self.retry_after = retry_after
        super().__init__(f"rate limited (retry-after={retry_after})")


class ReplayMiss(Nl2MdpError):
    """Replay fixture set has no entry for the requested prompt."""

    def __init__(self, stage: str, digest: str):
        self.stage = stage
        self.digest = digest
        super().__init__(f"no recorded completion for stage={stage} digest={digest}")


# --- pipeline --------------------------------------------------------------

class StageExhausted(Nl2MdpError):
    """A stage failed parsing/validation on every allowed attempt."""

    def __init__(self, stage: str, attempts: int):
        self.stage = stage
        self.attempts = attempts
        super().__init__(f"stage {stage} exhausted after {attempts} attempts")


class PendingClarification(Nl2MdpError):
    """Run parked on an unanswered clarification request."""

    def __init__(self, run_id: str, stage: str, question: str):
        self.run_id = run_id
        self.stage = stage
        self.question = question
        super().__init__(f"run {run_id} parked at stage {stage}: {question}")


class NoPendingRequest(Nl2MdpError):
    """clarify invoked on a run with no open clarification."""


class TaskNotFound(Nl2MdpError):
    """Task reference matches neither the bundled corpus nor a file."""


# --- executor --------------------------------------------------------------

class SandboxSetupError(Nl2MdpError):
    """Execution environment itself failed, distinct from code failures."""


# --- evaluation ------------------------------------------------------------

class EmptyTrialSet(Nl2MdpError):
    """Aggregation requested over zero trials."""


class MissingOracle(Nl2MdpError):
    """oracle_ratio criterion evaluated without baseline results."""


class SeedMismatch(Nl2MdpError):
    """Oracle comparison over result sets from different episode seeds."""

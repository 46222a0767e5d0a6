from __future__ import annotations

from typing import Any, Dict, List, Optional


class LabError(Exception):
    """Base class for every error raised by the lab. `exit_code` is what the CLI returns."""

    exit_code = 1


class InputError(LabError):
    """Malformed user input (params file, flags, shapes)."""

    exit_code = 2


class ConstraintViolation(InputError):
    """A parameter constraint failed; `constraint` is the relation that should hold."""

    def __init__(self, constraint: str, witness: Any):
        self.constraint = constraint
        self.witness = witness
        violated = constraint.replace(" = ", " != ", 1)
        super().__init__(f"{violated} (witness {witness})")


class DimensionMismatch(InputError):
    pass


class SizeLimit(LabError):
    exit_code = 3

    def __init__(self, what: str, limit: int, requested: int):
        self.what = what
        self.limit = limit
        self.requested = requested
        super().__init__(
            f"{what}: requested {requested} exceeds cap {limit} (pass --unsafe-size to override)"
        )


class ExpDivergence(LabError):
    """The matrix exponential kernel returned non-finite entries."""


class ConventionMismatch(LabError):
    def __init__(self, left: str, right: str):
        self.left = left
        self.right = right
        super().__init__(f"commutation conventions differ: {left} vs {right}")


class ConventionError(LabError):
    """An oracle could not single out one convention."""

    def __init__(self, oracle: str, candidates: List[Dict[str, Any]], detail: Optional[str] = None):
        self.oracle = oracle
        self.candidates = candidates
        passing = [c.get("tag") for c in candidates if c.get("passed")]
        msg = f"{oracle}: passing candidates {passing}"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)


class NoConsistentConvention(ConventionError):
    pass


class AmbiguousConvention(ConventionError):
    pass

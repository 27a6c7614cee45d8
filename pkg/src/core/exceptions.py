"""
Exception hierarchy for the digraph laboratory.

Every error raised by the services derives from LabError so the CLI can map
it onto an exit code without inspecting messages.
"""

from typing import Any, Dict, Optional


class LabError(Exception):
    """Base class for all laboratory errors."""

    exit_code = 1

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self)}


class DigraphError(LabError):
    """Invalid digraph construction (loop, out-of-range vertex, bad size)."""


class ParseError(LabError):
    """Malformed input file."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["line"] = self.line_no
        return data


class PreconditionError(LabError):
    """An operation was called outside its precondition."""


class InputOutputError(LabError):
    """An input file could not be read or an output file could not be written."""


class CapExceededError(LabError):
    """An exponential search was asked to run beyond its configured cap."""

    def __init__(self, cap_name: str, limit: int, actual: int):
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual
        super().__init__(f"{cap_name} exceeded: {actual} > {limit}")

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update({"cap": self.cap_name, "limit": self.limit, "actual": self.actual})
        return data


class NotATournamentError(PreconditionError):
    """Input digraph is not a tournament."""


class NotBipartiteError(PreconditionError):
    """Input graph admits no bipartition."""


class InvariantViolation(LabError):
    """Internal consistency check failed; results cannot be trusted."""

    exit_code = 2


class BoundViolation(LabError):
    """An applicable bound failed on a concrete digraph."""

    exit_code = 2

    def __init__(self, bound_id: str, counterexample: str, entry: Dict[str, Any]):
        self.bound_id = bound_id
        self.counterexample = counterexample
        self.entry = entry
        super().__init__(f"bound {bound_id} violated")

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update({"bound_id": self.bound_id, "counterexample": self.counterexample, "entry": self.entry})
        return data

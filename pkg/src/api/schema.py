"""
Result envelope for CLI commands.

Every command emits one CommandResult. The JSON form has the top-level keys
version, command, input_digest, seed (only when randomness was used) and
results; keys are sorted and vertex indices are 1-based throughout.
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.core.config import settings


class CommandResult(BaseModel):
    """Stable output of one CLI invocation."""
    version: str = Field(default_factory=lambda: settings.VERSION)
    command: str
    input_digest: Optional[str] = None
    seed: Optional[int] = None
    results: Dict[str, Any] = Field(default_factory=dict)
    exit_code: int = 0

    def payload(self) -> Dict[str, Any]:
        data = {
            "version": self.version,
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
        }
        if self.seed is not None:
            data["seed"] = self.seed
        return data

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_tsv(self) -> str:
        """Flattened key/value rows; nested keys are joined with dots."""
        rows: List[str] = []
        _flatten(self.payload(), "", rows)
        return "\n".join(rows)


def _flatten(value: Any, prefix: str, rows: List[str]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else str(key), rows)
    elif isinstance(value, list) and any(isinstance(item, (dict, list)) for item in value):
        for i, item in enumerate(value):
            _flatten(item, f"{prefix}.{i}", rows)
    elif isinstance(value, list):
        rows.append(f"{prefix}\t{','.join(str(item) for item in value)}")
    else:
        rows.append(f"{prefix}\t{'' if value is None else value}")

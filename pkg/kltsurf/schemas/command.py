import enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class OutputFormat(str, enum.Enum):
    TEXT = "text"
    JSON = "json"


class Command(BaseModel):
    """One parsed CLI invocation: exactly one subcommand plus its validated flags."""

    name: str = Field(..., description="Subcommand name")
    path: Optional[str] = Field(None, description="Input graph file, when the subcommand reads one")
    output: OutputFormat = OutputFormat.TEXT
    flags: Dict[str, Any] = Field(default_factory=dict)

    def flag(self, key: str, default: Any = None) -> Any:
        return self.flags.get(key, default)

"""Serialization helpers shared by the estimators and the CLI.

All JSON leaving the package goes through :func:`canonical_json` so that a
parse/re-dump cycle is byte-identical and repeated deterministic runs can
be compared as text.  Scalars print as ``p/q`` in rational mode and as
17-significant-digit decimals in float mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any

from ._version import __version__
from .core import Scalar


def canonical_json(data: Any) -> str:
    """Stable JSON rendering: two-space indent, insertion key order."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def format_scalar(value: Scalar) -> str:
    """``p/q`` for rationals, shortest-exact 17-significant-digit decimal
    for floats."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility block attached to every CLI report."""

    command: str
    parameters: dict
    mode: str
    timestamp: str
    tool_version: str

    @classmethod
    def now(cls, command: str, parameters: dict, mode: str) -> "RunManifest":
        return cls(
            command=command,
            parameters=parameters,
            mode=mode,
            timestamp=datetime.now(timezone.utc).isoformat(),
            tool_version=__version__,
        )

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "mode": self.mode,
            "timestamp": self.timestamp,
            "tool_version": self.tool_version,
        }


def build_report(
    command: str,
    parameters: dict,
    result: dict,
    mode: str,
    exact: str | None = None,
    z_score: float | None = None,
) -> dict:
    """The frozen CLI report layout."""
    report: dict = {
        "command": command,
        "parameters": parameters,
        "result": result,
    }
    if exact is not None:
        report["exact"] = exact
    if z_score is not None:
        report["z_score"] = z_score
    report["manifest"] = RunManifest.now(command, parameters, mode).to_json_dict()
    return report

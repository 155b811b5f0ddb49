"""Run configuration and the JSON run bundles the CLI reads back with ``--config``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from estimators.intervals import DEFAULT_PRECISION
from estimators.power_iteration import DEFAULT_BALL_GUARD
from ring.element import DEFAULT_SUPPORT_GUARD

SCHEMA = "spectra/1"

COMMON_KEYS = (
    "group",
    "set",
    "engine",
    "format",
    "out",
    "seed",
    "precision",
    "guard",
    "ball_guard",
)


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved parameters of one CLI run.

    Attributes:
        command: Subcommand name.
        group:   Presentation text, e.g. ``free:2``.
        set:     Generating-set text; None means the standard set.
        options: Command-specific parameters (nmax, radius, k, ...).
    """

    command: str
    group: str = "free:2"
    set: Optional[str] = None
    engine: str = "auto"
    format: str = "json"
    out: Optional[str] = None
    seed: int = 0
    precision: int = DEFAULT_PRECISION
    guard: int = DEFAULT_SUPPORT_GUARD
    ball_guard: int = DEFAULT_BALL_GUARD
    options: Dict[str, Any] = field(default_factory=dict)

    def option(self, name: str, default: Any = None) -> Any:
        value = self.options.get(name)
        return default if value is None else value

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"command": self.command}
        for key in COMMON_KEYS:
            out[key] = getattr(self, key)
        for key, value in sorted(self.options.items()):
            out[key] = list(value) if isinstance(value, tuple) else value
        return out

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "RunConfig":
        if "command" not in data or not isinstance(data["command"], str):
            raise ValueError("config.command must be a string.")
        common = {k: data[k] for k in COMMON_KEYS if k in data}
        options = {
            k: v for k, v in data.items() if k not in COMMON_KEYS and k != "command"
        }
        return RunConfig(command=data["command"], options=options, **common)


def load_run_bundle(path: str) -> Dict[str, Any]:
    """Read the ``config`` block of a report written by this CLI."""
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)

    if not isinstance(data, dict):
        raise ValueError("Run bundle must be a JSON object.")
    if data.get("schema") != SCHEMA:
        raise ValueError(
            f"Unsupported run bundle schema {data.get('schema')!r}; expected {SCHEMA!r}."
        )
    config = data.get("config")
    if not isinstance(config, dict):
        raise ValueError("Run bundle field 'config' must be an object.")
    for key in ("seed", "precision", "guard", "ball_guard"):
        if key in config and not isinstance(config[key], int):
            raise ValueError(f"config.{key} must be an integer.")
    return config


def _normalized(value: Any) -> Any:
    return json.loads(json.dumps(value))


def config_mismatches(
    loaded: Dict[str, Any],
    cli: Dict[str, Any],
    flag_present: Callable[[str], bool],
) -> List[str]:
    """Explicitly passed flags whose values disagree with a loaded bundle."""
    mismatches: List[str] = []
    for key in sorted(loaded):
        if key in ("command", "out", "format") or key not in cli:
            continue
        flag = "--" + key.replace("_", "-")
        if flag_present(flag) and _normalized(cli[key]) != _normalized(loaded[key]):
            mismatches.append(f"{flag}={cli[key]} (config has {loaded[key]})")
    return mismatches


def merge_config(
    command: str,
    cli: Dict[str, Any],
    loaded: Optional[Dict[str, Any]],
    flag_present: Callable[[str], bool],
) -> RunConfig:
    """CLI values overlaid by a loaded bundle; conflicting explicit flags are an error."""
    if loaded is None:
        return RunConfig.from_dict({"command": command, **cli})
    if loaded.get("command", command) != command:
        raise ValueError(
            f"config was written by '{loaded.get('command')}', not '{command}'"
        )
    mismatches = config_mismatches(loaded, cli, flag_present)
    if mismatches:
        raise ValueError("Passed arguments do not match config: " + "; ".join(mismatches))
    merged = dict(cli)
    merged.update({k: v for k, v in loaded.items() if k != "command"})
    # output path and format are never taken from a bundle
    merged["out"] = cli.get("out")
    merged["format"] = cli.get("format", "json")
    return RunConfig.from_dict({"command": command, **merged})

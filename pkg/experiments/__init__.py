"""Run configuration, report rendering and the CLI subcommands."""

from experiments.config import (
    SCHEMA,
    RunConfig,
    config_mismatches,
    load_run_bundle,
    merge_config,
)
from experiments.serialize import (
    Report,
    parse_csv,
    render,
    render_csv,
    render_json,
    to_jsonable,
)
from experiments.commands import (
    COMMANDS,
    cmd_epsilon,
    cmd_extract,
    cmd_gamma,
    cmd_moments,
    cmd_radius,
    cmd_reproduce,
    cmd_sharpness,
    cmd_walk,
    parse_int_list,
    parse_range,
    run,
)

__all__ = [
    "SCHEMA",
    "RunConfig",
    "config_mismatches",
    "load_run_bundle",
    "merge_config",
    "Report",
    "parse_csv",
    "render",
    "render_csv",
    "render_json",
    "to_jsonable",
    "COMMANDS",
    "cmd_epsilon",
    "cmd_extract",
    "cmd_gamma",
    "cmd_moments",
    "cmd_radius",
    "cmd_reproduce",
    "cmd_sharpness",
    "cmd_walk",
    "parse_int_list",
    "parse_range",
    "run",
]

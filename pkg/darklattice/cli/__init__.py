from darklattice.cli._config import (
    CountOptions,
    RunConfig,
    StirapOptions,
    build_config,
    load_config,
    merge_overrides,
    parse_config,
    parse_range,
)
from darklattice.cli._commands import COMMANDS, CommandResult, count_cell, count_table, run
from darklattice.cli._persist import Manifest, ManifestEntry, parameter_hash, persist
from darklattice.cli._app import build_parser, main


__all__ = [
    "CountOptions",
    "RunConfig",
    "StirapOptions",
    "build_config",
    "load_config",
    "merge_overrides",
    "parse_config",
    "parse_range",
    "COMMANDS",
    "CommandResult",
    "count_cell",
    "count_table",
    "run",
    "Manifest",
    "ManifestEntry",
    "parameter_hash",
    "persist",
    "build_parser",
    "main",
]

import hashlib
import json
from pathlib import Path
from typing import Union

from pydantic import BaseModel

from darklattice.cli._commands import CommandResult
from darklattice.cli._config import RunConfig
from darklattice.export import write
from darklattice.logging import get_logger

logger = get_logger(__name__)

MANIFEST_NAME = "manifest.json"


class ManifestEntry(BaseModel):
    name: str
    sha256: str
    bytes: int


class Manifest(BaseModel):
    """
    Index of one command run's artifacts.

    Attributes:
        command (str): Subcommand name.
        parameter_hash (str): First 12 hex digits of the SHA-256 of the canonical parameters.
        passed (bool): Overall verdict of the run's checks.
        files (list[ManifestEntry]): Artifacts with their checksums, in write order.
    """

    command: str
    parameter_hash: str
    passed: bool
    files: list[ManifestEntry]


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), allow_nan=False)


def parameter_hash(config: RunConfig) -> str:
    """Stable 12-digit hash of every field that affects the results."""
    return hashlib.sha256(canonical_json(config.hashed_fields()).encode()).hexdigest()[:12]


def run_directory(out: Union[str, Path], command: str, config: RunConfig) -> Path:
    """``<out>/<command>-<hash>``: the same parameters always land in the same place."""
    return Path(out) / f"{command}-{parameter_hash(config)}"


def persist(result: CommandResult, config: RunConfig, out: Union[str, Path]) -> Manifest:
    """
    Write every artifact of ``result`` and a manifest with their SHA-256 checksums.

    Errors from the filesystem are not caught.
    """
    directory = run_directory(out, result.command, config)
    entries = []
    for name, text in result.artifacts.items():
        data = text.encode("utf-8")
        write(text, directory / name)
        entries.append(
            ManifestEntry(name=name, sha256=hashlib.sha256(data).hexdigest(), bytes=len(data))
        )
    manifest = Manifest(
        command=result.command,
        parameter_hash=parameter_hash(config),
        passed=result.passed,
        files=entries,
    )
    text = json.dumps(manifest.model_dump(), indent=2, sort_keys=True) + "\n"
    write(text, directory / MANIFEST_NAME)
    logger.info(f"{result.command}: {len(entries)} artifacts in {directory}")
    return manifest

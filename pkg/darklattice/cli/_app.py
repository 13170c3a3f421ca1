"""
``darklattice`` command line.

Exit status: 0 when every check passes, 1 for a numerical failure or a failed check,
2 for invalid input, a bad configuration or an I/O error. Diagnostics go to stderr.
"""

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from dotenv import load_dotenv

from darklattice._base._exceptions import ConfigError, InvalidInput, NumericalFailure
from darklattice.cli._commands import COMMANDS, run
from darklattice.cli._config import RunConfig, build_config, load_config, merge_overrides
from darklattice.cli._persist import persist
from darklattice.logging import configure_logging, get_logger

logger = get_logger(__name__)

# Commands that never read the couplings; unit couplings are filled in when none are given
_COUPLING_FREE = {"basis", "count", "stirap"}

_HELP = {
    "basis": "Enumerate the upper and lower basis of a subspace",
    "hamiltonian": "Assemble U, L and C and check the block template of C",
    "darkstates": "Solve, verify and serialize the dark states of a subspace",
    "count": "Tabulate dark-state counts over ranges of N and n",
    "darkmodes": "Build dark-mode Fock states and compare them with the dark states",
    "stirap": "Run a two-mode adiabatic photon transfer",
    "export-graph": "Write the Fock-state lattice as Graphviz DOT or JSON",
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--out", help="Output directory; results print to stdout when omitted")
    common.add_argument("--format", choices=["json", "dot", "csv"])
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--workers", type=int, help="Worker threads for count")
    common.add_argument(
        "--override-degeneracy",
        action="store_true",
        default=None,
        help="Proceed with unequal detunings or mode frequencies",
    )
    common.add_argument("--N", dest="N", help="Mode count ('a..b' for count)")
    common.add_argument("--n", dest="n", help="Excitation number ('a..b' for count)")
    common.add_argument("--g", help="Comma-separated couplings, e.g. 1,0.5,2")
    common.add_argument("--delta", type=float, help="Common detuning")
    common.add_argument("--omega0", type=float, help="Atomic frequency")
    common.add_argument("--omegas", help="Comma-separated mode frequencies")
    common.add_argument("--frame", choices=["rotating", "lab"])
    common.add_argument("--T", dest="T", type=float, help="Transfer duration")
    common.add_argument("--G", dest="G", type=float, help="Transfer coupling magnitude")
    common.add_argument("--schedule", choices=["theta_ramp", "sin2_overlap"])
    common.add_argument("--seed", type=int, help="Seed of the count coupling draws")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darklattice",
        description="Dark states of multimode Jaynes-Cummings Fock-state lattices",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_flags()
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[common], help=_HELP[name])
    return parser


def _floats(text: Optional[str], flag: str) -> Optional[list[float]]:
    if text is None:
        return None
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise ConfigError("override", f"{flag} expects comma-separated numbers, got '{text}'")


def _int(text: Optional[str], flag: str) -> Optional[int]:
    if text is None:
        return None
    try:
        return int(text)
    except ValueError:
        raise ConfigError("override", f"{flag} expects an integer, got '{text}'")


def overrides_from_args(args: argparse.Namespace) -> dict[str, Any]:
    """Flag values in the shape of the configuration file; unset flags are None."""
    overrides: dict[str, Any] = {
        "g": _floats(args.g, "--g"),
        "omegas": _floats(args.omegas, "--omegas"),
        "delta": args.delta,
        "omega0": args.omega0,
        "frame": args.frame,
        "out": args.out,
        "format": args.format,
        "workers": args.workers,
        "override_degeneracy": args.override_degeneracy,
        "stirap": {"G": args.G, "T": args.T, "schedule": args.schedule},
    }
    if args.command == "count":
        overrides["count"] = {"N": args.N, "n": args.n, "seed": args.seed}
    else:
        overrides["N"] = _int(args.N, "--N")
        overrides["n"] = _int(args.n, "--n")
    return overrides


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """
    Merge the config file (if any) with the flags and validate the result.

    Raises:
        ConfigError: For malformed JSON, failed validation or a malformed flag
        FileNotFoundError: If ``--config`` names a missing file
    """
    data = load_config(args.config) if args.config else {}
    merged = merge_overrides(data, overrides_from_args(args))
    if "g" not in merged and args.command in _COUPLING_FREE:
        modes = 2 if args.command != "basis" else merged.get("N") or 2
        merged["g"] = [1.0] * modes
    return build_config(merged)


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging({0: None, 1: "INFO"}.get(args.verbose, "DEBUG"))

    try:
        config = resolve_config(args)
        result = run(args.command, config)
        if config.out:
            manifest = persist(result, config, config.out)
            print(json.dumps(manifest.model_dump(), indent=2, sort_keys=True))
        else:
            sys.stdout.write(result.stdout)
    except InvalidInput as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NumericalFailure as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return 2

    if not result.passed:
        print(f"failed checks: {', '.join(result.report.failed())}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

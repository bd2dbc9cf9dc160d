"""Command-line front door for batch experiments.

Each subcommand loads one structured config file, hands it to its service and
writes machine-readable results under the output directory. Exit codes:
0 on success, 2 on configuration or input errors, 3 on computation errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import tomllib
from pathlib import Path
from typing import Callable, Sequence

from pydantic import ValidationError

from . import __version__
from .core.config import get_settings
from .core.errors import ComputationError, NotSeparable
from .models import ExperimentConfig
from .services.construct_service import run_construct
from .services.normalform_service import run_normalform
from .services.profile_service import run_profile
from .services.simulate_service import run_simulate
from .services.verify_service import run_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_COMPUTATION = 3

Command = Callable[[ExperimentConfig, Path, int], list[Path]]

COMMANDS: dict[str, tuple[str, Command]] = {
    "profile": ("Tabulate the small-divisor profile Ψ, Λ up to K_max.", lambda c, o, t: run_profile(c, o)),
    "construct": ("Build instability family members and their Hamiltonians.", lambda c, o, t: run_construct(c, o)),
    "simulate": ("Integrate a separable Hamiltonian and record the trajectory.", lambda c, o, t: run_simulate(c, o)),
    "verify": ("Run the saturation experiment against the stability ceiling.", run_verify),
    "normalform": ("Normalize a perturbation for each K and report remainder decay.", lambda c, o, t: run_normalform(c, o)),
}


def load_config(path: Path | None) -> ExperimentConfig:
    """Read a JSON or TOML (by suffix) experiment file; defaults when no path is given.

    Raises:
        ValidationError: the file does not describe a valid experiment.
        ValueError: the file cannot be parsed.
    """
    if path is None:
        return ExperimentConfig()
    text = path.read_text(encoding="utf-8")
    try:
        data = tomllib.loads(text) if path.suffix.lower() == ".toml" else json.loads(text)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot parse {path}: {exc}") from exc
    return ExperimentConfig.model_validate(data)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamstab",
        description="Stability and instability experiments for perturbed linear Hamiltonians.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (help_text, _) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        sub.add_argument("--config", type=Path, default=None, help="Experiment file (.json or .toml).")
        sub.add_argument("--out", type=Path, default=None, help="Output directory (overrides output_dir).")
        sub.add_argument("--threads", type=int, default=None, help="Worker threads for verify.")
    return parser


def _configure_logging() -> None:
    level = getattr(logging, get_settings().log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _fail(code: int, exc: BaseException) -> int:
    print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging()

    try:
        config = load_config(args.config)
    except (ValidationError, ValueError, OSError) as exc:
        return _fail(EXIT_INVALID, exc)

    out_dir = args.out or config.output_dir
    threads = args.threads if args.threads is not None else get_settings().threads
    if threads < 1:
        return _fail(EXIT_INVALID, ValueError("--threads must be >= 1"))

    _, command = COMMANDS[args.command]
    try:
        written = command(config, out_dir, threads)
    except NotSeparable as exc:
        return _fail(EXIT_INVALID, exc)
    except ComputationError as exc:
        logger.error("%s failed: %s", args.command, exc)
        return _fail(EXIT_COMPUTATION, exc)
    except (ValidationError, ValueError, OSError) as exc:
        return _fail(EXIT_INVALID, exc)

    for path in written:
        logger.info("Wrote %s", path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from cherednik_core.params import RegimeError
from cherednik_core.schemas import ClaimRecord, RunReport
from cherednik_core.services import CollectingSink, VerificationRunner

from .commands import HANDLERS
from .config import CliSettings, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_REJECTED = 2

# значения вида -1,2 argparse иначе принимает за флаг
VECTOR_FLAGS = ("--lambda", "--theta", "--cap")


def _strings(raw: str) -> tuple[str, ...]:
    return tuple(item.strip() for item in raw.split(",") if item.strip())


def _ints(raw: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in _strings(raw))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {raw!r}") from exc


def attach_vector_values(argv: Sequence[str]) -> list[str]:
    result: list[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in VECTOR_FLAGS:
            value = next(tokens, None)
            result.append(token if value is None else f"{token}={value}")
        else:
            result.append(token)
    return result


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chk",
        description="Проверки тождеств циклической алгебры Чередника и колчанного многообразия",
    )
    parser.add_argument("command", choices=sorted(HANDLERS))
    parser.add_argument("--l", type=int, dest="l")
    parser.add_argument("--lambda", type=_strings, dest="lam")
    parser.add_argument("--theta", type=_ints)
    parser.add_argument("--m", type=int)
    parser.add_argument("--cap", type=_ints)
    parser.add_argument("--window", type=int)
    parser.add_argument("--depth", type=int)
    parser.add_argument("--top", type=int)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out")
    return parser


def build_config(args: argparse.Namespace, settings: CliSettings) -> RunConfig:
    values: dict[str, Any] = {
        "command": args.command,
        "cap": settings.default_cap,
        "window": settings.default_window,
        "depth": settings.default_depth,
        "threads": settings.threads,
    }
    flags = ("l", "lam", "theta", "m", "cap", "window", "depth", "top", "samples", "seed", "out")
    values.update({name: getattr(args, name) for name in flags if getattr(args, name) is not None})
    return RunConfig(**values)


def main(argv: Sequence[str] | None = None, settings: CliSettings | None = None) -> int:
    settings = settings or CliSettings()
    logging.basicConfig(level=settings.log_level.upper())
    raw = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(attach_vector_values(raw))

    config: RunConfig | None = None
    try:
        config = build_config(args, settings)
        runner = VerificationRunner(CollectingSink())
        report = HANDLERS[config.command](runner, config)
    except RegimeError as exc:
        logger.warning("Parameters rejected", extra={"reason": str(exc)})
        print(f"regime rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except ValueError as exc:
        logger.warning("Invalid input", extra={"reason": str(exc)})
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except RuntimeError as exc:
        logger.error("Computation aborted", extra={"reason": str(exc)})
        report = RunReport(
            command=args.command,
            params=config.params() if config is not None else {},
            claims=[ClaimRecord.check("computation completed", False, {"error": str(exc)})],
        )

    payload = report.to_json()
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        logger.info("Report written", extra={"path": args.out})
    else:
        print(payload)
    if not report.ok:
        print(report.summary(), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

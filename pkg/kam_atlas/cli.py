from __future__ import annotations
import argparse
import logging
from pathlib import Path
from typing import Optional, Sequence
from kam_atlas.errors import ConfigError
from kam_atlas.report.config import SECTION_SCHEMAS, LogRingSection, load_config
from kam_atlas.report.export import write_json
from kam_atlas.report.study import logring_payload, run_study

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

COMMANDS = {
    "check-potential": ["genericity"],
    "cover": ["covering", "scaling", "budget"],
    "portrait": ["portraits"],
    "actions": ["actions", "fits"],
    "twist": ["twist"],
    "logring": ["logring"],
    "study": None
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kam-atlas", description="Desk-scale singular KAM numerics.")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, sections in COMMANDS.items():
        command = commands.add_parser(name, help="run every enabled section" if sections is None else ", ".join(sections))
        command.add_argument("--config", type=Path, required=name != "logring", help="study config (JSON)")
        command.add_argument("--out", type=Path, default=None, help="output directory")
        command.add_argument("--seed", type=int, default=None, help="Monte Carlo seed (unsigned 64-bit)")

    return parser


def _standalone_logring(output: Path) -> int:
    passed, payload = logring_payload(LogRingSection(**SECTION_SCHEMAS["logring"].validate({})))
    write_json(output / "logring.json", payload)
    logging.info(f"log ring checks {'passed' if passed else 'failed'}")

    return EXIT_OK if passed else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s %(message)s")

    try:
        if args.command == "logring" and args.config is None:
            return _standalone_logring(args.out or Path("out"))

        config = load_config(args.config).with_overrides(output=args.out, seed=args.seed)
    except ConfigError as error:
        logging.error(str(error))

        return EXIT_CONFIG

    report = run_study(config, only=COMMANDS[args.command])

    for section in report.sections:
        logging.info(f"{section.name}: {section.status.value} {section.message}".rstrip())

    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())

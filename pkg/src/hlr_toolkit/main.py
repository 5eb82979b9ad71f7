"""Main entry point for the hlr command line tool."""

import argparse
import configparser
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .app import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_USAGE,
    AppConfig,
    Application,
    CommandResult,
    UsageError,
)
from .cat1 import Cat4Mode
from .category import PeifferSign
from .config import (
    OUTPUT_FORMATS,
    ConfigValidationError,
    ConfigValidator,
    create_default_config,
    load_config,
)
from .errors import ConstructionError, HLRError, ParseError, PreconditionError
from .serialization import dumps

logger = logging.getLogger(__name__)

CONSTRUCTIONS = (
    "equalizer",
    "pullback",
    "product",
    "terminal",
    "coequalizer",
    "coproduct",
    "pushout",
)


def setup_logging(log_file: Optional[str] = None, log_level: str = "INFO") -> None:
    """Set up logging configuration.

    Log records go to stderr (and optionally a file) so that reports on
    stdout stay byte-stable.

    Args:
        log_file: Optional path to log file
        log_level: Logging level (default: INFO)
    """
    handlers: List[logging.Handler] = [logging.StreamHandler()]

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
    )


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        argv: Arguments without the program name; defaults to ``sys.argv[1:]``

    Returns:
        Parsed arguments namespace
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        "-c",
        help=(
            "Path to config file "
            "(default: .hlr/config.ini or ~/.config/hlr-toolkit/config.ini)"
        ),
    )
    common.add_argument(
        "--verbose", "-v", action="store_true", help="Enable verbose output"
    )
    common.add_argument(
        "--cat4-mode",
        choices=[m.value for m in Cat4Mode],
        help="Reading of the fourth cat1 axiom (default: reconstructed)",
    )
    common.add_argument(
        "--peiffer-sign",
        choices=[s.value for s in PeifferSign],
        help="Generators of the coproduct and pushout ideal (default: printed)",
    )
    common.add_argument(
        "--output", "-o", help="Write the produced document to this file"
    )
    common.add_argument(
        "--format", choices=list(OUTPUT_FORMATS), help="Report format (default: text)"
    )

    parser = argparse.ArgumentParser(
        prog="hlr",
        description="Validate and construct Hom-Leibniz-Rinehart algebras, "
        "crossed modules and cat1 algebras",
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    init_parser = subparsers.add_parser(
        "init", parents=[common], help="Write the default configuration"
    )
    init_parser.add_argument(
        "--force", "-f", action="store_true", help="Overwrite existing configuration"
    )

    validate_parser = subparsers.add_parser(
        "validate", parents=[common], help="Validate any document"
    )
    validate_parser.add_argument("file")

    for name, help_text in (
        ("semidirect", "Semi-direct product of an action, with both validations"),
        ("to-cat1", "Cat1 algebra of a crossed module"),
        ("to-cm", "Crossed module of a cat1 algebra"),
        ("roundtrip", "Check (alpha_M, alpha_L) against the cat1 round trip"),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("file")

    for name in CONSTRUCTIONS:
        sub = subparsers.add_parser(
            name, parents=[common], help=f"Build the {name} of crossed L-modules"
        )
        sub.add_argument("files", nargs="+")

    morphism_parser = subparsers.add_parser(
        "check-morphism", parents=[common], help="Validate morphism documents"
    )
    morphism_parser.add_argument("files", nargs="+")

    twist_parser = subparsers.add_parser(
        "twist", parents=[common], help="Twist an HLR algebra along (alpha, phi)"
    )
    twist_parser.add_argument("file")
    twist_parser.add_argument("alpha", help='Matrix such as "4,0;0,2"')
    twist_parser.add_argument("phi", help='Matrix such as "1"')

    examples_parser = subparsers.add_parser(
        "examples", parents=[common], help="List or print built-in examples"
    )
    examples_parser.add_argument("name", nargs="?")

    fuzz_parser = subparsers.add_parser(
        "fuzz", parents=[common], help="Shift one structure constant and re-validate"
    )
    fuzz_parser.add_argument("file")
    fuzz_parser.add_argument("--seed", type=int, default=0, help="First seed")
    fuzz_parser.add_argument("--count", type=int, help="Number of seeds to try")
    fuzz_parser.add_argument("--delta", help='Shift such as "1" or "-1/2"')
    fuzz_parser.add_argument("--target", help="Site or site prefix to mutate")

    return parser.parse_args(argv)


def initialize_config(force: bool = False) -> str:
    """Initialize configuration in the .hlr directory.

    Args:
        force: Whether to overwrite existing configuration

    Returns:
        Message for the user
    """
    config_path = Path.cwd() / ".hlr" / "config.ini"

    if config_path.exists() and not force:
        logger.info(f"Configuration already exists at {config_path}")
        return (
            f"Configuration already exists at {config_path}; "
            "use --force to overwrite\n"
        )

    path, _ = create_default_config()
    logger.info(f"Created default configuration at {path}")
    return f"Created default configuration at {path}\n"


def validate_config(
    config: configparser.ConfigParser, args: argparse.Namespace
) -> AppConfig:
    """Validate configuration, apply command-line flags and create AppConfig.

    Args:
        config: ConfigParser object with loaded configuration
        args: Parsed arguments; flags override the file

    Returns:
        Validated AppConfig object

    Raises:
        ConfigValidationError: If validation fails
    """
    validator = ConfigValidator()

    checks = dict(config["checks"])
    if args.cat4_mode:
        checks["cat4_mode"] = args.cat4_mode
    if args.peiffer_sign:
        checks["peiffer_sign"] = args.peiffer_sign
    checks_config = validator.validate_checks_config(checks)
    logger.debug("Validated checks config: %s", checks_config)

    output = dict(config["output"])
    if args.format:
        output["format"] = args.format
    output_config = validator.validate_output_config(output)

    fuzz_config = validator.validate_fuzz_config(dict(config["fuzz"]))

    return AppConfig(
        cat4_mode=checks_config.cat4_mode,
        peiffer_sign=checks_config.peiffer_sign,
        output_format=output_config.format,
        fuzz_count=fuzz_config.count,
        fuzz_delta=fuzz_config.delta,
    )


def dispatch(app: Application, args: argparse.Namespace) -> CommandResult:
    """Run the selected command.

    Raises:
        UsageError: If no command was given
    """
    command = args.command
    if command == "validate":
        return app.validate(args.file)
    if command == "semidirect":
        return app.semidirect(args.file)
    if command == "to-cat1":
        return app.to_cat1(args.file)
    if command == "to-cm":
        return app.to_cm(args.file)
    if command == "roundtrip":
        return app.roundtrip(args.file)
    if command in CONSTRUCTIONS:
        return app.construct(command, args.files)
    if command == "check-morphism":
        return app.check_morphism(args.files)
    if command == "twist":
        return app.twist(args.file, args.alpha, args.phi)
    if command == "examples":
        return app.examples(args.name)
    if command == "fuzz":
        return app.fuzz(args.file, args.seed, args.count, args.delta, args.target)
    raise UsageError("no command given; see hlr --help")


def _failure(
    app: Optional[Application], error: HLRError, exit_code: int
) -> Tuple[int, str]:
    report = getattr(error, "report", None)
    result = CommandResult(exit_code, [f"error: {error}"], [report] if report else [])
    if app is None:
        return exit_code, f"error: {error}\n"
    return exit_code, app.render(result)


def run_command(argv: Sequence[str]) -> Tuple[int, str]:
    """Run one invocation and return its exit status and stdout text.

    Exit codes: 0 success, 1 validation failures, 2 usage or parse errors.
    """
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else EXIT_USAGE
        return code, ""
    if args.command is None:
        return EXIT_USAGE, "error: no command given; see hlr --help\n"

    log_level = "DEBUG" if args.verbose else "INFO"
    setup_logging(log_level=log_level)

    if args.command == "init":
        return EXIT_OK, initialize_config(force=args.force)

    app: Optional[Application] = None
    try:
        config = load_config(args.config)
        log_config = ConfigValidator().validate_logging_config(dict(config["logging"]))
        if log_config.file or log_config.level != "INFO":
            setup_logging(
                log_file=str(log_config.file) if log_config.file else None,
                log_level=log_level if args.verbose else log_config.level,
            )
        app = Application(validate_config(config, args))
        result = dispatch(app, args)
    except ConfigValidationError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_USAGE, f"error: {e}\n"
    except (UsageError, ParseError) as e:
        logger.error(str(e))
        return EXIT_USAGE, f"error: {e}\n"
    except (PreconditionError, ConstructionError) as e:
        logger.error(str(e))
        return _failure(app, e, EXIT_INVALID)
    except HLRError as e:
        logger.error(str(e))
        return _failure(app, e, EXIT_USAGE)

    if args.output and result.document is not None:
        Path(args.output).write_text(dumps(result.document), encoding="utf-8")
        logger.info(f"Wrote {result.document.kind} document to {args.output}")
        return result.exit_code, app.render(result, include_document=False)
    return result.exit_code, app.render(result)


def main() -> None:
    """Main entry point for the application."""
    exit_code, text = run_command(sys.argv[1:])
    sys.stdout.write(text)
    raise SystemExit(exit_code)


if __name__ == "__main__":
    main()

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# Import command classes
from nonlevel.commands.betti import BettiCommand
from nonlevel.commands.enumerate import EnumerateCommand
from nonlevel.commands.growth import GrowthCommand
from nonlevel.commands.level_check import LevelCheckCommand
from nonlevel.commands.lex_ideal import LexIdealCommand
from nonlevel.commands.socle import SocleCommand
from nonlevel.commands.typevector import TypeVectorCommand
from nonlevel.commands.validate import ValidateCommand
from nonlevel.utils.errors import InvalidInputError, InvariantError
from nonlevel.utils.logger import Logger
from nonlevel.utils.output import Output
from nonlevel.utils.settings import Settings

INVALID_INPUT_EXIT_CODE = 2
INTERNAL_ERROR_EXIT_CODE = 3


def add_sequence_arguments(parser: argparse.ArgumentParser):
    parser.add_argument(
        "-s",
        "--seq",
        help="Comma-separated h-vector including h_0, e.g. 1,3,6,8,9,9,9,10.",
    )
    parser.add_argument(
        "-c",
        "--corpus",
        help=(
            "File with one sequence per line ('#' starts a comment), or "
            "@name for a packaged corpus such as @examples."
        ),
    )


def add_variables_argument(parser: argparse.ArgumentParser):
    parser.add_argument(
        "-n",
        "--variables",
        type=int,
        default=None,
        help="Number of variables of the polynomial ring. Default: h_1.",
    )


def build_parser() -> argparse.ArgumentParser:
    # Create the top-level parser
    parser = argparse.ArgumentParser(
        prog="nonlevel",
        description="Certify non-levelness of Artinian algebras from their h-vectors",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )

    # Global arguments
    parser.add_argument(
        "-v",
        "--verbosity",
        choices=["debug", "info", "warning", "error", "critical", "silent"],
        default=None,
        help="Set the logging verbosity level. Default: from config (info).",
    )
    parser.add_argument(
        "-lfp",
        "--log-file-path",
        default=None,
        help=(
            "Path to log file/directory. If None, system default location is "
            "selected."
        ),
    )
    parser.add_argument(
        "-lms",
        "--log-max-size",
        type=int,
        default=None,
        help="Maximum log file size (in bytes) before rotation. Default: from config.",
    )
    parser.add_argument(
        "-lbc",
        "--log-backup-count",
        type=int,
        default=None,
        help="Number of backup log files to keep. Default: from config.",
    )
    parser.add_argument(
        "-nlf",
        "--no-log-file",
        action="store_true",
        help="Log to the console only.",
    )
    parser.add_argument(
        "-cfg",
        "--config",
        default=None,
        help="YAML file overriding the packaged defaults.",
    )
    parser.add_argument(
        "-j",
        "--json",
        action="store_true",
        help="Write the versioned JSON document instead of text.",
    )

    # Create subparsers for commands
    subparsers = parser.add_subparsers(
        title="Commands",
        dest="command",
        description="Available commands",
        help="Additional help",
    )
    subparsers.required = True  # Ensure that a command is provided

    ### 1. Validate Command ###
    validate_parser = subparsers.add_parser(
        "validate",
        description="Check Macaulay's condition and report the first violation.",
        help="Check whether sequences are O-sequences.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_sequence_arguments(validate_parser)
    validate_parser.set_defaults(func=ValidateCommand)

    ### 2. Growth Command ###
    growth_parser = subparsers.add_parser(
        "growth",
        description="Binomial expansion of h in degree i and the bound h^<i>.",
        help="Compute the Macaulay growth bound.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    growth_parser.add_argument("--value", type=int, required=True, help="Value h.")
    growth_parser.add_argument("--degree", type=int, required=True, help="Degree i (at least 1).")
    growth_parser.set_defaults(func=GrowthCommand)

    ### 3. Lex-Ideal Command ###
    lex_parser = subparsers.add_parser(
        "lex-ideal",
        description="Lex-segment ideal of an O-sequence.",
        help="Print lex ideal slices or minimal generators.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_sequence_arguments(lex_parser)
    add_variables_argument(lex_parser)
    lex_parser.add_argument(
        "-g",
        "--gens-only",
        action="store_true",
        help="Print minimal generators instead of slices.",
    )
    lex_parser.set_defaults(func=LexIdealCommand)

    ### 4. Betti Command ###
    betti_parser = subparsers.add_parser(
        "betti",
        description="Graded Betti numbers of the lex ideal.",
        help="Compute graded Betti numbers.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_sequence_arguments(betti_parser)
    add_variables_argument(betti_parser)
    betti_parser.add_argument(
        "-m",
        "--method",
        choices=["ek", "closed", "oracle"],
        default="ek",
        help=(
            "'ek': Eliahou-Kervaire; 'oracle': Koszul homology over GF(p); "
            "'closed': the shift d+2 pair after a drop followed by a plateau."
        ),
    )
    betti_parser.add_argument(
        "-x",
        "--cross-check",
        action="store_true",
        help="With --method oracle, also compute over the cross-check prime and compare.",
    )
    betti_parser.set_defaults(func=BettiCommand)

    ### 5. Level-Check Command ###
    level_parser = subparsers.add_parser(
        "level-check",
        description="Run every non-levelness criterion. Exit code 10 if any sequence is NotLevel.",
        help="Certify non-levelness.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_sequence_arguments(level_parser)
    level_parser.set_defaults(func=LevelCheckCommand)

    ### 6. Typevector Command ###
    tv_parser = subparsers.add_parser(
        "typevector",
        description="Extract type vectors from h-vectors, or inspect a given type vector.",
        help="Work with k-configuration type vectors.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_sequence_arguments(tv_parser)
    tv_parser.add_argument(
        "-t",
        "--tv",
        help="Type vector in nested-parenthesis syntax, e.g. ((2),(1,3,6,7),(1,2,3,4,5,6,7,8)).",
    )
    tv_parser.add_argument(
        "--to-hf",
        action="store_true",
        help="With --tv, print the h-vector of the type vector.",
    )
    tv_parser.add_argument(
        "--shifts",
        action="store_true",
        help="Print the noncancelable-shift report.",
    )
    tv_parser.set_defaults(func=TypeVectorCommand)

    ### 7. Socle Command ###
    socle_parser = subparsers.add_parser(
        "socle",
        description="Socle monomials of the lex algebra and cancellation lower bounds.",
        help="Inspect the socle of the lex algebra.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_sequence_arguments(socle_parser)
    add_variables_argument(socle_parser)
    socle_parser.set_defaults(func=SocleCommand)

    ### 8. Enumerate Command ###
    enumerate_parser = subparsers.add_parser(
        "enumerate",
        description="Classify every O-sequence in a box and print a census.",
        help="Sweep O-sequences.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    enumerate_parser.add_argument("--codim", type=int, required=True, help="h_1.")
    enumerate_parser.add_argument(
        "--max-socle-degree", type=int, required=True, help="Largest socle degree."
    )
    enumerate_parser.add_argument("--max-value", type=int, required=True, help="Largest entry.")
    enumerate_parser.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="Worker processes. Default: from config.",
    )
    enumerate_parser.set_defaults(func=EnumerateCommand)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()

    # Parse the arguments; argparse exits with 2 on bad usage
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else INVALID_INPUT_EXIT_CODE

    try:
        settings = Settings.load(config_path=args.config)
    except InvalidInputError as e:
        print(f"nonlevel: {e}", file=sys.stderr)
        return INVALID_INPUT_EXIT_CODE

    # Initialize logger
    logger = Logger(
        verbosity=args.verbosity or settings.log_verbosity,
        log_file_path=Path(args.log_file_path) if args.log_file_path else None,
        log_to_file=not args.no_log_file,
        max_bytes=args.log_max_size or settings.log_max_bytes,
        backup_count=args.log_backup_count or settings.log_backup_count,
    )
    output = Output(json_mode=args.json, schema_version=settings.schema_version)

    logger.debug(f"Starting nonlevel command '{args.command}'")

    # Instantiate and execute the selected command
    try:
        command_class = args.func
        command_instance = command_class(args, logger, settings, output)
        exit_code = command_instance.execute()
    except InvalidInputError as e:
        logger.error(str(e))
        exit_code = INVALID_INPUT_EXIT_CODE
    except InvariantError as e:
        logger.critical(f"Internal invariant failed (this is a bug): {e}")
        exit_code = INTERNAL_ERROR_EXIT_CODE
    except Exception as e:
        logger.critical(f"An unexpected error occurred: {e}")
        logger.debug("Traceback:", exc_info=True)
        exit_code = INTERNAL_ERROR_EXIT_CODE
    finally:
        logger.close()

    return exit_code


if __name__ == "__main__":
    sys.exit(main())

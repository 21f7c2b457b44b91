#!/usr/bin/env python3
"""
AlgInt Certify - Command Line
Reads problem instances, runs the matching certifier and emits canonical certificates
Exit codes: 0 verdict reached, 1 input or precondition error, 2 Inconclusive
"""

import os
import sys
import logging
import argparse
from typing import List, Optional

from rich.console import Console
from rich.table import Table

from config import Config
from backend.dispatcher import InstanceDispatcher, InstanceOptions
from modules.codec import certificate_text, read_certificate, write_certificate
from modules.errors import AlgIntError, InvalidArgument
from modules.kind_resolver import KindResolver
from modules.exact_core import configure_cyclotomic_cache, save_cyclotomic_cache
from modules.report import explain_certificate, render_certificate
from modules.workflow_manager import WorkflowManager

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(config: Config, verbose: bool = False) -> None:
    """
    Configure logging on stderr, plus a log file when one is configured

    Args:
        config: Configuration object
        verbose: Lower the level to DEBUG
    """
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.log_file:
        handlers.append(logging.FileHandler(config.log_file, encoding="utf-8"))
    level = logging.DEBUG if verbose else getattr(logging, config.log_level, logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="config.json", help="configuration file")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")

    run_options = argparse.ArgumentParser(add_help=False, parents=[common])
    run_options.add_argument("--out", help="write the certificate to this path")
    run_options.add_argument("--window", type=int, help="window size N or J")
    run_options.add_argument("--nmax", type=int, help="series search limit for fatou")
    run_options.add_argument("--precision", type=int, help="bits of the height enclosures")
    output = run_options.add_mutually_exclusive_group()
    output.add_argument("--json", dest="output", action="store_const", const="json", help="canonical JSON (default)")
    output.add_argument("--text", dest="output", action="store_const", const="text", help="human-readable summary")
    run_options.set_defaults(output="json")

    parser = argparse.ArgumentParser(prog="algint", description="Certify integrality of algebraic numbers")
    commands = parser.add_subparsers(dest="command", required=True)

    groups = {}
    for (command, sub), kind in KindResolver().subcommand_kinds().items():
        if sub is None:
            p = commands.add_parser(command, parents=[run_options], help=f"run a {kind} instance")
        else:
            if command not in groups:
                group = commands.add_parser(command, help=f"{command} subcommands")
                groups[command] = group.add_subparsers(dest="subcommand", required=True)
            p = groups[command].add_parser(sub, parents=[run_options], help=f"run a {kind} instance")
        p.add_argument("instance", help="instance JSON file")
        p.set_defaults(kind=kind)

    p = commands.add_parser("run", parents=[run_options], help="run an instance of any kind")
    p.add_argument("instance", help="instance JSON file")
    p.set_defaults(kind=None)

    p = commands.add_parser("explain", parents=[common], help="explain a certificate")
    p.add_argument("certificate", help="certificate JSON file")

    p = commands.add_parser("batch", parents=[common], help="certify every instance of a directory")
    p.add_argument("directory", help="directory of instance JSON files")
    p.add_argument("--jobs", type=int, help="worker threads (defaults to max_parallel_tasks)")
    return parser


def _overrides(args: argparse.Namespace) -> InstanceOptions:
    return InstanceOptions(window=args.window, n_max=args.nmax, precision_bits=args.precision)


def _run_instance(args: argparse.Namespace, config: Config) -> int:
    dispatcher = InstanceDispatcher(config)
    certificate = dispatcher.run_file(args.instance, _overrides(args), expected_kind=args.kind)
    text = certificate_text(certificate)
    if args.out:
        write_certificate(certificate, args.out)
    if args.output == "text":
        sys.stdout.write(render_certificate(certificate))
    elif not args.out:
        sys.stdout.write(text)
    return certificate.exit_code


def _run_batch(args: argparse.Namespace, config: Config) -> int:
    dispatcher = InstanceDispatcher(config)
    manager = WorkflowManager(config, runner=dispatcher.run_file)
    if args.jobs is not None:
        status = manager.set_batch_config(args.jobs)
        if not status["success"]:
            raise InvalidArgument(status["message"])
    results = manager.run_directory(args.directory)
    status = manager.get_workflow_status()

    verdicts = ", ".join(f"{verdict} {count}" for verdict, count in status["verdicts"].items())
    table = Table(
        title=f"Batch {os.path.basename(os.path.abspath(args.directory))}",
        caption=f"{status['certified']} certified, {status['failed']} failed" + (f" ({verdicts})" if verdicts else ""),
    )
    for column in ("instance", "kind", "verdict", "witnesses", "error"):
        table.add_column(column)
    for row in manager.summary_rows(results):
        table.add_row(*row)
    Console(file=sys.stdout, width=120).print(table)
    return status["exit_code"]


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point

    Args:
        argv: Arguments without the program name (sys.argv when None)

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    try:
        config = Config(config_file=args.config)
    except AlgIntError as e:
        sys.stderr.write(e.describe() + "\n")
        return 1
    configure_logging(config, args.verbose)
    configure_cyclotomic_cache(config.cyclotomic_cache_dir)

    try:
        if args.command == "explain":
            sys.stdout.write(explain_certificate(read_certificate(args.certificate)))
            return 0
        if args.command == "batch":
            return _run_batch(args, config)
        return _run_instance(args, config)
    except AlgIntError as e:
        logger.debug(f"{e.code} details: {e.details}")
        sys.stderr.write(e.describe() + "\n")
        return 1
    finally:
        save_cyclotomic_cache()


if __name__ == "__main__":
    sys.exit(main())

"""
main.py

Module for the ``sdfnoc`` console script.

Implements:

- build_parser: the argparse parser with one sub-command per design step.
- main: run a sub-command, map library errors to exit code 1.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from sdfnoc import __version__
from sdfnoc.cli import commands
from sdfnoc.exceptions import SdfNocError

logger = logging.getLogger(__name__)

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdfnoc",
        description="Merge dataflow applications onto a reconfigurable circuit-switched mesh NoC.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and check artifact files")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("merge", help="merge application graphs into a union file")
    p.add_argument("files", nargs="*", help="application graphs, in application id order")
    p.add_argument("--project", help="take the graphs and seed from a project file")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.add_argument(
        "--random-packing",
        action="store_true",
        help="shuffle the packing combination order with --seed",
    )

    p = sub.add_parser("pnr", help="place and route a union file")
    p.add_argument("union")
    p.add_argument("--mesh", help="RxC; defaults to the project's")
    p.add_argument("--project", help="take the mesh and seed from a project file")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-rip-up", type=int, default=50)
    p.add_argument("--out")

    p = sub.add_parser("config", help="write the configuration of one application")
    p.add_argument("pnr")
    p.add_argument("--app", required=True, help="application id or name")
    p.add_argument("--out")

    p = sub.add_parser("simulate", help="simulate one application on the configured NoC")
    p.add_argument("pnr")
    p.add_argument("streams")
    p.add_argument("--app", required=True, help="application id or name")
    p.add_argument("--delay-max", type=int, default=0)
    p.add_argument("--project", help="take the seed from a project file")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--trace", help="write the link traversal trace here")

    p = sub.add_parser("report", help="area report")
    p.add_argument("project", nargs="?")
    p.add_argument("--mode", choices=("model", "given"), default="model")
    p.add_argument("--areas")
    p.add_argument("--standalone", type=int, nargs="+")
    p.add_argument("--reconfigurable", type=int)

    p = sub.add_parser("export-dot", help="DOT source of a graph, union or PnR file")
    p.add_argument("artifact")
    p.add_argument("--out")
    return parser


def _run(args: argparse.Namespace) -> str:
    if args.command == "merge":
        return commands.cmd_merge(
            args.files, args.out, args.seed, args.random_packing, args.project
        )
    if args.command == "pnr":
        return commands.cmd_pnr(
            args.union, args.mesh, args.seed, args.max_rip_up, args.out, args.project
        )
    if args.command == "config":
        return commands.cmd_config(args.pnr, args.app, args.out)
    if args.command == "simulate":
        return commands.cmd_simulate(
            args.pnr,
            args.app,
            args.streams,
            args.delay_max,
            args.seed,
            args.out,
            args.trace,
            project=args.project,
        )
    if args.command == "report":
        report = commands.cmd_report(
            args.project, args.mode, args.areas, args.standalone, args.reconfigurable
        )
        return report.format_report()
    return commands.cmd_export_dot(args.artifact, args.out)


def _validate(files: Sequence[str]) -> int:
    diagnostics = commands.cmd_validate(files)
    for diagnostic in diagnostics:
        print(diagnostic, file=sys.stdout if diagnostic.ok else sys.stderr)
    return 0 if all(d.ok for d in diagnostics) else 1


def main(argv: Sequence[str] | None = None) -> int:
    """
    Entry point of the ``sdfnoc`` script.

    Returns
    -------
    int
        0 on success, 1 on a library, file or input error (for ``validate``:
        on any file that does not pass). Usage errors exit
        with 2 through argparse.
    """
    args = build_parser().parse_args(argv)
    level = _LOG_LEVELS[min(args.verbose, len(_LOG_LEVELS) - 1)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "validate":
        return _validate(args.files)
    try:
        text = _run(args)
    except (SdfNocError, OSError, ValueError) as err:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"error: {err}", file=sys.stderr)
        return 1
    writes_file = getattr(args, "out", None) is not None
    if not writes_file or args.command == "report":
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

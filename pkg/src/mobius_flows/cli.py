"""Command line front end: ``census``, ``table``, ``verify``, ``export``."""
from __future__ import annotations

import argparse
import logging
import sys

from .catalog import build_catalog, diff_against_expected, export_diagram, load_catalog, render_counts_table
from .catalog import save_catalog, write_atomic
from .enumeration import MAX_POINTS
from .errors import ArgumentError, NotFoundError, StructuralError

EXIT_OK, EXIT_HARD_MISMATCH, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_BAD_INPUT = 0, 1, 2, 3, 4


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mobius-flows",
                                description="Census of Morse flows and their bifurcations on the Möbius strip.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="enumerate everything and write a catalog")
    c.add_argument("--max-points", type=int, default=MAX_POINTS)
    c.add_argument("--out", help="catalog file (default: standard output)")

    t = sub.add_parser("table", help="print the count table of a catalog")
    t.add_argument("--catalog", required=True)

    v = sub.add_parser("verify", help="compare catalog counts with the published values")
    v.add_argument("--catalog", required=True)

    e = sub.add_parser("export", help="write one diagram of a catalog")
    e.add_argument("--catalog", required=True)
    e.add_argument("--code", required=True, help="canonical code in hex")
    e.add_argument("--format", choices=("json", "graph-text"), default="json")
    e.add_argument("--out", help="output file (default: standard output)")
    return p


def _emit(text: str, out: str | None):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "census":
            catalog = build_catalog(args.max_points)
            if args.out:
                save_catalog(catalog, args.out)
            else:
                sys.stdout.write(catalog.dumps())
            return EXIT_OK
        catalog = load_catalog(args.catalog)
        if args.command == "table":
            sys.stdout.write(render_counts_table(catalog))
            return EXIT_OK
        if args.command == "verify":
            report = diff_against_expected(catalog)
            sys.stdout.write(report.render())
            return report.exit_status
        _emit(export_diagram(catalog, args.code, args.format), args.out)
        return EXIT_OK
    except NotFoundError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StructuralError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: render a timing figure from a benchmark CSV.

Exit codes: 0 success, 1 empty selection, 2 usage or unreadable input.
"""

from __future__ import annotations

import argparse
import sys

from .records import EmptySelectionError, SchemaError
from .render import render

EXIT_OK = 0
EXIT_EMPTY = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="benchplot",
        description="Render permanent-engine timing curves from a benchmark CSV",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    p_render = subs.add_parser("render", help="one figure: time vs order, a line per engine")
    p_render.add_argument("--csv", required=True, help="benchmark CSV file")
    p_render.add_argument("--weight", required=True, type=int, help="column weight to plot")
    p_render.add_argument("--out", required=True, help="output image path (.png)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        series = render(args.csv, args.weight, args.out)
    except EmptySelectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    engines = ", ".join(s.engine for s in series)
    print(f"wrote {args.out} ({len(series)} series: {engines})")
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

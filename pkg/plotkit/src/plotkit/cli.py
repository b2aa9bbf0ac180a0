"""render <csv> --kind <figure2|figure4|frontier> --out <image>"""

from __future__ import annotations

import argparse
import sys

from .render import PlotSpec, SchemaError, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="render", description=__doc__)
    parser.add_argument("csv", help="input CSV produced by the steerdemon CLI")
    parser.add_argument("--kind", required=True, choices=["figure2", "figure4", "frontier"])
    parser.add_argument("--out", required=True, help="output image path (png, pdf, svg, ...)")
    parser.add_argument("--pair", default="xz", help="measurement pair to draw from a figure4 CSV")
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument("--title", default=None)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = render(
            PlotSpec(csv_path=args.csv, kind=args.kind, out_path=args.out,
                     pair=args.pair, dpi=args.dpi, title=args.title)
        )
    except OSError as exc:
        print(f"render: i/o error: {exc}", file=sys.stderr)
        return 2
    except (SchemaError, ValueError) as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 1
    print(f"{result.out_path} ({len(result.series)} series)")
    return 0


if __name__ == "__main__":
    sys.exit(main())

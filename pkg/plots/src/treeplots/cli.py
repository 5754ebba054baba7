"""`treeplots render --csv F --kind K --out F.png|svg`"""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="treeplots",
        description="Render experiment CSV logs to static figures.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render")
    p.add_argument("--csv", required=True, help="input CSV log")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--out", required=True, help="output image (.png or .svg)")
    args = parser.parse_args(argv)

    try:
        result = render(args.csv, args.kind, args.out)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    note = f" alpha={result.alpha:.6f}" if result.alpha is not None else ""
    print(f"wrote {result.out_path} ({result.points} points){note}",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Regenerate every dataset (and, if plotkit is installed, the figures).

Writes figure2.csv, figure4.csv, frontier.csv plus two steering
verdicts into ./out (override with --out-dir), then renders PNGs next
to them when the plotkit package is importable.
"""

import argparse
import subprocess
import sys
from pathlib import Path


def run(cmd):
    print("+", " ".join(str(c) for c in cmd))
    subprocess.run([str(c) for c in cmd], check=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out")
    parser.add_argument("--grid-n", type=int, default=1000)
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    cli = [sys.executable, "-m", "steerdemon.cli"]
    run(cli + ["figure2", "--out", out / "figure2.csv"])
    run(cli + ["figure4", "--out", out / "figure4.csv"])
    run(cli + ["frontier", "--grid-n", args.grid_n, "--out", out / "frontier.csv"])
    run(cli + ["steer-check", "--family", "1", "0", "--grid-n", args.grid_n,
               "--out", out / "steer_bell.json"])
    run(cli + ["steer-check", "--family", "0", "-0.5", "--grid-n", args.grid_n,
               "--out", out / "steer_classical.json"])

    try:
        import plotkit  # noqa: F401
    except ImportError:
        print("plotkit not installed; skipping figure rendering")
        return
    render = [sys.executable, "-m", "plotkit.cli"]
    for kind in ("figure2", "figure4", "frontier"):
        run(render + [out / f"{kind}.csv", "--kind", kind, "--out", out / f"{kind}.png"])


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Run the preset experiment sweeps and drop one CSV per figure.

Usage:
    python scripts/run_figures.py --outdir results
    python scripts/run_figures.py --only fig1 fig6
"""

from __future__ import annotations

import argparse
import os
import time

from bwalloc.experiments import FIGURE_NAMES, run_figure


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results", help="output directory")
    parser.add_argument(
        "--only", nargs="*", choices=list(FIGURE_NAMES), help="subset of presets to run"
    )
    args = parser.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    names = args.only or list(FIGURE_NAMES)
    for name in names:
        start = time.time()
        _, rows, path = run_figure(name, os.path.join(args.outdir, f"{name}.csv"))
        print(f"{name}: {len(rows)} rows -> {path} ({time.time() - start:.1f}s)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

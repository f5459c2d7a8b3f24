"""Write every preset grid and variant to CSV.

Usage: python3 scripts/reproduce_figures.py [outdir] [--threads N]
"""

import argparse
import time
from pathlib import Path

from wgqed.presets import PRESET_NAMES, preset
from wgqed.sweep import export, run_sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", nargs="?", default="figures")
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    for name in PRESET_NAMES:
        p = preset(name)
        grids = {None: p.grid, **p.variants}
        for variant, grid in grids.items():
            t0 = time.perf_counter()
            result = run_sweep(grid, workers=args.threads)
            stem = name if variant is None else f"{name}_{variant}"
            path = export(result, out / f"{stem}.csv")
            flagged = sum(r.amps is None for r in result.rows)
            print(f"{stem:<18} {len(result.rows):>7} rows  {flagged} singular  "
                  f"{time.perf_counter() - t0:5.1f}s  -> {path}")


if __name__ == "__main__":
    main()

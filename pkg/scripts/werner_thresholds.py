"""Scan the zero crossing x*(q) of the Werner conditional entropy and print the criterion table."""

import argparse
import csv
import sys
from dataclasses import dataclass

from nonadditive.werner import criterion_table, default_scan_grid, threshold_scan


@dataclass(frozen=True)
class ScanConfig:
    q_min: float = 0.2
    q_max: float = 1e6
    points: int = 40
    out: str | None = None


def run(cfg: ScanConfig) -> None:
    points = threshold_scan(default_scan_grid(cfg.q_min, cfg.q_max, cfg.points))
    fh = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    writer = csv.writer(fh)
    writer.writerow(["q", "x_star", "residual"])
    for p in points:
        writer.writerow([f"{p.q:.12g}", f"{p.x_star:.12g}", f"{p.solver_residual:.3g}"])
    if cfg.out:
        fh.close()
    table = criterion_table(cfg.q_max, cfg.points)
    print("\nthresholds (x above which the state is flagged entangled):", file=sys.stderr)
    for name, value in table.rows():
        print(f"  {name:<32s} {value:.12f}", file=sys.stderr)
    print(f"  ordered: {table.ordered()}", file=sys.stderr)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q-min", type=float, default=ScanConfig.q_min)
    ap.add_argument("--q-max", type=float, default=ScanConfig.q_max)
    ap.add_argument("--points", type=int, default=ScanConfig.points)
    ap.add_argument("--out")
    run(ScanConfig(**vars(ap.parse_args())))

"""Monte Carlo check that the conditional Tsallis entropy is nonnegative on random separable states."""

import argparse
import json
import time
from dataclasses import dataclass, field

from nonadditive.constants import DEFAULT_Q_GRID
from nonadditive.quantum_entropy import separable_positivity_experiment


@dataclass(frozen=True)
class PositivityRun:
    samples: int = 10_000
    seed: int = 42
    q_grid: tuple[float, ...] = field(default=DEFAULT_Q_GRID)
    inject_singlet: bool = True


def run(cfg: PositivityRun) -> int:
    t0 = time.perf_counter()
    summary = separable_positivity_experiment(cfg.samples, cfg.q_grid, cfg.seed, inject_singlet=cfg.inject_singlet)
    result = summary.to_dict() | {"seconds": round(time.perf_counter() - t0, 2)}
    print(json.dumps(result, indent=2))
    return 0 if summary.passed else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=PositivityRun.samples)
    ap.add_argument("--seed", type=int, default=PositivityRun.seed)
    ap.add_argument("--no-singlet", action="store_true")
    a = ap.parse_args()
    raise SystemExit(run(PositivityRun(a.samples, a.seed, inject_singlet=not a.no_singlet)))

"""Exit criteria for the package, one test per criterion.

Each test appends a PASS/FAIL line that pytest prints in an "acceptance
criteria" section.  ``python tests/test_acceptance.py`` runs them directly.
"""

import math
import time

import numpy as np
import pytest

from nonadditive.axioms import run_axiom_suite
from nonadditive.constants import DEFAULT_Q_GRID
from nonadditive.quantum_entropy import (
    conditional_quantum,
    ensemble_conditional,
    quantum_tsallis,
    separable_positivity_experiment,
    von_neumann,
)
from nonadditive.quantum_state import assemble_separable, pure_state, random_density_matrix, random_ensemble, tensor, werner_popescu
from nonadditive.werner import BELL_BOUND, ONE_THIRD, criterion_table, default_scan_grid, ppt_sign_flip, threshold, threshold_scan, werner_cond_entropy

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {n}. {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_1_von_neumann_threshold():
    t0 = time.perf_counter()
    x = threshold(1.0).x_star
    dt = time.perf_counter() - t0
    record(1, "von Neumann threshold", abs(x - 0.748) <= 1e-3 and dt < 1.0, f"x* = {x:.9f} in {dt:.3f}s")


def test_2_large_q_limit():
    t0 = time.perf_counter()
    x_1000 = threshold(1e3).x_star
    xs = [p.x_star for p in threshold_scan(default_scan_grid(q_max=1e6))]
    dt = time.perf_counter() - t0
    monotone = all(b < a for a, b in zip(xs, xs[1:]))
    floor = min(xs) > ONE_THIRD
    ok = abs(x_1000 - ONE_THIRD) <= 1e-3 and monotone and floor and dt < 5.0
    record(2, "q -> infinity limit", ok,
           f"x*(1e3) - 1/3 = {x_1000 - ONE_THIRD:.3e}, monotone={monotone}, "
           f"min x* - 1/3 = {min(xs) - ONE_THIRD:.3e}, {dt:.3f}s")


def test_3_ppt_agreement():
    flip = ppt_sign_flip()
    table = criterion_table()
    ok = abs(flip - ONE_THIRD) <= 1e-9 and abs(table.q_infinity_limit - flip) <= 1e-9
    record(3, "PPT agreement", ok,
           f"PPT flip - 1/3 = {flip - ONE_THIRD:.2e}, extrapolated entropy limit - flip = "
           f"{table.q_infinity_limit - flip:.2e}")


def test_4_criterion_ordering():
    t = criterion_table()
    ok = t.ordered(1e-9) and t.bell_bound == pytest.approx(1 / math.sqrt(2)) and BELL_BOUND < t.von_neumann_zero
    record(4, "criterion ordering", ok,
           f"{t.q_infinity_limit:.9f} = {t.ppt_threshold:.9f} < {t.bell_bound:.6f} < {t.von_neumann_zero:.6f}")


def test_5_closed_form_consistency():
    worst = 0.0
    for q in DEFAULT_Q_GRID:
        for x in np.linspace(0, 1, 50):
            closed = werner_cond_entropy(x, q)
            pipe = conditional_quantum(werner_popescu(x), q).value
            # absolute for |S| <= 1, relative beyond (|S| reaches ~1e58 at q = 200)
            worst = max(worst, abs(closed - pipe) / max(1.0, abs(closed)))
    record(5, "closed form vs spectral pipeline", worst <= 1e-10, f"max scaled deviation {worst:.2e} on 50x8 grid")


def test_6_identity_suite():
    reports = run_axiom_suite(DEFAULT_Q_GRID, trials=1000, seed=0)
    classical = [r for r in reports if r.axiom_id != "quantum II*"]
    failed = [f"{r.axiom_id}@q={r.q}" for r in classical if not r.passed]
    exact = all(r.max_violation == 0.0 for r in classical if r.axiom_id == "III*")
    worst = max(r.max_violation for r in classical if r.axiom_id in ("II*", "correspondence", "pseudoadditivity"))
    ok = not failed and exact and worst <= 1e-12 and all(r.trials >= 1000 for r in classical)
    record(6, "identity suite", ok, f"worst identity deviation {worst:.2e}, expansibility exact={exact}, failed={failed}")


def test_7_separable_positivity():
    t0 = time.perf_counter()
    s = separable_positivity_experiment(10_000, DEFAULT_Q_GRID, seed=42, inject_singlet=True)
    dt = time.perf_counter() - t0
    control_ok = abs(s.control_value + math.log(2)) <= 1e-10
    ok = s.violations == 0 and s.min_value >= -1e-10 and control_ok and dt < 30.0
    record(7, "separable positivity", ok,
           f"{s.n_samples} samples x 2 arms, violations={s.violations}, min={s.min_value:.3e}, "
           f"singlet control={s.control_value:.12f}, {dt:.1f}s")


def test_8_ensemble_pipeline_equivalence():
    worst = 0.0
    for i in range(1000):
        rng = np.random.default_rng(1_000_000 + i)
        e = random_ensemble(rng, int(rng.integers(1, 5)))
        s = assemble_separable(e)
        for q in DEFAULT_Q_GRID:
            worst = max(worst, abs(ensemble_conditional(e, q) - conditional_quantum(s, q).value))
    record(8, "ensemble formula vs spectral pipeline", worst <= 1e-10, f"max deviation {worst:.2e} over 1000 ensembles")


def test_9_limits():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(100):
        rho = random_density_matrix(int(rng.integers(2, 7)), rng)
        vn = von_neumann(rho)
        for d in (1e-10, -1e-10):
            worst = max(worst, abs(quantum_tsallis(rho, 1 + d) - vn))
    pures = [werner_popescu(1.0), tensor(np.diag([1.0, 0.0]), np.full((2, 2), 0.5))]
    pures += [pure_state(rng.standard_normal(6) + 1j * rng.standard_normal(6), 2, 3) for _ in range(20)]
    exact = all(quantum_tsallis(s.rho, q) == 0.0 for s in pures for q in DEFAULT_Q_GRID)
    record(9, "q -> 1 and pure-state limits", worst <= 1e-8 and exact,
           f"max |S_q - S_vN| at q = 1 +- 1e-10: {worst:.2e}, pure states exactly 0: {exact}")


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)

"""Randomized numerical checks of the generalized Shannon-Khinchin axioms.

Each check returns an :class:`AxiomReport`.  A report that passed means the
identity held at the stated tolerance on the sampled inputs; it is evidence,
not a proof.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .classical import (
    _tsallis,
    as_joint_dist,
    as_prob_dist,
    check_q,
    compose_pseudoadditive,
    conditional_tsallis,
    conditional_via_ratio,
    uniform,
)
from .constants import DEFAULT_Q_GRID
from .quantum_entropy import conditional_quantum, quantum_tsallis
from .quantum_state import partial_trace, werner_popescu

TOL_IDENTITY = 1e-12
TOL_QUANTUM = 1e-10


@dataclass(frozen=True)
class AxiomReport:
    axiom_id: str
    trials: int
    max_violation: float
    tolerance: float
    passed: bool
    q: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def _report(axiom_id: str, violations: Iterable[float], tolerance: float, q: float | None) -> AxiomReport:
    v = list(violations)
    worst = float(max(v))
    return AxiomReport(axiom_id, len(v), worst, tolerance, worst <= tolerance, q)


def merge(reports: Sequence[AxiomReport]) -> AxiomReport:
    """Combine reports of the same axiom (and q) into one."""
    first = reports[0]
    worst = max(r.max_violation for r in reports)
    return AxiomReport(first.axiom_id, sum(r.trials for r in reports), worst, first.tolerance,
                       all(r.passed for r in reports), first.q)


def check_max_at_uniform(W: int, q, trials: int, seed: int, extra: Sequence = ()) -> AxiomReport:
    """[I]*: no distribution on W outcomes beats the uniform one.

    ``max_violation`` is the largest ``S_q(p) - S_q(uniform)`` seen, normally <= 0.
    Distributions in ``extra`` are checked in addition to the random draws.
    """
    q = check_q(q)
    if W < 2 or trials < 1:
        raise ValueError("need W >= 2 and trials >= 1")
    rng = np.random.default_rng(seed)
    top = _tsallis(uniform(W), q)
    samples = [as_prob_dist(p) for p in extra] + list(rng.dirichlet(np.ones(W), size=trials))
    return _report("I*", (_tsallis(p, q) - top for p in samples), TOL_IDENTITY, q)


def check_composition(joint, q) -> AxiomReport:
    """[II]*: the flattened joint entropy equals the composition of S_q[A] and S_q[B|A]."""
    q = check_q(q)
    j = as_joint_dist(joint)
    lhs = _tsallis(j.ravel(), q)
    rhs = compose_pseudoadditive(_tsallis(j.sum(axis=1), q), conditional_tsallis(j, q), q)
    return _report("II*", [abs(lhs - rhs)], TOL_IDENTITY, q)


def check_correspondence(joint, q) -> AxiomReport:
    """q-expectation form and ratio form of the conditional entropy agree."""
    q = check_q(q)
    return _report("correspondence", [abs(conditional_tsallis(joint, q) - conditional_via_ratio(joint, q))],
                   TOL_IDENTITY, q)


def check_expansibility(p, q) -> AxiomReport:
    # exact: zero entries never enter the sums
    q = check_q(q)
    p = as_prob_dist(p)
    padded = np.append(p, 0.0)
    diff = abs(_tsallis(p, q) - _tsallis(padded, q))
    return _report("III*", [diff], 0.0, q)


def check_pseudoadditivity_product(pA, pB, q) -> AxiomReport:
    q = check_q(q)
    pA, pB = as_prob_dist(pA), as_prob_dist(pB)
    s_a, s_b = _tsallis(pA, q), _tsallis(pB, q)
    s_ab = _tsallis(np.outer(pA, pB).ravel(), q)
    return _report("pseudoadditivity", [abs(s_ab - compose_pseudoadditive(s_a, s_b, q))], TOL_IDENTITY, q)


def check_quantum_composition(x_grid: Sequence[float], q) -> AxiomReport:
    """Quantum [II]* on the Werner family, built from spectral entropies."""
    q = check_q(q)
    diffs = []
    for x in x_grid:
        s = werner_popescu(x)
        s_ab = quantum_tsallis(s.rho, q)
        s_a = quantum_tsallis(partial_trace(s, over="B"), q)
        s_cond = conditional_quantum(s, q, given="A").value
        # scale by the largest summand: at large q the cross term nearly cancels s_cond
        scale = max(1.0, abs(s_ab), abs(s_a), abs(s_cond), abs((1.0 - q) * s_a * s_cond))
        diffs.append(abs(s_ab - compose_pseudoadditive(s_a, s_cond, q)) / scale)
    return _report("quantum II*", diffs, TOL_QUANTUM, q)


def _random_joint(rng: np.random.Generator, max_dim: int = 5) -> np.ndarray:
    W, W2 = rng.integers(2, max_dim + 1, size=2)
    j = rng.dirichlet(np.ones(W * W2)).reshape(W, W2)
    if rng.random() < 0.2:
        # occasionally a zero-mass row
        j[rng.integers(W)] = 0.0
        j /= j.sum()
    return j


def run_axiom_suite(q_grid: Sequence[float] = DEFAULT_Q_GRID, trials: int = 1000, seed: int = 0) -> list[AxiomReport]:
    """All checks over ``trials`` random inputs for every q; one merged report per (check, q)."""
    reports = []
    for k, q in enumerate(q_grid):
        rng = np.random.default_rng(seed + k)
        W = int(rng.integers(2, 8))
        reports.append(check_max_at_uniform(W, q, trials, seed + k, extra=[uniform(W)]))
        comp, corr, expa, pseudo = [], [], [], []
        for _ in range(trials):
            j = _random_joint(rng)
            comp.append(check_composition(j, q))
            corr.append(check_correspondence(j, q))
            expa.append(check_expansibility(rng.dirichlet(np.ones(rng.integers(1, 8))), q))
            pseudo.append(check_pseudoadditivity_product(rng.dirichlet(np.ones(rng.integers(1, 6))),
                                                          rng.dirichlet(np.ones(rng.integers(1, 6))), q))
        reports += [merge(comp), merge(corr), merge(expa), merge(pseudo)]
        reports.append(check_quantum_composition(np.linspace(0.0, 1.0, 21), q))
    return reports

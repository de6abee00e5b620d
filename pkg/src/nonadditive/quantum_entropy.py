"""Quantum Tsallis / von Neumann entropies, the q-conditional entropy and the PPT test."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .classical import _shannon, _tsallis, check_q, q_expectation_grid, ratio_conditional, ratio_conditional_grid, tsallis_grid
from .constants import DEFAULT_Q_GRID, EPS_PSD, EPS_Q
from .quantum_state import (
    BipartiteState,
    SeparableEnsemble,
    _side,
    partial_trace,
    partial_transpose,
    random_density_matrices,
    random_ensemble,
    spectrum,
    validate,
    werner_popescu,
)


def quantum_tsallis(rho, q) -> float:
    """``(Tr rho**q - 1) / (1 - q)`` over the snapped spectrum."""
    q = check_q(q)
    return _tsallis(spectrum(validate(rho)), q)


def von_neumann(rho) -> float:
    return _shannon(spectrum(validate(rho)))


@dataclass(frozen=True)
class ConditionalEntropyReport:
    q: float
    value: float
    conditioned_on: str
    s_joint: float
    s_marginal: float

    @property
    def entangled(self) -> bool:
        # negative conditional entropy is impossible for separable states
        return self.value < -EPS_PSD


def _conditional_from_spectra(joint: np.ndarray, marginal: np.ndarray, q: float, given: str) -> ConditionalEntropyReport:
    return ConditionalEntropyReport(
        q=q,
        value=ratio_conditional(joint, marginal, q),
        conditioned_on=given,
        s_joint=_tsallis(joint, q),
        s_marginal=_tsallis(marginal, q),
    )


def _spectra(s: BipartiteState, given: str) -> tuple[np.ndarray, np.ndarray]:
    other = "B" if given == "A" else "A"
    return spectrum(s.rho), spectrum(partial_trace(s, over=other))


def conditional_quantum(s: BipartiteState, q, given: str = "A") -> ConditionalEntropyReport:
    """Nonadditive conditional entropy of the unconditioned side given ``given``.

    ``value = (S_q[rho_AB] - S_q[rho_given]) / (1 + (1-q) S_q[rho_given])``.
    At q = 1 this is the conditional von Neumann entropy ``S[AB] - S[given]``.
    """
    q = check_q(q)
    given = _side(given)
    joint, marginal = _spectra(s, given)
    return _conditional_from_spectra(joint, marginal, q, given)


def ensemble_conditional(e: SeparableEnsemble, q) -> float:
    """Conditional entropy of B given A computed from the ensemble data directly.

    With ``c(a) = sum_k w_k pA_k(a)`` and ``pi(b|a) = sum_k w_k pA_k(a) pB_k(b) / c(a)``,
    returns the ``c(a)**q``-weighted average of the Tsallis entropies of
    ``pi(.|a)``.  Outcomes with ``c(a) == 0`` are skipped.
    """
    return float(ensemble_conditional_grid(e, [check_q(q)])[0])


def ensemble_conditional_grid(e: SeparableEnsemble, qs) -> np.ndarray:
    qs = np.asarray(qs, dtype=float)
    joint = e.joint_weights()
    c = joint.sum(axis=1)
    keep = np.flatnonzero(c > 0)
    pi = joint[keep] / c[keep, None]
    entropies = np.column_stack([tsallis_grid(row, qs) for row in pi])
    return q_expectation_grid(c[keep], entropies, qs)


@dataclass(frozen=True)
class PptVerdict:
    min_eig: float
    is_ppt: bool


def ppt_test(s: BipartiteState) -> PptVerdict:
    """Smallest eigenvalue of the partial transpose on B, and whether it is >= -EPS_PSD."""
    pt = partial_transpose(s, on="B")
    lo = float(np.linalg.eigvalsh(pt)[0])
    return PptVerdict(min_eig=lo, is_ppt=lo >= -EPS_PSD)


# -- Monte Carlo check of nonnegativity on separable states ----------------------------


@dataclass
class PositivitySummary:
    min_value: float
    violations: int
    n_samples: int
    q_grid: list[float]
    seed: int
    tolerance: float
    min_shared_basis: float
    min_general: float
    control_value: float | None = None
    control_q: float | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class PositivityConfig:
    n_samples: int = 10_000
    q_grid: Sequence[float] = DEFAULT_Q_GRID
    seed: int = 0
    dA: int = 2
    dB: int = 2
    max_terms: int = 4
    tolerance: float = -1e-10
    inject_singlet: bool = False
    ensemble_factory: Callable[[np.random.Generator], SeparableEnsemble] | None = field(default=None, repr=False)


def _general_state(rng: np.random.Generator, n_terms: int, dA: int, dB: int) -> BipartiteState:
    w = rng.dirichlet(np.ones(n_terms))
    rA = random_density_matrices(dA, rng, n_terms)
    rB = random_density_matrices(dB, rng, n_terms)
    rho = np.einsum("k,kac,kbd->abcd", w, rA, rB).reshape(dA * dB, dA * dB)
    return BipartiteState(rho, dA, dB)


def separable_positivity_experiment(n_samples: int = 10_000, q_grid: Sequence[float] = DEFAULT_Q_GRID,
                                    seed: int = 0, *, inject_singlet: bool = False,
                                    config: PositivityConfig | None = None) -> PositivitySummary:
    """Sample separable states and record the smallest conditional entropy seen.

    Sample ``i`` draws from ``default_rng(seed + i)``.  Each sample yields
    one shared-basis ensemble, evaluated through the ensemble formula, and one
    mixture of independently rotated product states, evaluated through the
    spectral route conditioned on both A and B.  Values below ``tolerance``
    count as violations.  With ``inject_singlet`` the singlet is evaluated
    at q = 1 as a sensitivity control (it is not counted as a violation).
    """
    cfg = config or PositivityConfig(n_samples=n_samples, q_grid=q_grid, seed=seed, inject_singlet=inject_singlet)
    if cfg.n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    qs = np.array([check_q(q) for q in cfg.q_grid])
    min_shared = np.inf
    min_general = np.inf
    violations = 0
    for i in range(cfg.n_samples):
        rng = np.random.default_rng(cfg.seed + i)
        if cfg.ensemble_factory is not None:
            ens = cfg.ensemble_factory(rng)
        else:
            ens = random_ensemble(rng, int(rng.integers(1, cfg.max_terms + 1)), cfg.dA, cfg.dB)
        shared = ensemble_conditional_grid(ens, qs)

        state = _general_state(rng, int(rng.integers(1, cfg.max_terms + 1)), cfg.dA, cfg.dB)
        joint = spectrum(state.rho)
        general = np.concatenate([
            ratio_conditional_grid(joint, spectrum(partial_trace(state, over="B")), qs),
            ratio_conditional_grid(joint, spectrum(partial_trace(state, over="A")), qs),
        ])

        violations += int(np.sum(shared < cfg.tolerance) + np.sum(general < cfg.tolerance))
        min_shared = min(min_shared, shared.min())
        min_general = min(min_general, general.min())

    summary = PositivitySummary(
        min_value=float(min(min_shared, min_general)),
        violations=int(violations),
        n_samples=cfg.n_samples,
        q_grid=qs.tolist(),
        seed=cfg.seed,
        tolerance=cfg.tolerance,
        min_shared_basis=float(min_shared),
        min_general=float(min_general),
    )
    if cfg.inject_singlet:
        summary.control_q = 1.0
        summary.control_value = singlet_control(1.0)
    return summary


def singlet_control(q: float = 1.0) -> float:
    return conditional_quantum(werner_popescu(1.0), q).value


"""Closed-form conditional entropy of the two-qubit Werner-Popescu family and its zero crossing."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from .classical import check_q
from .constants import EPS_Q, NEAR_ONE, DomainError
from .quantum_entropy import ppt_test
from .quantum_state import werner_popescu

# CHSH-violation boundary of the Werner family; quoted for comparison, not derived here.
BELL_BOUND = 1.0 / math.sqrt(2.0)
ONE_THIRD = 1.0 / 3.0


def _check_x(x) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"Werner parameter x must lie in [0, 1], got {x}")
    return x


def _terms(x: float) -> list[tuple[float, float]]:
    # (multiplicity / 2, eigenvalue ratio) pairs: a = (1-x)/2 three times, b = (1+3x)/2 once
    return [(1.5, (1.0 - x) / 2.0), (0.5, (1.0 + 3.0 * x) / 2.0)]


def werner_log_ratio(x: float, q) -> float:
    """``log(Tr rho_AB**q / Tr rho_A**q) = log(1.5 a**q + 0.5 b**q)`` for the Werner state.

    Strictly monotone in x for q != 1 and finite for every q, unlike the
    entropy itself, whose variation at large q can fall below double precision.
    """
    x = _check_x(x)
    q = check_q(q)
    log_t = -math.inf
    for c, p in _terms(x):
        if p > 0:
            log_t = np.logaddexp(log_t, math.log(c) + q * math.log(p))
    return float(log_t)


def werner_cond_entropy(x: float, q) -> float:
    """``S_q[B|A]`` of the Werner-Popescu state (equal to ``S_q[A|B]``).

    ``(1/(1-q)) * (1.5 a**q + 0.5 b**q - 1)`` with ``a = (1-x)/2``, ``b = (1+3x)/2``.
    Since ``1.5 a + 0.5 b = 1`` the bracket is rewritten as
    ``1.5 a expm1((q-1) ln a) + 0.5 b expm1((q-1) ln b)`` near q = 1; for q far
    from 1 the sum is taken in log space so large q neither underflows nor
    overflows.
    """
    x = _check_x(x)
    q = check_q(q)
    terms = _terms(x)
    if abs(q - 1.0) < EPS_Q:
        return -sum(c * p * math.log(p) for c, p in terms if p > 0)
    if abs(q - 1.0) <= NEAR_ONE:
        bracket = sum(c * p * math.expm1((q - 1.0) * math.log(p)) for c, p in terms if p > 0)
        return bracket / (1.0 - q)
    with np.errstate(over="ignore"):
        # beyond float range only at huge q and x near 1; the sign is still right
        return float(np.expm1(werner_log_ratio(x, q)) / (1.0 - q))


def bisect_sign_change(f: Callable[[float], float], lo: float, hi: float, max_iter: int = 200) -> float:
    """Locate the sign change of ``f`` on ``[lo, hi]`` (``f(lo) > 0 > f(hi)`` or the reverse).

    Halves the bracket until it can no longer shrink in floating point, then
    returns whichever endpoint has the smaller ``|f|``.
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo if abs(f_lo) <= abs(f_hi) else hi


@dataclass(frozen=True)
class ThresholdPoint:
    q: float
    x_star: float
    solver_residual: float


def threshold(q) -> ThresholdPoint:
    """Werner parameter at which the conditional entropy at index q crosses zero.

    The closed form decreases monotonically in x, is positive at x = 0 and
    negative at x = 1, so plain bisection always brackets the unique root.
    """
    q = check_q(q)
    f = lambda x: werner_cond_entropy(x, q)  # noqa: E731
    x_star = bisect_sign_change(f, 0.0, 1.0)
    return ThresholdPoint(q=q, x_star=x_star, solver_residual=abs(f(x_star)))


def threshold_scan(q_grid: Sequence[float]) -> list[ThresholdPoint]:
    return [threshold(q) for q in q_grid]


def default_scan_grid(q_min: float = 0.2, q_max: float = 1e6, n: int = 40, include_one: bool = True) -> list[float]:
    """Log-spaced q values; q = 1 is inserted so the von Neumann row is always present."""
    grid = set(np.logspace(math.log10(q_min), math.log10(q_max), n).tolist())
    if include_one:
        grid.add(1.0)
    return sorted(grid)


def large_q_limit(points: Sequence[ThresholdPoint]) -> float:
    """Richardson extrapolation of the two largest-q thresholds assuming ``x*(q) = x_inf + c/q``."""
    p1, p2 = sorted(points, key=lambda p: p.q)[-2:]
    return (p2.q * p2.x_star - p1.q * p1.x_star) / (p2.q - p1.q)


def ppt_sign_flip(lo: float = 0.0, hi: float = 1.0) -> float:
    """Werner parameter where the smallest partial-transpose eigenvalue changes sign."""
    return bisect_sign_change(lambda x: ppt_test(werner_popescu(x)).min_eig, lo, hi)


@dataclass(frozen=True)
class CriterionTable:
    bell_bound: float
    von_neumann_zero: float
    q_infinity_limit: float
    ppt_threshold: float

    def ordered(self, tol: float = 1e-9) -> bool:
        return (
            abs(self.q_infinity_limit - self.ppt_threshold) <= tol
            and self.ppt_threshold < self.bell_bound < self.von_neumann_zero
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def rows(self) -> list[tuple[str, float]]:
        return [
            ("q -> infinity (extrapolated)", self.q_infinity_limit),
            ("partial transpose", self.ppt_threshold),
            ("Bell inequality", self.bell_bound),
            ("conditional von Neumann (q = 1)", self.von_neumann_zero),
        ]


def criterion_table(q_max: float = 1e6, n: int = 40) -> CriterionTable:
    scan = threshold_scan(default_scan_grid(q_max=q_max, n=n))
    return CriterionTable(
        bell_bound=BELL_BOUND,
        von_neumann_zero=threshold(1.0).x_star,
        q_infinity_limit=large_q_limit(scan),
        ppt_threshold=ppt_sign_flip(),
    )

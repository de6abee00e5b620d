"""Shannon and Tsallis entropies of finite distributions, and the q-conditional entropy.

Distributions are plain 1-D numpy arrays, joint distributions 2-D arrays with
rows indexing subsystem A and columns subsystem B.  Zero entries are dropped
before any power or logarithm is taken, so ``0**q == 0`` and ``0 ln 0 == 0``.
"""

from __future__ import annotations

import math

import numpy as np

from .constants import EPS_NORM, EPS_Q, NEAR_ONE, DomainError, NullConditioningError, ValidationError


def check_q(q) -> float:
    q = float(q)
    if not np.isfinite(q) or q <= 0:
        raise DomainError(f"entropic index q must be a positive real, got {q}")
    return q


def _normalized(arr: np.ndarray, what: str) -> np.ndarray:
    if arr.size == 0:
        raise ValidationError(f"{what} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} has non-finite entries")
    if arr.min() < -EPS_NORM:
        raise ValidationError(f"{what} has a negative entry ({arr.min():.3g})")
    if arr.max() > 1 + EPS_NORM:
        raise ValidationError(f"{what} has an entry above 1 ({arr.max():.3g})")
    # fsum is exactly rounded, so padding with zeros cannot change the total
    total = math.fsum(arr.ravel())
    if abs(total - 1.0) > EPS_NORM:
        raise ValidationError(f"{what} sums to {float(total)!r}, not 1")
    arr = np.clip(arr, 0.0, None) / total
    arr.setflags(write=False)
    return arr


def as_prob_dist(p) -> np.ndarray:
    """Validate a probability vector and return it as a read-only float array."""
    arr = np.array(p, dtype=float)
    if arr.ndim != 1:
        raise ValidationError(f"probability distribution must be 1-D, got shape {arr.shape}")
    return _normalized(arr, "probability distribution")


def as_joint_dist(j) -> np.ndarray:
    """Validate a W x W' joint distribution (rows = A, columns = B)."""
    arr = np.array(j, dtype=float)
    if arr.ndim != 2:
        raise ValidationError(f"joint distribution must be 2-D, got shape {arr.shape}")
    return _normalized(arr, "joint distribution")


def uniform(W: int) -> np.ndarray:
    return np.full(W, 1.0 / W)


# -- power sums ------------------------------------------------------------
#
# Every entropy below is a function of the power sum sum(p**q).  The *_grid
# helpers evaluate it for a whole vector of q at once; the scalar forms are
# thin wrappers.


def _positive(p) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    return p[p > 0]


def _power_stats(p: np.ndarray, qs: np.ndarray):
    """``sum(p**q) - 1``, ``log sum(p**q)`` and the Shannon entropy of positive weights ``p``.

    ``sum(p**q) - 1`` is written as ``sum(p * expm1((q-1) ln p))``: full
    relative precision near q = 1 and no overflow for q > 1.  The log-sum is
    a log-sum-exp, so it survives the underflow of ``p**q`` at large q.
    """
    logp = np.log(p)
    m = np.sum(p * np.expm1(np.multiply.outer(qs - 1.0, logp)), axis=1)
    t = np.multiply.outer(qs, logp)
    top = t.max(axis=1)
    lse = top + np.log(np.sum(np.exp(t - top[:, None]), axis=1))
    return m, lse, 0.0 - float(np.sum(p * logp))


def _log_power_sum_grid(m: np.ndarray, lse: np.ndarray, qs: np.ndarray) -> np.ndarray:
    return np.where(np.abs(qs - 1.0) <= NEAR_ONE, np.log1p(np.maximum(m, -1.0)), lse)


def _safe_one_minus(qs: np.ndarray) -> np.ndarray:
    # only used where |q - 1| >= EPS_Q; avoids a division warning at q == 1
    return np.where(np.abs(qs - 1.0) < EPS_Q, 1.0, 1.0 - qs)


def tsallis_grid(p, qs) -> np.ndarray:
    """Tsallis entropies of nonnegative weights ``p`` (summing to one) for each q in ``qs``."""
    qs = np.atleast_1d(np.asarray(qs, dtype=float))
    m, _, h = _power_stats(_positive(p), qs)
    # + 0.0 turns the -0.0 of a zero power-sum into +0.0
    return np.where(np.abs(qs - 1.0) < EPS_Q, h, m / _safe_one_minus(qs)) + 0.0


def ratio_conditional_grid(joint_weights, marginal_weights, qs) -> np.ndarray:
    """``(S_q[joint] - S_q[marg]) / (1 + (1-q) S_q[marg])`` for each q in ``qs``.

    The denominator equals ``sum(marg**q)``, so the expression is
    ``(sum(joint**q) / sum(marg**q) - 1) / (1 - q)``.  Near q = 1 it is
    formed from the expm1 power sums; elsewhere as an expm1 of a log-ratio so
    that neither q -> 1 nor very large q loses precision.
    """
    qs = np.atleast_1d(np.asarray(qs, dtype=float))
    m_j, lse_j, h_j = _power_stats(_positive(joint_weights), qs)
    m_m, lse_m, h_m = _power_stats(_positive(marginal_weights), qs)
    denom = _safe_one_minus(qs)
    # both branches are evaluated for every q; only the selected one must be finite
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        near = (m_j - m_m) / (denom * (1.0 + m_m))
        log_ratio = _log_power_sum_grid(m_j, lse_j, qs) - _log_power_sum_grid(m_m, lse_m, qs)
        far = np.expm1(log_ratio) / denom
    out = np.where(np.abs(qs - 1.0) <= NEAR_ONE, near, far)
    return np.where(np.abs(qs - 1.0) < EPS_Q, h_j - h_m, out)


def q_expectation_grid(weights, row_entropies, qs) -> np.ndarray:
    """``sum_i w_i**q s_i(q) / sum_i w_i**q`` with ``row_entropies`` of shape (len(qs), rows).

    Zero weights are dropped; at q = 1 the ordinary expectation is used.
    """
    qs = np.atleast_1d(np.asarray(qs, dtype=float))
    weights = np.asarray(weights, dtype=float)
    keep = weights > 0
    log_w = np.multiply.outer(qs, np.log(weights[keep]))
    log_w[np.abs(qs - 1.0) < EPS_Q] = np.log(weights[keep])
    w = np.exp(log_w - log_w.max(axis=1, keepdims=True))
    return np.sum(w * row_entropies[:, keep], axis=1) / w.sum(axis=1)


def power_sum_minus_one(p, q: float) -> float:
    """``sum(p**q) - 1`` for nonnegative weights summing to one."""
    return float(_power_stats(_positive(p), np.array([q]))[0][0])


def log_power_sum(p, q: float) -> float:
    """``log(sum(p**q))`` without underflow for large q."""
    qs = np.array([q])
    m, lse, _ = _power_stats(_positive(p), qs)
    return float(_log_power_sum_grid(m, lse, qs)[0])


def _shannon(p: np.ndarray) -> float:
    p = _positive(p)
    return 0.0 - float(np.sum(p * np.log(p)))


def _tsallis(p: np.ndarray, q: float) -> float:
    return float(tsallis_grid(p, q)[0])


def ratio_conditional(joint_weights, marginal_weights, q: float) -> float:
    return float(ratio_conditional_grid(joint_weights, marginal_weights, q)[0])


# -- public entropies -------------------------------------------------------


def shannon_entropy(p) -> float:
    """Boltzmann-Shannon entropy ``-sum p ln p`` in nats."""
    return _shannon(as_prob_dist(p))


def tsallis_entropy(p, q) -> float:
    """Tsallis entropy ``(sum p**q - 1) / (1 - q)``; Shannon entropy at q = 1."""
    q = check_q(q)
    return _tsallis(as_prob_dist(p), q)


def marginal_A(j) -> np.ndarray:
    """Row marginal ``p_i(A) = sum_j p_ij``."""
    return as_prob_dist(as_joint_dist(j).sum(axis=1))


def marginal_B(j) -> np.ndarray:
    return as_prob_dist(as_joint_dist(j).sum(axis=0))


def conditional_dist(j, i: int) -> np.ndarray:
    """Distribution of B conditioned on outcome ``i`` of A."""
    j = as_joint_dist(j)
    row = j[i]
    mass = row.sum()
    if mass <= 0:
        raise NullConditioningError(f"row {i} has zero probability; cannot condition on it")
    return as_prob_dist(row / mass)


def conditional_tsallis(j, q) -> float:
    """q-expectation of the row-conditional Tsallis entropies.

    Rows are weighted by ``p_i(A)**q / sum_k p_k(A)**q``; rows of zero mass
    carry zero weight and are skipped.  At q = 1 this is the ordinary
    Shannon conditional entropy.
    """
    q = check_q(q)
    j = as_joint_dist(j)
    return float(conditional_tsallis_grid(j, [q])[0])


def conditional_tsallis_grid(j: np.ndarray, qs) -> np.ndarray:
    """:func:`conditional_tsallis` of a validated joint for every q in ``qs``."""
    qs = np.atleast_1d(np.asarray(qs, dtype=float))
    p_a = j.sum(axis=1)
    rows = np.flatnonzero(p_a > 0)
    entropies = np.column_stack([tsallis_grid(j[i] / p_a[i], qs) for i in rows])
    return q_expectation_grid(p_a[rows], entropies, qs)


def conditional_via_ratio(j, q) -> float:
    """``(S_q[A,B] - S_q[A]) / (1 + (1-q) S_q[A])`` for a joint distribution."""
    q = check_q(q)
    j = as_joint_dist(j)
    return ratio_conditional(j.ravel(), j.sum(axis=1), q)


def compose_pseudoadditive(s_a: float, s_b_given_a: float, q) -> float:
    """Nonadditive composition ``sA + sB|A + (1-q) sA sB|A``."""
    q = check_q(q)
    return s_a + s_b_given_a + (1.0 - q) * s_a * s_b_given_a

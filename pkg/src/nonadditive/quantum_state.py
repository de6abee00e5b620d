"""Density matrices of finite bipartite systems.

All composite indices use the A-major convention ``k = a * dB + b``, i.e. the
ordering produced by ``np.kron(rho_A, rho_B)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classical import as_prob_dist
from .constants import EPS_HERM, EPS_NORM, EPS_PSD, DomainError, ValidationError


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


def _check_hermitian(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > EPS_HERM:
        raise ValidationError(f"matrix is not Hermitian (max |m - m^dagger| = {dev:.3g})")


def eigenvalues(m) -> np.ndarray:
    """Real spectrum of a Hermitian matrix, in descending order."""
    m = np.asarray(m, dtype=complex)
    _check_hermitian(m)
    return np.linalg.eigvalsh((m + m.conj().T) / 2)[::-1]


def validate(m) -> np.ndarray:
    """Check that ``m`` is a density matrix and return a read-only Hermitian copy.

    Raises ValidationError naming the violated invariant: squareness,
    Hermiticity, unit trace or positive semidefiniteness.
    """
    m = np.array(m, dtype=complex)
    _check_hermitian(m)
    m = (m + m.conj().T) / 2
    tr = np.trace(m).real
    if abs(tr - 1.0) > EPS_NORM:
        raise ValidationError(f"trace is {float(tr)!r}, not 1")
    m = m / tr
    lo = np.linalg.eigvalsh(m)[0]
    if lo < -EPS_PSD:
        raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3g})")
    return _frozen(m)


def spectrum(rho) -> np.ndarray:
    """Eigenvalues of a density matrix with numerical noise snapped to [0, 1].

    Values within EPS_PSD of zero become exactly zero; anything more negative
    is rejected rather than silently clamped.  The result is renormalized, so a
    rank-one state has spectrum exactly (1, 0, ..., 0).
    """
    lam = eigenvalues(rho)
    if lam[-1] < -EPS_PSD:
        raise ValidationError(f"negative eigenvalue {lam[-1]:.3g} beyond tolerance")
    lam[np.abs(lam) <= EPS_PSD] = 0.0
    lam = np.clip(lam, 0.0, 1.0)
    return lam / lam.sum()


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix of a composite system with subsystem dimensions (dA, dB)."""

    rho: np.ndarray
    dA: int
    dB: int

    def __post_init__(self):
        if self.dA < 1 or self.dB < 1:
            raise ValidationError(f"subsystem dimensions must be positive, got ({self.dA}, {self.dB})")
        rho = validate(self.rho)
        if rho.shape[0] != self.dA * self.dB:
            raise ValidationError(f"rho has dimension {rho.shape[0]}, expected dA*dB = {self.dA * self.dB}")
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return self.dA * self.dB


def tensor(a, b) -> BipartiteState:
    a = validate(a)
    b = validate(b)
    return BipartiteState(np.kron(a, b), a.shape[0], b.shape[0])


def _side(which: str) -> str:
    which = which.upper()
    if which not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {which!r}")
    return which


def partial_trace(s: BipartiteState, over: str = "B") -> np.ndarray:
    """Reduced density matrix after tracing out subsystem ``over``."""
    r = s.rho.reshape(s.dA, s.dB, s.dA, s.dB)
    if _side(over) == "B":
        out = np.einsum("abcb->ac", r)
    else:
        out = np.einsum("abad->bd", r)
    return validate(out)


def partial_transpose(s: BipartiteState, on: str = "B") -> np.ndarray:
    """Transpose the indices of one subsystem only.

    ``(PT_B rho)[(a,b),(a',b')] = rho[(a,b'),(a',b)]``.  The result is
    Hermitian with unit trace but need not be positive semidefinite.
    """
    r = s.rho.reshape(s.dA, s.dB, s.dA, s.dB)
    axes = (0, 3, 2, 1) if _side(on) == "B" else (2, 1, 0, 3)
    return r.transpose(axes).reshape(s.dim, s.dim).copy()


# -- named states -------------------------------------------------------------


def singlet_vector() -> np.ndarray:
    """(|up,down> - |down,up>)/sqrt(2) with up = index 0, A-major ordering."""
    return np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2)


def werner_popescu(x: float) -> BipartiteState:
    """Mixture ``(1-x)/4 * I_4 + x |singlet><singlet|`` for 0 <= x <= 1."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"Werner parameter x must lie in [0, 1], got {x}")
    psi = singlet_vector()
    rho = (1.0 - x) / 4.0 * np.eye(4, dtype=complex) + x * np.outer(psi, psi.conj())
    return BipartiteState(rho, 2, 2)


def pure_state(vec, dA: int, dB: int) -> BipartiteState:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return BipartiteState(np.outer(v, v.conj()), dA, dB)


# -- separable ensembles --------------------------------------------------------


def _check_unitary(u: np.ndarray, name: str) -> None:
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {u.shape}")
    dev = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if dev > EPS_HERM:
        raise ValidationError(f"{name} is not unitary (max deviation {dev:.3g})")


@dataclass(frozen=True)
class SeparableEnsemble:
    """Convex mixture of product states sharing the local eigenbases UA, UB.

    Term ``k`` is ``UA diag(pA[k]) UA^dagger  (x)  UB diag(pB[k]) UB^dagger``
    with weight ``weights[k]``.
    """

    weights: np.ndarray
    pA: np.ndarray
    pB: np.ndarray
    UA: np.ndarray | None = field(default=None)
    UB: np.ndarray | None = field(default=None)

    def __post_init__(self):
        w = as_prob_dist(self.weights)
        pA = np.atleast_2d(np.array(self.pA, dtype=float))
        pB = np.atleast_2d(np.array(self.pB, dtype=float))
        if not (len(w) == pA.shape[0] == pB.shape[0]):
            raise ValidationError(
                f"ensemble has {len(w)} weights but {pA.shape[0]} A-distributions and {pB.shape[0]} B-distributions"
            )
        pA = np.array([as_prob_dist(row) for row in pA])
        pB = np.array([as_prob_dist(row) for row in pB])
        UA = np.eye(pA.shape[1], dtype=complex) if self.UA is None else np.array(self.UA, dtype=complex)
        UB = np.eye(pB.shape[1], dtype=complex) if self.UB is None else np.array(self.UB, dtype=complex)
        _check_unitary(UA, "UA")
        _check_unitary(UB, "UB")
        if UA.shape[0] != pA.shape[1] or UB.shape[0] != pB.shape[1]:
            raise ValidationError("eigenbasis dimensions do not match the local distributions")
        for name, val in (("weights", w), ("pA", pA), ("pB", pB), ("UA", UA), ("UB", UB)):
            object.__setattr__(self, name, _frozen(val))

    @property
    def dA(self) -> int:
        return self.pA.shape[1]

    @property
    def dB(self) -> int:
        return self.pB.shape[1]

    def joint_weights(self) -> np.ndarray:
        """``sum_k w_k pA[k](a) pB[k](b)`` as a dA x dB array."""
        return np.einsum("k,ka,kb->ab", self.weights, self.pA, self.pB)


def _rotate(u: np.ndarray, diag: np.ndarray) -> np.ndarray:
    return (u * diag) @ u.conj().T


def assemble_separable(e: SeparableEnsemble) -> BipartiteState:
    rho = np.zeros((e.dA * e.dB, e.dA * e.dB), dtype=complex)
    for w, pa, pb in zip(e.weights, e.pA, e.pB):
        rho += w * np.kron(_rotate(e.UA, pa), _rotate(e.UB, pb))
    return BipartiteState(rho, e.dA, e.dB)


def mix_products(weights, rhos_A, rhos_B) -> BipartiteState:
    """``sum_k w_k rhoA_k (x) rhoB_k`` with arbitrary, per-term local states."""
    w = as_prob_dist(weights)
    terms = [np.kron(validate(a), validate(b)) for a, b in zip(rhos_A, rhos_B)]
    if len(terms) != len(w):
        raise ValidationError("number of weights does not match number of product terms")
    rho = sum(wk * t for wk, t in zip(w, terms))
    return BipartiteState(rho, validate(rhos_A[0]).shape[0], validate(rhos_B[0]).shape[0])


# -- seeded random generation -----------------------------------------------------


def random_unitaries(d: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """Stack of ``size`` Haar unitaries from the QR decomposition of complex Gaussians."""
    z = (rng.standard_normal((size, d, d)) + 1j * rng.standard_normal((size, d, d))) / np.sqrt(2)
    qm, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=1, axis2=2)
    return qm * (diag / np.abs(diag))[:, None, :]


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    return random_unitaries(d, rng, 1)[0]


def random_density_matrices(d: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """Stack of random states: Haar eigenbasis, Dirichlet(1) spectrum."""
    u = random_unitaries(d, rng, size)
    lam = rng.dirichlet(np.ones(d), size=size)
    return np.einsum("kij,kj,klj->kil", u, lam, u.conj())


def random_density_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    return random_density_matrices(d, rng, 1)[0]


def random_ensemble(rng: np.random.Generator, n_terms: int, dA: int = 2, dB: int = 2) -> SeparableEnsemble:
    return SeparableEnsemble(
        weights=rng.dirichlet(np.ones(n_terms)),
        pA=rng.dirichlet(np.ones(dA), size=n_terms),
        pB=rng.dirichlet(np.ones(dB), size=n_terms),
        UA=random_unitary(dA, rng),
        UB=random_unitary(dB, rng),
    )

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonadditive.classical import conditional_tsallis, shannon_entropy, tsallis_entropy
from nonadditive.constants import DEFAULT_Q_GRID, DomainError
from nonadditive.quantum_entropy import (
    PositivityConfig,
    conditional_quantum,
    ensemble_conditional,
    ppt_test,
    quantum_tsallis,
    separable_positivity_experiment,
    von_neumann,
)
from nonadditive.quantum_state import (
    BipartiteState,
    SeparableEnsemble,
    assemble_separable,
    partial_trace,
    pure_state,
    random_density_matrix,
    random_ensemble,
    tensor,
    werner_popescu,
)

QS = list(DEFAULT_Q_GRID)


def eig_oracle_tsallis(rho, q):
    # full eigendecomposition, then the bare formula
    lam = np.linalg.eigh(rho)[0]
    lam = lam[lam > 1e-12]
    if q == 1:
        return float(-np.sum(lam * np.log(lam)))
    return float((np.sum(lam**q) - 1) / (1 - q))


def test_quantum_tsallis_examples(rng):
    for q in QS:
        assert quantum_tsallis(werner_popescu(1.0).rho, q) == 0.0
        assert quantum_tsallis(tensor(np.diag([1.0, 0]), np.diag([0, 1.0])).rho, q) == 0.0
    assert quantum_tsallis(np.eye(2) / 2, 2) == pytest.approx(0.5, abs=1e-15)
    # analytic spectrum {0.625, 0.125 x 3}: 1 - (0.625**2 + 3 * 0.125**2)
    assert quantum_tsallis(werner_popescu(0.5).rho, 2) == pytest.approx(0.5625, abs=1e-14)


def test_quantum_tsallis_matches_eig_oracle(rng):
    for d in (2, 3, 4, 6):
        rho = random_density_matrix(d, rng)
        for q in (0.3, 0.7, 1.0, 2.0, 4.5):
            assert quantum_tsallis(rho, q) == pytest.approx(eig_oracle_tsallis(rho, q), rel=1e-10, abs=1e-13)


def test_von_neumann_examples():
    assert von_neumann(werner_popescu(1.0).rho) == 0.0
    assert von_neumann(np.eye(2) / 2) == pytest.approx(math.log(2), abs=1e-15)
    assert von_neumann(np.eye(4) / 4) == pytest.approx(math.log(4), abs=1e-15)


def test_bad_q():
    with pytest.raises(DomainError):
        quantum_tsallis(np.eye(2) / 2, 0)
    with pytest.raises(DomainError):
        conditional_quantum(werner_popescu(0.5), -2)


@pytest.mark.parametrize("d", [1e-10, -1e-10])
def test_limit_q_one(rng, d):
    rho = random_density_matrix(4, rng)
    assert abs(quantum_tsallis(rho, 1 + d) - von_neumann(rho)) <= 1e-8
    s = BipartiteState(rho, 2, 2)
    vn_cond = von_neumann(rho) - von_neumann(partial_trace(s, "B"))
    assert abs(conditional_quantum(s, 1 + d).value - vn_cond) <= 1e-8


# -- conditional ------------------------------------------------------------------------


def test_report_bookkeeping(rng):
    s = BipartiteState(random_density_matrix(6, rng), 2, 3)
    for q in (0.2, 0.9, 1.0, 1.3, 2.0, 5.0):
        for given in "AB":
            r = conditional_quantum(s, q, given)
            assert r.conditioned_on == given
            assert r.value == pytest.approx((r.s_joint - r.s_marginal) / (1 + (1 - q) * r.s_marginal), abs=1e-12)


def test_singlet_conditional_is_minus_ln2():
    assert conditional_quantum(werner_popescu(1.0), 1.0).value == pytest.approx(-math.log(2), abs=1e-15)


def test_product_state_gives_entropy_of_other_factor(rng):
    a, b = random_density_matrix(2, rng), random_density_matrix(3, rng)
    s = tensor(a, b)
    for q in QS:
        assert conditional_quantum(s, q, "A").value == pytest.approx(quantum_tsallis(b, q), abs=1e-12)
        assert conditional_quantum(s, q, "B").value == pytest.approx(quantum_tsallis(a, q), abs=1e-12)


def test_classically_correlated_diagonal_state():
    s = BipartiteState(np.diag([0.5, 0, 0, 0.5]), 2, 2)
    for q in QS:
        assert conditional_quantum(s, q).value == pytest.approx(0.0, abs=1e-15)


def test_pure_entangled_state_is_negative(rng):
    for _ in range(20):
        v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        s = pure_state(v, 2, 3)
        for q in QS:
            assert conditional_quantum(s, q).value < 0


def test_product_of_pure_states_is_zero():
    s = tensor(np.diag([1.0, 0.0]), np.full((2, 2), 0.5))
    for q in QS:
        assert conditional_quantum(s, q).value == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=100)
@given(st.integers(2, 3), st.integers(2, 3), st.integers(0, 2**32 - 1), st.sampled_from(QS))
def test_diagonal_states_embed_classical(dA, dB, seed, q):
    j = np.random.default_rng(seed).dirichlet(np.ones(dA * dB)).reshape(dA, dB)
    s = BipartiteState(np.diag(j.ravel()), dA, dB)
    assert conditional_quantum(s, q, "A").value == pytest.approx(conditional_tsallis(j, q), abs=1e-12)
    assert conditional_quantum(s, q, "B").value == pytest.approx(conditional_tsallis(j.T, q), abs=1e-12)


# -- ensembles -----------------------------------------------------------------------------


def test_ensemble_examples():
    r = [0.3, 0.7]
    e = SeparableEnsemble([1.0], [[0.4, 0.6]], [r])
    for q in QS:
        assert ensemble_conditional(e, q) == pytest.approx(tsallis_entropy(r, q), abs=1e-14)
    e = SeparableEnsemble([0.5, 0.5], [[1, 0], [0, 1]], [[0, 1], [1, 0]])
    for q in QS:
        assert ensemble_conditional(e, q) == 0.0


def test_ensemble_zero_column_is_skipped():
    e = SeparableEnsemble([0.5, 0.5], [[1, 0, 0], [0, 1, 0]], [[0.2, 0.8], [0.5, 0.5]])
    for q in QS:
        value = ensemble_conditional(e, q)
        assert np.isfinite(value) and value >= 0


def test_ensemble_matches_assembled_state(rng):
    for _ in range(50):
        e = random_ensemble(rng, 3)
        s = assemble_separable(e)
        assert abs(ensemble_conditional(e, 2.0) - conditional_quantum(s, 2.0).value) <= 1e-10


def test_ensemble_matches_higher_dimensions(rng):
    for dims in ((2, 3), (3, 3)):
        e = random_ensemble(rng, 4, *dims)
        s = assemble_separable(e)
        for q in QS:
            assert abs(ensemble_conditional(e, q) - conditional_quantum(s, q).value) <= 1e-10


# -- PPT -----------------------------------------------------------------------------------


def test_ppt_examples(rng):
    assert ppt_test(tensor(random_density_matrix(2, rng), random_density_matrix(2, rng))).is_ppt
    v = ppt_test(werner_popescu(0.4))
    assert v.min_eig == pytest.approx(-0.05, abs=1e-15)
    assert not v.is_ppt
    v = ppt_test(werner_popescu(1 / 3))
    assert abs(v.min_eig) <= 1e-10 and v.is_ppt
    assert ppt_test(werner_popescu(0.2)).is_ppt
    assert ppt_test(werner_popescu(0.5)).min_eig == pytest.approx(-0.125, abs=1e-15)


def test_entropy_flag_implies_npt_for_werner():
    # negative conditional entropy at any q is a sufficient entanglement signal
    for x in np.linspace(0, 1, 101):
        s = werner_popescu(x)
        if any(conditional_quantum(s, q).entangled for q in QS):
            assert not ppt_test(s).is_ppt


# -- positivity experiment ----------------------------------------------------------------


def test_positivity_deterministic_ensemble():
    cfg = PositivityConfig(n_samples=1, ensemble_factory=lambda rng: SeparableEnsemble([1.0], [[1, 0]], [[0, 1]]))
    summary = separable_positivity_experiment(config=cfg)
    assert summary.min_shared_basis == 0.0
    assert summary.violations == 0


def test_positivity_small_run_is_deterministic():
    a = separable_positivity_experiment(200, seed=7)
    b = separable_positivity_experiment(200, seed=7)
    assert a == b
    assert a.violations == 0 and a.min_value >= -1e-10


def test_positivity_samples_are_independent_of_batch():
    # sample i only depends on seed + i, so a shifted run sees the tail of a longer one
    full = separable_positivity_experiment(20, seed=3)
    tail = separable_positivity_experiment(10, seed=13)
    head = separable_positivity_experiment(10, seed=3)
    assert full.min_value == min(tail.min_value, head.min_value)


def test_positivity_control():
    summary = separable_positivity_experiment(5, inject_singlet=True)
    assert summary.control_value == pytest.approx(-math.log(2), abs=1e-10)
    assert summary.violations == 0


def test_positivity_rejects_empty_run():
    with pytest.raises(ValueError):
        separable_positivity_experiment(0)


def test_classical_shannon_consistency():
    # maximally mixed qubit pair: S[AB] - S[A] = ln 2
    assert conditional_quantum(werner_popescu(0.0), 1.0).value == pytest.approx(shannon_entropy([0.5, 0.5]))

import numpy as np
import pytest

from entropovm.linalg import random_density, random_unitary, von_neumann_entropy
from entropovm.povm import (
    WeightedMeasure,
    dft_basis,
    liouville_matrix,
    measurement_distribution,
    mub_pair,
    povm_compress,
    povm_from_basis,
    povm_tensor_pair,
    product_majorant,
    pushforward,
)
from entropovm.uncertainty import (
    choi_jensen_deficit,
    constant_K,
    constant_Kprime,
    equality_diagnostics,
    refinement_gap,
    relative_entropy_term,
    uncertainty_deficit,
    trace_product_bound,
)


def _measure(masses, labels=None):
    masses = np.asarray(masses, dtype=float)
    labels = labels or tuple(str(i) for i in range(masses.size))
    return WeightedMeasure(labels, masses)


def _basis_pair_setup(rng, d):
    u, v = random_unitary(d, rng), random_unitary(d, rng)
    p, q = povm_from_basis(u), povm_from_basis(v)
    ell = liouville_matrix(p, q)
    mu_p, mu_q = product_majorant(ell, row_labels=p.labels, col_labels=q.labels)
    return u, v, p, q, mu_p, mu_q


# relative entropy -----------------------------------------------------------


def test_relative_entropy_equal_measures():
    nu = _measure([0.25] * 4)
    assert relative_entropy_term(nu, nu) == pytest.approx(0.0, abs=1e-15)


def test_relative_entropy_ignores_zero_mass_outcomes():
    nu = _measure([1.0, 0.0])
    mu = _measure([1.0, 1.0])
    assert relative_entropy_term(nu, mu) == 0.0


def test_relative_entropy_direct_summation():
    nu = _measure([0.5, 0.5])
    mu = _measure([0.25, 0.75])
    expected = -(0.5 * np.log(2.0) + 0.5 * np.log(2.0 / 3.0))
    assert relative_entropy_term(nu, mu) == pytest.approx(expected, abs=1e-14)


def test_relative_entropy_absolute_continuity():
    nu = _measure([0.5, 0.5])
    mu = _measure([1.0, 0.0])
    with pytest.raises(ValueError, match="label '1'"):
        relative_entropy_term(nu, mu)


# uncertainty deficit ---------------------------------------------------


def test_uncertainty_deficit_mub_maximally_mixed():
    d = 4
    e, f = mub_pair(d)
    p, q = povm_from_basis(e), povm_from_basis(f)
    mu = _measure(np.full(d, d**-0.5))
    res = uncertainty_deficit(np.eye(d) / d, p, q, mu, mu)
    # independent oracle: uniform nu against constant majorant masses
    lhs_oracle = -2.0 * sum((1 / d) * np.log((1 / d) / d**-0.5) for _ in range(d))
    assert res.lhs == pytest.approx(lhs_oracle, abs=1e-12)
    assert res.lhs == pytest.approx(np.log(4.0), abs=1e-12)
    assert res.entropy == pytest.approx(np.log(4.0), abs=1e-12)
    assert abs(res.deficit) < 1e-12


def test_uncertainty_deficit_tensor_product_states():
    p, q = povm_tensor_pair(np.eye(2), np.eye(2))
    mu_p = _measure(np.ones(2), p.labels)
    mu_q = _measure(np.ones(2), q.labels)
    rng = np.random.default_rng(0)
    for _ in range(20):
        w1 = rng.random(2) + 0.1
        w1 /= w1.sum()
        w2 = rng.random(2) + 0.1
        w2 /= w2.sum()
        rho = np.diag(np.kron(w1, w2)).astype(complex)
        res = uncertainty_deficit(rho, p, q, mu_p, mu_q)
        assert abs(res.deficit) < 1e-9


def test_uncertainty_deficit_random_basis_pair():
    rng = np.random.default_rng(13)
    _, _, p, q, mu_p, mu_q = _basis_pair_setup(rng, 5)
    rho = random_density(5, 3, rng)
    assert uncertainty_deficit(rho, p, q, mu_p, mu_q).deficit >= 0.0


def test_uncertainty_deficit_rejects_invalid_majorant():
    p, q = povm_from_basis(np.eye(2)), povm_from_basis(dft_basis(2))
    tiny = _measure([0.1, 0.1])
    with pytest.raises(ValueError, match="majorize"):
        uncertainty_deficit(np.eye(2) / 2, p, q, tiny, tiny)


def test_uncertainty_deficit_unitary_invariance_of_deficit():
    rng = np.random.default_rng(17)
    d = 4
    u0, v0, p, q, mu_p, mu_q = _basis_pair_setup(rng, d)
    rho = random_density(d, 2, rng)
    base = uncertainty_deficit(rho, p, q, mu_p, mu_q).deficit
    w = random_unitary(d, rng)
    p2 = povm_from_basis(w @ u0)
    q2 = povm_from_basis(w @ v0)
    rho2 = w @ rho @ w.conj().T
    conj = uncertainty_deficit(rho2, p2, q2, mu_p, mu_q).deficit
    assert abs(base - conj) < 1e-8


# constants ------------------------------------------------------------------


def test_constants_mub_equal_log_dim():
    d = 8
    e, f = mub_pair(d)
    p, q = povm_from_basis(e), povm_from_basis(f)
    rng = np.random.default_rng(3)
    rho = random_density(d, 4, rng)
    nu_p = measurement_distribution(rho, p)
    nu_q = measurement_distribution(rho, q)
    mu = _measure(np.full(d, d**-0.5))
    k = constant_K(nu_p, nu_q, mu, mu)
    kp = constant_Kprime(e, f)
    assert k == pytest.approx(np.log(d), abs=1e-12)
    assert kp == pytest.approx(np.log(d), abs=1e-12)


def test_kprime_identical_bases_is_zero():
    rng = np.random.default_rng(4)
    u = random_unitary(5, rng)
    assert constant_Kprime(u, u) == pytest.approx(0.0, abs=1e-12)


def test_k_dominates_kprime_random_pair():
    rng = np.random.default_rng(1)
    d = 4
    u, v, p, q, mu_p, mu_q = _basis_pair_setup(rng, d)
    rho = random_density(d, 2, rng)
    k = constant_K(
        measurement_distribution(rho, p), measurement_distribution(rho, q), mu_p, mu_q
    )
    assert k >= constant_Kprime(u, v) - 1e-10


# trace product bound --------------------------------------------------------


def test_trace_product_exact_for_independent_povms():
    p, q = povm_tensor_pair(np.eye(2), np.eye(3))
    mu_p = _measure(np.ones(2), p.labels)  # exact factorization of the all-ones Liouville
    mu_q = _measure(np.ones(3), q.labels)
    rng = np.random.default_rng(7)
    rho = random_density(6, 3, rng)
    assert trace_product_bound(rho, p, q, mu_p, mu_q) == pytest.approx(1.0, abs=1e-10)


def test_trace_product_quarters_under_doubled_majorant():
    rng = np.random.default_rng(21)
    d = 4
    _, _, p, q, mu_p, mu_q = _basis_pair_setup(rng, d)
    rho = random_density(d, 2, rng)
    base = trace_product_bound(rho, p, q, mu_p, mu_q)
    double_p = _measure(2.0 * mu_p.masses, mu_p.labels)
    double_q = _measure(2.0 * mu_q.masses, mu_q.labels)
    scaled = trace_product_bound(rho, p, q, double_p, double_q)
    assert scaled == pytest.approx(base / 4.0, rel=1e-12)
    assert scaled <= 1.0 + 1e-9


def test_trace_product_at_most_one():
    rng = np.random.default_rng(21)
    for _ in range(50):
        d = int(rng.integers(2, 7))
        _, _, p, q, mu_p, mu_q = _basis_pair_setup(rng, d)
        rho = random_density(d, int(rng.integers(1, d + 1)), rng)
        assert trace_product_bound(rho, p, q, mu_p, mu_q) <= 1.0 + 1e-9


# operator-Jensen quantity ---------------------------------------------------


def test_choi_jensen_projective_is_zero():
    rng = np.random.default_rng(2)
    p = povm_from_basis(random_unitary(4, rng))
    w = rng.uniform(0.5, 2.0, 4)
    assert abs(choi_jensen_deficit(p, w)) < 1e-10


def test_choi_jensen_equal_weights_is_zero():
    rng = np.random.default_rng(6)
    p = povm_from_basis(random_unitary(3, rng))
    proj = np.diag([1.0, 1.0, 0.0])
    compressed = povm_compress(p, proj)
    assert abs(choi_jensen_deficit(compressed, np.full(3, 0.7))) < 1e-10


def test_choi_jensen_compressed_nonnegative():
    rng = np.random.default_rng(4)
    for _ in range(25):
        d = int(rng.integers(3, 7))
        p = povm_from_basis(random_unitary(d, rng))
        u = random_unitary(d, rng)
        r = int(rng.integers(2, d))
        proj = u[:, :r] @ u[:, :r].conj().T
        compressed = povm_compress(p, proj)
        w = rng.uniform(0.2, 3.0, d)
        assert choi_jensen_deficit(compressed, w) >= -1e-9


def test_choi_jensen_rejects_nonpositive_weight():
    p = povm_from_basis(np.eye(2))
    with pytest.raises(ValueError, match="positive"):
        choi_jensen_deficit(p, np.array([1.0, 0.0]))


# refinement -----------------------------------------------------------------


def test_refinement_singleton_partition_zero_gap():
    rng = np.random.default_rng(8)
    d = 4
    p = povm_from_basis(random_unitary(d, rng))
    rho = random_density(d, 2, rng)
    mu = _measure(rng.uniform(0.5, 2.0, d), p.labels)
    groups = [[i] for i in range(d)]
    gap = refinement_gap(rho, p, groups, mu, pushforward(mu, groups))
    assert abs(gap) < 1e-12


def test_refinement_full_merge():
    rng = np.random.default_rng(9)
    d = 4
    p = povm_from_basis(random_unitary(d, rng))
    rho = random_density(d, 2, rng)
    nu = measurement_distribution(rho, p)
    mu = _measure(np.full(d, 0.25), p.labels)  # probability reference measure
    groups = [list(range(d))]
    gap = refinement_gap(rho, p, groups, mu, pushforward(mu, groups))
    # merged side contributes -1 ln(1/1) = 0, so the gap is minus the fine term
    fine = relative_entropy_term(nu, mu)
    assert gap == pytest.approx(-fine, abs=1e-12)
    assert gap >= 0.0


def test_refinement_random_pairs_partition():
    rng = np.random.default_rng(8)
    d = 6
    p = povm_from_basis(random_unitary(d, rng))
    rho = random_density(d, 3, rng)
    mu = _measure(rng.uniform(0.5, 2.0, d), p.labels)
    groups = [[0, 1], [2, 3], [4, 5]]
    assert refinement_gap(rho, p, groups, mu, pushforward(mu, groups)) >= -1e-9


def test_refinement_rejects_wrong_pushforward():
    rng = np.random.default_rng(5)
    d = 4
    p = povm_from_basis(random_unitary(d, rng))
    rho = random_density(d, 2, rng)
    mu = _measure(np.ones(d), p.labels)
    groups = [[0, 1], [2, 3]]
    wrong = _measure([1.0, 3.0])
    with pytest.raises(ValueError, match="pushforward"):
        refinement_gap(rho, p, groups, mu, wrong)


# equality diagnostics -------------------------------------------------------


def test_diagnostics_tensor_pair_all_flags():
    p, q = povm_tensor_pair(np.eye(2), np.eye(2))
    mu_p = _measure(np.ones(2), p.labels)
    mu_q = _measure(np.ones(2), q.labels)
    rho = np.diag(np.kron([0.7, 0.3], [0.4, 0.6])).astype(complex)
    diag = equality_diagnostics(p, q, rho, mu_p, mu_q)
    assert diag.independent and diag.projective_p and diag.projective_q and diag.commuting
    assert abs(diag.deficit) < 1e-9


def test_diagnostics_mub_pair():
    e, f = mub_pair(2)
    p, q = povm_from_basis(e), povm_from_basis(f)
    mu = _measure(np.full(2, 2**-0.5))
    rng = np.random.default_rng(11)
    rho = random_density(2, 2, rng)  # generic mixed state
    diag = equality_diagnostics(p, q, rho, mu, mu)
    assert diag.independent
    assert diag.projective_p and diag.projective_q
    assert not diag.commuting
    assert diag.deficit > 1e-6


def test_diagnostics_compressed_not_projective():
    rng = np.random.default_rng(3)
    d = 4
    p = povm_from_basis(random_unitary(d, rng))
    q = povm_from_basis(random_unitary(d, rng))
    u = random_unitary(d, rng)
    proj = u[:, :2] @ u[:, :2].conj().T
    cp, cq = povm_compress(p, proj), povm_compress(q, proj)
    ell = liouville_matrix(cp, cq)
    mu_p, mu_q = product_majorant(ell, row_labels=cp.labels, col_labels=cq.labels)
    rho = random_density(2, 2, rng)
    diag = equality_diagnostics(cp, cq, rho, mu_p, mu_q)
    assert not diag.projective_p
    assert not diag.projective_q

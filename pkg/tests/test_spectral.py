import numpy as np
import pytest

from entropovm.spectral import (
    SpectralMeasure,
    SpectralState,
    euclidean_laplacian_cumulative,
    harmonic_dimension_bruteforce,
    landau_spectral_measure,
    spectral_entropy,
    sphere_eigenspace_dim,
    sphere_spectral_measure,
    symbol_measure_montecarlo,
)


def test_sphere_dim_two_sphere_degree_two():
    # C(4,2) - C(2,2) = 6 - 1
    assert sphere_eigenspace_dim(3, 2) == 5


def test_sphere_dim_circle():
    assert sphere_eigenspace_dim(2, 0) == 1
    for d in range(1, 8):
        assert sphere_eigenspace_dim(2, d) == 2


def test_sphere_dim_degree_one_equals_ambient_dimension():
    assert sphere_eigenspace_dim(4, 1) == 4
    assert harmonic_dimension_bruteforce(4, 1) == 4


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("d", [0, 1, 2, 3, 4])
def test_sphere_dims_match_bruteforce(n, d):
    assert sphere_eigenspace_dim(n, d) == harmonic_dimension_bruteforce(n, d)


def test_sphere_dim_rejects_bad_ambient():
    with pytest.raises(ValueError):
        sphere_eigenspace_dim(1, 2)


def test_sphere_measure_two_sphere():
    mu = sphere_spectral_measure(3, 1)
    assert np.allclose(mu.positions, [0.0, 2.0])
    assert np.allclose(mu.masses, [1.0, 3.0])


def test_sphere_measure_circle_spectrum():
    mu = sphere_spectral_measure(2, 2)
    assert np.allclose(mu.positions, [0.0, 1.0, 4.0])
    assert np.allclose(mu.masses, [1.0, 2.0, 2.0])


def test_sphere_measure_total_mass_is_dim_sum():
    mu = sphere_spectral_measure(4, 5)
    assert mu.total_mass == sum(sphere_eigenspace_dim(4, d) for d in range(6))


def test_landau_measure_single_level():
    mu = landau_spectral_measure(2 * np.pi, 0)
    assert np.allclose(mu.positions, [2 * np.pi])
    assert np.allclose(mu.masses, [1.0])


def test_landau_measure_density_and_spacing():
    mu = landau_spectral_measure(1.0, 5)
    assert np.allclose(mu.masses, 1.0 / (2 * np.pi))
    assert np.allclose(np.diff(mu.positions), 2.0)


def test_landau_rejects_nonpositive_field():
    with pytest.raises(ValueError):
        landau_spectral_measure(0.0, 3)


def test_euclidean_cumulative_line():
    assert euclidean_laplacian_cumulative(1, np.pi**2) == pytest.approx(1.0, abs=1e-14)


def test_euclidean_cumulative_plane():
    assert euclidean_laplacian_cumulative(2, 4 * np.pi**2) == pytest.approx(np.pi, abs=1e-13)


def test_euclidean_cumulative_vanishes_at_zero():
    for n in (1, 2, 3, 5):
        assert euclidean_laplacian_cumulative(n, 0.0) == 0.0
    with pytest.raises(ValueError):
        euclidean_laplacian_cumulative(2, -1.0)


def test_montecarlo_matches_ball_volume():
    rng = np.random.default_rng(1)
    edges = np.linspace(0.0, 4 * np.pi**2, 9)
    mu, stderr = symbol_measure_montecarlo(
        lambda xi: np.sum((2 * np.pi * xi) ** 2, axis=1), 2, 1.0, 200_000, edges, rng
    )
    exact = np.diff([euclidean_laplacian_cumulative(2, lam) for lam in edges])
    assert np.all(np.abs(mu.masses - exact) <= 3.0 * stderr)


def test_montecarlo_constant_symbol():
    rng = np.random.default_rng(2)
    edges = np.array([0.0, 1.0, 2.0, 3.0])
    mu, stderr = symbol_measure_montecarlo(
        lambda xi: np.full(xi.shape[0], 1.5), 2, 2.0, 1000, edges, rng
    )
    assert mu.masses[1] == pytest.approx((2 * 2.0) ** 2)
    assert mu.masses[0] == 0.0 and mu.masses[2] == 0.0
    assert stderr[1] == 0.0


def test_montecarlo_error_scaling():
    edges = np.linspace(0.0, 4 * np.pi**2, 5)
    sigma = lambda xi: np.sum((2 * np.pi * xi) ** 2, axis=1)
    _, se_small = symbol_measure_montecarlo(sigma, 2, 1.0, 100_000, edges, np.random.default_rng(3))
    _, se_big = symbol_measure_montecarlo(sigma, 2, 1.0, 200_000, edges, np.random.default_rng(4))
    ratios = se_small / se_big
    assert np.all(np.abs(ratios - np.sqrt(2.0)) < 0.15)


def test_spectral_entropy_proportional_state():
    mu = sphere_spectral_measure(3, 4)
    nu = SpectralState(mu, mu.masses / mu.total_mass)
    assert spectral_entropy(nu, mu) == pytest.approx(np.log(mu.total_mass), abs=1e-12)


def test_spectral_entropy_single_landau_level():
    b = 2.5
    mu = landau_spectral_measure(b, 4)
    w = np.zeros(5)
    w[2] = 1.0
    nu = SpectralState(mu, w)
    assert spectral_entropy(nu, mu) == pytest.approx(np.log(b / (2 * np.pi)), abs=1e-12)


def test_spectral_entropy_sphere_equals_state_entropy():
    # a state assembled from the eigenspaces has S_A equal to its spectral entropy
    rng = np.random.default_rng(5)
    mu = sphere_spectral_measure(3, 5)
    w = rng.random(len(mu)) + 0.05
    w /= w.sum()
    nu = SpectralState(mu, w)
    s_spectral = spectral_entropy(nu, mu)
    eigenvalues = np.concatenate(
        [np.full(int(m), wd / m) for wd, m in zip(w, mu.masses)]
    )
    s_state = float(-(eigenvalues @ np.log(eigenvalues)))
    assert s_spectral == pytest.approx(s_state, abs=1e-12)


def test_spectral_entropy_invariant_under_relabeling():
    rng = np.random.default_rng(6)
    mu = sphere_spectral_measure(3, 6)
    w = rng.random(len(mu))
    w /= w.sum()
    base = spectral_entropy(SpectralState(mu, w), mu)
    # apply an injective, order-scrambling relabeling and sort atoms back
    new_pos = np.array([(-1.0) ** i * (pos + 1.0) for i, pos in enumerate(mu.positions)])
    order = np.argsort(new_pos)
    mu2 = SpectralMeasure.discrete(new_pos[order], mu.masses[order])
    relabeled = spectral_entropy(SpectralState(mu2, w[order]), mu2)
    assert relabeled == pytest.approx(base, abs=1e-13)


def test_spectral_entropy_support_violation():
    mu = SpectralMeasure.sampled(np.array([0.0, 1.0, 2.0]), np.array([1.0, 0.0]))
    with pytest.raises(ValueError, match="vanishes"):
        SpectralState(mu, np.array([0.5, 0.5]))


def test_spectral_measure_validation():
    with pytest.raises(ValueError, match="ascending"):
        SpectralMeasure.discrete([1.0, 1.0], [1.0, 1.0])
    with pytest.raises(ValueError, match="positive"):
        SpectralMeasure.discrete([0.0, 1.0], [1.0, 0.0])
    with pytest.raises(ValueError, match="nonnegative"):
        SpectralMeasure.sampled([0.0, 1.0], [-0.5])

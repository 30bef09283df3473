"""Desk-scale function-space experiments: Hermite line and circle Fourier modes.

The Fourier convention throughout is F(f)(xi) = integral f(x) e^{-2 pi i x xi} dx.
Under it the unit-norm Hermite functions used here are F-eigenfunctions with
eigenvalues (-i)^k, so for states diagonal in that basis the momentum-side
density equals the position-side density and no numerical Fourier transform
is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import SpectralMeasure, sphere_spectral_measure

HERMITE_K_MAX = 200


def hermite_function(k: int, x) -> np.ndarray:
    """Unit L^2-norm Hermite function phi_k, an F-eigenfunction with eigenvalue (-i)^k.

    phi_k(x) = c_k H_k(sqrt(2 pi) x) e^{-pi x^2}, evaluated by the stable
    three-term recurrence on the normalized functions. Degrees above 200 are
    rejected; the recurrence is not validated beyond that.
    """
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    if k > HERMITE_K_MAX:
        raise ValueError(f"degree {k} exceeds the supported maximum {HERMITE_K_MAX}")
    return hermite_functions(k, x)[k]


def hermite_functions(k_max: int, x) -> np.ndarray:
    """Rows phi_0 .. phi_{k_max} sampled at x."""
    if k_max < 0:
        raise ValueError(f"degree must be nonnegative, got {k_max}")
    if k_max > HERMITE_K_MAX:
        raise ValueError(f"degree {k_max} exceeds the supported maximum {HERMITE_K_MAX}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.sqrt(2.0 * np.pi) * x
    out = np.empty((k_max + 1, x.size))
    out[0] = 2.0**0.25 * np.exp(-np.pi * x**2)
    if k_max >= 1:
        out[1] = np.sqrt(2.0) * y * out[0]
    for k in range(1, k_max):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * y * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def simpson_weights(num_points: int, spacing: float) -> np.ndarray:
    """Composite Simpson weights; num_points must be odd."""
    if num_points < 3 or num_points % 2 == 0:
        raise ValueError(f"composite Simpson needs an odd point count >= 3, got {num_points}")
    w = np.ones(num_points)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * spacing / 3.0


def quadrature_entropy(density: np.ndarray, weights: np.ndarray, mass_atol: float = 1e-4) -> float:
    """-integral of rho ln rho from sampled density values, with 0 ln 0 = 0.

    The quadrature mass must come out within mass_atol of 1.
    """
    rho = np.asarray(density, dtype=float)
    w = np.asarray(weights, dtype=float)
    if rho.shape != w.shape:
        raise ValueError("density and weights must have the same shape")
    if float(rho.min()) < -1e-12:
        raise ValueError(f"density has negative value {float(rho.min()):.3e}")
    rho = np.clip(rho, 0.0, None)
    mass = float(w @ rho)
    if abs(mass - 1.0) > mass_atol:
        raise ValueError(f"quadrature mass {mass!r} deviates from 1 by more than {mass_atol}")
    pos = rho > 0.0
    return float(-(w[pos] * rho[pos]) @ np.log(rho[pos]))


@dataclass(frozen=True)
class HermiteScenarioResult:
    spatial_entropy: float
    spectral_entropy: float
    entropy: float
    deficit_fourier: float
    deficit_logsobolev: float
    mean_energy: float
    k_max: int
    weights: np.ndarray


def hermite_scenario(
    t: float,
    k_max: int | None = None,
    x_max: float = 10.0,
    num_points: int = 4001,
) -> HermiteScenarioResult:
    """Harmonic-oscillator Gibbs family: weights p_k proportional to e^{-t(2k+1)}.

    The position density is rho(x) = sum p_k phi_k(x)^2 and coincides with the
    momentum density by the F-eigenrelation, so the Fourier-pair deficit is
    -2 integral rho ln rho - S(p). The energy deficit uses the quadratic-form
    energy of the Laplacian under the 2 pi convention, <phi_k, -phi_k''> =
    pi (2k+1), against the 1-D heat-decay bound (1/2) ln(e E / (2 pi)).
    """
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t}")
    if k_max is None:
        # relative truncation tail of the geometric weights below 1e-10
        k_max = int(np.ceil(np.log(1e10 / -np.expm1(-2.0 * t)) / (2.0 * t)))
    if k_max > HERMITE_K_MAX:
        raise ValueError(
            f"truncation k_max={k_max} exceeds {HERMITE_K_MAX}; t={t} is too small to resolve"
        )
    tail = np.exp(-2.0 * t * (k_max + 1)) / -np.expm1(-2.0 * t)
    if tail > 1e-10:
        raise ValueError(f"truncation tail {tail:.3e} exceeds 1e-10 at k_max={k_max}")
    ks = np.arange(k_max + 1)
    logp = -t * (2 * ks + 1.0)
    logp -= logp.max()
    p = np.exp(logp)
    p /= p.sum()

    x = np.linspace(-x_max, x_max, num_points)
    w = simpson_weights(num_points, x[1] - x[0])
    basis = hermite_functions(k_max, x)
    rho = p @ basis**2
    spatial = quadrature_entropy(rho, w, mass_atol=1e-4)
    entropy = float(-(p[p > 0] @ np.log(p[p > 0])))
    energy = float(np.pi * (p @ (2 * ks + 1.0)))
    deficit_fourier = 2.0 * spatial - entropy
    deficit_logsob = spatial + 0.5 * np.log(np.e * energy / (2.0 * np.pi)) - entropy
    return HermiteScenarioResult(
        spatial_entropy=spatial,
        spectral_entropy=spatial,
        entropy=entropy,
        deficit_fourier=deficit_fourier,
        deficit_logsobolev=float(deficit_logsob),
        mean_energy=energy,
        k_max=k_max,
        weights=p,
    )


@dataclass(frozen=True)
class CircleScenarioResult:
    spatial_entropy: float
    spectral_entropy: float
    entropy: float
    deficit: float
    mode_distribution: np.ndarray  # over modes k = -K..K
    level_distribution: np.ndarray  # over Laplacian levels k^2, k = 0..K
    levels: np.ndarray


def circle_mode_numbers(k_max: int) -> np.ndarray:
    return np.arange(-k_max, k_max + 1)


def circle_spectral_measure(k_max: int) -> SpectralMeasure:
    """Circle Laplacian spectrum k^2 with eigenspace dimensions 1, 2, 2, ..."""
    return sphere_spectral_measure(2, k_max)


def circle_scenario(
    weights: np.ndarray,
    mixing_unitary: np.ndarray | None = None,
    num_points: int = 2048,
) -> CircleScenarioResult:
    """State on the trig modes e^{ik theta}, |k| <= K, against the circle Laplacian.

    weights are the eigenvalues of the state; mixing_unitary (optional) maps
    eigenvectors into the mode basis. The spatial density on the normalized
    circle is evaluated on a uniform grid (trapezoid quadrature, exact for
    trigonometric polynomials below the grid bandwidth); the spectral side
    pairs the +-k modes into the k^2 eigenspaces.
    """
    p = np.asarray(weights, dtype=float)
    if p.ndim != 1 or p.size % 2 == 0:
        raise ValueError("weights must cover modes -K..K (odd length)")
    if float(p.min()) < 0.0 or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("weights must form a probability vector")
    dim = p.size
    k_max = (dim - 1) // 2
    if mixing_unitary is None:
        u = np.eye(dim, dtype=complex)
    else:
        u = np.asarray(mixing_unitary, dtype=complex)
        if u.shape != (dim, dim):
            raise ValueError(f"mixing unitary must be {dim}x{dim}")
        if float(np.max(np.abs(u.conj().T @ u - np.eye(dim)))) > 1e-10:
            raise ValueError("mixing matrix is not unitary")
    if num_points <= 4 * k_max + 1:
        raise ValueError("grid too coarse for the mode bandwidth")

    theta = np.linspace(0.0, 2.0 * np.pi, num_points, endpoint=False)
    modes = np.exp(1j * np.outer(circle_mode_numbers(k_max), theta))
    eigvecs = u.T @ modes  # row m: eigenfunction m on the grid
    rho_theta = p @ (np.abs(eigvecs) ** 2)
    w = np.full(num_points, 1.0 / num_points)  # normalized invariant measure
    spatial = quadrature_entropy(rho_theta, w, mass_atol=1e-6)

    # diagonal of the state in the mode basis, then paired into +-k levels
    mode_dist = (np.abs(u) ** 2) @ p
    level_dist = np.empty(k_max + 1)
    level_dist[0] = mode_dist[k_max]
    for k in range(1, k_max + 1):
        level_dist[k] = mode_dist[k_max - k] + mode_dist[k_max + k]
    dims = np.array([1.0] + [2.0] * k_max)
    sup = level_dist > 0.0
    spectral = float(-(level_dist[sup] @ np.log(level_dist[sup] / dims[sup])))
    entropy = float(-(p[p > 0] @ np.log(p[p > 0])))
    return CircleScenarioResult(
        spatial_entropy=spatial,
        spectral_entropy=spectral,
        entropy=entropy,
        deficit=spatial + spectral - entropy,
        mode_distribution=mode_dist,
        level_distribution=level_dist,
        levels=np.arange(k_max + 1, dtype=float) ** 2,
    )

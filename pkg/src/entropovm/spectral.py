"""Spectral measures of invariant operators and the spectral entropy.

Covers the sphere Laplacian (discrete spectrum with harmonic-polynomial
eigenspace dimensions), constant-magnetic-field levels on the plane, the
Euclidean Laplacian through its sublevel volumes, and a Monte-Carlo estimator
for the sublevel-set volumes of a general polynomial symbol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Measure on the real line: discrete atoms or binned (sampled) masses.

    For kind "discrete", positions are the strictly ascending atom locations
    and masses the strictly positive atom weights. For kind "sampled",
    positions are the bin edges (one more entry than masses) and masses the
    nonnegative bin contents.
    """

    kind: str
    positions: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        positions = np.asarray(self.positions, dtype=float)
        masses = np.asarray(self.masses, dtype=float)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "masses", masses)
        if self.kind not in ("discrete", "sampled"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if positions.ndim != 1 or masses.ndim != 1:
            raise ValueError("positions and masses must be 1-D")
        if np.any(np.diff(positions) <= 0.0):
            raise ValueError("positions must be strictly ascending")
        if self.kind == "discrete":
            if positions.size != masses.size:
                raise ValueError("one mass per atom required")
            if masses.size and float(masses.min()) <= 0.0:
                raise ValueError("atom masses must be strictly positive")
        else:
            if positions.size != masses.size + 1:
                raise ValueError("bin edges must outnumber masses by one")
            if masses.size and float(masses.min()) < 0.0:
                raise ValueError("bin masses must be nonnegative")

    @classmethod
    def discrete(cls, positions, masses) -> "SpectralMeasure":
        return cls("discrete", np.asarray(positions, float), np.asarray(masses, float))

    @classmethod
    def sampled(cls, edges, masses) -> "SpectralMeasure":
        return cls("sampled", np.asarray(edges, float), np.asarray(masses, float))

    def __len__(self) -> int:
        return self.masses.size

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def support_positions(self) -> np.ndarray:
        """Atom locations, or bin midpoints for sampled measures."""
        if self.kind == "discrete":
            return self.positions
        return (self.positions[:-1] + self.positions[1:]) / 2


@dataclass(frozen=True, eq=False)
class SpectralState:
    """Probability weights of a state over the atoms/bins of a reference measure."""

    measure: SpectralMeasure
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.shape != self.measure.masses.shape:
            raise ValueError("one weight per atom/bin required")
        if w.size and float(w.min()) < 0.0:
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        if np.any((w > 0.0) & (self.measure.masses <= 0.0)):
            raise ValueError("state puts weight where the reference measure vanishes")


def sphere_eigenspace_dim(n: int, d: int) -> int:
    """Dimension of the degree-d Laplacian eigenspace on the unit sphere in R^n.

    Counts harmonic homogeneous polynomials of degree d in n variables:
    C(d+n-1, n-1) - C(d+n-3, n-1), binomials with negative top index read as 0.
    """
    if n < 2:
        raise ValueError(f"ambient dimension must be at least 2, got {n}")
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")

    def comb0(top, k):
        return math.comb(top, k) if top >= 0 else 0

    return comb0(d + n - 1, n - 1) - comb0(d + n - 3, n - 1)


def harmonic_dimension_bruteforce(n: int, d: int) -> int:
    """Count harmonic homogeneous polynomials of degree d in n variables directly.

    Independent cross-check of sphere_eigenspace_dim: builds the Laplacian as a
    matrix on the monomial basis of degree-d homogeneous polynomials and takes
    the kernel dimension as dim - rank. Intended for small n and d.
    """
    if n < 2 or d < 0:
        raise ValueError("need n >= 2 and d >= 0")

    def monomials(total, nvars):
        if nvars == 1:
            return [(total,)]
        out = []
        for head in range(total + 1):
            out.extend((head, *rest) for rest in monomials(total - head, nvars - 1))
        return out

    basis = monomials(d, n)
    if d < 2:
        return len(basis)
    target = {m: i for i, m in enumerate(monomials(d - 2, n))}
    lap = np.zeros((len(target), len(basis)))
    for j, alpha in enumerate(basis):
        for axis in range(n):
            if alpha[axis] >= 2:
                beta = list(alpha)
                beta[axis] -= 2
                lap[target[tuple(beta)], j] += alpha[axis] * (alpha[axis] - 1)
    rank = int(np.linalg.matrix_rank(lap))
    return len(basis) - rank


def sphere_spectral_measure(n: int, d_max: int) -> SpectralMeasure:
    """Atoms (d(d+n-2), dim E_d) for d = 0..d_max, with unit surface normalization."""
    if d_max < 0:
        raise ValueError(f"d_max must be nonnegative, got {d_max}")
    degrees = np.arange(d_max + 1)
    lam = degrees * (degrees + n - 2)
    dims = np.array([sphere_eigenspace_dim(n, int(d)) for d in degrees], dtype=float)
    return SpectralMeasure.discrete(lam.astype(float), dims)


def landau_spectral_measure(b_field: float, n_max: int) -> SpectralMeasure:
    """Landau levels (2k+1)B for k = 0..n_max, each carrying spatial density B/(2 pi)."""
    if b_field <= 0.0:
        raise ValueError(f"field strength must be positive, got {b_field}")
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    k = np.arange(n_max + 1)
    lam = (2 * k + 1) * b_field
    mass = np.full(n_max + 1, b_field / (2 * np.pi))
    return SpectralMeasure.discrete(lam.astype(float), mass)


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def euclidean_laplacian_cumulative(n: int, lam: float) -> float:
    """Spectral mass of the Laplacian on R^n below lam: volume of B(sqrt(lam)/2pi)."""
    if lam < 0.0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    radius = math.sqrt(lam) / (2 * math.pi)
    return unit_ball_volume(n) * radius**n


def symbol_measure_montecarlo(
    sigma: Callable[[np.ndarray], np.ndarray],
    n: int,
    box_halfwidth: float,
    samples: int,
    bin_edges: np.ndarray,
    rng: np.random.Generator,
    chunk: int = 1_000_000,
) -> tuple[SpectralMeasure, np.ndarray]:
    """Monte-Carlo sublevel volumes of a symbol, binned over bin_edges.

    Draws uniform points in the box [-R, R]^n, evaluates sigma (vectorized
    over an (N, n) array) and histograms the values. Bin mass is (2R)^n times
    the hit fraction; the second return value is the per-bin standard error.

    The caller must pick R large enough that the preimage of the binned range
    lies inside the box; the estimator cannot detect a box that is too small.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    edges = np.asarray(bin_edges, dtype=float)
    counts = np.zeros(edges.size - 1, dtype=np.int64)
    remaining = samples
    while remaining > 0:
        batch = min(remaining, chunk)
        xi = rng.uniform(-box_halfwidth, box_halfwidth, size=(batch, n))
        vals = np.asarray(sigma(xi), dtype=float)
        hist, _ = np.histogram(vals, bins=edges)
        counts += hist
        remaining -= batch
    volume = (2.0 * box_halfwidth) ** n
    frac = counts / samples
    masses = volume * frac
    stderr = volume * np.sqrt(frac * (1.0 - frac) / samples)
    return SpectralMeasure.sampled(edges, masses), stderr


def spectral_entropy(nu: SpectralState, mu: SpectralMeasure) -> float:
    """-sum nu_i ln(nu_i / mu_i) over the support of nu.

    Depends only on the pairing of weights with reference masses, never on the
    atom locations, so it is invariant under injective relabeling of the
    spectrum.
    """
    if nu.weights.shape != mu.masses.shape:
        raise ValueError("state and measure must share atoms/bins")
    total = 0.0
    for i, (w, m) in enumerate(zip(nu.weights, mu.masses)):
        if w <= 0.0:
            continue
        if m <= 0.0:
            raise ValueError(f"state weight at index {i} outside the measure support")
        total -= w * np.log(w / m)
    return float(total)

"""Dense complex Hermitian linear algebra, matrix functions and entropies.

Everything here works on plain square numpy arrays treated as immutable.
Density matrices are Hermitian positive semidefinite arrays with unit trace;
`check_density` enforces that contract where an operation depends on it.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

HERMITIAN_ATOL = 1e-12
DENSITY_EIG_ATOL = 1e-10
DENSITY_TRACE_ATOL = 1e-10


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary, column i pairs with eigenvalues[i]


def max_asymmetry(a: np.ndarray) -> float:
    """Largest entrywise deviation of a from its conjugate transpose."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T)))


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return (a + np.asarray(a).conj().T) / 2


def assert_hermitian(a: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    asym = max_asymmetry(a)
    if asym > atol:
        raise ValueError(
            f"matrix is not Hermitian: max asymmetry {asym:.3e} exceeds {atol:.1e}"
        )
    return a


def check_density(rho: np.ndarray) -> np.ndarray:
    """Validate a density matrix: Hermitian, eigenvalues >= -1e-10, trace 1."""
    rho = assert_hermitian(rho)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > DENSITY_TRACE_ATOL:
        raise ValueError(f"density matrix trace {tr!r} is not 1")
    wmin = float(np.linalg.eigvalsh(rho)[0])
    if wmin < -DENSITY_EIG_ATOL:
        raise ValueError(f"density matrix has negative eigenvalue {wmin:.3e}")
    return rho


def eig_hermitian(a: np.ndarray, atol: float = HERMITIAN_ATOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    a = assert_hermitian(a, atol)
    w, v = np.linalg.eigh(a)
    return EigenDecomposition(w, v)


def matrix_function(a: np.ndarray, f: Callable[[float], float]) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix through its spectrum.

    Raises ValueError naming the offending eigenvalue when f is undefined or
    non-finite there (e.g. log of a non-positive eigenvalue).
    """
    w, v = eig_hermitian(a)
    fw = np.empty_like(w)
    for i, lam in enumerate(w):
        try:
            val = float(f(float(lam)))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise ValueError(f"function undefined at eigenvalue {lam!r}: {exc}") from exc
        if not np.isfinite(val):
            raise ValueError(f"function is not finite at eigenvalue {lam!r} (got {val!r})")
        fw[i] = val
    return hermitian_part((v * fw) @ v.conj().T)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(rho) = -tr(rho ln rho) with eigenvalues clamped to [0, 1] and 0 ln 0 = 0."""
    rho = check_density(rho)
    w = np.clip(np.linalg.eigvalsh(rho), 0.0, 1.0)
    w = w[w > 0.0]
    return float(-(w @ np.log(w)))


def _log_trace_exp_neg(eigenvalues: np.ndarray) -> float:
    # ln tr(e^{-A}) from the spectrum of A, shifted for overflow safety
    lo = float(eigenvalues.min())
    return float(np.log(np.exp(-(eigenvalues - lo)).sum()) - lo)


def gibbs_deficit(a: np.ndarray, rho: np.ndarray) -> float:
    """tr(A rho) - S(rho) + ln tr(e^{-A}); nonnegative, zero at rho = e^{-A}/tr(e^{-A})."""
    a = assert_hermitian(a)
    rho = check_density(rho)
    if a.shape != rho.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {rho.shape}")
    energy = float(np.trace(a @ rho).real)
    w = np.linalg.eigvalsh(a)
    return energy - von_neumann_entropy(rho) + _log_trace_exp_neg(w)


def golden_thompson_deficit(a: np.ndarray, b: np.ndarray) -> float:
    """tr(e^{A/2} e^B e^{A/2}) - tr(e^{A+B}); nonnegative, zero when A and B commute."""
    a = assert_hermitian(a)
    b = assert_hermitian(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    ea2 = matrix_function(a / 2, np.exp)
    eb = matrix_function(b, np.exp)
    upper = float(np.trace(ea2 @ eb @ ea2).real)
    lower = float(np.exp(np.linalg.eigvalsh(a + b)).sum())
    return upper - lower


def gibbs_state(a: np.ndarray) -> np.ndarray:
    """Normalized e^{-A}, the minimizer of the Gibbs variational formula."""
    ea = matrix_function(a, lambda x: np.exp(-x))
    return ea / float(np.trace(ea).real)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with phase-fixed R diagonal."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r)
    return q * (ph / np.abs(ph))


def random_density(d: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Random mixed state G G^* / tr, G a d x rank complex Gaussian matrix."""
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return hermitian_part(rho / float(np.trace(rho).real))


def random_hermitian(d: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return hermitian_part(z) * scale


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; for Hermitian inputs the result is Hermitian."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))

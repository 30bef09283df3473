"""Finite POVMs: constructions, measurement, Liouville pairing, majorants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import assert_hermitian

PSD_ATOL = 1e-10
SUM_ATOL = 1e-9
ORTHONORMAL_ATOL = 1e-10
PROJECTOR_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class WeightedMeasure:
    """Discrete measure on labeled atoms; masses are nonnegative."""

    labels: tuple[str, ...]
    masses: np.ndarray

    def __post_init__(self):
        masses = np.asarray(self.masses, dtype=float)
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if masses.ndim != 1 or len(self.labels) != masses.size:
            raise ValueError("labels and masses must be 1-D sequences of equal length")
        if masses.size and float(masses.min()) < 0.0:
            raise ValueError(f"negative mass {float(masses.min()):.3e}")

    def __len__(self) -> int:
        return self.masses.size

    @property
    def total(self) -> float:
        return float(self.masses.sum())

    def is_probability(self, atol: float = 1e-9) -> bool:
        return abs(self.total - 1.0) <= atol


@dataclass(frozen=True, eq=False)
class FinitePOVM:
    """Ordered family of PSD operators summing to the identity."""

    elements: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        els = tuple(assert_hermitian(e) for e in self.elements)
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if not els:
            raise ValueError("a POVM needs at least one element")
        if len(self.labels) != len(els):
            raise ValueError("one label per element required")
        d = els[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for e in els:
            if e.shape != (d, d):
                raise ValueError("all elements must share one dimension")
            wmin = float(np.linalg.eigvalsh(e)[0])
            if wmin < -PSD_ATOL:
                raise ValueError(f"element has negative eigenvalue {wmin:.3e}")
            total += e
        resid = float(np.max(np.abs(total - np.eye(d))))
        if resid > SUM_ATOL:
            raise ValueError(f"elements do not sum to identity (residual {resid:.3e})")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


def _check_orthonormal(vectors: np.ndarray) -> np.ndarray:
    u = np.asarray(vectors, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix of basis columns, got {u.shape}")
    resid = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1]))))
    if resid > ORTHONORMAL_ATOL:
        raise ValueError(f"columns are not orthonormal (residual {resid:.3e})")
    return u


def _index_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def povm_from_basis(vectors: np.ndarray, labels: Sequence[str] | None = None) -> FinitePOVM:
    """Rank-one projector POVM from an orthonormal basis given as matrix columns."""
    u = _check_orthonormal(vectors)
    d = u.shape[1]
    els = tuple(np.outer(u[:, i], u[:, i].conj()) for i in range(d))
    return FinitePOVM(els, tuple(labels) if labels is not None else _index_labels(d))


def povm_compress(p: FinitePOVM, proj: np.ndarray) -> FinitePOVM:
    """Compress a POVM to the range of an orthogonal projector.

    Elements become V^* P_i V for V an orthonormal basis of range(proj), so the
    compressed family still sums to the identity of the subspace.
    """
    proj = assert_hermitian(proj)
    if proj.shape[0] != p.dim:
        raise ValueError(f"projector dimension {proj.shape[0]} does not match POVM dim {p.dim}")
    idem = float(np.max(np.abs(proj @ proj - proj)))
    if idem > PROJECTOR_ATOL:
        raise ValueError(f"matrix is not an orthogonal projector (idempotency residual {idem:.3e})")
    w, v = np.linalg.eigh(proj)
    basis = v[:, w > 0.5]
    if basis.shape[1] == 0:
        raise ValueError("projector has rank zero")
    els = tuple(basis.conj().T @ e @ basis for e in p.elements)
    return FinitePOVM(els, p.labels)


def povm_tensor_pair(basis1: np.ndarray, basis2: np.ndarray) -> tuple[FinitePOVM, FinitePOVM]:
    """POVM pair P_i = |e_i><e_i| (x) 1 and Q_j = 1 (x) |f_j><f_j| on the product space."""
    u = _check_orthonormal(basis1)
    v = _check_orthonormal(basis2)
    a, b = u.shape[1], v.shape[1]
    p_els = tuple(np.kron(np.outer(u[:, i], u[:, i].conj()), np.eye(b)) for i in range(a))
    q_els = tuple(np.kron(np.eye(a), np.outer(v[:, j], v[:, j].conj())) for j in range(b))
    return (
        FinitePOVM(p_els, _index_labels(a)),
        FinitePOVM(q_els, _index_labels(b)),
    )


def _check_partition(groups: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    groups = [list(g) for g in groups]
    flat = sorted(i for g in groups for i in g)
    if flat != list(range(n)):
        raise ValueError(f"groups do not partition range({n})")
    return groups


def povm_coarsen(p: FinitePOVM, groups: Sequence[Sequence[int]]) -> FinitePOVM:
    """Merge POVM elements along a partition of the outcome indices."""
    groups = _check_partition(groups, len(p))
    els = []
    labels = []
    for g in groups:
        els.append(sum(p.elements[i] for i in g))
        labels.append("+".join(p.labels[i] for i in g))
    return FinitePOVM(tuple(els), tuple(labels))


def pushforward(measure: WeightedMeasure, groups: Sequence[Sequence[int]]) -> WeightedMeasure:
    """Image of a weighted measure under the partition map used by povm_coarsen."""
    groups = _check_partition(groups, len(measure))
    masses = np.array([measure.masses[list(g)].sum() for g in groups])
    labels = tuple("+".join(measure.labels[i] for i in g) for g in groups)
    return WeightedMeasure(labels, masses)


def measurement_distribution(rho: np.ndarray, p: FinitePOVM) -> WeightedMeasure:
    """Outcome distribution nu(i) = tr(rho P_i) of measuring rho through P."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (p.dim, p.dim):
        raise ValueError(f"state dimension {rho.shape} does not match POVM dim {p.dim}")
    masses = np.array([float(np.trace(rho @ e).real) for e in p.elements])
    if float(masses.min()) < -1e-12:
        raise ValueError(f"measurement produced mass {float(masses.min()):.3e} < -1e-12")
    masses = np.clip(masses, 0.0, None)
    if abs(masses.sum() - 1.0) > 1e-9:
        raise ValueError(f"outcome masses sum to {masses.sum()!r}, not 1")
    return WeightedMeasure(p.labels, masses)


def liouville_matrix(p: FinitePOVM, q: FinitePOVM) -> np.ndarray:
    """State-independent pairing L[i, j] = tr(P_i Q_j), clipped to nonnegative reals."""
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    raw = np.array([[np.trace(a @ b) for b in q.elements] for a in p.elements])
    imag = float(np.max(np.abs(raw.imag)))
    if imag > 1e-12:
        raise ValueError(f"Liouville entries have imaginary residue {imag:.3e}")
    ell = raw.real
    if float(ell.min()) < -1e-10:
        raise ValueError(f"Liouville entry {float(ell.min()):.3e} below -1e-10")
    return np.clip(ell, 0.0, None)


def product_majorant(
    ell: np.ndarray,
    refine: bool = False,
    row_labels: Sequence[str] | None = None,
    col_labels: Sequence[str] | None = None,
    max_iter: int = 500,
) -> tuple[WeightedMeasure, WeightedMeasure]:
    """Factorized majorant (mu_P, mu_Q) with mu_P(i) mu_Q(j) >= L[i, j].

    Default choice takes entrywise square roots of the row and column maxima,
    which reproduces the sup-overlap weights on basis pairs. With refine=True,
    alternating updates mu_P(i) <- max_j L[i, j]/mu_Q(j) (and symmetrically)
    run until the uniform-weight constant K stops improving by more than 1e-10.
    All-zero rows or columns get mass 0 and drop out of entropy sums.
    """
    ell = np.asarray(ell, dtype=float)
    if ell.ndim != 2:
        raise ValueError("expected a matrix")
    if float(ell.min()) < 0.0:
        raise ValueError("Liouville matrix must be nonnegative")
    mu_p = np.sqrt(ell.max(axis=1))
    mu_q = np.sqrt(ell.max(axis=0))
    rows = mu_p > 0.0
    cols = mu_q > 0.0
    if refine and rows.any() and cols.any():
        def uniform_k(a, b):
            return -float(np.log(a[rows]).mean()) - float(np.log(b[cols]).mean())

        k_prev = uniform_k(mu_p, mu_q)
        for _ in range(max_iter):
            prev = (mu_p, mu_q)
            with np.errstate(divide="ignore", invalid="ignore"):
                mu_p = np.where(rows, (ell[:, cols] / mu_q[cols]).max(axis=1, initial=0.0), 0.0)
                mu_q = np.where(cols, (ell[rows, :] / mu_p[rows][:, None]).max(axis=0, initial=0.0), 0.0)
            k_new = uniform_k(mu_p, mu_q)
            if k_new <= k_prev + 1e-10:
                if k_new < k_prev:
                    mu_p, mu_q = prev
                break
            k_prev = k_new
    m, n = ell.shape
    return (
        WeightedMeasure(tuple(row_labels) if row_labels is not None else _index_labels(m), mu_p),
        WeightedMeasure(tuple(col_labels) if col_labels is not None else _index_labels(n), mu_q),
    )


def dft_basis(d: int) -> np.ndarray:
    """Columns f_j(k) = d^{-1/2} exp(-2 pi i j k / d)."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    j = np.arange(d)
    return np.exp(-2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def mub_pair(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Standard basis together with the discrete Fourier basis; always unbiased."""
    return np.eye(d, dtype=complex), dft_basis(d)

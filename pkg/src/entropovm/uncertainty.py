"""Verification engine for the POVM entropic uncertainty inequality.

The central quantity is the deficit

    -sum_i nu_P(i) ln(nu_P(i)/mu_P(i)) - sum_j nu_Q(j) ln(nu_Q(j)/mu_Q(j)) - S(rho)

which is nonnegative whenever mu_P (x) mu_Q dominates the Liouville pairing
of the two POVMs entrywise. The module also computes the bound constants for
basis pairs, the intermediate trace-product and operator-Jensen quantities of
the proof, the coarsening monotonicity gap and equality-case diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import matrix_function, von_neumann_entropy
from .povm import (
    FinitePOVM,
    WeightedMeasure,
    liouville_matrix,
    measurement_distribution,
    pushforward,
)

MAJORANT_ATOL = 1e-12


@dataclass(frozen=True)
class UncertaintyResult:
    lhs: float
    entropy: float
    deficit: float


@dataclass(frozen=True)
class EqualityDiagnostics:
    independent: bool
    projective_p: bool
    projective_q: bool
    commuting: bool
    deficit: float


def relative_entropy_term(nu: WeightedMeasure, mu: WeightedMeasure) -> float:
    """-sum_{nu_i > 0} nu_i ln(nu_i / mu_i); requires nu absolutely continuous wrt mu."""
    if nu.labels != mu.labels:
        raise ValueError("measures must share the same labels in the same order")
    total = 0.0
    for label, n_i, m_i in zip(nu.labels, nu.masses, mu.masses):
        if n_i <= 0.0:
            continue
        if m_i <= 0.0:
            raise ValueError(f"absolute continuity violated at label {label!r}")
        total -= n_i * np.log(n_i / m_i)
    return float(total)


def _check_majorant(ell: np.ndarray, mu_p: WeightedMeasure, mu_q: WeightedMeasure) -> None:
    prod = np.outer(mu_p.masses, mu_q.masses)
    viol = ell - prod
    worst = float(viol.max())
    if worst > MAJORANT_ATOL:
        i, j = np.unravel_index(int(viol.argmax()), viol.shape)
        raise ValueError(
            "product measure does not majorize the Liouville matrix: "
            f"entry ({mu_p.labels[i]!r}, {mu_q.labels[j]!r}) exceeds by {worst:.3e}"
        )


def uncertainty_deficit(
    rho: np.ndarray,
    p: FinitePOVM,
    q: FinitePOVM,
    mu_p: WeightedMeasure,
    mu_q: WeightedMeasure,
) -> UncertaintyResult:
    """Entropy sum against the majorant, the state entropy, and their difference."""
    ell = liouville_matrix(p, q)
    _check_majorant(ell, mu_p, mu_q)
    nu_p = measurement_distribution(rho, p)
    nu_q = measurement_distribution(rho, q)
    lhs = relative_entropy_term(nu_p, mu_p) + relative_entropy_term(nu_q, mu_q)
    s = von_neumann_entropy(rho)
    return UncertaintyResult(lhs=lhs, entropy=s, deficit=lhs - s)


def constant_K(
    p: WeightedMeasure,
    q: WeightedMeasure,
    mu_p: WeightedMeasure,
    mu_q: WeightedMeasure,
) -> float:
    """Bound constant -sum_i p_i ln mu_P(i) - sum_j q_j ln mu_Q(j)."""
    if not (p.is_probability() and q.is_probability()):
        raise ValueError("p and q must be probability measures")
    total = 0.0
    for dist, mu in ((p, mu_p), (q, mu_q)):
        for label, w, m in zip(dist.labels, dist.masses, mu.masses):
            if w <= 0.0:
                continue
            if m <= 0.0:
                raise ValueError(f"majorant mass is zero on the support at label {label!r}")
            total -= w * np.log(m)
    return float(total)


def constant_Kprime(basis1: np.ndarray, basis2: np.ndarray) -> float:
    """-2 ln of the largest overlap |<e_i, f_j>| between two orthonormal bases."""
    overlap = np.abs(np.asarray(basis1).conj().T @ np.asarray(basis2))
    return float(-2.0 * np.log(overlap.max()))


def trace_product_bound(
    rho: np.ndarray,
    p: FinitePOVM,
    q: FinitePOVM,
    mu_p: WeightedMeasure,
    mu_q: WeightedMeasure,
) -> float:
    """sum_{ij} (nu_P(i)/mu_P(i)) (nu_Q(j)/mu_Q(j)) L[i, j]; at most 1 under a valid majorant."""
    ell = liouville_matrix(p, q)
    _check_majorant(ell, mu_p, mu_q)
    nu_p = measurement_distribution(rho, p)
    nu_q = measurement_distribution(rho, q)

    def density(nu, mu):
        out = np.zeros(len(nu))
        for i, (label, n_i, m_i) in enumerate(zip(nu.labels, nu.masses, mu.masses)):
            if n_i <= 0.0:
                continue
            if m_i <= 0.0:
                raise ValueError(f"absolute continuity violated at label {label!r}")
            out[i] = n_i / m_i
        return out

    rp = density(nu_p, mu_p)
    rq = density(nu_q, mu_q)
    return float(rp @ ell @ rq)


def choi_jensen_deficit(p: FinitePOVM, weights: np.ndarray) -> float:
    """Smallest eigenvalue of sum_i (-ln w_i) P_i + ln(sum_i w_i P_i).

    Nonnegative since -ln is operator convex; zero for projection valued
    measures.
    """
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(p),):
        raise ValueError(f"expected {len(p)} weights, got shape {w.shape}")
    if float(w.min()) <= 0.0:
        raise ValueError("weights must be strictly positive")
    mix = sum(wi * e for wi, e in zip(w, p.elements))
    m = sum(-np.log(wi) * e for wi, e in zip(w, p.elements)) + matrix_function(mix, np.log)
    return float(np.linalg.eigvalsh(m)[0])


def refinement_gap(
    rho: np.ndarray,
    p: FinitePOVM,
    groups,
    mu: WeightedMeasure,
    mu_coarse: WeightedMeasure,
) -> float:
    """Entropy increase under outcome coarsening; nonnegative by Jensen."""
    expected = pushforward(mu, groups)
    if len(expected) != len(mu_coarse) or not np.allclose(
        expected.masses, mu_coarse.masses, rtol=0.0, atol=1e-9
    ):
        raise ValueError("mu_coarse is not the pushforward of mu under the partition")
    nu = measurement_distribution(rho, p)
    nu_coarse = WeightedMeasure(mu_coarse.labels, pushforward(nu, groups).masses)
    fine = relative_entropy_term(nu, mu)
    coarse = relative_entropy_term(nu_coarse, mu_coarse)
    return coarse - fine


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a)))


def equality_diagnostics(
    p: FinitePOVM,
    q: FinitePOVM,
    rho: np.ndarray,
    mu_p: WeightedMeasure,
    mu_q: WeightedMeasure,
    atol: float = 1e-9,
) -> EqualityDiagnostics:
    """Flags for the structural equality conditions, plus the realized deficit.

    Independence is a rank-one test on the Liouville matrix through its 2x2
    minors; projectivity checks idempotency of every element; commutation
    checks every [P_i, Q_j].
    """
    ell = liouville_matrix(p, q)
    minors = np.einsum("ij,kl->ikjl", ell, ell)
    independent = _max_abs(minors - minors.transpose(0, 1, 3, 2)) < atol

    def projective(povm):
        return all(_max_abs(e @ e - e) < atol for e in povm.elements)

    commuting = all(
        _max_abs(a @ b - b @ a) < atol for a in p.elements for b in q.elements
    )
    deficit = uncertainty_deficit(rho, p, q, mu_p, mu_q).deficit
    return EqualityDiagnostics(
        independent=independent,
        projective_p=projective(p),
        projective_q=projective(q),
        commuting=commuting,
        deficit=deficit,
    )

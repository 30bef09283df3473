"""Laplace transforms of spectral measures and entropy-energy (log-Sobolev) bounds.

The chain implemented here: the Laplace transform L(t) of a spectral measure
bounds the spectral entropy by t E + ln L(t); optimizing over t gives the
Legendre-type value inf_t (t E + ln L(t)), computed by golden-section search
on the convex function ln L. Closed forms are used for the Euclidean
Laplacian, (4 pi t)^{-n/2}, and for Landau levels, B / (4 pi sinh(Bt)).
The module also builds the log cumulative function and its least concave
majorant, and compares the two resulting bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import (
    SpectralMeasure,
    SpectralState,
    euclidean_laplacian_cumulative,
    spectral_entropy,
)

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _log_sinh(x: float) -> float:
    # ln sinh(x) without overflow for large x
    if x <= 0.0:
        raise ValueError(f"log sinh needs x > 0, got {x}")
    return x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)


@dataclass(frozen=True, eq=False)
class LaplaceCurve:
    """Laplace transform t -> integral of e^{-t lambda} against a spectral measure.

    kind "measure" evaluates the sum over atoms (midpoints for sampled
    measures); "euclidean" and "landau" use the closed forms.
    """

    kind: str
    measure: SpectralMeasure | None = None
    dimension: int | None = None
    field_strength: float | None = None

    @classmethod
    def from_measure(cls, measure: SpectralMeasure) -> "LaplaceCurve":
        return cls("measure", measure=measure)

    @classmethod
    def euclidean(cls, n: int) -> "LaplaceCurve":
        if n < 1:
            raise ValueError(f"dimension must be positive, got {n}")
        return cls("euclidean", dimension=n)

    @classmethod
    def landau(cls, b_field: float) -> "LaplaceCurve":
        if b_field <= 0.0:
            raise ValueError(f"field strength must be positive, got {b_field}")
        return cls("landau", field_strength=b_field)

    def log_value(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError(f"t must be positive, got {t}")
        if self.kind == "euclidean":
            return -0.5 * self.dimension * math.log(4.0 * math.pi * t)
        if self.kind == "landau":
            b = self.field_strength
            return math.log(b) - math.log(4.0 * math.pi) - _log_sinh(b * t)
        mu = self.measure
        arg = np.log(mu.masses, where=mu.masses > 0, out=np.full(len(mu), -np.inf)) \
            - t * mu.support_positions()
        hi = float(arg.max())
        return hi + float(np.log(np.exp(arg - hi).sum()))

    def value(self, t: float) -> float:
        return math.exp(self.log_value(t))

    def spectral_infimum(self) -> float:
        """Lower edge of the spectrum (-> energy below which the bound degenerates)."""
        if self.kind == "euclidean":
            return 0.0
        if self.kind == "landau":
            return self.field_strength
        return float(self.measure.support_positions()[0])


def _as_curve(source) -> LaplaceCurve:
    if isinstance(source, LaplaceCurve):
        return source
    if isinstance(source, SpectralMeasure):
        return LaplaceCurve.from_measure(source)
    raise TypeError(f"expected SpectralMeasure or LaplaceCurve, got {type(source)!r}")


def laplace_transform(source, t: float) -> float:
    """L(t) for a spectral measure or closed-form curve; t must be positive."""
    return _as_curve(source).value(t)


def gibbs_spectral_state(mu: SpectralMeasure, t: float) -> SpectralState:
    """Spectral weights proportional to mass e^{-t lambda}; the equality case of the bound."""
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t}")
    lam = mu.support_positions()
    arg = -t * lam + np.log(mu.masses, where=mu.masses > 0, out=np.full(len(mu), -np.inf))
    arg -= arg.max()
    w = np.exp(arg)
    w[mu.masses <= 0.0] = 0.0
    return SpectralState(mu, w / w.sum())


def mean_energy(nu: SpectralState) -> float:
    """Expected spectral position of a state."""
    return float(nu.weights @ nu.measure.support_positions())


def gibbs_spectral_bound_deficit(nu: SpectralState, mu: SpectralMeasure, t: float) -> float:
    """t E + ln L(t) - S_A; nonnegative, zero exactly on Gibbs spectral states."""
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t}")
    curve = LaplaceCurve.from_measure(mu)
    energy = float(nu.weights @ mu.support_positions())
    return t * energy + curve.log_value(t) - spectral_entropy(nu, mu)


def _golden_section(g, a: float, b: float, t_tol: float) -> float:
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = g(c), g(d)
    while (b - a) > t_tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = g(d)
    return min(fc, fd)


def legendre_of_logL(
    source,
    energy: float,
    t_lo: float = 1e-8,
    t_tol: float = 1e-9,
    t_cap: float = 1e12,
) -> float:
    """inf_{t >= 0} (t E + ln L(t)) by golden-section search on a grown bracket.

    The bracket upper end doubles from 1 until the objective starts increasing
    (convexity makes that a valid bracket). If the objective is still falling
    at t_cap, the energy sits at or below the spectral infimum: at the infimum
    the limiting value is returned, below it the transform diverges to -inf
    and a ValueError describing that boundary behavior is raised.
    """
    curve = _as_curve(source)

    def g(t: float) -> float:
        return t * energy + curve.log_value(t)

    t_hi = 1.0
    while t_hi < t_cap and g(2.0 * t_hi) <= g(t_hi):
        t_hi *= 2.0
    if t_hi >= t_cap:
        slope = (g(2.0 * t_cap) - g(t_cap)) / t_cap
        if slope < -1e-12:
            raise ValueError(
                f"energy {energy!r} lies below the spectral infimum "
                f"{curve.spectral_infimum()!r}: the infimum diverges to -inf"
            )
        return g(t_cap)
    return _golden_section(g, t_lo, 2.0 * t_hi, t_tol)


def landau_legendre_closed_form(b_field: float, nbar: float) -> float:
    """Closed form of the optimized Landau bound at mean level nbar (energy (2 nbar + 1) B).

    ln((E + B) / 4 pi) + nbar ln(1 + 1/nbar), the second factor reading 0 at
    nbar = 0 by its limit.
    """
    if b_field <= 0.0:
        raise ValueError(f"field strength must be positive, got {b_field}")
    if nbar < 0.0:
        raise ValueError(f"mean level must be nonnegative, got {nbar}")
    energy = (2.0 * nbar + 1.0) * b_field
    tail = nbar * math.log1p(1.0 / nbar) if nbar > 0.0 else 0.0
    return math.log((energy + b_field) / (4.0 * math.pi)) + tail


def cumulative_F(source, lam: float) -> float:
    """Spectral mass strictly below lam (left-open cumulative function)."""
    if isinstance(source, LaplaceCurve):
        if source.kind == "euclidean":
            return euclidean_laplacian_cumulative(source.dimension, max(lam, 0.0))
        if source.kind == "landau":
            b = source.field_strength
            count = max(0, math.ceil((lam / b - 1.0) / 2.0))
            return count * b / (2.0 * math.pi)
        source = source.measure
    mu = source
    if mu.kind == "discrete":
        return float(mu.masses[mu.positions < lam].sum())
    # sampled: full bins below lam plus the linear fraction of a straddling bin
    edges = mu.positions
    total = float(mu.masses[edges[1:] <= lam].sum())
    inside = (edges[:-1] < lam) & (edges[1:] > lam)
    if inside.any():
        i = int(np.argmax(inside))
        frac = (lam - edges[i]) / (edges[i + 1] - edges[i])
        total += float(mu.masses[i]) * frac
    return total


@dataclass(frozen=True, eq=False)
class PiecewiseLinear:
    """Piecewise-linear function on [xs[0], xs[-1]]."""

    xs: np.ndarray
    ys: np.ndarray

    def __call__(self, x: float) -> float:
        if x < self.xs[0] or x > self.xs[-1]:
            raise ValueError(f"{x!r} outside domain [{self.xs[0]!r}, {self.xs[-1]!r}]")
        return float(np.interp(x, self.xs, self.ys))


def concave_hull(points) -> PiecewiseLinear:
    """Least concave majorant of sample points, by upper-hull monotone chain."""
    pts: dict[float, float] = {}
    for x, y in points:
        x, y = float(x), float(y)
        if x not in pts or y > pts[x]:
            pts[x] = y
    if not pts:
        raise ValueError("need at least one point")
    ordered = sorted(pts.items())
    hull: list[tuple[float, float]] = []
    for px, py in ordered:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) >= 0.0:
                hull.pop()
            else:
                break
        hull.append((px, py))
    xs = np.array([p[0] for p in hull])
    ys = np.array([p[1] for p in hull])
    return PiecewiseLinear(xs, ys)


def bound_comparison(curve, mu_source, lam_grid) -> float:
    """min over the grid of [inf_t(t lam + ln L(t)) - concave hull of ln F](lam).

    Grid points where the cumulative function vanishes are excluded (the log
    is undefined there); the comparison is nonnegative for matching curve and
    measure.
    """
    lam_grid = np.asarray(lam_grid, dtype=float)
    if lam_grid.size == 0:
        raise ValueError("empty grid")
    kept = []
    for lam in lam_grid:
        f = cumulative_F(mu_source, float(lam))
        if f > 0.0:
            kept.append((float(lam), math.log(f)))
    if not kept:
        raise ValueError("cumulative function vanishes on the whole grid")
    hull = concave_hull(kept)
    worst = math.inf
    for lam, _ in kept:
        diff = legendre_of_logL(curve, lam) - hull(lam)
        worst = min(worst, diff)
    return worst

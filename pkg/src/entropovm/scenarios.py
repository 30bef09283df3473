"""Scenario registry: named, seeded verification runs producing reports.

Every scenario draws its instances from per-instance RNGs whose seeds are
mixed deterministically out of the master seed, so a report is reproducible
from its config echo alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import funcspace, linalg, logsobolev, povm, spectral, uncertainty
from .report import Report, ScenarioRecord, aggregate_records, make_record

_MASK64 = (1 << 64) - 1
_GOLDEN64 = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> int:
    z = (x + _GOLDEN64) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def instance_seed(master: int, index: int) -> int:
    """Counter-mixed per-instance seed derived from the master seed."""
    return _splitmix64(((master & _MASK64) + (index + 1) * _GOLDEN64) & _MASK64)


@dataclass
class ScenarioConfig:
    dim: int | None = None
    trials: int | None = None
    seed: int = 0
    tolerance: float = 1e-8
    b_field: float | None = None
    t_param: float | None = None
    nbar_grid: str | None = None

    def __post_init__(self):
        if self.tolerance <= 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.dim is not None and self.dim < 2:
            raise ValueError(f"dim must be at least 2, got {self.dim}")
        if self.trials is not None and self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if self.b_field is not None and self.b_field <= 0.0:
            raise ValueError(f"B must be positive, got {self.b_field}")
        if self.t_param is not None and self.t_param <= 0.0:
            raise ValueError(f"t must be positive, got {self.t_param}")


def parse_grid(spec: str) -> np.ndarray:
    """Grid notation: "lo:hi" (unit steps when integral, else 21 points),
    "lo:hi:count" linear, "lo:hi:count:log" geometric."""
    parts = spec.split(":")
    if len(parts) < 2 or len(parts) > 4:
        raise ValueError(f"bad grid spec {spec!r}")
    lo, hi = float(parts[0]), float(parts[1])
    if hi < lo:
        raise ValueError(f"grid upper end below lower end in {spec!r}")
    if len(parts) == 2:
        if lo.is_integer() and hi.is_integer() and hi - lo <= 10_000:
            return np.arange(lo, hi + 1.0)
        return np.linspace(lo, hi, 21)
    count = int(parts[2])
    if count < 1:
        raise ValueError(f"grid needs at least one point: {spec!r}")
    if len(parts) == 4:
        if parts[3] != "log":
            raise ValueError(f"unknown grid modifier {parts[3]!r}")
        if lo <= 0.0:
            raise ValueError("log grid needs a positive lower end")
        return np.geomspace(lo, hi, count)
    return np.linspace(lo, hi, count)


def _rng_for(cfg: ScenarioConfig, index: int) -> tuple[np.random.Generator, int]:
    seed = instance_seed(cfg.seed, index)
    return np.random.default_rng(seed), seed


def _random_probability(rng: np.random.Generator, n: int) -> np.ndarray:
    w = rng.random(n) + 1e-3
    return w / w.sum()


def _basis_pair_instance(rng: np.random.Generator, d: int):
    u = linalg.random_unitary(d, rng)
    v = linalg.random_unitary(d, rng)
    rank = int(rng.integers(1, d + 1))
    rho = linalg.random_density(d, rank, rng)
    p = povm.povm_from_basis(u)
    q = povm.povm_from_basis(v)
    ell = povm.liouville_matrix(p, q)
    mu_p, mu_q = povm.product_majorant(ell, row_labels=p.labels, col_labels=q.labels)
    return u, v, rho, rank, p, q, mu_p, mu_q


def _scenario_bases(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    d = cfg.dim or 4
    trials = cfg.trials or 100
    records = []
    for i in range(trials):
        rng, seed = _rng_for(cfg, i)
        u, v, rho, rank, p, q, mu_p, mu_q = _basis_pair_instance(rng, d)
        res = uncertainty.uncertainty_deficit(rho, p, q, mu_p, mu_q)
        nu_p = povm.measurement_distribution(rho, p)
        nu_q = povm.measurement_distribution(rho, q)
        k_val = uncertainty.constant_K(nu_p, nu_q, mu_p, mu_q)
        k_prime = uncertainty.constant_Kprime(u, v)
        records.append(
            make_record(
                index=i,
                label=f"basis-pair[{i}]",
                inputs={"dim": d, "rank": rank, "seed": seed, "K": float(k_val), "Kprime": float(k_prime)},
                lhs=res.lhs,
                rhs=res.entropy,
                deficit=res.deficit,
                tolerance=tol,
            )
        )
    return records


def _scenario_mub(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    d = cfg.dim or 4
    trials = cfg.trials or 100
    basis1, basis2 = povm.mub_pair(d)
    p = povm.povm_from_basis(basis1)
    q = povm.povm_from_basis(basis2)
    mass = d ** -0.5
    mu_p = povm.WeightedMeasure(p.labels, np.full(d, mass))
    mu_q = povm.WeightedMeasure(q.labels, np.full(d, mass))
    records = []
    for i in range(trials):
        rng, seed = _rng_for(cfg, i)
        rho = linalg.random_density(d, int(rng.integers(1, d + 1)), rng)
        res = uncertainty.uncertainty_deficit(rho, p, q, mu_p, mu_q)
        records.append(
            make_record(
                index=i,
                label=f"mub-state[{i}]",
                inputs={"dim": d, "seed": seed},
                lhs=res.lhs,
                rhs=res.entropy,
                deficit=res.deficit,
                tolerance=tol,
            )
        )
    rng, seed = _rng_for(cfg, trials)
    rho = linalg.random_density(d, d, rng)
    nu_p = povm.measurement_distribution(rho, p)
    nu_q = povm.measurement_distribution(rho, q)
    k_val = uncertainty.constant_K(nu_p, nu_q, mu_p, mu_q)
    records.append(
        make_record(
            index=trials,
            label="constant-K",
            inputs={"dim": d, "seed": seed, "expected": float(np.log(d))},
            lhs=k_val,
            rhs=float(np.log(d)),
            deficit=-abs(k_val - float(np.log(d))),
            tolerance=tol,
        )
    )
    return records


def _scenario_tensor_equality(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    trials = cfg.trials or 25
    records = []
    index = 0
    for a in (2, 3):
        for b in (2, 3):
            p, q = povm.povm_tensor_pair(np.eye(a), np.eye(b))
            mu_p = povm.WeightedMeasure(p.labels, np.ones(a))
            mu_q = povm.WeightedMeasure(q.labels, np.ones(b))
            for _ in range(trials):
                rng, seed = _rng_for(cfg, index)
                w1 = _random_probability(rng, a)
                w2 = _random_probability(rng, b)
                rho = np.diag(np.kron(w1, w2)).astype(complex)
                res = uncertainty.uncertainty_deficit(rho, p, q, mu_p, mu_q)
                records.append(
                    make_record(
                        index=index,
                        label=f"tensor[{a}x{b}][{index}]",
                        inputs={"a": a, "b": b, "seed": seed, "raw_deficit": res.deficit},
                        lhs=res.lhs,
                        rhs=res.entropy,
                        deficit=-abs(res.deficit),
                        tolerance=tol,
                    )
                )
                index += 1
    return records


def _scenario_lemmas(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    d = cfg.dim or 5
    trials = cfg.trials or 200
    records = []
    for i in range(trials):
        rng, seed = _rng_for(cfg, i)
        a = linalg.random_hermitian(d, rng)
        rho = linalg.random_density(d, int(rng.integers(1, d + 1)), rng)
        gd = linalg.gibbs_deficit(a, rho)
        records.append(
            make_record(
                index=2 * i,
                label=f"gibbs[{i}]",
                inputs={"dim": d, "seed": seed},
                lhs=gd,
                rhs=0.0,
                deficit=gd,
                tolerance=tol,
            )
        )
        b = linalg.random_hermitian(d, rng)
        gt = linalg.golden_thompson_deficit(a, b)
        records.append(
            make_record(
                index=2 * i + 1,
                label=f"golden-thompson[{i}]",
                inputs={"dim": d, "seed": seed},
                lhs=gt,
                rhs=0.0,
                deficit=gt,
                tolerance=tol,
            )
        )
    return records


def _random_partition(rng: np.random.Generator, n: int) -> list[list[int]]:
    order = list(rng.permutation(n))
    cuts = sorted(set(rng.integers(1, n, size=max(1, n // 2)).tolist()))
    groups = []
    start = 0
    for c in cuts + [n]:
        if c > start:
            groups.append([int(j) for j in order[start:c]])
            start = c
    return groups


def _scenario_refinement(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    d = cfg.dim or 6
    trials = cfg.trials or 100
    records = []
    for i in range(trials):
        rng, seed = _rng_for(cfg, i)
        p = povm.povm_from_basis(linalg.random_unitary(d, rng))
        rho = linalg.random_density(d, int(rng.integers(1, d + 1)), rng)
        groups = _random_partition(rng, d)
        mu = povm.WeightedMeasure(p.labels, rng.uniform(0.5, 2.0, d))
        mu_coarse = povm.pushforward(mu, groups)
        gap = uncertainty.refinement_gap(rho, p, groups, mu, mu_coarse)
        records.append(
            make_record(
                index=i,
                label=f"refinement[{i}]",
                inputs={"dim": d, "seed": seed, "groups": len(groups)},
                lhs=gap,
                rhs=0.0,
                deficit=gap,
                tolerance=tol,
            )
        )
    return records


def _scenario_sphere(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    records = []
    index = 0
    for n in (2, 3, 4):
        for d in range(5):
            formula = spectral.sphere_eigenspace_dim(n, d)
            oracle = spectral.harmonic_dimension_bruteforce(n, d)
            records.append(
                make_record(
                    index=index,
                    label=f"dim-E[n={n},d={d}]",
                    inputs={"n": n, "d": d},
                    lhs=float(formula),
                    rhs=float(oracle),
                    deficit=-abs(float(formula - oracle)),
                    tolerance=tol,
                )
            )
            index += 1
    mu = spectral.sphere_spectral_measure(3, 12)
    for t in (0.1, 0.5, 1.0):
        nu = logsobolev.gibbs_spectral_state(mu, t)
        deficit = logsobolev.gibbs_spectral_bound_deficit(nu, mu, t)
        records.append(
            make_record(
                index=index,
                label=f"gibbs-equality[t={t}]",
                inputs={"n": 3, "d_max": 12, "t": t},
                lhs=deficit,
                rhs=0.0,
                deficit=-abs(deficit),
                tolerance=tol,
            )
        )
        index += 1
    # purely spectral state: spectral entropy equals the state entropy
    rng, seed = _rng_for(cfg, index)
    weights = _random_probability(rng, len(mu))
    nu = spectral.SpectralState(mu, weights)
    s_spec = spectral.spectral_entropy(nu, mu)
    evals = np.concatenate(
        [np.full(int(m), w / m) for w, m in zip(weights, mu.masses)]
    )
    s_state = float(-(evals @ np.log(evals)))
    records.append(
        make_record(
            index=index,
            label="purely-spectral",
            inputs={"n": 3, "d_max": 12, "seed": seed},
            lhs=s_spec,
            rhs=s_state,
            deficit=-abs(s_spec - s_state),
            tolerance=tol,
        )
    )
    return records


def _scenario_landau(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    b = cfg.b_field or 1.0
    grid = parse_grid(cfg.nbar_grid or "1e-3:1e3:25:log")
    curve = logsobolev.LaplaceCurve.landau(b)
    records = []
    for i, nbar in enumerate(grid):
        closed = logsobolev.landau_legendre_closed_form(b, float(nbar))
        numeric = logsobolev.legendre_of_logL(curve, (2.0 * float(nbar) + 1.0) * b)
        records.append(
            make_record(
                index=i,
                label=f"legendre[nbar={float(nbar):.6g}]",
                inputs={"B": b, "nbar": float(nbar)},
                lhs=closed,
                rhs=numeric,
                deficit=-abs(closed - numeric),
                tolerance=tol,
            )
        )
    return records


def _scenario_euclidean(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    records = []
    index = 0
    for n in (1, 2, 3):
        curve = logsobolev.LaplaceCurve.euclidean(n)
        for energy in np.geomspace(0.1, 100.0, 7):
            closed = 0.5 * n * float(np.log(np.e * energy / (2.0 * np.pi * n)))
            numeric = logsobolev.legendre_of_logL(curve, float(energy))
            records.append(
                make_record(
                    index=index,
                    label=f"legendre[n={n},E={float(energy):.6g}]",
                    inputs={"n": n, "E": float(energy)},
                    lhs=closed,
                    rhs=numeric,
                    deficit=-abs(closed - numeric),
                    tolerance=tol,
                )
            )
            index += 1
    return records


def _scenario_logsob_compare(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    b = cfg.b_field or 1.0
    records = []
    index = 0
    euclid = logsobolev.LaplaceCurve.euclidean(2)
    grid = np.geomspace(0.1, 100.0, 25)
    pts = [(float(lam), float(np.log(logsobolev.cumulative_F(euclid, float(lam))))) for lam in grid]
    hull = logsobolev.concave_hull(pts)
    for lam, _ in pts:
        diff = logsobolev.legendre_of_logL(euclid, lam) - hull(lam)
        records.append(
            make_record(
                index=index,
                label=f"euclidean[lam={lam:.6g}]",
                inputs={"family": "euclidean", "n": 2, "lambda": lam},
                lhs=diff,
                rhs=0.0,
                deficit=diff,
                tolerance=tol,
            )
        )
        index += 1
    landau = logsobolev.LaplaceCurve.landau(b)
    grid = np.array([(2.0 * k + 2.0) * b for k in range(50)])
    pts = [(float(lam), float(np.log(logsobolev.cumulative_F(landau, float(lam))))) for lam in grid]
    hull = logsobolev.concave_hull(pts)
    for lam, _ in pts:
        diff = logsobolev.legendre_of_logL(landau, lam) - hull(lam)
        records.append(
            make_record(
                index=index,
                label=f"landau[lam={lam:.6g}]",
                inputs={"family": "landau", "B": b, "lambda": lam},
                lhs=diff,
                rhs=0.0,
                deficit=diff,
                tolerance=tol,
            )
        )
        index += 1
    return records


def _scenario_hermite(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    ts = [cfg.t_param] if cfg.t_param is not None else [1.0, 0.5, 0.25, 0.125]
    records = []
    deficits = []
    for i, t in enumerate(ts):
        res = funcspace.hermite_scenario(t)
        deficits.append(res.deficit_fourier)
        records.append(
            make_record(
                index=len(records),
                label=f"fourier-deficit[t={t}]",
                inputs={
                    "t": float(t),
                    "k_max": res.k_max,
                    "entropy": res.entropy,
                    "spatial_entropy": res.spatial_entropy,
                },
                lhs=2.0 * res.spatial_entropy,
                rhs=res.entropy,
                deficit=res.deficit_fourier,
                tolerance=tol,
            )
        )
        records.append(
            make_record(
                index=len(records),
                label=f"energy-deficit[t={t}]",
                inputs={"t": float(t), "mean_energy": res.mean_energy},
                lhs=res.spatial_entropy + 0.5 * float(np.log(np.e * res.mean_energy / (2 * np.pi))),
                rhs=res.entropy,
                deficit=res.deficit_logsobolev,
                tolerance=tol,
            )
        )
    if len(ts) > 1:
        drops = [deficits[i] - deficits[i + 1] for i in range(len(deficits) - 1)]
        records.append(
            make_record(
                index=len(records),
                label="sharpness-trend",
                inputs={"t_grid": [float(t) for t in ts]},
                lhs=float(min(drops)),
                rhs=0.0,
                deficit=float(min(drops)),
                tolerance=tol,
            )
        )
    return records


def _scenario_circle(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    k_max = 3
    dim = 2 * k_max + 1
    trials = cfg.trials or 20
    records = []
    for i in range(trials):
        rng, seed = _rng_for(cfg, i)
        weights = _random_probability(rng, dim)
        mix = linalg.random_unitary(dim, rng)
        res = funcspace.circle_scenario(weights, mix)
        records.append(
            make_record(
                index=i,
                label=f"mixed[{i}]",
                inputs={"k_max": k_max, "seed": seed},
                lhs=res.spatial_entropy + res.spectral_entropy,
                rhs=res.entropy,
                deficit=res.deficit,
                tolerance=tol,
            )
        )
    rng, seed = _rng_for(cfg, trials)
    level_w = _random_probability(rng, k_max + 1)
    mode_w = np.empty(dim)
    mode_w[k_max] = level_w[0]
    for k in range(1, k_max + 1):
        mode_w[k_max - k] = level_w[k] / 2.0
        mode_w[k_max + k] = level_w[k] / 2.0
    res = funcspace.circle_scenario(mode_w)
    records.append(
        make_record(
            index=trials,
            label="purely-spectral",
            inputs={"k_max": k_max, "seed": seed, "raw_deficit": res.deficit},
            lhs=res.spatial_entropy + res.spectral_entropy,
            rhs=res.entropy,
            deficit=-abs(res.deficit),
            tolerance=tol,
        )
    )
    pure = np.zeros(dim)
    pure[k_max] = 1.0
    res = funcspace.circle_scenario(pure)
    records.append(
        make_record(
            index=trials + 1,
            label="pure-constant-mode",
            inputs={"k_max": k_max},
            lhs=res.spatial_entropy + res.spectral_entropy,
            rhs=res.entropy,
            deficit=-abs(res.deficit),
            tolerance=tol,
        )
    )
    return records


def _scenario_fuzz_theorem1(cfg: ScenarioConfig, tol: float) -> list[ScenarioRecord]:
    trials = cfg.trials or 100
    records = []
    for i in range(trials):
        rng, seed = _rng_for(cfg, i)
        d = int(rng.integers(2, 9))
        _, _, rho, rank, p, q, mu_p, mu_q = _basis_pair_instance(rng, d)
        res = uncertainty.uncertainty_deficit(rho, p, q, mu_p, mu_q)
        product = uncertainty.trace_product_bound(rho, p, q, mu_p, mu_q)
        records.append(
            make_record(
                index=2 * i,
                label=f"uncertainty[{i}]",
                inputs={"dim": d, "rank": rank, "seed": seed},
                lhs=res.lhs,
                rhs=res.entropy,
                deficit=res.deficit,
                tolerance=tol,
            )
        )
        records.append(
            make_record(
                index=2 * i + 1,
                label=f"trace-product[{i}]",
                inputs={"dim": d, "rank": rank, "seed": seed},
                lhs=product,
                rhs=1.0,
                deficit=1.0 - product,
                tolerance=tol,
            )
        )
    return records


_SCENARIOS: dict[str, Callable[[ScenarioConfig, float], list[ScenarioRecord]]] = {
    "bases": _scenario_bases,
    "mub": _scenario_mub,
    "tensor-equality": _scenario_tensor_equality,
    "lemmas": _scenario_lemmas,
    "refinement": _scenario_refinement,
    "sphere": _scenario_sphere,
    "landau": _scenario_landau,
    "euclidean": _scenario_euclidean,
    "logsob-compare": _scenario_logsob_compare,
    "hermite": _scenario_hermite,
    "circle": _scenario_circle,
    "fuzz-theorem1": _scenario_fuzz_theorem1,
}


def scenario_names() -> list[str]:
    return list(_SCENARIOS)


def _config_echo(cfg: ScenarioConfig) -> dict[str, Any]:
    echo: dict[str, Any] = {"seed": cfg.seed, "tolerance": cfg.tolerance}
    for key, value in (
        ("dim", cfg.dim),
        ("trials", cfg.trials),
        ("B", cfg.b_field),
        ("t", cfg.t_param),
        ("nbar_grid", cfg.nbar_grid),
    ):
        if value is not None:
            echo[key] = value
    return echo


def run_scenario(name: str, cfg: ScenarioConfig | None = None) -> Report:
    """Execute one scenario and assemble its report."""
    if name not in _SCENARIOS:
        raise ValueError(f"unknown scenario {name!r}; choose from {', '.join(_SCENARIOS)}")
    cfg = cfg or ScenarioConfig()
    started = time.perf_counter()
    records = _SCENARIOS[name](cfg, cfg.tolerance)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return Report(
        scenario=name,
        config=_config_echo(cfg),
        records=records,
        aggregate=aggregate_records(records, cfg.tolerance),
        timing_ms=elapsed_ms,
    )

"""Empirical tail estimation and bound-vs-empirical comparison.

Tail probabilities are estimated by counting exceedances over a sorted
threshold grid, with exact binomial (Clopper-Pearson) 99% intervals rather
than normal approximations: bound comparisons happen exactly where the
exceedance counts are small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.stats import beta as beta_dist

from .alpha import alpha_separation
from .bounds import BoundResult
from .errors import EmptyGrid, GridMismatch
from .generators.cascade import Graph, cascade_exact, min_pairwise_distance

CONFIDENCE = 0.99

# sampler protocol: sampler(seed, count) -> per-draw sample means
Sampler = Callable[[int, int], np.ndarray]


def clopper_pearson(
    successes: int, trials: int, confidence: float = CONFIDENCE
) -> tuple[float, float]:
    """Exact binomial confidence interval for a proportion."""
    if not (0 <= successes <= trials) or trials < 1:
        raise ValueError(f"bad counts {successes}/{trials}")
    tail = (1.0 - confidence) / 2.0
    lo = 0.0 if successes == 0 else float(beta_dist.ppf(tail, successes, trials - successes + 1))
    hi = 1.0 if successes == trials else float(beta_dist.ppf(1 - tail, successes + 1, trials - successes))
    return lo, hi


@dataclass(frozen=True)
class TailEstimate:
    t_grid: tuple[float, ...]
    estimates: tuple[float, ...]
    ci_low: tuple[float, ...]
    ci_high: tuple[float, ...]
    sample_count: int
    seed: int
    expected_mean: float


def estimate_tail(
    sampler: Sampler,
    expected_mean: float,
    t_grid: Sequence[float],
    samples: int,
    seed: int,
) -> TailEstimate:
    """One sampling pass, exceedance counts per threshold, exact 99% CIs."""
    t_grid = tuple(float(t) for t in t_grid)
    if not t_grid:
        raise EmptyGrid("t_grid must be non-empty")
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise ValueError("t_grid must be sorted strictly ascending")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    means = np.asarray(sampler(seed, samples), dtype=float)
    if means.shape != (samples,):
        raise ValueError(f"sampler returned shape {means.shape}")
    dev = means - expected_mean
    est, lo, hi = [], [], []
    for t in t_grid:
        k = int(np.count_nonzero(dev > t))
        l, h = clopper_pearson(k, samples)
        est.append(k / samples)
        lo.append(l)
        hi.append(h)
    return TailEstimate(
        t_grid, tuple(est), tuple(lo), tuple(hi), samples, seed, expected_mean
    )


@dataclass(frozen=True)
class ComparisonRow:
    t: float
    estimate: float
    ci_low: float
    ci_high: float
    bound_value: float
    bound_kind: str
    verdict: str


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]

    @property
    def ok_count(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "OK")

    @property
    def violation_count(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "VIOLATION")

    @property
    def all_ok(self) -> bool:
        return self.violation_count == 0


def compare_bounds(
    estimate: TailEstimate, bounds: Sequence[BoundResult], scale: float = 1.0
) -> ComparisonReport:
    """Per-threshold verdict: OK iff the (clipped) bound is at least the CI
    lower end.  `scale` deliberately weakens the bound for forced-violation
    tests."""
    if len(bounds) != len(estimate.t_grid):
        raise GridMismatch(
            f"{len(bounds)} bounds for {len(estimate.t_grid)} thresholds"
        )
    rows = []
    for t, est, lo, hi, b in zip(
        estimate.t_grid,
        estimate.estimates,
        estimate.ci_low,
        estimate.ci_high,
        bounds,
    ):
        value = min(min(b.value, 1.0) * scale, 1.0)
        verdict = "OK" if value >= lo else "VIOLATION"
        rows.append(ComparisonRow(t, est, lo, hi, value, b.kind, verdict))
    return ComparisonReport(tuple(rows))


@dataclass(frozen=True)
class ProbeRow:
    graph: str
    p: float
    index_set: tuple[int, ...]
    distance: float
    alpha_sep: float


@dataclass(frozen=True)
class ProbeTable:
    rows: tuple[ProbeRow, ...]
    fitted_C: float
    fitted_c: float


def conjecture_probe(
    graphs: Sequence[Graph],
    q: float,
    p_grid: Sequence[float],
    sets: Sequence[Sequence[int]],
) -> ProbeTable:
    """Exact alpha-separation of cascade index sets across a p grid, plus a
    fitted decay law alpha <= C (c p)^d.  Exploratory output, no pass/fail.

    The fit is least squares on log alpha = log C + d log(c p) over rows with
    positive alpha and finite distance, then C is scaled so the worst row
    ratio alpha / (C (c p)^d) equals one.
    """
    rows: list[ProbeRow] = []
    for g_idx, graph in enumerate(graphs):
        label = f"{graph.kind}{graph.n}#{g_idx}"
        for p in p_grid:
            dist = cascade_exact(graph, q, p)
            for index_set in sets:
                idx = tuple(sorted(int(i) for i in index_set))
                if any(i >= graph.n for i in idx):
                    continue
                d = min_pairwise_distance(graph, idx)
                a = alpha_separation(dist, idx, mode="exact_dp").value
                rows.append(ProbeRow(label, float(p), idx, d, a))
    usable = [
        r for r in rows if r.alpha_sep > 0 and math.isfinite(r.distance) and r.p > 0
    ]
    if len(usable) >= 2:
        A = np.array([[1.0, r.distance] for r in usable])
        y = np.array(
            [math.log(r.alpha_sep) - r.distance * math.log(r.p) for r in usable]
        )
        sol, *_ = np.linalg.lstsq(A, y, rcond=None)
        log_C, log_c = float(sol[0]), float(sol[1])
        C, c = math.exp(log_C), math.exp(log_c)
        worst = max(
            r.alpha_sep / (C * (c * r.p) ** r.distance) for r in usable
        )
        C *= worst
    else:
        C, c = float("nan"), float("nan")
    return ProbeTable(tuple(rows), C, c)

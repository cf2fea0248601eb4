"""Stationary finite-state Markov chains and their window alpha surrogates.

``window_alpha`` computes the alpha-dependence between a finite past and a
finite future window exactly on the generated joint law.  It is a finite
lower surrogate of the classical mixing coefficient, which takes a supremum
over all past lengths and an infinite future; the surrogate is used in
demonstration pipelines, never as a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..alpha import alpha_dependence
from ..dist import JointDistribution, VariableSpec, MAX_TABLE_ENTRIES
from ..errors import NoUniqueStationary, TooLong, WindowTooLarge

ROW_TOL = 1e-12
GAP_TOL = 1e-9


@dataclass(frozen=True)
class MarkovSpec:
    states: tuple[float, ...]
    transition: tuple[tuple[float, ...], ...]
    length: int

    def __post_init__(self):
        T = np.asarray(self.transition, dtype=float)
        s = len(self.states)
        if T.shape != (s, s):
            raise ValueError(f"transition must be {s}x{s}, got {T.shape}")
        if np.any(T < 0) or np.any(np.abs(T.sum(axis=1) - 1.0) > ROW_TOL):
            raise ValueError("transition rows must be non-negative and sum to 1")
        if self.length < 1:
            raise ValueError("length must be >= 1")
        object.__setattr__(
            self, "transition", tuple(tuple(float(x) for x in row) for row in T)
        )

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.transition)


def stationary_distribution(spec: MarkovSpec) -> np.ndarray:
    """Unique stationary law of the transition matrix.

    Uniqueness is checked through the eigenvalue-1 multiplicity (spectral gap
    above 1e-9); otherwise NoUniqueStationary is raised.
    """
    T = spec.matrix
    vals, vecs = np.linalg.eig(T.T)
    close = np.abs(vals - 1.0) < GAP_TOL
    if close.sum() != 1:
        raise NoUniqueStationary(
            f"{int(close.sum())} eigenvalues at 1; need exactly one"
        )
    v = np.real(vecs[:, int(np.argmax(close))])
    pi = v / v.sum()
    if np.any(pi < -1e-12):
        raise NoUniqueStationary("stationary vector has negative entries")
    return np.clip(pi, 0.0, None) / np.clip(pi, 0.0, None).sum()


def markov_process(spec: MarkovSpec) -> JointDistribution:
    """Exact joint law of (X_1, ..., X_n) started from stationarity."""
    s = len(spec.states)
    if s**spec.length > MAX_TABLE_ENTRIES:
        raise TooLong(
            f"{s}^{spec.length} outcomes exceed the table cap {MAX_TABLE_ENTRIES}"
        )
    pi = stationary_distribution(spec)
    T = spec.matrix
    table = pi
    for _ in range(spec.length - 1):
        table = table[..., None] * T
    variables = [
        VariableSpec(f"X{i + 1}", tuple(spec.states)) for i in range(spec.length)
    ]
    return JointDistribution(variables, table)


def markov_sample_means(
    spec: MarkovSpec, seed: int, count: int
) -> np.ndarray:
    """Per-path mean of `length` stationary-chain steps, for `count` paths."""
    rng = np.random.default_rng(seed)
    pi = stationary_distribution(spec)
    cum_pi = np.cumsum(pi)
    cum_T = np.cumsum(spec.matrix, axis=1)
    states = np.asarray(spec.states)
    cur = np.searchsorted(cum_pi, rng.random(count), side="right")
    total = states[cur].astype(float)
    for _ in range(spec.length - 1):
        u = rng.random(count)
        # row-wise inverse CDF step
        cur = (u[:, None] >= cum_T[cur, :-1]).sum(axis=1)
        total += states[cur]
    return total / spec.length


def window_alpha(
    source: MarkovSpec | JointDistribution,
    j: int,
    k: int,
    future_window: int,
) -> float:
    """Exact alpha between the first j steps and a width-w window starting k
    steps after them (finite-window lower surrogate of the mixing
    coefficient)."""
    if j < 1 or k < 1 or future_window < 1:
        raise WindowTooLarge("j, k and future_window must be >= 1")
    needed = j + k + future_window - 1
    if isinstance(source, MarkovSpec):
        if needed > source.length:
            spec = MarkovSpec(source.states, source.transition, needed)
        else:
            spec = source
        dist = markov_process(
            MarkovSpec(spec.states, spec.transition, needed)
        )
    else:
        dist = source
        if needed > dist.k:
            raise WindowTooLarge(
                f"need {needed} variables, distribution has {dist.k}"
            )
    past = list(range(j))
    future = list(range(j + k - 1, j + k - 1 + future_window))
    return alpha_dependence(dist, past, future)

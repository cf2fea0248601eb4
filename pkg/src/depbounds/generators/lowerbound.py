"""The adversarial Bernoulli construction behind the tail lower bound.

Each atom of {0,1}^n gets probability 1/2^n + s(w) * eps/2^n where s(w) is
+1 when |n/2 + t - sum(w)| is even and -1 otherwise, with eps = 4 n gamma.
All single-variable marginals are exactly fair coins, every proper subset is
independent, and the alpha-separation equals eps/(4n) = gamma.
"""

from __future__ import annotations

import math

import numpy as np

from ..dist import JointDistribution, bernoulli_specs
from ..errors import DomainViolation

MAX_N = 20


def _validate(n: int, t: int, gamma: float):
    if n % 2 != 0 or n < 2:
        raise DomainViolation(f"n must be even and >= 2, got {n}")
    if n > MAX_N:
        raise DomainViolation(f"n={n} exceeds the 2^n enumeration cap (n <= {MAX_N})")
    if not (0 <= t <= n / 8):
        raise DomainViolation(f"t must be an integer in [0, n/8], got {t}")
    if not (0 <= gamma <= 1.0 / (4 * n)):
        raise DomainViolation(
            f"gamma must be in [0, 1/(4n)] = [0, {1.0 / (4 * n)}], got {gamma}"
        )


def lower_bound_distribution(n: int, t: int, gamma: float) -> JointDistribution:
    """Exact joint law of the construction for given (n, t, gamma)."""
    _validate(n, t, gamma)
    eps = 4.0 * n * gamma
    idx = np.arange(1 << n)
    ones = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        ones += (idx >> b) & 1
    sign = np.where((np.abs(n // 2 + t - ones) % 2) == 0, 1.0, -1.0)
    table = (1.0 + sign * eps) / 2.0**n
    return JointDistribution(bernoulli_specs(n), table.reshape((2,) * n))


def exact_tail_lower_model(n: int, t: int, gamma: float) -> float:
    """Closed-form P(sum >= n/2 + t) for the construction:
    (1/2^n) sum_{k >= n/2+t} binom(n,k) + (eps/2^n) binom(n-1, n/2+t-1)."""
    _validate(n, t, gamma)
    eps = 4.0 * n * gamma
    base = sum(math.comb(n, k) for k in range(n // 2 + t, n + 1)) / 2.0**n
    bump = eps * math.comb(n - 1, n // 2 + t - 1) / 2.0**n
    return base + bump


def enumerated_tail(dist: JointDistribution, threshold: float) -> float:
    """P(sum of variable values >= threshold) by direct enumeration."""
    k = dist.k
    total = np.zeros(dist.table.shape)
    for i, spec in enumerate(dist.variables):
        shape = [1] * k
        shape[i] = len(spec.support)
        total = total + np.asarray(spec.support).reshape(shape)
    return float(dist.table[total >= threshold - 1e-12].sum())

import itertools

import numpy as np
import pytest

from depbounds.dist import JointDistribution, VariableSpec, bernoulli_specs


def random_distribution(rng, k=None, max_support=3, sparsity=0.0):
    """Random dense joint law with k variables and mixed support sizes."""
    if k is None:
        k = rng.integers(1, 4)
    sizes = rng.integers(2, max_support + 1, size=k)
    specs = [
        VariableSpec(f"X{i}", tuple(float(v) for v in range(s)))
        for i, s in enumerate(sizes)
    ]
    table = rng.random(tuple(int(s) for s in sizes))
    if sparsity > 0:
        table *= rng.random(table.shape) > sparsity
        if table.sum() == 0:
            table.flat[0] = 1.0
    table /= table.sum()
    return JointDistribution(specs, table)


def c5_gibbs(theta=0.8):
    """Gibbs law on five binary sites arranged in a cycle; agreement on each
    cycle edge is rewarded by exp(theta)."""
    tbl = np.zeros((2,) * 5)
    for o in itertools.product((0, 1), repeat=5):
        agree = sum(o[i] == o[(i + 1) % 5] for i in range(5))
        tbl[o] = np.exp(theta * agree)
    tbl /= tbl.sum()
    return JointDistribution(bernoulli_specs(5), tbl)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

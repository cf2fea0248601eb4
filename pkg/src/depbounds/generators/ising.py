"""Small-lattice Gibbs distributions with exact partition functions.

P(sigma) = exp(-beta * coupling_sign * H(sigma)) / Z over {-1,+1}^cells with
H(sigma) the sum of nearest-neighbour products, plus boundary terms when a
fixed boundary spin is given.  The printed Hamiltonian penalizes alignment
for coupling_sign=+1; the sign is a parameter rather than a resolved choice.

Cells are indexed in raster order, c = y * width + x; support index 0 maps
to spin -1 and index 1 to spin +1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dist import JointDistribution, VariableSpec
from ..errors import IndexSetTooSmall, LatticeTooLarge

MAX_CELLS = 20


@dataclass(frozen=True)
class LatticeSpec:
    width: int
    height: int
    beta: float
    boundary: float | None = None  # fixed exterior spin, or None for free
    coupling_sign: int = 1

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be positive")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        if self.coupling_sign not in (1, -1):
            raise ValueError("coupling_sign must be +1 or -1")
        if self.boundary is not None and self.boundary not in (1.0, -1.0, 1, -1):
            raise ValueError("boundary spin must be +1 or -1")

    @property
    def cells(self) -> int:
        return self.width * self.height

    def neighbor_pairs(self) -> list[tuple[int, int]]:
        pairs = []
        for y in range(self.height):
            for x in range(self.width):
                c = y * self.width + x
                if x + 1 < self.width:
                    pairs.append((c, c + 1))
                if y + 1 < self.height:
                    pairs.append((c, c + self.width))
        return pairs

    def exterior_degree(self) -> np.ndarray:
        """Number of off-lattice neighbours per cell (for fixed boundaries)."""
        deg = np.zeros(self.cells)
        for y in range(self.height):
            for x in range(self.width):
                c = y * self.width + x
                deg[c] = (x == 0) + (x == self.width - 1) + (y == 0) + (y == self.height - 1)
        return deg


def _spin_matrix(cells: int) -> np.ndarray:
    """(2^cells, cells) matrix of spins; cell 0 is the most significant bit
    so the flat order matches the C-order joint table."""
    idx = np.arange(1 << cells)
    bits = (idx[:, None] >> (cells - 1 - np.arange(cells))) & 1
    return 2.0 * bits - 1.0


def _hamiltonian(spec: LatticeSpec, spins: np.ndarray) -> np.ndarray:
    H = np.zeros(spins.shape[0])
    for i, j in spec.neighbor_pairs():
        H += spins[:, i] * spins[:, j]
    if spec.boundary is not None:
        H += spins @ (spec.exterior_degree() * float(spec.boundary))
    return H


def ising_exact(spec: LatticeSpec) -> JointDistribution:
    """Exact Gibbs law by full enumeration of spin configurations."""
    if spec.cells > MAX_CELLS:
        raise LatticeTooLarge(f"{spec.cells} cells exceed cap {MAX_CELLS}")
    spins = _spin_matrix(spec.cells)
    w = np.exp(-spec.beta * spec.coupling_sign * _hamiltonian(spec, spins))
    probs = w / w.sum()
    variables = [
        VariableSpec(f"s{c}", (-1.0, 1.0)) for c in range(spec.cells)
    ]
    return JointDistribution(variables, probs.reshape((2,) * spec.cells))


def ising_gibbs_sample(
    spec: LatticeSpec, seed: int, burn_in_sweeps: int, count: int
) -> np.ndarray:
    """Single-site Gibbs sampling in fixed raster order, one sample per sweep
    after burn-in.  Returns a (count, cells) array of support indices (0/1)."""
    if burn_in_sweeps < 0 or count < 0:
        raise ValueError("burn_in_sweeps and count must be >= 0")
    cells = spec.cells
    rng = np.random.default_rng(seed)
    spins = np.where(rng.random(cells) < 0.5, -1.0, 1.0)
    adj: list[list[int]] = [[] for _ in range(cells)]
    for i, j in spec.neighbor_pairs():
        adj[i].append(j)
        adj[j].append(i)
    ext = spec.exterior_degree() * (float(spec.boundary) if spec.boundary is not None else 0.0)
    out = np.empty((count, cells), dtype=np.int8)
    for sweep in range(burn_in_sweeps + count):
        u = rng.random(cells)
        for c in range(cells):
            h = sum(spins[j] for j in adj[c]) + ext[c]
            p_up = 1.0 / (1.0 + np.exp(2.0 * spec.beta * spec.coupling_sign * h))
            spins[c] = 1.0 if u[c] < p_up else -1.0
        if sweep >= burn_in_sweeps:
            out[sweep - burn_in_sweeps] = (spins > 0).astype(np.int8)
    return out


def moment_difference(dist: JointDistribution, z_set) -> float:
    """|E[prod over z] - E[first] * E[prod over rest]|, first = smallest index."""
    z = sorted(set(int(i) for i in z_set))
    if len(z) < 2:
        raise IndexSetTooSmall("z_set needs at least two indices")
    full = dist.product_moment(z)
    head = dist.product_moment([z[0]])
    rest = dist.product_moment(z[1:])
    return abs(full - head * rest)

"""Soft covers of weakly dependent variable sets.

A block is gamma-independent when its exact alpha-separation is at most
gamma.  The thresholded dependency graph built from pairwise alphas is a
heuristic only: pairwise values do not bound set-level alpha, so every cover
produced here is certified block by block with the exact subset DP before it
is trusted.  chi_gamma (minimum cover size) is found by branch and bound over
gamma-independent subsets; chi*_gamma comes from the covering LP over maximal
gamma-independent sets.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .alpha import alpha_dependence, separation_values_all_subsets
from .dist import JointDistribution
from .errors import (
    BlocksDoNotCover,
    LpDidNotConverge,
    SupportTooLarge,
    TooManyVariables,
)

CERT_TOL = 1e-12
EXACT_MAX_K = 12


@dataclass(frozen=True)
class DependencyGraph:
    k: int
    edges: frozenset[tuple[int, int]]
    gamma: float

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.k and 0 <= j < self.k):
                raise ValueError(f"edge ({i},{j}) outside [0,{self.k})")

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v: int) -> set[int]:
        return {j for e in self.edges for j in e if v in e and j != v}

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "edges": sorted([list(e) for e in self.edges]),
            "gamma": self.gamma,
        }


@dataclass(frozen=True)
class SoftCover:
    blocks: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]
    gamma: float
    certified_alphas: tuple[float, ...] | None = None

    def __post_init__(self):
        if len(self.blocks) != len(self.weights):
            raise ValueError("one weight per block required")

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def total_weight(self) -> float:
        return float(sum(self.weights))

    @property
    def certified(self) -> bool:
        if self.certified_alphas is None:
            return False
        return all(a <= self.gamma + CERT_TOL for a in self.certified_alphas)

    def covered(self) -> set[int]:
        return {i for b in self.blocks for i in b}

    def to_json_dict(self) -> dict:
        out = {
            "gamma": self.gamma,
            "blocks": [list(b) for b in self.blocks],
            "weights": list(self.weights),
        }
        if self.certified_alphas is not None:
            out["alphas"] = list(self.certified_alphas)
        return out


def pairwise_alpha_matrix(dist: JointDistribution) -> np.ndarray:
    """Symmetric matrix of single-variable alpha dependences, zero diagonal."""
    k = dist.k
    mat = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            a = alpha_dependence(dist, [i], [j])
            mat[i, j] = mat[j, i] = a
    return mat


def thresholded_graph(dist: JointDistribution, gamma: float) -> DependencyGraph:
    """Heuristic graph with an edge wherever the pairwise alpha exceeds gamma.

    Pairwise thresholding does not certify set-level gamma-independence; any
    cover built from this graph must pass :func:`verify_soft_cover`.
    """
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    mat = pairwise_alpha_matrix(dist)
    edges = frozenset(
        (i, j)
        for i in range(dist.k)
        for j in range(i + 1, dist.k)
        if mat[i, j] > gamma
    )
    return DependencyGraph(dist.k, edges, gamma)


def verify_soft_cover(dist: JointDistribution, cover: SoftCover) -> SoftCover:
    """Fill per-block exact alpha-separation values and certify the cover."""
    if cover.covered() != set(range(dist.k)):
        raise BlocksDoNotCover(
            f"blocks cover {sorted(cover.covered())}, expected all of [0,{dist.k})"
        )
    alphas = []
    for block in cover.blocks:
        seps = separation_values_all_subsets(dist, block)
        alphas.append(seps[(1 << len(block)) - 1])
    return replace(cover, certified_alphas=tuple(alphas))


def _gamma_independent_masks(
    dist: JointDistribution, gamma: float
) -> dict[int, float]:
    if dist.k > EXACT_MAX_K:
        raise TooManyVariables(
            f"{dist.k} variables exceed the exact-search cap {EXACT_MAX_K}"
        )
    seps = separation_values_all_subsets(dist, range(dist.k))
    return {m: v for m, v in seps.items() if v <= gamma + CERT_TOL}

def _maximal_masks(masks: Iterable[int]) -> list[int]:
    masks = sorted(masks, key=lambda m: -m.bit_count())
    maximal: list[int] = []
    for m in masks:
        if not any(m != t and m & t == m for t in maximal):
            maximal.append(m)
    return maximal


def _mask_to_block(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _cover_number_table(full: int, maximal: Sequence[int]) -> list[int]:
    """cover_number[U] = fewest maximal blocks needed to cover outcome mask U."""
    big = 1 << 30
    cn = [big] * (full + 1)
    cn[0] = 0
    for u in range(1, full + 1):
        low = u & -u  # some block must cover the lowest uncovered element
        best = big
        for m in maximal:
            if m & low:
                c = cn[u & ~m]
                if c + 1 < best:
                    best = c + 1
        cn[u] = best
    return cn


def min_soft_cover_exact(dist: JointDistribution, gamma: float) -> SoftCover:
    """Certified minimum-cardinality soft cover by branch and bound.

    Among minimum covers the lexicographically smallest block list (blocks as
    sorted tuples, list sorted) is returned.
    """
    k = dist.k
    full = (1 << k) - 1
    indep = _gamma_independent_masks(dist, gamma)
    maximal = _maximal_masks(indep)
    cn = _cover_number_table(full, maximal)
    if cn[full] >= 1 << 30:
        raise BlocksDoNotCover("no gamma-independent cover exists")  # unreachable
    target = cn[full]

    # lexicographically smallest cover of minimum size over *all*
    # gamma-independent blocks, found by ordered DFS with the cover-number
    # table as an admissible prune
    candidates = sorted(_mask_to_block(m) for m in indep)
    cand_masks = [sum(1 << i for i in b) for b in candidates]

    def dfs(start: int, uncovered: int, slots: int, chosen: list[int]):
        if uncovered == 0:
            return list(chosen)
        if cn[uncovered] > slots:
            return None
        for idx in range(start, len(candidates)):
            m = cand_masks[idx]
            if m & uncovered == 0:
                continue
            chosen.append(idx)
            found = dfs(idx + 1, uncovered & ~m, slots - 1, chosen)
            if found is not None:
                return found
            chosen.pop()
        return None

    picked = dfs(0, full, target, [])
    blocks = tuple(candidates[i] for i in picked)
    alphas = tuple(indep[cand_masks[i]] for i in picked)
    return SoftCover(blocks, (1.0,) * len(blocks), gamma, alphas)


def _greedy_coloring(graph: DependencyGraph) -> list[list[int]]:
    order = sorted(range(graph.k), key=lambda v: (-graph.degree(v), v))
    color_of: dict[int, int] = {}
    classes: list[list[int]] = []
    for v in order:
        taken = {color_of[u] for u in graph.neighbors(v) if u in color_of}
        c = 0
        while c in taken:
            c += 1
        color_of[v] = c
        while len(classes) <= c:
            classes.append([])
        classes[c].append(v)
    return [sorted(c) for c in classes if c]


def min_soft_cover_greedy(dist: JointDistribution, gamma: float) -> SoftCover:
    """Greedy coloring of the thresholded graph, then certify-and-split.

    Blocks failing set-level certification have their worst member peeled off
    until the remainder certifies; the peeled members form new blocks,
    recursively.  The result is always certified.
    """
    graph = thresholded_graph(dist, gamma)
    pending = [sorted(c) for c in _greedy_coloring(graph)]
    blocks: list[tuple[int, ...]] = []
    alphas: list[float] = []
    while pending:
        block = pending.pop(0)
        peeled: list[int] = []
        while True:
            seps = separation_values_all_subsets(dist, block)
            val = seps[(1 << len(block)) - 1]
            if val <= gamma + CERT_TOL or len(block) == 1:
                break
            # peel the member with the largest conditional alpha on the rest
            worst, worst_a = block[0], -1.0
            for pos, x in enumerate(block):
                rest = [y for y in block if y != x]
                a = alpha_dependence(dist, [x], rest)
                if a > worst_a:
                    worst, worst_a = x, a
            block = [y for y in block if y != worst]
            peeled.append(worst)
        blocks.append(tuple(block))
        alphas.append(val)
        if peeled:
            pending.append(sorted(peeled))
    order = np.argsort([b[0] for b in blocks], kind="stable")
    blocks = [blocks[i] for i in order]
    alphas = [alphas[i] for i in order]
    return SoftCover(tuple(blocks), (1.0,) * len(blocks), gamma, tuple(alphas))


def fractional_soft_cover(
    dist: JointDistribution, gamma: float
) -> tuple[SoftCover, float]:
    """Covering LP over maximal gamma-independent sets; returns (cover, chi*).

    The LP optimum is converted to an exact cover (coverage exactly one per
    element) by splitting block weights; blocks shrunk during the conversion
    are re-certified, and if a shrunk block fails the original >=1-coverage
    cover is kept instead.
    """
    k = dist.k
    indep = _gamma_independent_masks(dist, gamma)
    maximal = _maximal_masks(indep)
    n_blocks = len(maximal)
    A = np.zeros((k, n_blocks))
    for j, m in enumerate(maximal):
        for i in range(k):
            if m >> i & 1:
                A[i, j] = 1.0
    res = linprog(
        c=np.ones(n_blocks),
        A_ub=-A,
        b_ub=-np.ones(k),
        bounds=[(0, None)] * n_blocks,
        method="highs",
    )
    if not res.success:
        raise LpDidNotConverge(f"covering LP failed: {res.message}")
    chi_star = float(res.fun)
    weights = np.where(res.x > 1e-12, res.x, 0.0)

    # exact-cover conversion: peel excess coverage off blocks by splitting
    # (I, w) into (I - {i}, d) + (I, w - d); total weight is preserved
    items: list[tuple[tuple[int, ...], float]] = [
        (_mask_to_block(m), float(w)) for m, w in zip(maximal, weights) if w > 0
    ]
    for elem in range(k):
        coverage = sum(w for b, w in items if elem in b)
        j = 0
        while coverage > 1 + 1e-12 and j < len(items):
            block, w = items[j]
            if elem in block and len(block) > 1:
                delta = min(w, coverage - 1)
                shrunk = tuple(x for x in block if x != elem)
                items[j] = (block, w - delta)
                items.append((shrunk, delta))
                coverage -= delta
            j += 1
    items = [(b, w) for b, w in items if w > 1e-12]
    blocks = tuple(b for b, _ in items)
    wts = tuple(w for _, w in items)
    cover = verify_soft_cover(
        dist, SoftCover(blocks, wts, gamma)
    )
    if not cover.certified:
        # shrinking can break gamma-independence; fall back to the raw LP cover
        blocks = tuple(_mask_to_block(m) for m, w in zip(maximal, weights) if w > 0)
        wts = tuple(float(w) for w in weights if w > 0)
        cover = verify_soft_cover(dist, SoftCover(blocks, wts, gamma))
    return cover, chi_star

"""Exact alpha-dependence and alpha-separation on finite joint laws.

``alpha_dependence`` is the supremum over event pairs (B, C) of
``|P(B & C) - P(B) P(C)|`` between two disjoint groups of variables.  It is
computed exactly by enumerating events B on the smaller-support side only:
for a fixed B the objective is additive over the cells of the other side, so
the optimal C is the union of cells with positive (resp. negative) deviation.

``alpha_separation`` is the minimum over orderings of the averaged
conditional alpha chain.  The i-th term depends only on the chosen element
and its suffix set, which makes a subset dynamic program exact; a full
permutation scan is kept as the testing oracle and a greedy pass serves
larger sets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .dist import JointDistribution, _check_index_set
from .errors import (
    EmptyIndexSet,
    NonpositiveLambda,
    OverlappingIndexSets,
    SupportTooLarge,
    TooManyVariables,
)

EVENT_CAP = 1 << 16  # max number of enumerated events on the smaller side
BRUTE_PAIR_CAP = 1 << 24
DP_MAX_K = 20
BRUTE_MAX_K = 8

Mode = Literal["exact_dp", "brute_force", "greedy"]


@dataclass(frozen=True)
class AlphaSeparationResult:
    value: float
    ordering: tuple[int, ...]
    mode: str


def _group_matrix(dist: JointDistribution, left, right) -> np.ndarray:
    """Joint cell matrix with left-group outcomes as rows, right as columns."""
    left = _check_index_set(left, dist.k)
    right = _check_index_set(right, dist.k)
    if set(left) & set(right):
        raise OverlappingIndexSets(f"groups {left} and {right} overlap")
    keep = left + right
    drop = tuple(i for i in range(dist.k) if i not in keep)
    marg = dist.table.sum(axis=drop) if drop else dist.table
    # axes of marg follow sorted(keep); reorder to (left..., right...)
    order = [sorted(keep).index(i) for i in left + right]
    marg = np.transpose(marg, order)
    nl = int(np.prod([len(dist.variables[i].support) for i in left]))
    return marg.reshape(nl, -1)


def _event_sup(J: np.ndarray, cap: int = EVENT_CAP) -> float:
    """Sup of |P(B&C) - P(B)P(C)| given the joint cell matrix."""
    if J.shape[0] > J.shape[1]:
        J = J.T
    p_row = J.sum(axis=1)
    p_col = J.sum(axis=0)
    rows = p_row > 0
    cols = p_col > 0
    J = J[np.ix_(rows, cols)]
    p_row = p_row[rows]
    p_col = p_col[cols]
    m, n_cells = J.shape
    if m == 0:
        return 0.0
    if (1 << m) > cap:
        raise SupportTooLarge(
            f"2^{m} events on the smaller side exceed the cap {cap}"
        )
    if (1 << m) * max(n_cells, 1) <= (1 << 25):
        # all subset sums at once via doubling
        sums = np.zeros((1 << m, n_cells))
        mass = np.zeros(1 << m)
        for i in range(m):
            half = 1 << i
            sums[half : 2 * half] = sums[:half] + J[i]
            mass[half : 2 * half] = mass[:half] + p_row[i]
        dev = sums - mass[:, None] * p_col[None, :]
        pos = np.where(dev > 0, dev, 0.0).sum(axis=1)
        neg = np.where(dev < 0, -dev, 0.0).sum(axis=1)
        return float(max(pos.max(), neg.max()))
    # memory-bound fallback: Gray-code walk with periodic exact refresh
    best = 0.0
    cur = np.zeros(n_cells)
    cur_mass = 0.0
    members = 0
    for g in range(1, 1 << m):
        bit = (g & -g).bit_length() - 1
        if members & (1 << bit):
            cur -= J[bit]
            cur_mass -= p_row[bit]
            members &= ~(1 << bit)
        else:
            cur += J[bit]
            cur_mass += p_row[bit]
            members |= 1 << bit
        if g % 4096 == 0:  # kill accumulated float drift
            sel = [i for i in range(m) if members >> i & 1]
            cur = J[sel].sum(axis=0)
            cur_mass = float(p_row[sel].sum())
        dev = cur - cur_mass * p_col
        best = max(
            best,
            float(np.where(dev > 0, dev, 0.0).sum()),
            float(np.where(dev < 0, -dev, 0.0).sum()),
        )
    return best


def alpha_dependence(
    dist: JointDistribution,
    left: Iterable[int],
    right: Iterable[int],
    cap: int = EVENT_CAP,
) -> float:
    """Exact alpha-dependence between two disjoint variable groups."""
    return _event_sup(_group_matrix(dist, left, right), cap=cap)


def alpha_dependence_bruteforce(
    dist: JointDistribution, left: Iterable[int], right: Iterable[int]
) -> float:
    """Oracle: explicit double enumeration of all event pairs."""
    J = _group_matrix(dist, left, right)
    m, n = J.shape
    if (1 << m) * (1 << n) > BRUTE_PAIR_CAP:
        raise SupportTooLarge(
            f"2^{m} x 2^{n} event pairs exceed the cap {BRUTE_PAIR_CAP}"
        )
    p_row = J.sum(axis=1)
    p_col = J.sum(axis=0)
    best = 0.0
    for bmask in range(1 << m):
        rows = [i for i in range(m) if bmask >> i & 1]
        pb = float(p_row[rows].sum()) if rows else 0.0
        joint = J[rows].sum(axis=0) if rows else np.zeros(n)
        for cmask in range(1 << n):
            cols = [j for j in range(n) if cmask >> j & 1]
            pc = float(p_col[cols].sum()) if cols else 0.0
            pj = float(joint[cols].sum()) if cols else 0.0
            best = max(best, abs(pj - pb * pc))
    return best


# --- alpha-separation ------------------------------------------------------


def conditional_alpha_table(
    dist: JointDistribution, variables: Iterable[int], cap: int = EVENT_CAP
) -> dict[tuple[int, int], float]:
    """alpha(x | S without x) for every subset S of `variables`, |S| >= 2.

    Keys are (subset bitmask over the sorted variable list, member position).
    Shared by the ordering DP, the permutation oracle and the cover search.
    """
    vars_sorted = _check_index_set(variables, dist.k)
    k = len(vars_sorted)
    if k > DP_MAX_K:
        raise TooManyVariables(f"{k} variables exceed the DP cap {DP_MAX_K}")
    table: dict[tuple[int, int], float] = {}
    for mask in range(1, 1 << k):
        members = [i for i in range(k) if mask >> i & 1]
        if len(members) < 2:
            continue
        for x in members:
            rest = [vars_sorted[i] for i in members if i != x]
            table[(mask, x)] = alpha_dependence(
                dist, [vars_sorted[x]], rest, cap=cap
            )
    return table


def _suffix_dp(table, k: int) -> dict[int, float]:
    """f(S) = min over x in S of alpha(x | S-x) + f(S-x); f(singleton) = 0."""
    f = {1 << i: 0.0 for i in range(k)}
    for mask in range(1, 1 << k):
        if mask in f:
            continue
        best = math.inf
        for x in range(k):
            if not mask >> x & 1:
                continue
            cand = table[(mask, x)] + f[mask & ~(1 << x)]
            if cand < best:
                best = cand
        f[mask] = best
    return f


def _dp_ordering(table, f, mask: int, k: int) -> list[int]:
    """Reconstruct the lexicographically smallest optimal ordering."""
    order = []
    while mask.bit_count() > 1:
        # smallest index achieving the subset optimum wins ties
        for x in range(k):
            if not mask >> x & 1:
                continue
            if table[(mask, x)] + f[mask & ~(1 << x)] <= f[mask] + 1e-15:
                break
        order.append(x)
        mask &= ~(1 << x)
    order.append(mask.bit_length() - 1)
    return order


def separation_values_all_subsets(
    dist: JointDistribution, variables: Iterable[int], cap: int = EVENT_CAP
) -> dict[int, float]:
    """alpha-separation of every non-empty subset, keyed by bitmask.

    One conditional-alpha table plus one DP covers all 2^k - 1 subsets, which
    is what the cover search needs.
    """
    vars_sorted = _check_index_set(variables, dist.k)
    k = len(vars_sorted)
    table = conditional_alpha_table(dist, vars_sorted, cap=cap)
    f = _suffix_dp(table, k)
    return {mask: f[mask] / mask.bit_count() for mask in f}


def alpha_separation(
    dist: JointDistribution,
    variables: Iterable[int],
    mode: Mode = "exact_dp",
    cap: int = EVENT_CAP,
) -> AlphaSeparationResult:
    """Minimum over orderings of the averaged conditional alpha chain."""
    vars_sorted = _check_index_set(variables, dist.k)
    k = len(vars_sorted)
    if k == 1:
        return AlphaSeparationResult(0.0, vars_sorted, mode)

    if mode == "brute_force":
        if k > BRUTE_MAX_K:
            raise TooManyVariables(
                f"{k} variables exceed the brute-force cap {BRUTE_MAX_K}"
            )
        table = conditional_alpha_table(dist, vars_sorted, cap=cap)
        best_val = math.inf
        best_perm = None
        for perm in itertools.permutations(range(k)):
            total = 0.0
            for i in range(k - 1):
                mask = sum(1 << p for p in perm[i:])
                total += table[(mask, perm[i])]
            if total < best_val - 1e-18:
                best_val = total
                best_perm = perm
        ordering = tuple(vars_sorted[i] for i in best_perm)
        return AlphaSeparationResult(best_val / k, ordering, "brute_force")

    if mode == "exact_dp":
        table = conditional_alpha_table(dist, vars_sorted, cap=cap)
        f = _suffix_dp(table, k)
        full = (1 << k) - 1
        order = _dp_ordering(table, f, full, k)
        ordering = tuple(vars_sorted[i] for i in order)
        return AlphaSeparationResult(f[full] / k, ordering, "exact_dp")

    if mode == "greedy":
        order = []
        remaining = set(range(k))
        total = 0.0
        while len(remaining) > 1:
            best_x, best_a = None, math.inf
            for x in sorted(remaining):
                rest = [vars_sorted[i] for i in remaining if i != x]
                a = alpha_dependence(dist, [vars_sorted[x]], rest, cap=cap)
                if a < best_a:
                    best_x, best_a = x, a
            total += best_a
            order.append(best_x)
            remaining.remove(best_x)
        order.append(remaining.pop())
        ordering = tuple(vars_sorted[i] for i in order)
        return AlphaSeparationResult(total / k, ordering, "greedy")

    raise ValueError(f"unknown mode {mode!r}")


def approximation_deviation_bound(
    k: int, alpha_sep: float, value_range: float, lam: float
) -> float:
    """Tail bound on the averaged deviation from the independent copy set:
    18 * k * alpha_sep * sqrt(range / lambda)."""
    if lam <= 0:
        raise NonpositiveLambda(f"lambda must be positive, got {lam}")
    if k < 1:
        raise EmptyIndexSet("k must be >= 1")
    if value_range < 0 or alpha_sep < 0:
        raise ValueError("range and alpha_sep must be non-negative")
    return 18.0 * k * alpha_sep * math.sqrt(value_range / lam)

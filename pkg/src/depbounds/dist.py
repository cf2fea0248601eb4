"""Finite discrete joint distributions with enumeration-exact semantics.

A :class:`JointDistribution` is a sparse-in-spirit probability table over the
cartesian product of finite, strictly increasing variable supports.  It is
stored as a dense ``numpy`` array indexed by support positions, which keeps
marginalization and moment computations exact (to float64) and fast.  The
total table size is capped at ``MAX_TABLE_ENTRIES`` so every operation stays
honestly enumerable.

Outcomes are tuples of *support indices*, not values: two equal values in
different support positions remain distinct, and pushforward collisions are
explicit merges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateOutcome,
    EmptyIndexSet,
    IndexOutOfRange,
    MassNotOne,
    NegativeProbability,
    ParseError,
    SupportTooLarge,
)

MAX_TABLE_ENTRIES = 1 << 22
MASS_TOL = 1e-9


@dataclass(frozen=True)
class VariableSpec:
    """A named variable with a finite, strictly increasing real support."""

    name: str
    support: tuple[float, ...]

    def __post_init__(self):
        support = tuple(float(v) for v in self.support)
        if not support:
            raise ValueError(f"variable {self.name!r}: empty support")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError(
                f"variable {self.name!r}: support must be strictly increasing"
            )
        if not all(np.isfinite(support)):
            raise ValueError(f"variable {self.name!r}: support must be finite")
        object.__setattr__(self, "support", support)

    @property
    def range(self) -> float:
        return self.support[-1] - self.support[0]


def _check_index_set(indices: Iterable[int], k: int, allow_empty: bool = False):
    idx = tuple(indices)
    if not idx and not allow_empty:
        raise EmptyIndexSet("index set must be non-empty")
    if len(set(idx)) != len(idx):
        raise IndexOutOfRange(f"duplicate indices in {idx}")
    for i in idx:
        if not (0 <= i < k):
            raise IndexOutOfRange(f"index {i} outside [0, {k})")
    return tuple(sorted(idx))


class JointDistribution:
    """Exact joint law over ``k`` named discrete variables.

    The table is immutable; all operations return new distributions.
    """

    def __init__(self, variables: Sequence[VariableSpec], table: np.ndarray):
        variables = tuple(variables)
        shape = tuple(len(v.support) for v in variables)
        if table.shape != shape:
            raise ValueError(f"table shape {table.shape} != support shape {shape}")
        if table.size > MAX_TABLE_ENTRIES:
            raise SupportTooLarge(
                f"joint support size {table.size} exceeds cap {MAX_TABLE_ENTRIES}"
            )
        if np.any(table < 0):
            raise NegativeProbability("negative probability in table")
        table = np.ascontiguousarray(table, dtype=np.float64)
        table.setflags(write=False)
        self.variables = variables
        self.table = table

    # -- basic accessors -------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.variables)

    @property
    def total_mass(self) -> float:
        return float(self.table.sum())

    def entries(self) -> dict[tuple[int, ...], float]:
        """Sparse view: outcome tuple (support indices) -> probability > 0."""
        out = {}
        for idx in zip(*np.nonzero(self.table)):
            out[tuple(int(i) for i in idx)] = float(self.table[idx])
        return out

    def prob(self, outcome: Sequence[int]) -> float:
        return float(self.table[tuple(outcome)])

    def values(self, outcome: Sequence[int]) -> tuple[float, ...]:
        """Support values corresponding to an outcome index tuple."""
        return tuple(
            v.support[i] for v, i in zip(self.variables, outcome)
        )

    def __repr__(self):
        names = ", ".join(v.name for v in self.variables)
        return f"JointDistribution({names}; {int(np.count_nonzero(self.table))} atoms)"

    # -- operations ------------------------------------------------------

    def marginal(self, indices: Iterable[int]) -> "JointDistribution":
        """Marginal law of the given variable positions (sorted order kept)."""
        idx = _check_index_set(indices, self.k)
        drop = tuple(i for i in range(self.k) if i not in idx)
        table = self.table.sum(axis=drop) if drop else self.table.copy()
        return JointDistribution([self.variables[i] for i in idx], table)

    def product_of_marginals(self, indices: Iterable[int]) -> "JointDistribution":
        """Law factorizing exactly as the product of the selected marginals."""
        idx = _check_index_set(indices, self.k)
        table = np.ones(())
        for i in idx:
            drop = tuple(j for j in range(self.k) if j != i)
            mi = self.table.sum(axis=drop)
            table = np.multiply.outer(table, mi)
        return JointDistribution([self.variables[i] for i in idx], table)

    def pushforward(
        self, var: int, mapping: Callable[[float], float] | Mapping[float, float]
    ) -> "JointDistribution":
        """Apply a map to one variable's support, merging collided values."""
        if not (0 <= var < self.k):
            raise IndexOutOfRange(f"variable index {var} outside [0, {self.k})")
        spec = self.variables[var]
        if callable(mapping):
            image = [float(mapping(v)) for v in spec.support]
        else:
            try:
                image = [float(mapping[v]) for v in spec.support]
            except KeyError as exc:
                raise ValueError(f"map not total on support of {spec.name!r}") from exc
        new_support = tuple(sorted(set(image)))
        positions = [new_support.index(v) for v in image]
        new_spec = VariableSpec(spec.name, new_support)
        shape = list(self.table.shape)
        shape[var] = len(new_support)
        table = np.zeros(shape)
        moved = np.moveaxis(self.table, var, 0)
        out = np.moveaxis(table, var, 0)
        for old_pos, new_pos in enumerate(positions):
            out[new_pos] += moved[old_pos]
        variables = list(self.variables)
        variables[var] = new_spec
        return JointDistribution(variables, table)

    def product_moment(self, indices: Iterable[int]) -> float:
        """Exact expectation of the product of the selected variables."""
        idx = _check_index_set(indices, self.k)
        acc = self.table
        for i in idx:
            vals = np.asarray(self.variables[i].support)
            shape = [1] * self.k
            shape[i] = len(vals)
            acc = acc * vals.reshape(shape)
        return float(acc.sum())

    def mean_of_sum(self) -> float:
        """E[(1/k) * sum of variables], used as the centering in tail studies."""
        total = 0.0
        for i in range(self.k):
            drop = tuple(j for j in range(self.k) if j != i)
            mi = self.table.sum(axis=drop) if drop else self.table
            total += float(mi @ np.asarray(self.variables[i].support))
        return total / self.k

    def sample(self, seed: int, count: int) -> list[tuple[int, ...]]:
        """Draw i.i.d. outcomes by inverse CDF over the C-order flat table.

        Bit-reproducible for a fixed (seed, count).
        """
        if count < 0:
            raise ValueError("count must be >= 0")
        if count == 0:
            return []
        flat = self.table.ravel()
        cdf = np.cumsum(flat)
        cdf[-1] = max(cdf[-1], 1.0)  # guard the top edge against rounding
        rng = np.random.default_rng(seed)
        u = rng.random(count)
        pos = np.searchsorted(cdf, u, side="right")
        outcomes = np.unravel_index(pos, self.table.shape)
        return [tuple(int(x[i]) for x in outcomes) for i in range(count)]

    def sample_means(self, seed: int, count: int) -> np.ndarray:
        """Per-draw mean of the variable values; vectorized convenience."""
        if count == 0:
            return np.zeros(0)
        flat = self.table.ravel()
        cdf = np.cumsum(flat)
        cdf[-1] = max(cdf[-1], 1.0)
        rng = np.random.default_rng(seed)
        u = rng.random(count)
        pos = np.searchsorted(cdf, u, side="right")
        outcomes = np.unravel_index(pos, self.table.shape)
        total = np.zeros(count)
        for i, spec in enumerate(self.variables):
            total += np.asarray(spec.support)[outcomes[i]]
        return total / self.k

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        probs = [
            {"o": list(o), "p": p} for o, p in sorted(self.entries().items())
        ]
        return {
            "vars": [
                {"name": v.name, "support": list(v.support)} for v in self.variables
            ],
            "probs": probs,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def build_distribution(
    specs: Sequence[VariableSpec],
    entries: Mapping[tuple[int, ...], float] | Iterable[tuple[tuple[int, ...], float]],
    renormalize: bool = False,
) -> JointDistribution:
    """Validate an outcome->probability map and assemble the joint law."""
    specs = tuple(specs)
    shape = tuple(len(s.support) for s in specs)
    size = int(np.prod(shape)) if shape else 1
    if size > MAX_TABLE_ENTRIES:
        raise SupportTooLarge(
            f"joint support size {size} exceeds cap {MAX_TABLE_ENTRIES}"
        )
    table = np.zeros(shape)
    seen = set()
    items = entries.items() if isinstance(entries, Mapping) else entries
    for outcome, p in items:
        outcome = tuple(int(i) for i in outcome)
        if outcome in seen:
            raise DuplicateOutcome(f"outcome {outcome} listed twice")
        seen.add(outcome)
        if len(outcome) != len(specs):
            raise IndexOutOfRange(
                f"outcome {outcome} has {len(outcome)} coordinates, expected {len(specs)}"
            )
        for i, s in zip(outcome, shape):
            if not (0 <= i < s):
                raise IndexOutOfRange(f"outcome {outcome} indexes outside supports")
        if p < 0:
            raise NegativeProbability(f"outcome {outcome} has probability {p}")
        table[outcome] = p
    mass = float(table.sum())
    if abs(mass - 1.0) > MASS_TOL:
        if not renormalize:
            raise MassNotOne(f"total mass {mass} differs from 1 by more than {MASS_TOL}")
        if mass <= 0:
            raise MassNotOne("cannot renormalize zero mass")
        table /= mass
    return JointDistribution(specs, table)


def from_json_dict(data: dict) -> JointDistribution:
    """Parse the distribution JSON schema; raises ParseError on bad shape."""
    try:
        specs = [
            VariableSpec(v["name"], tuple(v["support"])) for v in data["vars"]
        ]
        entries = {tuple(e["o"]): float(e["p"]) for e in data["probs"]}
        renorm = bool(data.get("renormalize", False))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad distribution JSON: {exc}") from exc
    return build_distribution(specs, entries, renormalize=renorm)


def from_json(text: str) -> JointDistribution:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return from_json_dict(data)


def bernoulli_specs(k: int, name: str = "X") -> list[VariableSpec]:
    """k binary variables with support (0, 1)."""
    return [VariableSpec(f"{name}{i + 1}", (0.0, 1.0)) for i in range(k)]

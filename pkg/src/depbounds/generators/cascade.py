"""Independent cascade model: exact joint laws and step-process sampling.

The exact law uses live-edge semantics: every vertex fires on its own with
probability q, each directed edge copy is activated once with probability p,
and the final state of a vertex is reachability from the fired set through
activated edges.  On chains a forward dynamic program over the
(leftward-influence, rightward-influence, own-fire) state reproduces the same
law in O(n * 2^n) instead of enumerating edge configurations; the two paths
are asserted equal on small chains in the test suite.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..dist import JointDistribution, bernoulli_specs
from ..errors import GraphTooLarge

GENERAL_CAP_BITS = 22  # n + directed-edge count
CHAIN_MAX_N = 16


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad edge ({i},{j}) for n={self.n}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(
            self, "edges", tuple(sorted((min(i, j), max(i, j)) for i, j in self.edges))
        )

    @property
    def kind(self) -> str:
        chain = tuple((i, i + 1) for i in range(self.n - 1))
        return "chain" if self.edges == chain else "general"

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def distances_from(self, src: int) -> list[float]:
        adj = self.adjacency()
        dist = [float("inf")] * self.n
        dist[src] = 0
        dq = deque([src])
        while dq:
            u = dq.popleft()
            for v in adj[u]:
                if dist[v] == float("inf"):
                    dist[v] = dist[u] + 1
                    dq.append(v)
        return dist


def chain_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star_graph(n: int) -> Graph:
    """Vertex 0 is the hub, 1..n-1 are leaves."""
    return Graph(n, tuple((0, i) for i in range(1, n)))


def min_pairwise_distance(graph: Graph, vertices: Iterable[int]) -> float:
    """Smallest graph distance between any two of the given vertices."""
    verts = sorted(set(vertices))
    best = float("inf")
    for i, u in enumerate(verts):
        d = graph.distances_from(u)
        for v in verts[i + 1 :]:
            best = min(best, d[v])
    return best


def _cascade_general(graph: Graph, q: float, p: float) -> np.ndarray:
    """Live-edge enumeration: outer loop over edge activations, inner over
    initial fires, accumulating the law of the reachable set."""
    n = graph.n
    directed = [(u, v) for u, v in graph.edges] + [(v, u) for u, v in graph.edges]
    ne = len(directed)
    if n + ne > GENERAL_CAP_BITS:
        raise GraphTooLarge(
            f"n + directed edges = {n + ne} exceeds cap {GENERAL_CAP_BITS}"
        )
    probs = np.zeros(1 << n)
    fire_w = np.ones(1 << n)
    for x in range(1 << n):
        k = bin(x).count("1")
        fire_w[x] = q**k * (1 - q) ** (n - k)
    for emask in range(1 << ne):
        live = [directed[e] for e in range(ne) if emask >> e & 1]
        k = len(live)
        ew = p**k * (1 - p) ** (ne - k)
        if ew == 0.0:
            continue
        # reachability closure of each vertex through live edges
        reach = [1 << v for v in range(n)]
        changed = True
        while changed:
            changed = False
            for u, v in live:
                merged = reach[u] | reach[v]
                if merged != reach[u]:
                    reach[u] = merged
                    changed = True
        for x in range(1 << n):
            y = 0
            rem = x
            while rem:
                b = (rem & -rem).bit_length() - 1
                y |= reach[b]
                rem &= rem - 1
            probs[y] += fire_w[x] * ew
    # masks above are little-endian (vertex v = bit v); reorder to C order so
    # vertex v lands on axis v after the (2,)*n reshape
    return probs.reshape((2,) * n).transpose(tuple(reversed(range(n)))).ravel()


def _cascade_chain(n: int, q: float, p: float) -> np.ndarray:
    """Forward DP over (a, b, x) where b tracks rightward influence from the
    left, a guesses leftward influence from the right (checked one step
    later), and x is the vertex's own fire."""
    if n == 1:
        return np.array([1 - q, q])
    states: dict[tuple[int, int, int], np.ndarray] = {}
    for x0 in (0, 1):
        w = q if x0 else 1 - q
        for a0 in (0, 1):
            y0 = a0 | x0
            arr = states.setdefault((a0, x0, x0), np.zeros(2))
            arr[y0] += w
    for _ in range(1, n):
        new: dict[tuple[int, int, int], np.ndarray] = {}
        for (a, b, x), arr in states.items():
            for xn in (0, 1):
                wx = q if xn else 1 - q
                for l in (0, 1):
                    wl = p if l else 1 - p
                    for r in (0, 1):
                        wr = p if r else 1 - p
                        for an in (0, 1):
                            if a != (x | (l & an)):
                                continue
                            bn = xn | (r & b)
                            yn = an | bn
                            key = (an, bn, xn)
                            tgt = new.get(key)
                            if tgt is None:
                                tgt = np.zeros(arr.size * 2)
                                new[key] = tgt
                            tgt[yn::2] += arr * (wx * wl * wr)
        states = new
    total = np.zeros(1 << n)
    for (a, b, x), arr in states.items():
        if a == x:  # rightmost vertex has no right neighbor
            total += arr
    return total


def cascade_exact(graph: Graph, q: float, p: float) -> JointDistribution:
    """Exact joint law of the final cascade states."""
    if not (0 <= q <= 1 and 0 <= p <= 1):
        raise ValueError("q and p must be probabilities")
    if graph.kind == "chain":
        if graph.n > CHAIN_MAX_N:
            raise GraphTooLarge(f"chain length {graph.n} exceeds cap {CHAIN_MAX_N}")
        probs = _cascade_chain(graph.n, q, p)
    else:
        probs = _cascade_general(graph, q, p)
    table = probs.reshape((2,) * graph.n)
    return JointDistribution(bernoulli_specs(graph.n, name="Y"), table)


def cascade_exact_general(graph: Graph, q: float, p: float) -> JointDistribution:
    """Live-edge enumeration path regardless of graph kind (testing hook)."""
    table = _cascade_general(graph, q, p).reshape((2,) * graph.n)
    return JointDistribution(bernoulli_specs(graph.n, name="Y"), table)


def cascade_sample(
    graph: Graph, q: float, p: float, seed: int, count: int
) -> np.ndarray:
    """Step-process simulation to fixpoint, vectorized across draws.

    Returns a (count, n) 0/1 array; deterministic in (seed, count).
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    n = graph.n
    rng = np.random.default_rng(seed)
    state = rng.random((count, n)) < q
    newly = state.copy()
    directed = [(u, v) for u, v in graph.edges] + [(v, u) for u, v in graph.edges]
    while newly.any():
        nxt = np.zeros_like(state)
        for u, v in directed:
            attempt = newly[:, u] & ~state[:, v]
            hit = attempt & (rng.random(count) < p)
            nxt[:, v] |= hit
        nxt &= ~state
        state |= nxt
        newly = nxt
    return state.astype(np.int8)

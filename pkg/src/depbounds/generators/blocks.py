"""Index-set constructions: interleaved process blocks and lattice distance
partitions."""

from __future__ import annotations

from ..errors import BlockMismatch


def interleaved_blocks(n: int, mu: int, nu: int) -> list[tuple[int, ...]]:
    """Partition [0, n) into nu blocks of mu indices with in-block gap nu:
    block j = (j, j + nu, ..., j + (mu-1) nu)."""
    if n != mu * nu or mu < 1 or nu < 1:
        raise BlockMismatch(f"need n = mu * nu, got n={n}, mu={mu}, nu={nu}")
    return [tuple(j + i * nu for i in range(mu)) for j in range(nu)]


def _l1(a: tuple[int, int], b: tuple[int, int]) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _verify_partition(groups, coords, nu: int) -> bool:
    for g in groups:
        for i, c1 in enumerate(g):
            for c2 in g[i + 1 :]:
                if _l1(coords[c1], coords[c2]) < nu:
                    return False
    return True


def distance_partition(width: int, height: int, nu: int) -> list[tuple[int, ...]]:
    """Partition the width x height grid into groups with pairwise in-group
    L1 distance >= nu.

    Modular colorings are used where known (parity classes for nu=2, the
    (x + 2y) mod 5 classes for nu=3, whose minimal in-class displacement has
    L1 norm 3); otherwise a greedy first-fit over raster order.  Every result
    is verified by an explicit pairwise distance check before it is returned.
    """
    if nu < 1 or width < 1 or height < 1:
        raise ValueError("width, height and nu must be positive")
    coords = {y * width + x: (x, y) for y in range(height) for x in range(width)}
    cells = sorted(coords)

    groups: list[list[int]] | None = None
    if nu == 1:
        groups = [list(cells)]
    elif nu == 2:
        groups = [[], []]
        for c in cells:
            x, y = coords[c]
            groups[(x + y) % 2].append(c)
    elif nu == 3:
        groups = [[], [], [], [], []]
        for c in cells:
            x, y = coords[c]
            groups[(x + 2 * y) % 5].append(c)

    if groups is None or not _verify_partition(groups, coords, nu):
        # greedy first-fit fallback
        groups = []
        for c in cells:
            for g in groups:
                if all(_l1(coords[c], coords[o]) >= nu for o in g):
                    g.append(c)
                    break
            else:
                groups.append([c])

    groups = [tuple(sorted(g)) for g in groups if g]
    assert _verify_partition([list(g) for g in groups], coords, nu)
    return groups

"""Relation builders (cyclic covers, sigma and alpha/beta thresholds) and random instances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .metric import (
    AffineMap,
    FiniteCarrier,
    FiniteMap,
    IntervalCarrier,
    IntervalRelation,
    MetricInstance,
)
from .relations import FiniteRelation, restrict


@dataclass(frozen=True)
class CyclicCover:
    """Blocks A_1..A_p: index sets (finite) or closed (lo, hi) subintervals."""

    blocks: tuple

    def __init__(self, blocks: Sequence):
        blocks = tuple(tuple(b) for b in blocks)
        if len(blocks) < 2:
            raise ValueError("a cyclic cover needs p >= 2 blocks")
        if any(not b for b in blocks):
            raise ValueError("cover blocks must be nonempty")
        object.__setattr__(self, "blocks", blocks)

    @property
    def p(self) -> int:
        return len(self.blocks)


def _check_finite_cover(cover: CyclicCover, T: Sequence[int]) -> None:
    p = cover.p
    for i, block in enumerate(cover.blocks):
        nxt = set(cover.blocks[(i + 1) % p])
        for x in block:
            if T[x] not in nxt:
                raise ValueError(f"block {i + 1}: T({x}) = {T[x]} is not in block {(i + 1) % p + 1}")


def cyclic_relation(cover: CyclicCover, T: Sequence[int]) -> FiniteRelation:
    """(A_1 x A_2) u ... u (A_p x A_1) over the indices of T."""
    T = tuple(T)
    n = len(T)
    if any(not 0 <= x < n for b in cover.blocks for x in b):
        raise ValueError("cover block index out of range")
    _check_finite_cover(cover, T)
    p = cover.p
    pairs = {(x, y) for i in range(p) for x in cover.blocks[i] for y in cover.blocks[(i + 1) % p]}
    return FiniteRelation(n, pairs)


def cyclic_instance(dist, T: Sequence[int], cover: CyclicCover) -> MetricInstance:
    """Finite instance restricted to X = A_1 u ... u A_p and re-indexed."""
    R = cyclic_relation(cover, T)
    keep = sorted({x for b in cover.blocks for x in b})
    pos = {x: i for i, x in enumerate(keep)}
    sub = [[dist[a][b] for b in keep] for a in keep]
    return MetricInstance(FiniteCarrier(sub), FiniteMap(pos[T[x]] for x in keep), restrict(R, keep))


def cyclic_interval_relation(cover: CyclicCover, T: AffineMap, lo: float, hi: float) -> IntervalRelation:
    """Cyclic relation on [lo, hi]; blocks must tile the interval and satisfy T(A_i) in A_(i+1)."""
    blocks = [(float(a), float(b)) for a, b in cover.blocks]
    p = len(blocks)
    for i, (a, b) in enumerate(blocks):
        if a > b or a < lo or b > hi:
            raise ValueError(f"block {i + 1} is not a subinterval of [{lo}, {hi}]")
        na, nb = blocks[(i + 1) % p]
        ia, ib = sorted((T(a), T(b)))
        if ia < na or ib > nb:
            raise ValueError(f"block {i + 1}: image [{ia}, {ib}] is not in block {(i + 1) % p + 1}")
    reach = lo
    for a, b in sorted(blocks):
        if a > reach:
            raise ValueError(f"blocks leave a gap at ({reach}, {a})")
        reach = max(reach, b)
    if reach < hi:
        raise ValueError(f"blocks leave a gap at ({reach}, {hi})")
    return IntervalRelation("cyclic", tuple(blocks))


def _nonempty(n: int, pairs) -> FiniteRelation:
    rel = FiniteRelation(n, pairs)
    if not rel.pairs:
        raise ValueError("built relation is empty")
    return rel


def sigma_relation(sigma) -> FiniteRelation:
    """x S y iff sigma(x, y) >= 1."""
    s = np.asarray(sigma, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValueError("sigma must be a square table")
    return _nonempty(s.shape[0], zip(*np.nonzero(s >= 1)))


def alpha_beta_relation(alpha, beta) -> FiniteRelation:
    """x R y iff alpha(x, y) <= 1 and beta(x, y) >= 1."""
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("alpha and beta must be square tables of the same size")
    return _nonempty(a.shape[0], zip(*np.nonzero((a <= 1) & (b >= 1))))


MAP_KINDS = ("arbitrary", "monotone", "constant-biased")
METRIC_KINDS = ("line", "table")


def _shortest_path_completion(w: np.ndarray) -> np.ndarray:
    d = w.copy()
    n = len(d)
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def random_instance(
    seed: int,
    n: int,
    density: float = 0.5,
    map_kind: str = "arbitrary",
    metric_kind: str = "line",
    close_under_map: bool = False,
) -> MetricInstance:
    """Seeded random finite instance with integer distances.

    ``line`` embeds n distinct integer points in [0, 4n]; ``table`` draws
    integer weights in 1..10 and repairs the triangle inequality by
    shortest-path completion.  A monotone map is nondecreasing in the
    natural order of the points.  With `close_under_map` the sampled
    relation is closed under (x, y) -> (Tx, Ty), which makes T increasing.
    """
    if n < 2:
        raise ValueError("random instances need n >= 2")
    if not 0 < density <= 1:
        raise ValueError("density must lie in (0, 1]")
    if map_kind not in MAP_KINDS or metric_kind not in METRIC_KINDS:
        raise ValueError(f"unknown map_kind {map_kind!r} or metric_kind {metric_kind!r}")
    rng = np.random.default_rng(seed)

    if metric_kind == "line":
        pos = np.sort(rng.choice(4 * n + 1, size=n, replace=False))
        dist = np.abs(pos[:, None] - pos[None, :])
    else:
        w = rng.integers(1, 11, size=(n, n))
        w = np.triu(w, 1)
        w = w + w.T
        dist = _shortest_path_completion(w)

    if map_kind == "arbitrary":
        table = rng.integers(0, n, size=n)
    elif map_kind == "monotone":
        table = np.sort(rng.integers(0, n, size=n))
    else:
        target = rng.integers(0, n)
        table = np.where(rng.random(n) < 0.5, target, rng.integers(0, n, size=n))

    if density >= 1:
        mask = np.ones((n, n), dtype=bool)
    else:
        mask = rng.random((n, n)) < density
        if not mask.any():
            mask[rng.integers(0, n), rng.integers(0, n)] = True
    R = FiniteRelation.from_matrix(mask)
    if close_under_map:
        R = image_closure(R, table.tolist())
    return MetricInstance(FiniteCarrier(dist.tolist()), FiniteMap(table.tolist()), R)


def image_closure(R: FiniteRelation, T: Sequence[int]) -> FiniteRelation:
    """Smallest relation containing R and closed under (x, y) -> (Tx, Ty)."""
    pairs = set(R.pairs)
    frontier = set(pairs)
    while frontier:
        frontier = {(T[x], T[y]) for x, y in frontier} - pairs
        pairs |= frontier
    return FiniteRelation(R.size, pairs)


def interval_instance(lo: float, hi: float, a: float, b: float, R: IntervalRelation | None = None) -> MetricInstance:
    return MetricInstance(IntervalCarrier(lo, hi), AffineMap(a, b), R or IntervalRelation.trivial())

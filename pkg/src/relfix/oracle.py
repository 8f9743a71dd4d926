"""Deliberately naive reference implementations.

Nothing here calls the fast-path evaluators in metric, certifier or picard;
the oracles read the raw distance table, map table and pair set directly.
"""

from __future__ import annotations

from typing import NamedTuple


class OracleResult(NamedTuple):
    ok: bool
    witness: object = None


def _raw(m):
    if not m.is_finite:
        raise ValueError("oracles need a finite carrier")
    return m.carrier.dist, m.T.table, set(m.R.pairs)


def brute_fixed_points(m) -> set:
    _, T, _ = _raw(m)
    return {x for x in range(len(T)) if T[x] == x}


def _pairset_compose(a: set, b: set) -> set:
    return {(x, z) for (x, y1) in a for (y2, z) in b if y1 == y2}


def brute_k_transitive(R, k: int) -> bool:
    """R^k is a subset of R, with R^k built from pair-set products."""
    if k < 2:
        raise ValueError("k must be at least 2")
    pairs = set(R.pairs)
    acc = {(i, i) for i in range(R.size)}
    for _ in range(k):
        acc = _pairset_compose(acc, pairs)
    return acc <= pairs


def _g_value(dist, T, g, x, y) -> float:
    d = lambda u, v: dist[u][v]  # noqa: E731
    tx, ty = T[x], T[y]
    a1 = d(x, y)
    a2 = (d(x, tx) + d(y, ty)) / 2
    a3 = max(d(x, tx), d(y, ty))
    a4 = (d(x, ty) + d(tx, y)) / 2
    table = {
        "A1": [a1],
        "B2": [a1, a2],
        "B3": [a1, a3],
        "B4": [a1, a4],
        "C1": [a1, a2, a4],
        "C2": [a1, a3, a4],
    }
    return max(table[getattr(g, "value", g)])


def brute_mk_verdict(m, g, eps_grid=None) -> OracleResult:
    """Strict nonexpansiveness plus a delta search at every eps of a dense grid.

    For each eps, candidate deltas are the gaps G - eps to attained values
    above eps, tried in descending order, then a tiny fallback.
    """
    dist, T, pairs = _raw(m)
    tol = m.tol
    rows = []
    for x, y in sorted(pairs):
        if x == y:
            continue
        rows.append((x, y, _g_value(dist, T, g, x, y), dist[T[x]][T[y]]))
    for x, y, gv, dt in rows:
        if not dt < gv - tol:
            return OracleResult(False, (x, y))
    if not rows:
        return OracleResult(True)
    values = sorted({gv for _, _, gv, _ in rows})
    if eps_grid is None:
        eps_grid = set(values)
        eps_grid.update((a + b) / 2 for a, b in zip(values, values[1:]))
        eps_grid.add(values[0] / 2)
        eps_grid.add(2 * values[-1])
        pert = 1e-9
        eps_grid.update(v + s for v in list(eps_grid) for s in (-pert, pert) if v + s > 0)
    for eps in sorted(eps_grid):
        gaps = sorted({gv - eps for _, _, gv, _ in rows if gv > eps}, reverse=True)
        found = False
        for delta in gaps + [1e-12]:
            if all(dt <= eps + tol for _, _, gv, dt in rows if gv < eps + delta):
                found = True
                break
        if not found:
            return OracleResult(False, eps)
    return OracleResult(True)


def brute_theorem2_conclusion(m) -> OracleResult:
    """Every start in X(T,R) reaches a fixed point, and related fixed points coincide."""
    dist, T, pairs = _raw(m)
    n = len(T)
    starts = [x for x in range(n) if (x, T[x]) in pairs]
    for x0 in starts:
        visited = set()
        x = x0
        while x not in visited:
            visited.add(x)
            if T[x] == x:
                break
            x = T[x]
        if T[x] != x:
            return OracleResult(False, ("no fixed point from", x0))
    fix = [x for x in range(n) if T[x] == x]
    for a in fix:
        for b in fix:
            if a != b and (a, b) in pairs:
                return OracleResult(False, ("related fixed points", a, b))
    return OracleResult(True)

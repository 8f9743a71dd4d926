"""Finite relation algebra over the index set {0, ..., n-1}.

Relations are immutable pair sets.  Composition goes through a dense
boolean matrix, which is fine at the sizes this package targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np


class PreconditionError(ValueError):
    """An operation was called on inputs that violate its hypotheses."""


@dataclass(frozen=True)
class FiniteRelation:
    size: int
    pairs: frozenset

    def __init__(self, size: int, pairs: Iterable[tuple[int, int]] = ()):
        if size < 1:
            raise ValueError(f"relation size must be positive, got {size}")
        pairs = frozenset((int(i), int(j)) for i, j in pairs)
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size):
                raise ValueError(f"pair ({i}, {j}) out of range for size {size}")
        object.__setattr__(self, "size", int(size))
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def identity(cls, n: int) -> FiniteRelation:
        return cls(n, ((i, i) for i in range(n)))

    @classmethod
    def full(cls, n: int) -> FiniteRelation:
        return cls(n, ((i, j) for i in range(n) for j in range(n)))

    @classmethod
    def order(cls, n: int) -> FiniteRelation:
        """The usual order i <= j on indices."""
        return cls(n, ((i, j) for i in range(n) for j in range(i, n)))

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> FiniteRelation:
        m = np.asarray(m, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("relation matrix must be square")
        return cls(m.shape[0], zip(*np.nonzero(m)))

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=bool)
        for i, j in self.pairs:
            m[i, j] = True
        return m

    def related(self, x: int, y: int) -> bool:
        return (x, y) in self.pairs

    def strict(self) -> FiniteRelation:
        """The relation with its diagonal removed."""
        return FiniteRelation(self.size, ((i, j) for i, j in self.pairs if i != j))

    def issubset(self, other: FiniteRelation) -> bool:
        _same_size(self, other)
        return self.pairs <= other.pairs

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))


def _same_size(r: FiniteRelation, s: FiniteRelation) -> None:
    if r.size != s.size:
        raise ValueError(f"size mismatch: {r.size} != {s.size}")


def compose(r: FiniteRelation, s: FiniteRelation) -> FiniteRelation:
    """(x, z) is in the result iff x r y and y s z for some y."""
    _same_size(r, s)
    prod = r.matrix().astype(np.int64) @ s.matrix().astype(np.int64)
    return FiniteRelation.from_matrix(prod > 0)


def power(r: FiniteRelation, k: int) -> FiniteRelation:
    if k < 0:
        raise ValueError(f"power must be nonnegative, got {k}")
    result = FiniteRelation.identity(r.size)
    for _ in range(k):
        result = compose(result, r)
    return result


def check_power_laws(r: FiniteRelation, m: int, n: int) -> bool:
    """Both exponent laws: r^(m+n) = r^m o r^n and (r^m)^n = r^(mn)."""
    if m < 0 or n < 0:
        raise ValueError("exponents must be nonnegative")
    additive = power(r, m + n) == compose(power(r, m), power(r, n))
    multiplicative = power(power(r, m), n) == power(r, m * n)
    return additive and multiplicative


def is_k_transitive(r: FiniteRelation, k: int) -> bool:
    if k < 2:
        raise ValueError(f"k-transitivity needs k >= 2, got {k}")
    return power(r, k).issubset(r)


def restrict(r: FiniteRelation, ys: Iterable[int]) -> FiniteRelation:
    """Restriction to `ys`, re-indexed by ascending original index."""
    ys = sorted(set(ys))
    if not ys:
        raise ValueError("cannot restrict to an empty set")
    if ys[0] < 0 or ys[-1] >= r.size:
        raise ValueError("restriction set out of range")
    pos = {y: i for i, y in enumerate(ys)}
    return FiniteRelation(
        len(ys), ((pos[i], pos[j]) for i, j in r.pairs if i in pos and j in pos)
    )


def is_ascending(seq: Sequence[int], r: FiniteRelation) -> bool:
    return all(r.related(a, b) for a, b in zip(seq, seq[1:]))


def ascending_chain_property(
    seq: Sequence[int], r: FiniteRelation, k: int, r_max: int
) -> bool:
    """Check (z_i, z_{i+1+j(k-1)}) in r for all i and all 0 <= j <= r_max.

    The sequence must be r-ascending and r restricted to its terms must be
    k-transitive; otherwise PreconditionError is raised.
    """
    seq = list(seq)
    if not seq:
        raise PreconditionError("sequence is empty")
    if not is_ascending(seq, r):
        raise PreconditionError("sequence is not ascending")
    if not is_k_transitive(restrict(r, seq), k):
        raise PreconditionError(f"relation is not {k}-transitive on the sequence")
    last = len(seq) - 1
    for j in range(r_max + 1):
        step = 1 + j * (k - 1)
        for i in range(last - step + 1):
            if not r.related(seq[i], seq[i + step]):
                return False
    return True


def spectrum(x, T: Callable, r, horizon: int) -> frozenset:
    """Indices 1 <= i <= horizon with x r T^i(x).

    `r` is anything with a ``related(x, y)`` method, so the same routine
    serves finite relations and interval relation tags.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    out = set()
    y = x
    for i in range(1, horizon + 1):
        y = T(y)
        if r.related(x, y):
            out.add(i)
    return frozenset(out)


def is_k_semi_recurrent_at(x, T: Callable, r, k: int, horizon: int) -> bool:
    """Every 1 <= n <= horizon has some spectrum element q with q <= n < q + k.

    A True result is only a statement about indices up to `horizon`.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if horizon < k:
        raise ValueError("horizon must be at least k")
    spec_ = sorted(spectrum(x, T, r, horizon))
    return all(any(q <= n < q + k for q in spec_) for n in range(1, horizon + 1))

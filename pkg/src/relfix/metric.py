"""Metric instances, metric-axiom checks and the G-functional family.

Two kinds of carrier are supported: a finite point set given by a distance
table, and a closed real interval with the absolute-value distance.  On an
interval the selfmap is affine and the relation is one of a few tags whose
properties can be decided analytically.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence

from .relations import FiniteRelation

TAU = 1e-9


@dataclass(frozen=True)
class FiniteCarrier:
    dist: tuple

    def __init__(self, dist: Sequence[Sequence[float]]):
        rows = tuple(tuple(float(v) for v in row) for row in dist)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise ValueError("distance table must be square and nonempty")
        if any(v < 0 for row in rows for v in row):
            raise ValueError("distances must be nonnegative")
        object.__setattr__(self, "dist", rows)

    @property
    def n(self) -> int:
        return len(self.dist)

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n

    def d(self, x: int, y: int) -> float:
        return self.dist[x][y]


@dataclass(frozen=True)
class IntervalCarrier:
    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def d(self, x: float, y: float) -> float:
        return abs(x - y)


@dataclass(frozen=True)
class FiniteMap:
    table: tuple

    def __init__(self, table: Iterable[int]):
        object.__setattr__(self, "table", tuple(int(v) for v in table))

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class AffineMap:
    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    def __call__(self, x: float) -> float:
        return self.a * x + self.b


class IntervalRelation:
    """Relation tags on an interval carrier.

    ``trivial``: every pair.  ``order``: x <= y.  ``band(lo, hi)``: the
    alpha/beta threshold pair with alpha(x, y) = (y - x)/hi and
    beta(x, y) = (y - x)/lo, i.e. lo <= y - x <= hi.  ``cyclic(blocks)``:
    x in A_i and y in A_{i+1} for consecutive closed subintervals.
    """

    KINDS = ("trivial", "order", "band", "cyclic")

    def __init__(self, kind: str, params: tuple = ()):
        if kind not in self.KINDS:
            raise ValueError(f"unknown interval relation {kind!r}")
        if kind == "band":
            lo, hi = (float(p) for p in params)
            if lo > hi:
                raise ValueError("band needs lo <= hi")
            params = (lo, hi)
        elif kind == "cyclic":
            params = tuple((float(a), float(b)) for a, b in params)
            if len(params) < 2:
                raise ValueError("cyclic relation needs at least two blocks")
            if any(a > b for a, b in params):
                raise ValueError("cyclic blocks must be nonempty intervals")
        else:
            params = ()
        self.kind = kind
        self.params = params

    @classmethod
    def trivial(cls) -> IntervalRelation:
        return cls("trivial")

    @classmethod
    def order(cls) -> IntervalRelation:
        return cls("order")

    def related(self, x: float, y: float) -> bool:
        if self.kind == "trivial":
            return True
        if self.kind == "order":
            return x <= y
        if self.kind == "band":
            lo, hi = self.params
            return lo <= y - x <= hi
        blocks = self.params
        p = len(blocks)
        return any(
            blocks[i][0] <= x <= blocks[i][1]
            and blocks[(i + 1) % p][0] <= y <= blocks[(i + 1) % p][1]
            for i in range(p)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntervalRelation)
            and (self.kind, self.params) == (other.kind, other.params)
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.params))

    def __repr__(self) -> str:
        return f"IntervalRelation({self.kind!r}, {self.params!r})"


@dataclass(frozen=True)
class MetricInstance:
    """A relational metric space (X, d, R) together with a selfmap T."""

    carrier: FiniteCarrier | IntervalCarrier
    T: FiniteMap | AffineMap
    R: FiniteRelation | IntervalRelation
    tol: float = field(default=None, compare=False)

    def __post_init__(self):
        if isinstance(self.carrier, FiniteCarrier):
            n = self.carrier.n
            if not isinstance(self.T, FiniteMap) or len(self.T.table) != n:
                raise ValueError(f"finite carrier needs a map table of length {n}")
            bad = [i for i, v in enumerate(self.T.table) if not 0 <= v < n]
            if bad:
                raise ValueError(f"map sends point {bad[0]} outside the carrier")
            if not isinstance(self.R, FiniteRelation) or self.R.size != n:
                raise ValueError(f"finite carrier needs a relation of size {n}")
            if not self.R.pairs:
                raise ValueError("relation must be nonempty")
        else:
            if not isinstance(self.T, AffineMap):
                raise ValueError("interval carrier needs an affine map")
            lo, hi = self.carrier.lo, self.carrier.hi
            for end in (lo, hi):
                if not self.carrier.contains(self.T(end)):
                    raise ValueError(f"map sends {end} outside [{lo}, {hi}]")
            if not isinstance(self.R, IntervalRelation):
                raise ValueError("interval carrier needs an interval relation tag")
        if self.tol is None:
            object.__setattr__(self, "tol", 0.0 if self.exact else TAU)

    @property
    def is_finite(self) -> bool:
        return isinstance(self.carrier, FiniteCarrier)

    @property
    def exact(self) -> bool:
        """Integer distance tables make every comparison here exact in floats."""
        if not self.is_finite:
            return False
        return all(float(v).is_integer() and v < 2**40 for row in self.carrier.dist for v in row)

    @property
    def n(self) -> int:
        return self.carrier.n

    def points(self) -> range:
        if not self.is_finite:
            raise ValueError("only finite carriers enumerate their points")
        return range(self.carrier.n)

    def d(self, x, y) -> float:
        return self.carrier.d(x, y)

    def contains(self, x) -> bool:
        return self.carrier.contains(x)

    def strict_pairs(self) -> list[tuple[int, int]]:
        """The pairs of R with distinct endpoints, sorted."""
        return sorted((i, j) for i, j in self.R.pairs if i != j)


class Violation(NamedTuple):
    axiom: str
    points: tuple


def verify_metric_axioms(m: MetricInstance, tol: float | None = None) -> list[Violation]:
    if not m.is_finite:
        return []
    tol = m.tol if tol is None else tol
    d = m.carrier.d
    pts = list(m.points())
    out = []
    for x in pts:
        if d(x, x) != 0:
            out.append(Violation("reflexivity", (x,)))
    for x, y in itertools.combinations(pts, 2):
        if d(x, y) <= 0:
            out.append(Violation("sufficiency", (x, y)))
        if d(x, y) != d(y, x):
            out.append(Violation("symmetry", (x, y)))
    for x, y, z in itertools.product(pts, repeat=3):
        if d(x, z) > d(x, y) + d(y, z) + tol:
            out.append(Violation("triangle", (x, y, z)))
    return out


def lipschitz_inequality_check(m: MetricInstance, x, y, u, v) -> bool:
    """|d(x,y) - d(u,v)| <= d(x,u) + d(y,v)."""
    for p in (x, y, u, v):
        if not m.contains(p):
            raise ValueError(f"point {p!r} is not in the carrier")
    return abs(m.d(x, y) - m.d(u, v)) <= m.d(x, u) + m.d(y, v) + m.tol


def diam(m: MetricInstance, ys: Iterable) -> float:
    ys = list(dict.fromkeys(ys))
    if not ys:
        raise ValueError("diameter of an empty set")
    return max((m.d(a, b) for a, b in itertools.combinations(ys, 2)), default=0.0)


class Functional(str, enum.Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    C1 = "C1"
    C2 = "C2"

    @property
    def is_contractive(self) -> bool:
        return self in CONTRACTIVE

    @property
    def klass(self) -> str:
        if self in G1:
            return "G1"
        if self in G2:
            return "G2"
        raise ValueError(f"{self.value} is a building block, not a contraction functional")


G1 = frozenset({Functional.A1, Functional.B2, Functional.B4, Functional.C1})
G2 = frozenset({Functional.B3, Functional.C2})
CONTRACTIVE = G1 | G2


def eval_functional(m: MetricInstance, g: Functional | str, x, y) -> float:
    g = Functional(g)
    T = m.T
    tx, ty = T(x), T(y)
    d = m.d
    a1 = d(x, y)
    if g is Functional.A1:
        return a1
    if g is Functional.B1:
        return diam(m, (x, tx, y, ty))
    a2 = 0.5 * (d(x, tx) + d(y, ty))
    a3 = max(d(x, tx), d(y, ty))
    a4 = 0.5 * (d(x, ty) + d(tx, y))
    return {
        Functional.A2: a2,
        Functional.A3: a3,
        Functional.A4: a4,
        Functional.B2: max(a1, a2),
        Functional.B3: max(a1, a3),
        Functional.B4: max(a1, a4),
        Functional.C1: max(a1, a2, a4),
        Functional.C2: max(a1, a3, a4),
    }[g]


def check_bounds(
    m: MetricInstance,
    g: Functional | str,
    evaluate: Callable = eval_functional,
) -> bool:
    """d <= G <= diam{x,Tx,y,Ty} on all pairs, and G > 0 on strict pairs of R.

    `evaluate` is swappable so a corrupted functional can be fed in.
    """
    if not m.is_finite:
        raise ValueError("bounds are checked exhaustively on finite carriers only")
    tol = m.tol
    for x, y in itertools.product(m.points(), repeat=2):
        gv = evaluate(m, g, x, y)
        if gv < m.d(x, y) - tol:
            return False
        if gv > diam(m, (x, m.T(x), y, m.T(y))) + tol:
            return False
    return all(evaluate(m, g, x, y) > tol for x, y in m.strict_pairs())


def fixed_points(m: MetricInstance) -> list[int]:
    return [x for x in m.points() if m.T(x) == x]

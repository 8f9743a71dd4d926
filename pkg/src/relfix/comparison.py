"""Comparison functions on [0, inf) and their admissibility classes.

Three families are built in: ``Linear(c)`` (t -> c t), ``Ratio`` (t -> t/(1+t))
and ``StepTable``.  A step table with thresholds t_1 < ... < t_m and values
v_1 <= ... <= v_m is 0 on [0, t_1] and v_k on (t_k, t_{k+1}], so it is
left-continuous and its only jumps sit just to the right of a threshold.

Classification is tri-state.  Built-in continuous families get analytic
proofs; tables get exact finite analyses over their breakpoints.  One-sided
limits are read off the table structure, never approximated numerically.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, NamedTuple, Sequence

import numpy as np

Status = Literal["proven", "refuted", "unknown"]


@dataclass(frozen=True)
class Linear:
    c: float

    def __post_init__(self):
        if not (self.c >= 0 and math.isfinite(self.c)):
            raise ValueError(f"linear slope must be finite and >= 0, got {self.c}")

    def __call__(self, t: float) -> float:
        return self.c * t

    def right_limit(self, t: float) -> float:
        return self.c * t

    def left_limit(self, t: float) -> float:
        return self.c * t

    def breakpoints(self) -> tuple:
        return ()

    def describe(self) -> str:
        return f"linear {self.c!r}"


@dataclass(frozen=True)
class Ratio:
    def __call__(self, t: float) -> float:
        return t / (1.0 + t)

    right_limit = __call__
    left_limit = __call__

    def breakpoints(self) -> tuple:
        return ()

    def describe(self) -> str:
        return "ratio"


@dataclass(frozen=True)
class StepTable:
    thresholds: tuple
    values: tuple

    def __init__(self, thresholds: Iterable[float], values: Iterable[float]):
        ts = tuple(float(t) for t in thresholds)
        vs = tuple(float(v) for v in values)
        if not ts or len(ts) != len(vs):
            raise ValueError("step table needs matching, nonempty thresholds and values")
        if ts[0] <= 0 or any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValueError("thresholds must be positive and strictly increasing")
        if vs[0] < 0 or any(a > b for a, b in zip(vs, vs[1:])):
            raise ValueError("values must be nonnegative and nondecreasing")
        object.__setattr__(self, "thresholds", ts)
        object.__setattr__(self, "values", vs)

    @classmethod
    def from_pairs(cls, flat: Sequence[float]) -> StepTable:
        if len(flat) % 2:
            raise ValueError("table needs threshold/value pairs")
        return cls(flat[0::2], flat[1::2])

    def __call__(self, t: float) -> float:
        if t < 0:
            raise ValueError("negative argument")
        k = bisect.bisect_left(self.thresholds, t)
        return self.values[k - 1] if k else 0.0

    left_limit = __call__

    def right_limit(self, t: float) -> float:
        k = bisect.bisect_right(self.thresholds, t)
        return self.values[k - 1] if k else 0.0

    def breakpoints(self) -> tuple:
        return self.thresholds

    def jump_after(self, t: float) -> float:
        """psi(t+0) - psi(t)."""
        return self.right_limit(t) - self(t)

    def describe(self) -> str:
        return "table " + " ".join(f"{t!r} {v!r}" for t, v in zip(self.thresholds, self.values))


Family = Linear | Ratio | StepTable


class RegressivityError(ValueError):
    def __init__(self, message: str, witness: float):
        super().__init__(message)
        self.witness = witness


class ComparisonFunction:
    """A regressive function: phi(0) = 0 and phi(t) < t for t > 0."""

    def __init__(self, fn: Family):
        self.fn = fn
        witness = _regressivity_witness(fn)
        if witness is not None:
            raise RegressivityError(
                f"{fn.describe()} is not regressive (phi(t) >= t at t={witness!r})", witness
            )

    def __call__(self, t: float) -> float:
        if t < 0:
            raise ValueError(f"phi is defined on t >= 0, got {t}")
        return self.fn(t)

    def right_limit(self, t: float) -> float:
        return self.fn.right_limit(t)

    def breakpoints(self) -> tuple:
        return self.fn.breakpoints()

    def describe(self) -> str:
        return self.fn.describe()

    def __eq__(self, other) -> bool:
        return isinstance(other, ComparisonFunction) and self.fn == other.fn

    def __hash__(self) -> int:
        return hash(self.fn)

    def __repr__(self) -> str:
        return f"ComparisonFunction({self.fn!r})"


def _regressivity_witness(fn) -> float | None:
    if isinstance(fn, Linear):
        return 1.0 if fn.c >= 1 else None
    if isinstance(fn, Ratio):
        return None
    if isinstance(fn, StepTable):
        # sup of t over (t_k, t_{k+1}] is approached from t_k, so v_k <= t_k suffices
        ts, vs = fn.thresholds, fn.values
        for k, (t, v) in enumerate(zip(ts, vs)):
            if v > t:
                upper = ts[k + 1] if k + 1 < len(ts) else math.inf
                return min(0.5 * (t + v), upper)
        return None
    raise TypeError(f"unsupported function family {fn!r}")


def eval_phi(phi, t: float) -> float:
    if t < 0:
        raise ValueError(f"phi is defined on t >= 0, got {t}")
    return phi(t)


class LimitQuantities(NamedTuple):
    s: float
    phi_s: float
    lambda_plus: float
    lambda_sup: float


def lambda_plus(phi, s: float) -> LimitQuantities:
    """Right upper limit of phi at s, and its max with phi(s)."""
    if s <= 0:
        raise ValueError(f"s must be positive, got {s}")
    val = phi(s)
    right = phi.right_limit(s)
    return LimitQuantities(s, val, right, max(val, right))


class Certificate(NamedTuple):
    status: Status
    witness: object = None
    reason: str = ""

    @property
    def proven(self) -> bool:
        return self.status == "proven"


def _fn(phi):
    return phi.fn if isinstance(phi, ComparisonFunction) else phi


def classify_boyd_wong(phi) -> Certificate:
    fn = _fn(phi)
    if isinstance(fn, Linear):
        return Certificate("proven", reason=f"right limit {fn.c!r}*s < s")
    if isinstance(fn, Ratio):
        return Certificate("proven", reason="s/(1+s) < s")
    if isinstance(fn, StepTable):
        # inside (t_k, t_{k+1}) the right limit is v_k <= t_k < s; only thresholds can fail
        for t, v in zip(fn.thresholds, fn.values):
            if v >= t:
                return Certificate("refuted", witness=t, reason=f"right limit at {t!r} equals {v!r}")
        return Certificate("proven", reason="v_k < t_k at every threshold")
    return Certificate("unknown", reason="no analytic route for this family")


def classify_matkowski(phi, grid: Sequence[float] | None = None, iter_budget: int = 1000) -> Certificate:
    fn = _fn(phi)
    if isinstance(fn, Linear):
        return Certificate("proven", reason="c^n t -> 0")
    if isinstance(fn, Ratio):
        return Certificate("proven", reason="phi^n(t) = t/(1+nt) -> 0")
    if isinstance(fn, StepTable):
        # after one step every iterate lives in {0, v_1, ..., v_m}; follow each value down
        for v in fn.values:
            seen = 0
            while v > 0:
                nxt = fn(v)
                if nxt >= v or seen > len(fn.values):
                    return Certificate("refuted", witness=v, reason="iterates do not reach 0")
                v, seen = nxt, seen + 1
        return Certificate("proven", reason="iterates reach 0 after finitely many steps")
    return _sampled_matkowski(fn, default_grid() if grid is None else grid, iter_budget)


def _sampled_matkowski(fn: Callable, grid: Sequence[float], iter_budget: int) -> Certificate:
    grid = sorted(grid)
    vals = [fn(t) for t in grid]
    for (a, fa), (b, fb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if fb < fa:
            return Certificate("refuted", witness=(a, b), reason="not nondecreasing on grid")
    for t in grid:
        x = t
        for _ in range(iter_budget):
            x = fn(x)
            if x <= 1e-12 * t:
                break
        else:
            return Certificate("unknown", witness=t, reason=f"no decay within {iter_budget} iterates")
    return Certificate("unknown", reason="monotone with decaying iterates on grid (not a proof)")


def _meir_keeler_table(fn: StepTable) -> Certificate:
    # gamma below t_1: phi = 0 near gamma.  gamma = t_k or gamma in (t_k, t_{k+1}):
    # for small beta the sup of phi on [0, gamma+beta) is v_k, which must not exceed gamma.
    for t, v in zip(fn.thresholds, fn.values):
        if v > t:
            return Certificate("refuted", witness=(t, t + 0.5 * (v - t)), reason="no admissible beta")
    return Certificate("proven", reason="direct breakpoint analysis")


def classify_meir_keeler(phi) -> Certificate:
    fn = _fn(phi)
    if isinstance(fn, StepTable):
        return _meir_keeler_table(fn)
    bw = classify_boyd_wong(fn)
    if bw.proven:
        return Certificate("proven", reason="Boyd-Wong admissible")
    mat = classify_matkowski(fn)
    if mat.proven:
        return Certificate("proven", reason="Matkowski admissible")
    return Certificate("unknown", reason="no admissibility route")


def default_grid(extra: Iterable[float] = ()) -> np.ndarray:
    """1024 log-spaced points on [1e-6, 1e3], plus breakpoints and their midpoints."""
    pts = set(np.geomspace(1e-6, 1e3, 1024).tolist())
    extra = sorted(set(float(e) for e in extra if e > 0))
    pts.update(extra)
    pts.update(0.5 * (a + b) for a, b in zip(extra, extra[1:]))
    return np.array(sorted(pts))


@dataclass(frozen=True)
class AlteringPair:
    psi: Family
    phi: Family


class PairCertificate(NamedTuple):
    status: Status
    condition: str | None
    witness: float | None
    reason: str

    @property
    def proven(self) -> bool:
        return self.status == "proven"


def _positive_everywhere(fn) -> float | None:
    """A witness eps > 0 with fn(eps) <= 0, or None."""
    if isinstance(fn, Linear):
        return 1.0 if fn.c == 0 else None
    if isinstance(fn, Ratio):
        return None
    if fn(fn.thresholds[0]) <= 0:
        return fn.thresholds[0]
    return None


def _right_positive_everywhere(fn) -> float | None:
    """A witness eps > 0 with fn(eps+0) <= 0, or None."""
    if isinstance(fn, StepTable):
        return 0.5 * fn.thresholds[0] if fn.right_limit(0.5 * fn.thresholds[0]) <= 0 else None
    return _positive_everywhere(fn)


def check_altering_pair(p: AlteringPair, grid: Sequence[float] | None = None) -> PairCertificate:
    """Exact check of both altering-pair conditions, confirmed on a grid.

    Every family is left-continuous, so psi(e) - psi(e-0) = 0 and the first
    condition reduces to phi > 0 on (0, inf).  The second condition compares
    phi(e+0) with the jump psi(e+0) - psi(e), which is nonzero only at table
    thresholds of psi.
    """
    psi, phi = p.psi, p.phi
    w = _positive_everywhere(phi)
    if w is not None:
        return PairCertificate("refuted", "left-jump", w, f"phi({w!r}) = 0 is not above the left jump of psi")
    w = _right_positive_everywhere(phi)
    if w is not None:
        return PairCertificate("refuted", "right-jump", w, f"phi({w!r}+0) = 0 is not above the right jump of psi")
    for e in psi.breakpoints():
        jump = psi.right_limit(e) - psi(e)
        if phi.right_limit(e) <= jump:
            return PairCertificate(
                "refuted", "right-jump", e, f"phi({e!r}+0) = {phi.right_limit(e)!r} <= jump {jump!r}"
            )
    grid = default_grid(tuple(psi.breakpoints()) + tuple(phi.breakpoints())) if grid is None else grid
    for e in grid:
        if not phi(e) > psi(e) - psi.left_limit(e) or not phi.right_limit(e) > psi.right_limit(e) - psi(e):
            return PairCertificate("refuted", "grid", float(e), "grid sample violates the pair conditions")
    kind = "breakpoint-exact" if psi.breakpoints() or phi.breakpoints() else "analytic"
    return PairCertificate("proven", None, None, kind)

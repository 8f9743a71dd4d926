"""Picard iteration x_{n+1} = T x_n with convergence diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from ._format import fmt
from .certifier import CertificationReport, check_fix_asingleton, semi_progressive_set, sample_starts
from .metric import MetricInstance

OutcomeKind = Literal["fixed-point", "cycle", "budget-exhausted"]


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    point: object = None  # fixed point z
    steps: int | None = None
    period: int | None = None
    entry: int | None = None
    residual: float | None = None

    def render(self) -> str:
        if self.kind == "fixed-point":
            return f"fixed-point z={fmt(self.point)} steps={self.steps} residual={fmt(self.residual)}"
        if self.kind == "cycle":
            return f"cycle period={self.period} entry={self.entry}"
        return f"budget-exhausted residual={fmt(self.residual)}"


@dataclass(frozen=True)
class Diagnostics:
    strict_descent: bool
    injective_prefix: bool
    semi_cauchy: bool
    cauchy_estimate: bool | None = None


@dataclass(frozen=True)
class OrbitTrace:
    start: object
    points: tuple
    rho: tuple
    outcome: Outcome
    diagnostics: Diagnostics = field(compare=False, default=None)

    def render(self) -> str:
        lines = [f"{n} {fmt(x)} {fmt(r)}" for n, (x, r) in enumerate(zip(self.points, self.rho))]
        lines.append(f"outcome {self.outcome.render()}")
        dg = self.diagnostics
        if dg is not None:
            ce = "n/a" if dg.cauchy_estimate is None else fmt(dg.cauchy_estimate)
            lines.append(
                f"diagnostics strict-descent={fmt(dg.strict_descent)} "
                f"injective-prefix={fmt(dg.injective_prefix)} "
                f"semi-cauchy={fmt(dg.semi_cauchy)} cauchy-estimate={ce}"
            )
        return "\n".join(lines) + "\n"


def default_budget(m: MetricInstance) -> int:
    return m.n * m.n + 1 if m.is_finite else 10_000


def iterate(m: MetricInstance, x0, budget: int | None = None, stop_tol: float = 0.0) -> OrbitTrace:
    """Iterate from x0 until a fixed point, a revisit (finite) or the budget.

    On finite carriers the stop test is exact equality.  On intervals the
    point x_n is declared a numerical fixed point once d(x_n, x_{n+1}) <=
    stop_tol; the trace still carries x_{n+1}.
    """
    if m.is_finite:
        if not (isinstance(x0, int) and m.contains(x0)):
            raise ValueError(f"start point {x0!r} is not in the carrier")
        stop_tol = 0.0
    else:
        x0 = float(x0)
        if not m.contains(x0):
            raise ValueError(f"start point {x0!r} is not in the carrier")
    budget = default_budget(m) if budget is None else budget

    points, rho = [x0], []
    seen = {x0: 0}
    outcome = None
    x = x0
    for n in range(budget):
        y = m.T(x)
        r = m.d(x, y)
        points.append(y)
        rho.append(r)
        if y == x or r <= stop_tol:
            outcome = Outcome("fixed-point", point=x, steps=n, residual=r)
            break
        if m.is_finite and y in seen:
            outcome = Outcome("cycle", period=n + 1 - seen[y], entry=seen[y])
            break
        seen[y] = n + 1
        x = y
    if outcome is None:
        outcome = Outcome("budget-exhausted", residual=rho[-1] if rho else None)

    trace = OrbitTrace(x0, tuple(points), tuple(rho), outcome)
    return _with_diagnostics(trace, m, stop_tol)


def _with_diagnostics(trace: OrbitTrace, m: MetricInstance, stop_tol: float) -> OrbitTrace:
    rho = trace.rho
    descent = all(
        b < a or (a <= stop_tol and b <= stop_tol) for a, b in zip(rho, rho[1:]) if a > 0
    )
    out = trace.outcome
    if out.kind == "fixed-point":
        prefix = trace.points[: out.steps + 1]
        injective = len(set(prefix)) == len(prefix)
    elif out.kind == "cycle":
        injective = False
    else:
        injective = len(set(trace.points)) == len(trace.points)
    semi_cauchy = bool(rho) and rho[-1] <= stop_tol
    sweep = [cauchy_estimate_check(trace, m, eps, eps / 2, 1) for eps in sorted(set(rho)) if eps > 0]
    sweep = [s for s in sweep if s is not None]
    estimate = all(sweep) if sweep else None
    return OrbitTrace(
        trace.start, trace.points, trace.rho, trace.outcome,
        Diagnostics(descent, injective, semi_cauchy, estimate),
    )


def cauchy_estimate_check(trace: OrbitTrace, m: MetricInstance, eps: float, delta: float, k: int = 1) -> bool | None:
    """Tail estimate d(x_n, x_{n+s}) < eps + delta/2 past the rank n(delta).

    n(delta) is the first index from which every step length in the trace
    stays below delta/(4k).  Returns None when no such rank exists.
    """
    if eps <= 0 or delta <= 0 or k < 1:
        raise ValueError("eps, delta must be positive and k >= 1")
    rho, pts = trace.rho, trace.points
    bound = delta / (4 * k)
    start = len(rho)
    while start > 0 and rho[start - 1] < bound:
        start -= 1
    if start == len(rho):
        return None
    limit = eps + delta / 2
    for n in range(start, len(pts)):
        for s in range(1, len(pts) - n):
            if not m.d(pts[n], pts[n + s]) < limit:
                return False
    return True


@dataclass(frozen=True)
class GSPVerdict:
    passed: bool
    theorem_violation: bool
    traces: tuple
    fix_asingleton: object

    def render(self) -> str:
        flag = " THEOREM-VIOLATION" if self.theorem_violation else ""
        lines = [f"gsp {'pass' if self.passed else 'fail'}{flag}"]
        for t in self.traces:
            lines.append(f"start {fmt(t.start)} {t.outcome.render()}")
        lines.append(self.fix_asingleton.render())
        return "\n".join(lines) + "\n"


def gsp_starts(m: MetricInstance) -> list:
    if m.is_finite:
        return list(semi_progressive_set(m))
    return sample_starts(semi_progressive_set(m))


def verify_gsp(
    m: MetricInstance,
    report: CertificationReport,
    budget: int | None = None,
    stop_tol: float = 1e-9,
) -> GSPVerdict:
    """Run every start of X(T,R) and check the globally strong Picard conclusion.

    A certified report whose instance fails here signals a defect: the
    conclusion is a theorem, so either a check or the iteration is wrong.
    """
    if not report.certified:
        raise ValueError("refusing to verify an uncertified instance")
    traces = tuple(iterate(m, x, budget, stop_tol) for x in gsp_starts(m))
    fix = check_fix_asingleton(m)
    converged = all(t.outcome.kind == "fixed-point" for t in traces)
    if not m.is_finite:
        converged = converged and all(abs(t.outcome.point - m.T(t.outcome.point)) <= stop_tol for t in traces)
    passed = converged and fix.ok
    return GSPVerdict(passed, not passed, traces, fix)

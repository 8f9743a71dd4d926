"""Hypothesis-by-hypothesis certification for the relational Meir-Keeler theorem.

Every check returns a :class:`Verdict`.  A failing verdict carries a
concrete witness that can be re-evaluated with the formulas in
:mod:`relfix.metric`.  Finite carriers are checked exhaustively.  Interval
carriers are checked analytically for affine maps and the A1 functional;
anything outside that class is reported ``unknown`` rather than sampled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from . import comparison as cf
from ._format import fmt
from .metric import (
    G1,
    Functional,
    IntervalRelation,
    MetricInstance,
    eval_functional,
)
from .relations import is_k_semi_recurrent_at, spectrum

VerdictStatus = Literal["pass", "fail", "vacuous", "bounded", "unknown", "n/a"]

UNSUPPORTED = "unknown - unsupported analytic class"

HYPOTHESES = (
    "non-identical",
    "semi-progressive",
    "increasing",
    "strict-nonexpansive",
    "meir-keeler",
    "finitely-semi-recurrent",
    "complete",
)
ALTERNATIVES = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class Verdict:
    name: str
    status: VerdictStatus
    witness: object = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "vacuous", "bounded")

    def render(self) -> str:
        line = f"{self.name:<24}{self.status:<9}{fmt(self.witness)}"
        if self.detail:
            line += f"  {self.detail}"
        return line


@dataclass(frozen=True)
class ModulusTable:
    """Pairs (eps, delta); delta None means no pair ever violates at that eps."""

    entries: tuple = ()

    def delta(self, eps: float):
        return dict(self.entries)[eps]

    def render(self) -> str:
        if not self.entries:
            return "-"
        return "; ".join(
            f"{fmt(e)}:{'UNBOUNDED' if d is None else fmt(d)}" for e, d in self.entries
        )


@dataclass(frozen=True)
class CertificationReport:
    functional: Functional
    verdicts: tuple
    alternatives: tuple
    semi_progressive_set: tuple
    complement: tuple
    modulus: ModulusTable = field(default_factory=ModulusTable)
    instance_kind: str = ""
    certified: bool = False

    @property
    def hypotheses_ok(self) -> bool:
        return all(self.verdict(name).ok for name in HYPOTHESES)

    def verdict(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def failures(self) -> list[Verdict]:
        return [self.verdict(n) for n in HYPOTHESES if not self.verdict(n).ok]

    def render(self) -> str:
        lines = [
            f"instance      {self.instance_kind}",
            f"functional    {self.functional.value} {self.functional.klass}",
        ]
        lines += [v.render() for v in self.verdicts]
        lines.append(f"X(T,R)        {_render_set(self.semi_progressive_set)}")
        lines.append(f"X^c(T,R)      {_render_set(self.complement)}")
        lines.append(f"modulus       {self.modulus.render()}")
        alts = ",".join(f"({a})" for a in self.alternatives) or "-"
        lines.append(f"alternatives  {alts}")
        if self.certified:
            lines.append(f"overall       certified via {alts}")
        else:
            failed = [v.name for v in self.failures()] or ["no alternative holds"]
            lines.append(f"overall       not certified: {', '.join(failed)}")
        return "\n".join(lines) + "\n"


def _render_set(items: tuple) -> str:
    if not items:
        return "{}"
    return "{" + ", ".join(fmt(x) for x in items) + "}"


# ---------------------------------------------------------------- helpers


def _preimage(slope: float, offset: float, lo: float, hi: float, cmin: float, cmax: float):
    """Subinterval of [lo, hi] where cmin <= slope*x + offset <= cmax, or None."""
    if slope == 0:
        return (lo, hi) if cmin <= offset <= cmax else None
    a, b = (cmin - offset) / slope, (cmax - offset) / slope
    if slope < 0:
        a, b = b, a
    a, b = max(a, lo), min(b, hi)
    return (a, b) if a <= b else None


def _interval_difference_range(m: MetricInstance):
    """Attainable values of y - x over pairs of R (x != y not enforced), or None."""
    R, L = m.R, m.carrier.length
    if R.kind == "band":
        lo, hi = R.params
        a, b = max(lo, -L), min(hi, L)
        return (a, b) if a <= b else None
    return (-L, L)


def _interval_strict_witness(m: MetricInstance):
    c, R = m.carrier, m.R
    if R.kind in ("trivial", "order"):
        return (c.lo, c.hi)
    if R.kind == "band":
        lo, hi = R.params
        L = c.length
        if hi > 0 and lo <= L:
            return (c.lo, c.lo + min(hi, L))
        if lo < 0 and hi >= -L:
            return (c.hi, c.hi + max(lo, -L))
        return None
    blocks = R.params
    for i, (a0, a1) in enumerate(blocks):
        b0, b1 = blocks[(i + 1) % len(blocks)]
        for x in (a0, a1):
            for y in (b0, b1):
                if x != y:
                    return (x, y)
    return None


def _strict_pairs(m: MetricInstance, g: Functional):
    """(x, y, G(x,y), d(Tx,Ty)) over the strict part of R."""
    T = m.T
    return [(x, y, eval_functional(m, g, x, y), m.d(T(x), T(y))) for x, y in m.strict_pairs()]


# ------------------------------------------------------------------ checks


def check_nonidentical(R, carrier=None) -> Verdict:
    name = "non-identical"
    if isinstance(R, IntervalRelation):
        if carrier is None:
            raise ValueError("interval relations need their carrier")
        m = _IntervalProbe(carrier, R)
        w = _interval_strict_witness(m)
        return Verdict(name, "pass", w) if w else Verdict(name, "fail", detail="no pair with x != y")
    for pair in sorted(R.pairs):
        if pair[0] != pair[1]:
            return Verdict(name, "pass", pair)
    return Verdict(name, "fail", detail="R is contained in the identity")


@dataclass(frozen=True)
class _IntervalProbe:
    carrier: object
    R: IntervalRelation


def semi_progressive_set(m: MetricInstance) -> tuple:
    """X(T,R) as sorted points (finite) or as a tuple of closed intervals."""
    if m.is_finite:
        return tuple(x for x in m.points() if m.R.related(x, m.T(x)))
    c, R, a, b = m.carrier, m.R, m.T.a, m.T.b
    if R.kind in ("trivial", "cyclic"):
        return ((c.lo, c.hi),)
    if R.kind == "order":
        piece = _preimage(a - 1.0, b, c.lo, c.hi, 0.0, float("inf"))
    else:
        piece = _preimage(a - 1.0, b, c.lo, c.hi, *R.params)
    return (piece,) if piece else ()


def complement_set(m: MetricInstance) -> tuple:
    if m.is_finite:
        inside = set(semi_progressive_set(m))
        return tuple(x for x in m.points() if x not in inside)
    c = m.carrier
    pieces = semi_progressive_set(m)
    if not pieces:
        return ((c.lo, c.hi),)
    (a, b), out = pieces[0], []
    if a > c.lo:
        out.append((c.lo, a))
    if b < c.hi:
        out.append((b, c.hi))
    return tuple(out)


def check_semi_progressive(m: MetricInstance) -> Verdict:
    xs = semi_progressive_set(m)
    if xs:
        return Verdict("semi-progressive", "pass", xs[0])
    return Verdict("semi-progressive", "fail", detail="no x with x R Tx")


def check_increasing(m: MetricInstance) -> Verdict:
    name = "increasing"
    T, R = m.T, m.R
    if m.is_finite:
        for x, y in sorted(R.pairs):
            if not R.related(T(x), T(y)):
                return Verdict(name, "fail", (x, y), f"images ({T(x)}, {T(y)}) not related")
        return Verdict(name, "pass")
    c, a = m.carrier, T.a
    if R.kind == "trivial":
        return Verdict(name, "pass")
    if R.kind == "cyclic":
        return Verdict(name, "pass", detail="T(A_i) in A_(i+1) checked at build")
    if R.kind == "order":
        if a >= 0:
            return Verdict(name, "pass")
        return Verdict(name, "fail", (c.lo, c.hi), "affine map with negative slope")
    span = _interval_difference_range(m)
    if span is None:
        return Verdict(name, "vacuous")
    lo, hi = R.params
    for delta in span:
        if not lo <= a * delta <= hi:
            x = c.lo if delta >= 0 else c.hi
            return Verdict(name, "fail", (x, x + delta))
    return Verdict(name, "pass")


def check_strict_nonexpansive(m: MetricInstance, g: Functional | str) -> Verdict:
    name = "strict-nonexpansive"
    g = Functional(g)
    if m.is_finite:
        tol = m.tol
        for x, y, gv, dt in _strict_pairs(m, g):
            if not gv - dt > tol:
                return Verdict(name, "fail", (x, y), f"d(Tx,Ty)={fmt(dt)} G={fmt(gv)}")
        return Verdict(name, "pass")
    if g is not Functional.A1:
        return Verdict(name, "unknown", detail=UNSUPPORTED)
    if abs(m.T.a) < 1:
        return Verdict(name, "pass", detail=f"|a|={fmt(abs(m.T.a))} < 1")
    w = _interval_strict_witness(m)
    if w is None:
        return Verdict(name, "vacuous")
    return Verdict(name, "fail", w, f"|a|={fmt(abs(m.T.a))} >= 1")


def mk_modulus_table(m: MetricInstance, g: Functional | str) -> tuple[ModulusTable, Verdict]:
    """Exact Meir-Keeler verification on a finite instance.

    The delta reported at eps is the largest one for which every strict pair
    with G < eps + delta has d(Tx,Ty) <= eps.  That map only changes at
    attained G values, so attained values, their midpoints and half the
    smallest value form a sufficient set of eps candidates.
    """
    name = "meir-keeler"
    g = Functional(g)
    strict = check_strict_nonexpansive(m, g)
    if not m.is_finite:
        if strict.status == "unknown":
            return ModulusTable(), Verdict(name, "unknown", detail=UNSUPPORTED)
        if not strict.ok:
            return ModulusTable(), Verdict(name, "fail", strict.witness, "needs strict nonexpansiveness")
        a, L = abs(m.T.a), m.carrier.length
        entries = tuple((e, None if a == 0 else e * (1 - a) / a) for e in (0.25 * L, 0.5 * L, L))
        return ModulusTable(entries), Verdict(name, "pass")

    tol = m.tol
    rows = _strict_pairs(m, g)
    values = sorted({gv for _, _, gv, _ in rows})
    cands = set(values)
    cands.update(0.5 * (a + b) for a, b in zip(values, values[1:]))
    if values:
        cands.add(0.5 * values[0])
    entries, bad_eps = [], None
    for eps in sorted(cands):
        violators = [(gv, x, y) for x, y, gv, dt in rows if dt > eps + tol]
        if any(gv <= eps for gv, _, _ in violators):
            entries.append((eps, 0.0))
            bad_eps = eps if bad_eps is None else bad_eps
        elif violators:
            entries.append((eps, min(gv for gv, _, _ in violators) - eps))
        else:
            entries.append((eps, None))
    table = ModulusTable(tuple(entries))
    if not strict.ok:
        return table, Verdict(name, "fail", strict.witness, "needs strict nonexpansiveness")
    if bad_eps is not None:
        return table, Verdict(name, "fail", bad_eps, "no admissible delta")
    if not rows:
        return table, Verdict(name, "vacuous")
    return table, Verdict(name, "pass")


def _dominated_on(fn, slope: float, length: float) -> float | None:
    """A t in (0, length] with slope*t > fn(t), or None if none exists."""
    if slope == 0:
        return None
    if isinstance(fn, cf.Linear):
        return length if slope > fn.c else None
    if isinstance(fn, cf.Ratio):
        return length if slope > 1.0 / (1.0 + length) else None
    if isinstance(fn, cf.StepTable):
        return min(fn.thresholds[0], length)
    return length


def check_g_phi_contractive(m: MetricInstance, g: Functional | str, phi) -> Verdict:
    name = "g-phi-contractive"
    g = Functional(g)
    if phi is None:
        return Verdict(name, "n/a")
    if m.is_finite:
        for x, y, gv, dt in _strict_pairs(m, g):
            if dt > phi(gv) + m.tol:
                return Verdict(name, "fail", (x, y), f"d(Tx,Ty)={fmt(dt)} phi(G)={fmt(phi(gv))}")
        return Verdict(name, "pass")
    if g is not Functional.A1:
        return Verdict(name, "unknown", detail=UNSUPPORTED)
    fn = phi.fn if isinstance(phi, cf.ComparisonFunction) else phi
    t = _dominated_on(fn, abs(m.T.a), m.carrier.length)
    if t is None:
        return Verdict(name, "pass", detail="|a| t <= phi(t) on (0, diam X]")
    if m.R.kind in ("trivial", "order"):
        lo = m.carrier.lo
        return Verdict(name, "fail", (lo, lo + t))
    return Verdict(name, "unknown", detail=UNSUPPORTED)


def check_psi_phi_contractive(m: MetricInstance, g: Functional | str, pair) -> Verdict:
    name = "psi-phi-contractive"
    g = Functional(g)
    if pair is None:
        return Verdict(name, "n/a")
    psi, phi = pair.psi, pair.phi
    if m.is_finite:
        for x, y, gv, dt in _strict_pairs(m, g):
            if psi(dt) > psi(gv) - phi(gv) + m.tol:
                return Verdict(name, "fail", (x, y), f"psi(d(Tx,Ty))={fmt(psi(dt))} bound={fmt(psi(gv) - phi(gv))}")
        return Verdict(name, "pass")
    if g is not Functional.A1 or not (isinstance(psi, cf.Linear) and isinstance(phi, cf.Linear)):
        return Verdict(name, "unknown", detail=UNSUPPORTED)
    a = abs(m.T.a)
    if psi.c * a <= psi.c - phi.c + m.tol:
        return Verdict(name, "pass")
    if m.R.kind in ("trivial", "order"):
        return Verdict(name, "fail", (m.carrier.lo, m.carrier.hi))
    return Verdict(name, "unknown", detail=UNSUPPORTED)


def sample_starts(pieces: tuple, count: int = 17) -> list[float]:
    out = []
    for a, b in pieces:
        if a == b:
            out.append(a)
        else:
            out.extend(a + (b - a) * i / (count - 1) for i in range(count))
    return out


def check_finitely_semi_recurrent(m: MetricInstance, horizon: int = 32) -> Verdict:
    """Finite carriers: vacuous.  Intervals: bounded search on sampled starts.

    The semi-recurrence constant is searched in 1..horizon//2 so that a pass
    says something beyond the trivial bound k = horizon.
    """
    name = "finitely-semi-recurrent"
    if m.is_finite:
        return Verdict(name, "vacuous", detail="finite orbits are never injective")
    k_max = max(1, horizon // 2)
    worst, checked = 0, 0
    for x in sample_starts(semi_progressive_set(m)):
        orbit = [x]
        for _ in range(horizon):
            orbit.append(m.T(orbit[-1]))
        if len(set(orbit)) != len(orbit):
            continue
        checked += 1
        k = next((k for k in range(1, k_max + 1) if is_k_semi_recurrent_at(x, m.T, m.R, k, horizon)), None)
        if k is None:
            spec_ = sorted(spectrum(x, m.T, m.R, horizon))
            return Verdict(name, "fail", x, f"spectrum up to {horizon}: {fmt(tuple(spec_[:8]))}")
        worst = max(worst, k)
    if not checked:
        return Verdict(name, "vacuous", detail=f"no injective orbit prefix up to {horizon}")
    return Verdict(name, "bounded", worst, f"k={worst} on {checked} starts up to horizon {horizon}")


def check_regularity(m: MetricInstance) -> tuple[Verdict, Verdict, Verdict]:
    """Completeness, continuity and almost-selfclosedness, in that order."""
    if m.is_finite:
        reached = sorted({_stabilize(m, x) for x in semi_progressive_set(m)} - {None})
        return (
            Verdict("complete", "pass", detail="Cauchy sequences are eventually constant"),
            Verdict("continuous", "pass", detail="eventually constant sequences"),
            Verdict(
                "almost-selfclosed",
                "pass",
                detail=f"finite-carrier reduction; stabilization points {fmt(tuple(reached))}",
            ),
        )
    kind = m.R.kind
    reasons = {
        "trivial": "every pair is related",
        "order": "ascending limits dominate their terms",
        "cyclic": "limits lie in every closed block",
        "band": "convergent ascending sequences end inside the band",
    }
    return (
        Verdict("complete", "pass", detail="closed interval"),
        Verdict("continuous", "pass", detail="affine map"),
        Verdict("almost-selfclosed", "pass", detail=reasons[kind]),
    )


def _stabilize(m: MetricInstance, x: int):
    seen = set()
    while x not in seen:
        seen.add(x)
        nxt = m.T(x)
        if nxt == x:
            return x if m.R.related(x, x) else None
        x = nxt
    return None


def check_fix_asingleton(m: MetricInstance) -> Verdict:
    name = "fix-asingleton"
    if m.is_finite:
        fix = [x for x in m.points() if m.T(x) == x]
        for z1 in fix:
            for z2 in fix:
                if z1 != z2 and m.R.related(z1, z2):
                    return Verdict(name, "fail", (z1, z2))
        return Verdict(name, "pass", tuple(fix))
    a, b = m.T.a, m.T.b
    if a != 1:
        return Verdict(name, "pass", (b / (1 - a),))
    if b != 0:
        return Verdict(name, "vacuous", detail="no fixed points")
    w = _interval_strict_witness(m)
    return Verdict(name, "fail", w) if w else Verdict(name, "pass")


def _phi_admissibility(phi) -> tuple[Verdict, cf.ComparisonFunction | None]:
    name = "phi-admissible"
    if phi is None:
        return Verdict(name, "n/a"), None
    try:
        fn = phi if isinstance(phi, cf.ComparisonFunction) else cf.ComparisonFunction(phi)
    except cf.RegressivityError as err:
        return Verdict(name, "fail", err.witness, "not regressive"), None
    cert = cf.classify_meir_keeler(fn)
    status = {"proven": "pass", "refuted": "fail", "unknown": "unknown"}[cert.status]
    return Verdict(name, status, cert.witness, cert.reason), fn


def _pair_admissibility(pair) -> Verdict:
    name = "altering-pair"
    if pair is None:
        return Verdict(name, "n/a")
    cert = cf.check_altering_pair(pair)
    status = {"proven": "pass", "refuted": "fail", "unknown": "unknown"}[cert.status]
    detail = cert.reason if cert.condition is None else f"{cert.condition}: {cert.reason}"
    return Verdict(name, status, cert.witness, detail)


def certify_theorem2(
    m: MetricInstance,
    g: Functional | str = Functional.A1,
    phi=None,
    pair: cf.AlteringPair | None = None,
    horizon: int = 32,
    disable: Sequence[str] = (),
) -> CertificationReport:
    """Run every hypothesis check and decide which alternatives hold.

    `disable` switches off named alternatives, which is how the branch
    structure is exercised on instances where (i) would always fire.
    """
    g = Functional(g)
    if not g.is_contractive:
        raise ValueError(f"{g.value} is not one of the contraction functionals")
    if m.is_finite:
        nonident = check_nonidentical(m.R)
    else:
        nonident = check_nonidentical(m.R, m.carrier)
    modulus, mk = mk_modulus_table(m, g)
    phi_ok, phi_fn = _phi_admissibility(phi)
    g_phi = check_g_phi_contractive(m, g, phi_fn) if phi_fn is not None else Verdict("g-phi-contractive", "n/a")
    pair_ok = _pair_admissibility(pair)
    psi_phi = check_psi_phi_contractive(m, g, pair)
    complete, continuous, selfclosed = check_regularity(m)
    verdicts = (
        nonident,
        check_semi_progressive(m),
        check_increasing(m),
        check_strict_nonexpansive(m, g),
        mk,
        phi_ok,
        g_phi,
        pair_ok,
        psi_phi,
        check_finitely_semi_recurrent(m, horizon),
        complete,
        continuous,
        selfclosed,
        check_fix_asingleton(m),
    )
    alts = []
    if continuous.ok:
        alts.append("i")
    if selfclosed.ok and g in G1:
        alts.append("ii")
    if selfclosed.ok and phi_ok.ok and g_phi.ok:
        alts.append("iii")
    if selfclosed.ok and pair_ok.ok and psi_phi.ok:
        alts.append("iv")
    alts = tuple(a for a in alts if a not in disable)
    kind = f"finite n={m.n}" if m.is_finite else f"interval [{fmt(m.carrier.lo)}, {fmt(m.carrier.hi)}]"
    hypotheses_ok = all(v.ok for v in verdicts if v.name in HYPOTHESES)
    return CertificationReport(
        functional=g,
        verdicts=verdicts,
        alternatives=alts,
        semi_progressive_set=semi_progressive_set(m),
        complement=complement_set(m),
        modulus=modulus,
        instance_kind=kind,
        certified=hypotheses_ok and bool(alts),
    )

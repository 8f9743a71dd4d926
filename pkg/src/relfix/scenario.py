"""Line-oriented scenario files.

::

    points 3                    | interval <lo> <hi>     (must come first)
    dist <i> <j> <value>        # finite only; symmetric closure applied
    map <i> <j>                 | map affine <a> <b>
    rel pair <i> <j>            # repeatable
    rel order | rel trivial
    rel cyclic <p> : <block>; <block>; ...
    rel sigma <n*n values, row-major>
    rel alphabeta <n*n alpha values> : <n*n beta values>
    rel alphabeta <lo> <hi>     # interval: lo <= y - x <= hi
    functional A1|B2|B3|B4|C1|C2
    phi linear <c> | phi ratio | phi table <t1> <v1> <t2> <v2> ...
    psi <same families>

Finite blocks list point indices; interval blocks are ``<lo> <hi>``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import builders
from .comparison import AlteringPair, Linear, Ratio, StepTable
from .metric import (
    CONTRACTIVE,
    AffineMap,
    FiniteCarrier,
    FiniteMap,
    Functional,
    IntervalCarrier,
    IntervalRelation,
    MetricInstance,
    verify_metric_axioms,
)
from .relations import FiniteRelation


class ScenarioError(ValueError):
    def __init__(self, line: int | None, reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + reason)


@dataclass(frozen=True)
class Scenario:
    instance: MetricInstance
    functional: Functional = Functional.A1
    phi: object = None
    psi: object = None

    @property
    def pair(self) -> AlteringPair | None:
        if self.psi is None:
            return None
        return AlteringPair(self.psi, self.phi)


def _num(tok: str, lineno: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ScenarioError(lineno, f"not a number: {tok!r}") from None


def _idx(tok: str, lineno: int, n: int) -> int:
    try:
        i = int(tok)
    except ValueError:
        raise ScenarioError(lineno, f"not an index: {tok!r}") from None
    if not 0 <= i < n:
        raise ScenarioError(lineno, f"index {i} out of range 0..{n - 1}")
    return i


def _family(args: list[str], lineno: int):
    if not args:
        raise ScenarioError(lineno, "missing function family")
    kind, rest = args[0], args[1:]
    try:
        if kind == "linear" and len(rest) == 1:
            return Linear(_num(rest[0], lineno))
        if kind == "ratio" and not rest:
            return Ratio()
        if kind == "table" and rest:
            return StepTable.from_pairs([_num(t, lineno) for t in rest])
    except ScenarioError:
        raise
    except ValueError as err:
        raise ScenarioError(lineno, str(err)) from None
    raise ScenarioError(lineno, f"unknown function family: {' '.join(args)}")


def parse_scenario(text: str) -> Scenario:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body.split()))
    if not lines:
        raise ScenarioError(None, "empty scenario")

    lineno, head = lines[0]
    if head[0] == "points" and len(head) == 2:
        n = int(_num(head[1], lineno))
        if n < 1 or str(n) != head[1]:
            raise ScenarioError(lineno, f"bad point count {head[1]!r}")
        finite = True
    elif head[0] == "interval" and len(head) == 3:
        lo, hi = _num(head[1], lineno), _num(head[2], lineno)
        if not lo < hi:
            raise ScenarioError(lineno, "interval needs lo < hi")
        finite = False
    else:
        raise ScenarioError(lineno, "first line must be 'points <n>' or 'interval <lo> <hi>'")

    dist: dict[tuple[int, int], tuple[float, int]] = {}
    maps: dict[int, int] = {}
    affine = None
    rel_lines: list[tuple[int, list[str]]] = []
    functional = None
    phi = psi = None

    for lineno, toks in lines[1:]:
        key, args = toks[0], toks[1:]
        if key in ("points", "interval"):
            raise ScenarioError(lineno, f"duplicate carrier line {key!r}")
        elif key == "dist":
            if not finite:
                raise ScenarioError(lineno, "dist lines need a finite carrier")
            if len(args) != 3:
                raise ScenarioError(lineno, "usage: dist <i> <j> <value>")
            i, j = _idx(args[0], lineno, n), _idx(args[1], lineno, n)
            v = _num(args[2], lineno)
            if v < 0:
                raise ScenarioError(lineno, "distances must be nonnegative")
            if i == j:
                if v != 0:
                    raise ScenarioError(lineno, f"d({i},{i}) must be 0")
                continue
            k = (min(i, j), max(i, j))
            if k in dist and dist[k][0] != v:
                raise ScenarioError(lineno, f"conflicting distance for pair {k} (line {dist[k][1]})")
            dist[k] = (v, lineno)
        elif key == "map":
            if args and args[0] == "affine":
                if finite:
                    raise ScenarioError(lineno, "affine maps need an interval carrier")
                if len(args) != 3 or affine is not None:
                    raise ScenarioError(lineno, "usage: map affine <a> <b> (once)")
                affine = AffineMap(_num(args[1], lineno), _num(args[2], lineno))
            else:
                if not finite:
                    raise ScenarioError(lineno, "interval carriers need 'map affine <a> <b>'")
                if len(args) != 2:
                    raise ScenarioError(lineno, "usage: map <i> <j>")
                i, j = _idx(args[0], lineno, n), _idx(args[1], lineno, n)
                if i in maps and maps[i] != j:
                    raise ScenarioError(lineno, f"conflicting image for point {i}")
                maps[i] = j
        elif key == "rel":
            if not args:
                raise ScenarioError(lineno, "missing relation kind")
            rel_lines.append((lineno, args))
        elif key == "functional":
            if len(args) != 1:
                raise ScenarioError(lineno, "usage: functional <name>")
            try:
                functional = Functional(args[0])
            except ValueError:
                functional = None
            if functional not in CONTRACTIVE:
                raise ScenarioError(lineno, f"unknown functional {args[0]!r}")
        elif key == "phi":
            phi = _family(args, lineno)
        elif key == "psi":
            psi = _family(args, lineno)
        else:
            raise ScenarioError(lineno, f"unknown directive {key!r}")

    if psi is not None and phi is None:
        raise ScenarioError(None, "a psi line needs a phi line for the altering pair")

    if finite:
        missing = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in dist]
        if missing:
            raise ScenarioError(None, "missing distances for pairs " + ", ".join(f"({i},{j})" for i, j in missing))
        table = [[0.0] * n for _ in range(n)]
        for (i, j), (v, _) in dist.items():
            table[i][j] = table[j][i] = v
        unmapped = [i for i in range(n) if i not in maps]
        if unmapped:
            raise ScenarioError(None, "missing map lines for points " + ", ".join(map(str, unmapped)))
        T = FiniteMap(maps[i] for i in range(n))
        R = _finite_relation(rel_lines, n, T)
        try:
            inst = MetricInstance(FiniteCarrier(table), T, R)
        except ValueError as err:
            raise ScenarioError(None, str(err)) from None
        bad = verify_metric_axioms(inst)
        if bad:
            v = bad[0]
            raise ScenarioError(dist[tuple(sorted(v.points[:2]))][1] if len(v.points) == 2 else None,
                                f"metric {v.axiom} violated at {v.points}")
    else:
        if affine is None:
            raise ScenarioError(None, "missing 'map affine <a> <b>'")
        R = _interval_relation(rel_lines, lo, hi, affine)
        try:
            inst = MetricInstance(IntervalCarrier(lo, hi), affine, R)
        except ValueError as err:
            raise ScenarioError(None, str(err)) from None
    return Scenario(inst, functional or Functional.A1, phi, psi)


def _finite_relation(rel_lines, n: int, T: FiniteMap) -> FiniteRelation:
    if not rel_lines:
        raise ScenarioError(None, "missing relation line")
    kinds = {args[0] for _, args in rel_lines}
    if len(kinds) > 1 or (kinds != {"pair"} and len(rel_lines) > 1):
        raise ScenarioError(rel_lines[1][0], "relation lines must be one kind (only 'rel pair' repeats)")
    lineno, args = rel_lines[0]
    kind, rest = args[0], args[1:]
    try:
        if kind == "pair":
            pairs = []
            for ln, a in rel_lines:
                if len(a) != 3:
                    raise ScenarioError(ln, "usage: rel pair <i> <j>")
                pairs.append((_idx(a[1], ln, n), _idx(a[2], ln, n)))
            return FiniteRelation(n, pairs)
        if kind == "order" and not rest:
            return FiniteRelation.order(n)
        if kind == "trivial" and not rest:
            return FiniteRelation.full(n)
        if kind == "cyclic":
            blocks = _cyclic_blocks(rest, lineno)
            cover = builders.CyclicCover([[_idx(t, lineno, n) for t in b] for b in blocks])
            if {x for b in cover.blocks for x in b} != set(range(n)):
                raise ScenarioError(lineno, "cyclic blocks must cover every point")
            return builders.cyclic_relation(cover, T.table)
        if kind == "sigma":
            vals = [_num(t, lineno) for t in rest]
            if len(vals) != n * n:
                raise ScenarioError(lineno, f"rel sigma needs {n * n} values")
            return builders.sigma_relation([vals[i * n:(i + 1) * n] for i in range(n)])
        if kind == "alphabeta":
            if rest.count(":") != 1:
                raise ScenarioError(lineno, "usage: rel alphabeta <alpha...> : <beta...>")
            cut = rest.index(":")
            al = [_num(t, lineno) for t in rest[:cut]]
            be = [_num(t, lineno) for t in rest[cut + 1:]]
            if len(al) != n * n or len(be) != n * n:
                raise ScenarioError(lineno, f"rel alphabeta needs {n * n} alpha and {n * n} beta values")
            return builders.alpha_beta_relation(
                [al[i * n:(i + 1) * n] for i in range(n)], [be[i * n:(i + 1) * n] for i in range(n)]
            )
    except ScenarioError:
        raise
    except ValueError as err:
        raise ScenarioError(lineno, str(err)) from None
    raise ScenarioError(lineno, f"unknown relation: rel {' '.join(args)}")


def _cyclic_blocks(rest: list[str], lineno: int) -> list[list[str]]:
    if len(rest) < 3 or rest[1] != ":":
        raise ScenarioError(lineno, "usage: rel cyclic <p> : <block>; <block>; ...")
    p = int(_num(rest[0], lineno))
    blocks = [b.split() for b in " ".join(rest[2:]).split(";")]
    blocks = [b for b in blocks if b]
    if len(blocks) != p or p < 2:
        raise ScenarioError(lineno, f"rel cyclic declares p={rest[0]} but lists {len(blocks)} blocks")
    return blocks


def _interval_relation(rel_lines, lo: float, hi: float, T: AffineMap) -> IntervalRelation:
    if len(rel_lines) != 1:
        ln = rel_lines[1][0] if rel_lines else None
        raise ScenarioError(ln, "interval scenarios take exactly one relation line")
    lineno, args = rel_lines[0]
    kind, rest = args[0], args[1:]
    try:
        if kind in ("order", "trivial") and not rest:
            return IntervalRelation(kind)
        if kind == "alphabeta" and len(rest) == 2:
            return IntervalRelation("band", (_num(rest[0], lineno), _num(rest[1], lineno)))
        if kind == "cyclic":
            blocks = _cyclic_blocks(rest, lineno)
            if any(len(b) != 2 for b in blocks):
                raise ScenarioError(lineno, "interval blocks are '<lo> <hi>'")
            cover = builders.CyclicCover([[_num(t, lineno) for t in b] for b in blocks])
            return builders.cyclic_interval_relation(cover, T, lo, hi)
    except ScenarioError:
        raise
    except ValueError as err:
        raise ScenarioError(lineno, str(err)) from None
    raise ScenarioError(lineno, f"unsupported interval relation: rel {' '.join(args)}")


def render_scenario(s: Scenario) -> str:
    """Canonical text form; parsing it back gives an equal scenario."""
    m = s.instance
    out = []
    if m.is_finite:
        n = m.n
        out.append(f"points {n}")
        for i in range(n):
            for j in range(i + 1, n):
                out.append(f"dist {i} {j} {m.d(i, j)!r}")
        out.extend(f"map {i} {m.T(i)}" for i in range(n))
        out.extend(f"rel pair {i} {j}" for i, j in sorted(m.R.pairs))
    else:
        c, R = m.carrier, m.R
        out.append(f"interval {c.lo!r} {c.hi!r}")
        out.append(f"map affine {m.T.a!r} {m.T.b!r}")
        if R.kind in ("trivial", "order"):
            out.append(f"rel {R.kind}")
        elif R.kind == "band":
            out.append(f"rel alphabeta {R.params[0]!r} {R.params[1]!r}")
        else:
            blocks = "; ".join(f"{a!r} {b!r}" for a, b in R.params)
            out.append(f"rel cyclic {len(R.params)} : {blocks}")
    out.append(f"functional {s.functional.value}")
    if s.phi is not None:
        out.append(f"phi {s.phi.describe()}")
    if s.psi is not None:
        out.append(f"psi {s.psi.describe()}")
    return "\n".join(out) + "\n"

"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""

import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from relfix.builders import interval_instance, random_instance
from relfix.certifier import certify_theorem2, check_strict_nonexpansive, mk_modulus_table
from relfix.comparison import (
    Linear,
    Ratio,
    StepTable,
    classify_boyd_wong,
    classify_matkowski,
    classify_meir_keeler,
    default_grid,
    lambda_plus,
)
from relfix.metric import CONTRACTIVE
from relfix.oracle import brute_mk_verdict, brute_theorem2_conclusion
from relfix.picard import iterate, verify_gsp
from relfix.relations import (
    FiniteRelation,
    ascending_chain_property,
    compose,
    power,
    is_k_transitive,
    restrict,
)
from relfix.search import seed_case

ROOT = Path(__file__).parents[1]
SEEDS = range(1000)
FUNCTIONALS = sorted(CONTRACTIVE, key=lambda g: g.value)


def report_line(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {detail}")


@pytest.fixture(scope="module")
def sweep():
    """Certify, iterate and oracle-check 1000 seeded instances with n <= 8."""
    t0 = time.perf_counter()
    rows = []
    for seed in SEEDS:
        case = seed_case(seed, 8)
        m = random_instance(seed, case.n, 0.5, case.map_kind, case.metric_kind, case.closed)
        report = certify_theorem2(m, case.functional, case.phi, case.pair)
        row = {"case": case, "m": m, "report": report}
        if report.certified:
            row["gsp"] = verify_gsp(m, report)
            row["brute"] = brute_theorem2_conclusion(m)
        rows.append(row)
    return rows, time.perf_counter() - t0


def test_criterion_1_theorem_sweep(sweep, capsys):
    rows, elapsed = sweep
    certified = [r for r in rows if r["report"].certified]
    gsp_pass = sum(r["gsp"].passed for r in certified)
    agree = sum(r["gsp"].passed == r["brute"].ok for r in certified)
    flags = sum(r["gsp"].theorem_violation for r in certified)
    ok = bool(certified) and gsp_pass == agree == len(certified) and flags == 0 and elapsed < 30
    report_line(capsys, 1, ok, f"generated={len(rows)} certified={len(certified)} gsp-pass={gsp_pass} "
                f"oracle-agree={agree} violations={flags} time={elapsed:.2f}s")
    assert ok


def test_criterion_2_meir_keeler_equivalence(sweep, capsys):
    rows, _ = sweep
    checked = mismatches = 0
    for r in rows:
        m = r["m"]
        for g in FUNCTIONALS:
            mk = mk_modulus_table(m, g)[1].ok
            strict = check_strict_nonexpansive(m, g).ok
            brute = brute_mk_verdict(m, g).ok
            checked += 1
            mismatches += not (mk == strict == brute)
    ok = mismatches == 0
    report_line(capsys, 2, ok, f"instance-functional pairs={checked} mismatches={mismatches}")
    assert ok


def _pairset_power(pairs, n, k):
    acc = {(i, i) for i in range(n)}
    for _ in range(k):
        acc = {(x, z) for (x, y) in acc for (y2, z) in pairs if y == y2}
    return acc


def _chain_triples(rng, count):
    """Valid (sequence, R, k) triples by rejection over two relation shapes."""
    out = []
    while len(out) < count:
        n = int(rng.integers(2, 7))
        if rng.random() < 0.5:
            k = int(rng.integers(2, 6))
            base = FiniteRelation.from_matrix(rng.random((n, n)) < 0.35)
            r = base
            for _ in range(n):
                r = FiniteRelation(n, r.pairs | compose(r, base).pairs)
        else:
            p = int(rng.integers(2, min(n, 4) + 1))
            k = 1 + p * int(rng.integers(1, 3))
            label = rng.integers(0, p, size=n)
            label[:p] = np.arange(p)
            r = FiniteRelation(n, {(x, y) for x in range(n) for y in range(n) if label[y] == (label[x] + 1) % p})
        starts = [x for x in range(n) if any(a == x for a, _ in r.pairs)]
        if not starts:
            continue
        seq = [int(rng.choice(starts))]
        for _ in range(int(rng.integers(1, 10))):
            nxt = [b for a, b in r.pairs if a == seq[-1]]
            if not nxt:
                break
            seq.append(int(rng.choice(sorted(nxt))))
        if len(seq) < 2 or not is_k_transitive(restrict(r, seq), k):
            continue
        out.append((seq, r, k))
    return out


def test_criterion_3_relation_laws(capsys):
    rng = np.random.default_rng(201)
    law_fail = 0
    for _ in range(500):
        n = int(rng.integers(1, 6))
        r = FiniteRelation.from_matrix(rng.random((n, n)) < rng.random())
        for a in range(4):
            for b in range(4):
                sum_side = power(r, a + b).pairs
                comp_side = compose(power(r, a), power(r, b)).pairs
                prod_side = power(power(r, a), b).pairs
                brute_sum = _pairset_power(r.pairs, n, a + b)
                brute_prod = _pairset_power(r.pairs, n, a * b)
                if not (set(sum_side) == set(comp_side) == brute_sum and set(prod_side) == brute_prod):
                    law_fail += 1
    triples = _chain_triples(np.random.default_rng(202), 500)
    chain_fail = sum(not ascending_chain_property(s, r, k, 4) for s, r, k in triples)
    ok = law_fail == 0 and chain_fail == 0 and len(triples) == 500
    report_line(capsys, 3, ok, f"power-law relations=500 failures={law_fail} "
                f"chain triples={len(triples)} failures={chain_fail}")
    assert ok


def test_criterion_4_banach(capsys):
    m = interval_instance(0.0, 2.0, 0.5, 1.0)
    report = certify_theorem2(m, "A1", phi=Linear(0.5))
    trace = iterate(m, 0.0, stop_tol=1e-9)
    worst = max(abs(x - 2) - 2.0 ** (1 - n) for n, x in enumerate(trace.points))
    steps = trace.outcome.steps
    ok = (report.certified and "iii" in report.alternatives and worst <= 1e-12
          and trace.outcome.kind == "fixed-point" and steps <= 31)
    report_line(capsys, 4, ok, f"alternatives={','.join(report.alternatives)} steps={steps} "
                f"max(|x_n-2|-2^(1-n))={worst:.3e}")
    assert ok


def test_criterion_5_limit_machinery(capsys):
    table = StepTable([1.0], [1.0])
    bad = 0
    for phi in (Linear(0.5), Ratio(), table):
        for s in default_grid(phi.breakpoints()):
            q = lambda_plus(phi, float(s))
            bad += not (0 <= q.phi_s <= q.lambda_sup <= s)
    bw = classify_boyd_wong(table)
    separation = (classify_matkowski(table).proven and bw.status == "refuted" and bw.witness == 1.0
                  and classify_meir_keeler(table).proven)
    ok = bad == 0 and separation
    report_line(capsys, 5, ok, f"chain violations={bad} table: matkowski={classify_matkowski(table).status} "
                f"boyd-wong={bw.status}@{bw.witness} meir-keeler={classify_meir_keeler(table).status}")
    assert ok


def test_criterion_6_contractive_wiring(sweep, capsys):
    rows, _ = sweep
    # every instance, certified or not: the implication needs only the contractive condition
    seen = certified = broken = 0
    for r in rows:
        rep = r["report"]
        for admissible, name in (("phi-admissible", "g-phi-contractive"), ("altering-pair", "psi-phi-contractive")):
            if rep.verdict(admissible).status == "pass" and rep.verdict(name).status == "pass":
                seen += 1
                certified += rep.certified
                if not (rep.verdict("meir-keeler").ok and rep.verdict("strict-nonexpansive").ok):
                    broken += 1
    ok = seen > 0 and broken == 0
    report_line(capsys, 6, ok, f"contractive instances={seen} (certified {certified}) without meir-keeler={broken}")
    assert ok


def test_criterion_7_orbit_diagnostics(sweep, capsys):
    rows, _ = sweep
    traces = [t for r in rows if r["report"].certified for t in r["gsp"].traces]
    banach = interval_instance(0.0, 2.0, 0.5, 1.0)
    traces += list(verify_gsp(banach, certify_theorem2(banach, phi=Linear(0.5))).traces)
    bad = [t.start for t in traces if not (t.diagnostics.strict_descent and t.diagnostics.injective_prefix)]
    ok = bool(traces) and not bad
    report_line(capsys, 7, ok, f"orbits={len(traces)} counterexamples={len(bad)}")
    assert ok


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "relfix.cli", *args], capture_output=True, check=False).stdout


def test_criterion_8_determinism(capsys):
    scen = ROOT / "scenarios"
    commands = [
        ("certify", str(scen / "chain.scn")),
        ("certify", str(scen / "banach.scn")),
        ("certify", str(scen / "identity.scn")),
        ("iterate", str(scen / "banach.scn"), "--from", "0", "--tol", "1e-9"),
        ("iterate", str(scen / "swap.scn"), "--from", "0"),
        ("search", "--seeds", "0..99", "--cross-check"),
    ]
    first = [_cli(*c) for c in commands]
    second = [_cli(*c) for c in commands]
    same_cli = all(a == b and a for a, b in zip(first, second))
    same_inst = all(random_instance(s, 7) == random_instance(s, 7) for s in range(50))
    ok = same_cli and same_inst
    report_line(capsys, 8, ok, f"commands={len(commands)} byte-identical={same_cli} seeded-instances={same_inst}")
    assert ok

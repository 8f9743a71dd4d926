import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CHAIN, instances
from relfix import cli
from relfix.comparison import Linear, Ratio, StepTable
from relfix.metric import Functional, IntervalRelation
from relfix.relations import FiniteRelation
from relfix.scenario import Scenario, ScenarioError, parse_scenario, render_scenario
from relfix.search import run_search

ROOT = Path(__file__).parents[1]
SCEN = ROOT / "scenarios"
GOLDEN = Path(__file__).parent / "golden"

TWO = "points 2\ndist 0 1 1\nmap 0 0\nmap 1 0\nrel pair 1 0\n"


def error_of(text):
    with pytest.raises(ScenarioError) as err:
        parse_scenario(text)
    return err.value


def test_minimal_two_point():
    s = parse_scenario(TWO)
    assert s.instance.n == 2 and s.functional is Functional.A1
    assert s.instance.R.pairs == {(1, 0)}


def test_missing_pair_named():
    e = error_of("points 3\ndist 0 2 1\ndist 1 2 1\nmap 0 0\nmap 1 1\nmap 2 2\nrel trivial\n")
    assert "(0,1)" in str(e)


def test_unknown_functional():
    e = error_of(TWO + "functional Z9\n")
    assert "unknown functional" in str(e) and e.line == 6
    assert "unknown functional" in str(error_of(TWO + "functional B1\n"))


def test_conflicting_distance():
    e = error_of("points 2\ndist 0 1 1\ndist 1 0 2\nmap 0 0\nmap 1 1\nrel order\n")
    assert e.line == 3 and "conflicting" in e.reason


def test_header_must_come_first():
    assert error_of("dist 0 1 1\npoints 2\n").line == 1


def test_metric_violation_is_positioned():
    e = error_of("points 3\ndist 0 1 1\ndist 1 2 1\ndist 0 2 5\nmap 0 0\nmap 1 1\nmap 2 2\nrel order\n")
    assert "triangle" in e.reason


@pytest.mark.parametrize(
    "bad",
    [
        "points 2\ndist 0 1 1\nmap 0 0\nrel order\n",
        "points 2\ndist 0 1 1\nmap 0 5\nmap 1 0\nrel order\n",
        "points 2\ndist 0 1 x\n",
        "points 2\ndist 0 1 1\nmap 0 0\nmap 1 0\nrel nonsense\n",
        "points 2\ndist 0 1 1\nmap 0 0\nmap 1 0\n",
        "points 2\ndist 0 1 1\nmap 0 0\nmap 1 0\nrel order\npsi linear 1\n",
        "points 2\ndist 0 1 1\nmap 0 0\nmap 1 0\nrel order\nphi linear 0.5 3\n",
        "interval 0 2\nmap 0 1\nrel order\n",
        "interval 2 0\n",
        "",
    ],
)
def test_malformed_inputs(bad):
    error_of(bad)


def test_comments_and_order_insensitivity():
    a = parse_scenario(CHAIN)
    shuffled = "# leading comment\npoints 3\nrel order\nmap 2 1  # trailing\nmap 1 1\nmap 0 1\n" \
        "dist 1 2 1\ndist 0 2 2\ndist 0 1 1\nfunctional A1\n"
    assert parse_scenario(shuffled) == a


def test_builder_relations():
    head = "points 3\ndist 0 1 1\ndist 0 2 2\ndist 1 2 1\nmap 0 1\nmap 1 1\nmap 2 0\n"
    s = parse_scenario(head + "rel cyclic 2 : 0 1; 1 2\n")
    assert (0, 2) in s.instance.R and (2, 1) in s.instance.R
    s = parse_scenario(head + "rel sigma 0 1.5 0 0 0 0 0 0 0\n")
    assert s.instance.R.pairs == {(0, 1)}
    s = parse_scenario(head + "rel alphabeta 2 0.5 2 2 2 2 2 2 2 : 1 2 1 1 1 1 1 1 1\n")
    assert s.instance.R.pairs == {(0, 1)}
    assert "block" in str(error_of(head + "rel cyclic 2 : 0; 1 2\n"))


def test_interval_relations():
    base = "interval -1 1\nmap affine -0.5 0\n"
    s = parse_scenario(base + "rel cyclic 2 : -1 0; 0 1\n")
    assert s.instance.R.kind == "cyclic"
    s = parse_scenario(base + "rel alphabeta 0 1\n")
    assert s.instance.R == IntervalRelation("band", (0.0, 1.0))


def test_function_lines():
    s = parse_scenario(TWO + "phi table 1 0.5 2 1\npsi linear 1\n")
    assert s.phi == StepTable([1, 2], [0.5, 1]) and s.pair.psi == Linear(1.0)
    assert parse_scenario(TWO + "phi ratio\n").phi == Ratio()


@pytest.mark.parametrize("name", ["chain", "banach", "swap", "identity"])
def test_shipped_scenarios_round_trip(name):
    s = parse_scenario((SCEN / f"{name}.scn").read_text())
    text = render_scenario(s)
    assert parse_scenario(text) == s
    assert render_scenario(parse_scenario(text)) == text


@given(instances(max_n=6), st.sampled_from(list(Functional)[:1] + [Functional.B3, Functional.C1]),
       st.sampled_from([None, Linear(0.3), Ratio(), StepTable([0.5, 2.0], [0.25, 1.0])]))
def test_round_trip_property(m, g, phi):
    s = Scenario(m, g, phi, Linear(1.0) if phi is not None else None)
    assert parse_scenario(render_scenario(s)) == s


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_exit_codes(capsys, tmp_path):
    code, out, _ = run(["certify", str(SCEN / "chain.scn")], capsys)
    assert code == 0 and out == (GOLDEN / "chain.certify.txt").read_text()
    code, out, _ = run(["certify", str(SCEN / "identity.scn")], capsys)
    assert code == 1 and "strict-nonexpansive     fail     (0, 1)" in out
    bad = tmp_path / "bad.scn"
    bad.write_text("points 2\ndist 0 1 -1\n")
    code, out, err = run(["certify", str(bad)], capsys)
    assert code == 2 and out == "" and "line 2" in err
    code, _, err = run(["certify", str(tmp_path / "missing.scn")], capsys)
    assert code == 2 and "cannot read" in err


def test_certify_disable(capsys):
    code, out, _ = run(["certify", str(SCEN / "chain.scn"), "--disable", "i", "--disable", "ii"], capsys)
    assert code == 1 and "no alternative holds" in out


def test_iterate_exit_codes(capsys):
    code, out, _ = run(["iterate", str(SCEN / "banach.scn"), "--from", "0", "--tol", "1e-9"], capsys)
    assert code == 0 and out == (GOLDEN / "banach.iterate.txt").read_text()
    steps = int(out.split("steps=")[1].split()[0])
    assert steps <= 32
    code, out, _ = run(["iterate", str(SCEN / "swap.scn"), "--from", "0"], capsys)
    assert code == 1 and "outcome cycle period=2 entry=0" in out
    code, out, err = run(["iterate", str(SCEN / "chain.scn"), "--from", "99"], capsys)
    assert code == 2 and out == "" and "99" in err
    code, _, _ = run(["iterate", str(SCEN / "chain.scn"), "--from", "abc"], capsys)
    assert code == 2


def test_search_command(capsys):
    code, out, _ = run(["search", "--seeds", "0..199", "--cross-check"], capsys)
    assert code == 0 and out == (GOLDEN / "search.0-199.txt").read_text()
    with pytest.raises(SystemExit) as ex:
        cli.main(["search", "--seeds", "9..1"])
    assert ex.value.code == 2


def test_search_negative_control():
    def forge(m, g, phi, pair):
        from dataclasses import replace

        from relfix.certifier import certify_theorem2

        return replace(certify_theorem2(m, g, phi, pair), certified=True)

    s = run_search(range(40), certify=forge)
    assert s.violations > 0
    assert "THEOREM-VIOLATION" in s.render()


def test_console_script_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "relfix.cli", "certify", str(SCEN / "banach.scn")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "banach.certify.txt").read_text()


def test_search_cli_fault_exit(monkeypatch, capsys):
    from dataclasses import replace

    from relfix.certifier import certify_theorem2

    def forge(m, g, phi, pair):
        return replace(certify_theorem2(m, g, phi, pair), certified=True)

    real = cli.run_search
    monkeypatch.setattr(cli, "run_search", lambda *a, **k: real(*a, certify=forge, **k))
    code, out, _ = run(["search", "--seeds", "0..19"], capsys)
    assert code == 1 and "violation seed=" in out

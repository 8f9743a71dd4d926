import itertools

import numpy as np
import pytest
from hypothesis import given

from conftest import instances
from relfix.metric import (
    CONTRACTIVE,
    G1,
    G2,
    TAU,
    AffineMap,
    FiniteCarrier,
    FiniteMap,
    Functional,
    IntervalCarrier,
    IntervalRelation,
    MetricInstance,
    check_bounds,
    diam,
    eval_functional,
    fixed_points,
    lipschitz_inequality_check,
    verify_metric_axioms,
)
from relfix.relations import FiniteRelation


def finite(table, T=None, R=None):
    n = len(table)
    return MetricInstance(
        FiniteCarrier(table), FiniteMap(T or list(range(n))), FiniteRelation.full(n) if R is None else R
    )


def test_chain_axioms(chain):
    assert verify_metric_axioms(chain) == []
    assert chain.exact and chain.tol == 0.0


def test_triangle_violation():
    m = finite([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert ("triangle", (0, 1, 2)) in [(v.axiom, v.points) for v in verify_metric_axioms(m)]


def test_sufficiency_violation():
    m = finite([[0, 0], [0, 0]])
    assert [v.axiom for v in verify_metric_axioms(m)] == ["sufficiency"]


def test_float_tables_use_tau():
    m = finite([[0, 0.5], [0.5, 0]])
    assert not m.exact and m.tol == TAU


def test_interval_axioms_trivially_valid():
    m = MetricInstance(IntervalCarrier(0, 2), AffineMap(0.5, 1), IntervalRelation.trivial())
    assert verify_metric_axioms(m) == []


def test_construction_guards():
    with pytest.raises(ValueError):
        FiniteCarrier([[0, -1], [-1, 0]])
    with pytest.raises(ValueError):
        finite([[0, 1], [1, 0]], T=[0, 2])
    with pytest.raises(ValueError):
        finite([[0, 1], [1, 0]], R=FiniteRelation(2))
    with pytest.raises(ValueError):
        MetricInstance(IntervalCarrier(0, 2), AffineMap(1, 1), IntervalRelation.trivial())
    with pytest.raises(ValueError):
        IntervalCarrier(1, 1)


def test_lipschitz_examples(chain):
    assert lipschitz_inequality_check(chain, 0, 2, 0, 2)
    assert lipschitz_inequality_check(chain, 0, 2, 1, 1)


@given(instances(max_n=8))
def test_lipschitz_property(m):
    for x, y, u, v in itertools.product(m.points(), repeat=4):
        assert lipschitz_inequality_check(m, x, y, u, v)


def test_lipschitz_random_quadruples():
    rng = np.random.default_rng(11)
    from relfix.builders import random_instance

    for k in range(10_000):
        if k % 100 == 0:
            m = random_instance(k, 6, metric_kind="table" if k % 200 else "line")
        x, y, u, v = rng.integers(0, 6, size=4).tolist()
        assert lipschitz_inequality_check(m, x, y, u, v)


def test_diam(chain):
    assert diam(chain, [1]) == 0
    assert diam(chain, [0, 1, 2]) == 2
    with pytest.raises(ValueError):
        diam(chain, [])


def test_chain_functional_values(chain):
    want = {"A1": 2, "A2": 1, "A3": 1, "A4": 1, "B1": 2, "B2": 2, "B3": 2, "B4": 2, "C1": 2, "C2": 2}
    assert {g: eval_functional(chain, g, 0, 2) for g in want} == want


def test_class_partition():
    assert {g.value for g in G1} == {"A1", "B2", "B4", "C1"}
    assert {g.value for g in G2} == {"B3", "C2"}
    assert Functional.A1.klass == "G1" and Functional.C2.klass == "G2"
    with pytest.raises(ValueError):
        Functional.B1.klass


@given(instances(max_n=7))
def test_bounds_hold_for_every_functional(m):
    for g in CONTRACTIVE:
        assert check_bounds(m, g)


def test_bounds_negative_control(chain):
    def corrupt(m, g, x, y):
        return eval_functional(m, g, x, y) + 10

    assert check_bounds(chain, "A1")
    assert not check_bounds(chain, "A1", evaluate=corrupt)


@given(instances(max_n=7))
def test_a1_lower_bound_is_attained(m):
    for x, y in itertools.product(m.points(), repeat=2):
        assert eval_functional(m, "A1", x, y) == m.d(x, y)


@given(instances(max_n=7))
def test_displacement_chain(m):
    for x in m.points():
        tx = m.T(x)
        a2, a3, a4 = (eval_functional(m, g, x, tx) for g in ("A2", "A3", "A4"))
        assert a4 <= a2 + m.tol and a2 <= a3 + m.tol


@given(instances(max_n=7))
def test_fixed_points_see_only_distance(m):
    zs = fixed_points(m)
    for z1, z2 in itertools.product(zs, repeat=2):
        for g in CONTRACTIVE:
            assert eval_functional(m, g, z1, z2) == pytest.approx(m.d(z1, z2), abs=m.tol)
    for z in zs:
        assert all(eval_functional(m, g, z, z) == 0 for g in Functional)


def test_interval_relation_tags():
    band = IntervalRelation("band", (0.0, 1.0))
    assert band.related(0.0, 0.5) and not band.related(0.5, 0.0)
    assert IntervalRelation.order().related(1.0, 1.0)
    assert IntervalRelation.trivial().related(2.0, 0.0)
    assert band == IntervalRelation("band", (0.0, 1.0))

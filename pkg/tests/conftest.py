import hypothesis.strategies as st
import pytest
from hypothesis import settings

from relfix.relations import FiniteRelation
from relfix.scenario import parse_scenario

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

CHAIN = """\
points 3
dist 0 1 1
dist 0 2 2
dist 1 2 1
map 0 1
map 1 1
map 2 1
rel order
functional A1
"""


@st.composite
def relations(draw, max_n=5, min_n=1):
    n = draw(st.integers(min_n, max_n))
    cells = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    return FiniteRelation(n, draw(st.sets(cells, max_size=n * n)))


@pytest.fixture
def chain():
    return parse_scenario(CHAIN).instance


@st.composite
def instances(draw, max_n=6):
    from relfix.builders import MAP_KINDS, METRIC_KINDS, random_instance

    return random_instance(
        draw(st.integers(0, 2**32 - 1)),
        draw(st.integers(2, max_n)),
        draw(st.sampled_from([0.3, 0.5, 1.0])),
        draw(st.sampled_from(MAP_KINDS)),
        draw(st.sampled_from(METRIC_KINDS)),
        draw(st.booleans()),
    )

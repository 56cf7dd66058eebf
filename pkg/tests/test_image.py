import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import dominated_pair, local_graph_diagram
from linpers.core import InputError, InvariantError, diagram_equal
from linpers.image import (
    FMAX,
    GMIN,
    CriticalList,
    critical_events,
    image_diagram,
    reduce_between_maxima,
    reduce_between_minima,
    reduce_critical,
)
from linpers.line import line_diagram
from linpers.oracle import oracle_image

INF = math.inf

# four minima of g at 0, 2, 4, 6; f stays at 0 between the two inner ones
CROSSING_F = [0, 2, 0, 0, 0, 2, -1]
CROSSING_G = [0, 5, 3, 3, 1, 4, 2]


def vals(d):
    return sorted((p.birth_value, p.death_value) for p in d.pairs())


@pytest.mark.parametrize(
    "f, g, expected",
    [
        ([0, 2, 1, 3], [0, 2, 1, 3], [(0, INF), (1, 2)]),
        ([0, 3, 1, 2, 0], [0, 5, 1, 4, 2], [(0, INF), (1, 3)]),
        ([0, 0, 0], [9, 9, 9], [(9, INF)]),
        (CROSSING_F, CROSSING_G, [(0, INF), (1, 2)]),
    ],
)
def test_examples(f, g, expected, backend):
    assert vals(image_diagram(f, g, backend)) == expected
    assert vals(oracle_image(f, g)) == expected


def test_example_indices():
    d = image_diagram([0, 3, 1, 2, 0], [0, 5, 1, 4, 2])
    assert d.to_csv() == "1,3,2,1\n0,inf,0,\n"


def test_errors():
    with pytest.raises(InputError, match="length mismatch"):
        image_diagram([0, 1], [0, 1, 2])
    with pytest.raises(InputError, match="dominance violated at index 1"):
        image_diagram([0, 2], [0, 1])
    with pytest.raises(InputError, match="empty sample"):
        image_diagram([], [])


def test_between_minima_examples():
    # minima of g at 0 (value 1) and 2 (value 2); f peaks at 2 between them
    assert reduce_between_minima([1, 2, 2], [1, 3, 2], 0, 2) == 2
    assert reduce_between_minima([1, 5, 2], [1, 6, 2], 0, 2) is None
    # equal minima: the later one counts as higher and is the one removed
    assert reduce_between_minima([0, 0, 0], [0, 1, 0], 0, 2) == 2
    # the lower minimum may come second
    assert reduce_between_minima([2, 1, 1], [2, 3, 1], 0, 2) == 0


def test_between_maxima_examples():
    # maxima of f at 1 (value 3) and 3 (value 4); g dips to 3.5 between them
    assert reduce_between_maxima([0, 3, 2, 4, 0], [9, 9, 3.5, 9, 9], 1, 3) == 1
    assert reduce_between_maxima([0, 3, 0, 4, 0], [9, 9, 0, 9, 9], 1, 3) is None
    # equal maxima: the earlier one counts as lower and is the one removed
    assert reduce_between_maxima([0, 3, 2, 3, 0], [9, 9, 9, 9, 9], 1, 3) == 1


def test_between_rules_check_preconditions():
    with pytest.raises(ValueError):
        reduce_between_minima([0, 1, 0], [0, 1, 0], 2, 0)
    with pytest.raises(ValueError):
        reduce_between_minima([0, 1, 0], [0, 1, 0], 0, 1)
    with pytest.raises(ValueError):
        reduce_between_minima([0, 1, 0, 1, 0], [0, 1, 0, 1, 0], 0, 4)
    with pytest.raises(ValueError):
        reduce_between_maxima([0, 1, 0], [1, 1, 1], 0, 2)
    with pytest.raises(ValueError):
        reduce_between_maxima([0, 2, 0, 2, 0, 2, 0], [9] * 7, 1, 5)


def test_critical_events_order():
    ev = critical_events([0, 3, 1, 2, 0], [0, 5, 1, 4, 2])
    assert ev.kinds.tolist() == [GMIN, FMAX, GMIN, FMAX, GMIN]
    assert ev.positions.tolist() == [0, 1, 2, 3, 4]
    # f before g at the same sample
    ev = critical_events([0, 1, 0], [0, 1, 0])
    assert ev.kinds.tolist() == [GMIN, FMAX, GMIN] and ev.positions.tolist() == [0, 1, 2]


def test_check_reduced_rejects():
    bad = CriticalList(np.array([GMIN, GMIN], np.uint8), np.array([0.0, 1.0]), np.array([0, 1]))
    with pytest.raises(InvariantError):
        bad.check_reduced()
    bad = CriticalList(np.array([GMIN, FMAX, GMIN], np.uint8), np.array([0.0, 1.0, 2.0]), np.array([0, 1, 2]))
    with pytest.raises(InvariantError):
        bad.check_reduced()
    with pytest.raises(InvariantError):
        CriticalList(np.array([FMAX], np.uint8), np.array([0.0]), np.array([0])).check_reduced()


def test_random_against_oracle(backend):
    rng = np.random.default_rng(21)
    for _ in range(500):
        f, g = dominated_pair(rng, 120)
        d = image_diagram(f, g, backend)
        assert diagram_equal(d, oracle_image(f, g), "values")
        crit = reduce_critical(f, g, backend)
        crit.check_reduced()
        # the reduced list, read as one function, has the image diagram
        assert diagram_equal(line_diagram(crit.values), d, "values")
        assert d.essential_value == g.min()


@settings(max_examples=300)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 3)), min_size=1, max_size=40))
def test_oracle_equivalence_property(rows):
    g = np.array([a for a, _ in rows], dtype=float)
    f = g - np.array([b for _, b in rows], dtype=float)
    assert diagram_equal(image_diagram(f, g), oracle_image(f, g), "values")


@settings(max_examples=200)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=60))
def test_degenerates_to_line(xs):
    assert diagram_equal(image_diagram(xs, xs), line_diagram(xs), "indices")
    assert diagram_equal(oracle_image(xs, xs), line_diagram(xs), "indices")


def test_local_graph_is_wrong_on_crossing_instance():
    right = oracle_image(CROSSING_F, CROSSING_G)
    assert not diagram_equal(local_graph_diagram(CROSSING_F, CROSSING_G), right, "values")
    assert diagram_equal(image_diagram(CROSSING_F, CROSSING_G), right, "values")


def test_local_graph_is_right_when_f_equals_g():
    rng = np.random.default_rng(2)
    for _ in range(200):
        g = rng.integers(0, 6, int(rng.integers(1, 30))).astype(float)
        assert diagram_equal(local_graph_diagram(g, g), line_diagram(g), "values")

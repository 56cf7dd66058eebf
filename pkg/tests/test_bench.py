import numpy as np
import pytest

from linpers.bench import DEFAULT_SEED, GENERATORS, generate, run_bench
from linpers.core import strict_minima_count
from linpers.line import line_diagram


@pytest.mark.parametrize("kind", GENERATORS)
def test_generators(kind):
    a = generate(kind, 1001)
    assert a.shape == (1001,) and a.dtype == np.float64 and np.isfinite(a).all()


def test_generator_shapes():
    assert np.array_equal(generate("random", 50), generate("random", 50, DEFAULT_SEED))
    assert not np.array_equal(generate("random", 50, 1), generate("random", 50, 2))
    assert len(line_diagram(generate("monotonic", 100))) == 1
    assert len(line_diagram(generate("constant", 100))) == 1
    a = generate("narrowing", 101)
    assert len(line_diagram(a)) == strict_minima_count(a) == 51
    with pytest.raises(ValueError):
        generate("sawtooth", 10)
    with pytest.raises(ValueError):
        generate("random", 0)


def test_run_bench_report():
    r = run_bench(1, "random", 2)
    assert r.n_pairs == 1
    assert set(r.medians) == {"generation", "reducer", "oracle", "copy"}
    assert all(len(v) == 2 for v in r.runs.values())
    text = r.format()
    assert "median_s" in text and "n=1 " in text


def test_run_bench_stages():
    r = run_bench(100, "constant", 1, stages=("reducer",))
    assert list(r.medians) == ["reducer"]
    with pytest.raises(ValueError):
        run_bench(10, stages=("sorting",))
    with pytest.raises(ValueError):
        run_bench(10, repetitions=0)


def test_reducer_beats_baseline_at_1e6():
    r = run_bench(10**6, "random", 3, stages=("reducer", "oracle"))
    assert r.median("reducer") < r.median("oracle")

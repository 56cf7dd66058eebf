import io
import subprocess
import sys

import numpy as np
import pytest

from linpers import cli
from linpers.core import InputError, Topology
from linpers.fileio import InputSpec, iter_raw_chunks, read_values, write_raw
from linpers.line import line_diagram


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        p = tmp_path / name
        if isinstance(content, bytes):
            p.write_bytes(content)
        else:
            p.write_text(content)
        return str(p)

    return _write


def test_diagram_csv(write, capsys):
    path = write("a.csv", "0\n2\n1\n3\n")
    assert run(["diagram", path], capsys) == (0, "1,2,2,1\n0,inf,0,\n", "")


def test_diagram_raw_single(write, capsys):
    path = write("five.raw", np.array([5.0], "<f8").tobytes())
    assert run(["diagram", "--format", "raw", path], capsys)[:2] == (0, "5,inf,0,\n")


def test_empty_file(write, capsys):
    code, out, err = run(["diagram", write("e.csv", "")], capsys)
    assert code == 1 and out == "" and "empty sample" in err
    code, _, err = run(["diagram", "--format", "raw", write("e.raw", b"")], capsys)
    assert code == 1 and "empty sample" in err


def test_malformed_csv_reports_line(write, capsys):
    code, _, err = run(["diagram", write("bad.csv", "1\n2\n\nabc\n")], capsys)
    assert code == 1 and "line 4" in err


def test_non_finite_reports_index(write, capsys):
    code, _, err = run(["diagram", write("nan.csv", "1\nnan\n")], capsys)
    assert code == 1 and "non-finite value at index 1" in err
    raw = write("inf.raw", np.array([0, 1, np.inf], "<f8").tobytes())
    code, _, err = run(["diagram", "--format", "raw", raw], capsys)
    assert code == 1 and "non-finite value at index 2" in err


def test_raw_size_not_multiple_of_8(write, capsys):
    code, _, err = run(["diagram", "--format", "raw", write("bad.raw", b"abc")], capsys)
    assert code == 1 and "multiple of 8" in err


def test_unreadable_file(tmp_path, capsys):
    code, _, err = run(["diagram", str(tmp_path / "missing.csv")], capsys)
    assert code == 1 and "cannot read" in err


@pytest.mark.parametrize(
    "extra",
    [[], ["--oracle"], ["--threads", "0"], ["--threads", "3"]],
)
def test_line_modes_agree(write, capsys, extra):
    a = np.random.default_rng(1).integers(0, 6, 300).astype(float)
    path = write("a.raw", a.astype("<f8").tobytes())
    code, out, _ = run(["diagram", "--format", "raw", path, *extra], capsys)
    assert code == 0 and out == line_diagram(a).to_csv()


@pytest.mark.parametrize("extra", [[], ["--oracle"]])
def test_circle(write, capsys, extra):
    path = write("c.csv", "0\n9\n2\n7\n4\n5\n")
    code, out, _ = run(["diagram", "--circle", path, *extra], capsys)
    assert code == 0 and out == "2,7,2,3\n4,5,4,5\n0,inf,0,\n"


def test_negative_threads(write, capsys):
    code, _, err = run(["diagram", "--threads", "-1", write("a.csv", "1\n")], capsys)
    assert code == 1


def test_output_file(write, tmp_path, capsys):
    dest = tmp_path / "out.csv"
    code, out, _ = run(["diagram", write("a.csv", "0\n2\n1\n3\n"), "--output", str(dest)], capsys)
    assert code == 0 and out == "" and dest.read_text() == "1,2,2,1\n0,inf,0,\n"


def test_image(write, capsys):
    f = write("f.csv", "0\n3\n1\n2\n0\n")
    g = write("g.csv", "0\n5\n1\n4\n2\n")
    assert run(["image", f, g], capsys)[:2] == (0, "1,3,2,1\n0,inf,0,\n")
    assert run(["image", "--oracle", f, g], capsys)[:2] == (0, "1,3,2,1\n0,inf,0,\n")
    code, _, err = run(["image", g, f], capsys)
    assert code == 1 and "dominance violated at index 1" in err
    code, _, err = run(["image", f, write("s.csv", "0\n1\n")], capsys)
    assert code == 1 and "length mismatch" in err


def test_image_of_equal_files_is_diagram(write, capsys):
    f = write("f.csv", "\n".join(str(x) for x in [3, 1, 4, 1, 5, 9, 2, 6, 5, 3]) + "\n")
    _, expected, _ = run(["diagram", f], capsys)
    assert run(["image", f, f], capsys)[:2] == (0, expected)


def test_bench_command(capsys):
    code, out, _ = run(["bench", "constant", "-n", "1000", "-r", "2", "--seed", "3"], capsys)
    assert code == 0
    assert "pairs=1" in out and "seed=3" in out
    for stage in ("generation", "reducer", "oracle", "copy"):
        assert stage in out
    code, out, _ = run(["bench", "Random", "-n", "100", "-r", "1", "--no-oracle"], capsys)
    assert code == 0 and "oracle" not in out.split("pairs=")[1]
    assert run(["bench", "-n", "0"], capsys)[0] == 1
    assert run(["bench", "-n", "5", "-r", "0"], capsys)[0] == 1


def test_bench_output_file(tmp_path, capsys):
    dest = tmp_path / "r.txt"
    assert run(["bench", "monotonic", "-n", "10", "-r", "1", "-o", str(dest)], capsys)[0] == 0
    assert "generator=monotonic" in dest.read_text()


def test_invariant_error_exit_code(write, capsys, monkeypatch):
    from linpers.core import InvariantError

    def boom(*a, **k):
        raise InvariantError("stack broke")

    monkeypatch.setattr(cli, "line_diagram", boom)
    code, _, err = run(["diagram", write("a.csv", "1\n2\n")], capsys)
    assert code == 2 and "stack broke" in err


def test_stdin_subprocess():
    p = subprocess.run(
        [sys.executable, "-m", "linpers", "diagram", "-"],
        input=b"0\n2\n1\n3\n",
        capture_output=True,
    )
    assert p.returncode == 0 and p.stdout == b"1,2,2,1\n0,inf,0,\n"
    raw = np.array([0, 2, 1, 3], "<f8").tobytes()
    p = subprocess.run(
        [sys.executable, "-m", "linpers", "diagram", "--format", "raw"], input=raw[:-3], capture_output=True
    )
    assert p.returncode == 1 and b"multiple of 8" in p.stderr


def test_raw_round_trip(tmp_path):
    a = np.random.default_rng(9).normal(size=5000)
    path = str(tmp_path / "a.raw")
    write_raw(a, path)
    back = read_values(InputSpec(path, "raw"))
    assert np.array_equal(back, a)
    assert line_diagram(back).to_csv() == line_diagram(a).to_csv()


class Trickle(io.RawIOBase):
    """Returns at most 5 bytes per read, like a slow pipe."""

    def __init__(self, data):
        self.buf = io.BytesIO(data)

    def read(self, n=-1):
        return self.buf.read(min(n, 5) if n and n > 0 else 5)


def test_raw_chunks_survive_short_reads():
    a = np.arange(37, dtype="<f8")
    chunks = list(iter_raw_chunks(Trickle(a.tobytes()), chunk_values=4))
    assert np.array_equal(np.concatenate(chunks), a)
    with pytest.raises(InputError, match="multiple of 8"):
        list(iter_raw_chunks(Trickle(a.tobytes()[:-1]), chunk_values=4))


def test_input_spec_rejects_format():
    with pytest.raises(InputError):
        InputSpec("x", "json")
    assert InputSpec("x", "csv", Topology.CIRCLE).topology is Topology.CIRCLE


def test_csv_determinism_across_threads(write, capsys):
    a = np.random.default_rng(2).random(5000)
    path = write("a.raw", a.astype("<f8").tobytes())
    outs = {run(["diagram", "--format", "raw", path, *t], capsys)[1] for t in ([], ["--threads", "1"], ["--threads", "7"])}
    assert len(outs) == 1

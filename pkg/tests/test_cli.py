import json
from fractions import Fraction

from polyplace.cli import run
from polyplace.geometry import Point, load_polygon, save_polygon, validate_polygon
from polyplace.solver import verify_containment

SQ = validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
WIDE = validate_polygon([(0, 0), (3, 0), (3, 2), (0, 2)])


def _paths(tmp_path):
    p = tmp_path / "p.json"
    q = tmp_path / "q.json"
    save_polygon(str(p), SQ)
    save_polygon(str(q), WIDE)
    return str(p), str(q)


def test_validate(tmp_path, capsys):
    p, _ = _paths(tmp_path)
    assert run(["validate", p]) == 0
    out = capsys.readouterr().out
    assert "vertices: 4" in out and "area: 1/1" in out


def test_validate_bad_polygon(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [[0,0],[1,1],[0,1]]}')
    assert run(["validate", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_contain(tmp_path, capsys):
    p, q = _paths(tmp_path)
    assert run(["contain", "--p", p, "--q", q]) == 0
    assert "tau" in capsys.readouterr().out
    assert run(["contain", "--p", q, "--q", p]) == 0
    assert "NO" in capsys.readouterr().out


def test_maxscale_text_and_json(tmp_path, capsys):
    p, q = _paths(tmp_path)
    assert run(["maxscale", "--p", p, "--q", q]) == 0
    assert "lambda = 2/1" in capsys.readouterr().out
    assert run(["maxscale", "--p", p, "--q", q, "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    lam = Fraction(obj["lambda"])
    tau = Point(Fraction(obj["tau"][0]), Fraction(obj["tau"][1]))
    assert verify_containment(SQ, WIDE, lam, tau)


def test_maxscale_baseline_agrees(tmp_path, capsys):
    p, q = _paths(tmp_path)
    run(["maxscale", "--p", p, "--q", q, "--json"])
    fast = json.loads(capsys.readouterr().out)
    run(["maxscale", "--p", p, "--q", q, "--baseline", "--json"])
    base = json.loads(capsys.readouterr().out)
    assert fast["lambda"] == base["lambda"]


def test_maxscale_x(tmp_path, capsys):
    p, q = _paths(tmp_path)
    assert run(["maxscale-x", "--p", p, "--q", q]) == 0
    assert "lambda = 2/1" in capsys.readouterr().out


def test_maxscale_trace_out_and_dyncover(tmp_path, capsys):
    p, q = _paths(tmp_path)
    trace = tmp_path / "trace.txt"
    assert run(["maxscale", "--p", p, "--q", q, "--trace-out", str(trace)]) == 0
    capsys.readouterr()
    assert run(["dyncover", "--trace", str(trace)]) == 0
    naive_out = capsys.readouterr().out.strip()
    assert run(["dyncover", "--trace", str(trace), "--impl", "oy"]) == 0
    assert capsys.readouterr().out.strip() == naive_out


def test_dyncover_example(tmp_path, capsys):
    trace = tmp_path / "t.txt"
    trace.write_text("N 3 3\nA 0 1 3 1 3\nD 0\n")
    assert run(["dyncover", "--trace", str(trace)]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_gen_writes_instance(tmp_path, capsys):
    sets = tmp_path / "sets.json"
    sets.write_text(json.dumps({"A": [1, 2, 3]}))
    out = tmp_path / "inst"
    assert run(["gen", "average", "--input", str(sets), "--out-dir", str(out)]) == 0
    pattern = load_polygon(str(out / "P.json"))
    assert len(pattern) == 12
    meta = json.loads((out / "instance.json").read_text())
    assert meta["mode"] == "scale-x-translation"
    assert meta["threshold"] == 1
    assert meta["ground_truth_inputs"]["A"] == [1, 2, 3]


def test_decompose_dump(tmp_path, capsys):
    p, _ = _paths(tmp_path)
    assert run(["decompose", p, "--complement"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert len(obj["interior"]) == 1
    assert len(obj["complement"]) == 4


def test_plot_deterministic(tmp_path, capsys):
    p, q = _paths(tmp_path)
    svg1 = tmp_path / "a.svg"
    svg2 = tmp_path / "b.svg"
    args = ["plot", "--p", p, "--q", q, "--placement", "2/1", "0", "0", "--svg"]
    assert run(args + [str(svg1)]) == 0
    assert run(args + [str(svg2)]) == 0
    assert svg1.read_bytes() == svg2.read_bytes()
    assert b"<svg" in svg1.read_bytes()


def test_bench_csv(tmp_path, capsys):
    csv_path = tmp_path / "bench.csv"
    assert run(["bench", "--suite", "generated", "--sizes", "12,16",
                "--csv", str(csv_path)]) == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "p,q,L,updates,t_fast_ms,t_base_ms"
    assert len(lines) == 3


def test_bench_random_suite_seeded(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("POLYPLACE_SEED", "7")
    csv_path = tmp_path / "rand.csv"
    assert run(["bench", "--suite", "random", "--sizes", "14",
                "--csv", str(csv_path)]) == 0
    first = csv_path.read_text()
    assert run(["bench", "--suite", "random", "--sizes", "14",
                "--csv", str(csv_path)]) == 0
    rows = [ln.split(",")[:4] for ln in first.strip().splitlines()]
    again = [ln.split(",")[:4] for ln in csv_path.read_text().strip().splitlines()]
    assert rows == again  # same seed, same instances and counts

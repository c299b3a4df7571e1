import csv
import io
import math
import subprocess
import sys

import pytest

from kme.bounds import Probe, ProbePair
from kme.cli import main
from kme.files import read_state, write_probe, write_state
from kme.families import make_ghz
from kme.partitions import h_k
from kme.qnum import outer


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def parse_report(text):
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(": ")
        out[key] = value
    return out


@pytest.fixture
def probes(tmp_path):
    paths = {}
    for n in (3, 4):
        d = (2,) * n
        for name, obj in [
            ("comp", Probe.computational(d)),
            ("ones", Probe.basis(d, 1, 0)),
            ("pair", ProbePair.computational(d)),
        ]:
            paths[name, n] = tmp_path / f"{name}{n}.txt"
            write_probe(paths[name, n], obj)
    return paths


def test_hk():
    code, text = run("hk", "--n", "5", "--k", "2")
    assert code == 0 and abs(float(text) - 2 / math.sqrt(24)) < 1e-14
    code, text = run("hk", "--n", "9", "--k", "4", "--brute-force")
    assert code == 0 and abs(float(text) - h_k(9, 4)) < 1e-14


def test_budget():
    assert run("budget", "--n", "5") == (0, "26 52 56 112\n")


def test_concurrence_vector_and_matrix(tmp_path):
    vec, mat = tmp_path / "v.txt", tmp_path / "m.txt"
    write_state(vec, make_ghz(3), (2, 2, 2))
    write_state(mat, outer(make_ghz(3)), (2, 2, 2))
    for path in (vec, mat):
        code, text = run("concurrence", "--state", str(path), "--k", "2", "--report-partition")
        lines = text.splitlines()
        assert code == 0 and abs(float(lines[0]) - 1) < 1e-12
        assert lines[1] == "{1,2}|{3}"


def test_concurrence_rejects_mixed(tmp_path):
    path = tmp_path / "mix.txt"
    assert run("family", "--name", "w-antiw", "--n", "3", "--a", "0.5", "--b", "0.2", "--out", str(path))[0] == 0
    assert run("concurrence", "--state", str(path), "--k", "2")[0] == 2


def test_family_files(tmp_path):
    path = tmp_path / "w.txt"
    assert run("family", "--name", "w", "--n", "4", "--out", str(path))[0] == 0
    assert read_state(path)[0] == "vector"
    assert run("family", "--name", "ghz", "--n", "3", "--matrix", "--out", str(path))[0] == 0
    assert read_state(path)[0] == "matrix"
    assert run("--seed", "3", "family", "--name", "random-pure", "--n", "2", "--dims", "2", "3", "--out", str(path))[0] == 0
    kind, dims, a = read_state(path)
    assert dims == (2, 3) and a.shape == (6,)
    other = tmp_path / "again.txt"
    run("family", "--seed", "3", "--name", "random-pure", "--n", "2", "--dims", "2", "3", "--out", str(other))
    assert path.read_text() == other.read_text()
    assert run("family", "--name", "ghz-w", "--n", "3", "--alpha", "0.1", "--out", str(path))[0] == 2


def test_bound_orders(tmp_path, probes):
    state = tmp_path / "rho.txt"
    run("family", "--name", "w-antiw", "--n", "4", "--a", "0.45", "--b", "0.45", "--out", str(state))
    code, text = run("bound", "--order", "1", "--state", str(state), "--k", "2", "--probe", str(probes["comp", 4]))
    r1 = parse_report(text)
    assert code == 0 and r1["order"] == "1" and r1["detected"] == "true"
    code, text = run("bound", "--order", "2", "--state", str(state), "--k", "2", "--probe", str(probes["pair", 4]))
    r2 = parse_report(text)
    assert code == 0 and len(r2["i_k_values"].split()) == 2
    code, text = run(
        "bound", "--order", "2", "--state", str(state), "--k", "2",
        "--probe", str(probes["comp", 4]), "--probe2", str(probes["ones", 4]),
    )
    assert code == 0 and parse_report(text) == r2


def test_bound_input_errors(tmp_path, probes):
    state = tmp_path / "rho.txt"
    run("family", "--name", "w", "--n", "3", "--out", str(state))
    assert run("bound", "--order", "2", "--state", str(state), "--k", "2", "--probe", str(probes["comp", 3]))[0] == 2
    assert run("bound", "--order", "1", "--state", str(state), "--k", "2", "--probe", str(probes["comp", 4]))[0] == 2
    assert run("bound", "--order", "1", "--state", str(tmp_path / "missing.txt"), "--k", "2", "--probe", str(probes["comp", 3]))[0] == 2
    assert run("bound", "--order", "1", "--state", str(state), "--k", "7", "--probe", str(probes["comp", 3]))[0] == 2


def test_numeric_error_exit_code(tmp_path, probes):
    # a unit-trace Hermitian matrix that is not positive
    state = tmp_path / "bad.txt"
    run("family", "--name", "w-antiw", "--n", "3", "--a", "0", "--b", "1.5", "--out", str(state))
    code, _ = run("bound", "--order", "1", "--state", str(state), "--k", "2", "--probe", str(probes["comp", 3]))
    assert code == 3


def test_usage_errors():
    assert run("frobnicate")[0] == 2
    assert run("hk", "--n", "3")[0] == 2
    assert run("hk", "--n", "3", "--k", "5")[0] == 2
    assert run("sweep", "--family", "w-antiw", "--n", "3", "--k", "2", "--grid", "1", "--out", "x.csv")[0] == 2


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_sweep_two_point_grid(tmp_path):
    out = tmp_path / "s.csv"
    assert run("sweep", "--family", "w-antiw", "--n", "3", "--k", "2", "--grid", "2", "--out", str(out))[0] == 0
    rows = read_csv(out)
    assert len(rows) == 4
    assert [(r["p1"], r["p2"]) for r in rows] == [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]
    assert rows[3]["bound1"] == "" and rows[0]["bound1"] != ""


def test_sweep_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--family", "ghz-w", "--n", "4", "--k", "2", "--probes", "both", "--grid", "11", "--check-psd"]
    run(*args, "--out", str(a))
    run(*args, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    rows = read_csv(a)
    assert all(r["psd_ok"] == "1" for r in rows if r["bound1"])


def test_sweep_matches_single_shot(tmp_path, probes):
    out = tmp_path / "s.csv"
    run("sweep", "--family", "w-antiw", "--n", "4", "--k", "2", "--grid", "11", "--out", str(out))
    row = next(r for r in read_csv(out) if r["p1"] == "0.6" and r["p2"] == "0.2")
    state = tmp_path / "rho.txt"
    run("family", "--name", "w-antiw", "--n", "4", "--a", "0.6", "--b", "0.2", "--out", str(state))
    vals = []
    for name in ("comp", "ones"):
        _, text = run("bound", "--order", "1", "--state", str(state), "--k", "2", "--probe", str(probes[name, 4]))
        vals.append(parse_report(text))
    assert abs(float(row["i_phi0"]) - float(vals[0]["i_k_values"])) < 1e-12
    assert abs(float(row["i_phi1"]) - float(vals[1]["i_k_values"])) < 1e-12
    assert abs(float(row["bound1"]) - max(float(v["bound_value"]) for v in vals)) < 1e-12
    _, text = run("bound", "--order", "2", "--state", str(state), "--k", "2", "--probe", str(probes["pair", 4]))
    assert abs(float(row["bound2"]) - float(parse_report(text)["bound_value"])) < 1e-12


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kme.cli", "hk", "--n", "4", "--k", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "0.5"

import json
import subprocess
import sys

import pytest

from sbgrs.cli import bench_stats, main, oracle_report
from sbgrs.codec import construct_code, loads


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def bundle_file(tmp_path):
    def make(n, k, fmt="json", **kw):
        path = tmp_path / f"b_{n}_{k}.{fmt}"
        args = ["construct", "--n", str(n), "--k", str(k), "--format", fmt, "-o", str(path)]
        for key, v in kw.items():
            args += [f"--{key.replace('_', '-')}", str(v)]
        assert main(args) == 0
        return path
    return make


def test_construct_json(capsys):
    code, out, _ = run(["construct", "--n", "10", "--k", "7", "--seed", "0"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["field"]["p"] ** obj["field"]["m"] == 16
    assert obj["row_weights"] == [4] * 7


def test_construct_identity(capsys):
    code, out, _ = run(["construct", "--n", "4", "--k", "4"], capsys)
    assert code == 0 and json.loads(out)["G"] == [[int(i == j) for j in range(4)] for i in range(4)]


@pytest.mark.parametrize("argv", [
    ["construct", "--n", "3", "--k", "5"],
    ["construct", "--n", "10", "--k", "7", "--q", "13"],
    ["construct", "--n", "10", "--k", "7", "--q", "12"],
    ["construct", "--n", "10"],
    ["construct", "--n", "10", "--k", "0"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 1


def test_k_exceeds_n_message(capsys):
    code, _, err = run(["construct", "--n", "3", "--k", "5"], capsys)
    assert code == 1 and "k exceeds n" in err


def test_exhausted_search_exit_2(capsys):
    code, _, err = run(["construct", "--n", "10", "--k", "7", "--strategy", "exhaustive"], capsys)
    assert code == 2 and "exhaustive" in err


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_verify_roundtrip(bundle_file, fmt, capsys):
    path = bundle_file(10, 7, fmt)
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_verify_edge_bundles(bundle_file, capsys):
    for n, k in [(5, 1), (4, 4), (9, 3)]:
        assert run(["verify", str(bundle_file(n, k))], capsys)[0] == 0


def tamper(path, fn):
    obj = json.loads(path.read_text())
    fn(obj)
    path.write_text(json.dumps(obj))


def test_verify_tampered_entry(bundle_file, capsys):
    path = bundle_file(10, 7)

    def bump(obj):
        row = obj["G"][0]
        j = next(j for j, g in enumerate(row) if g)
        row[j] = 1 if row[j] != 1 else 2
    tamper(path, bump)
    code, out, err = run(["verify", str(path), "--format", "json"], capsys)
    assert code == 3
    report = json.loads(out)
    assert "G-matches-points" in report["failed"]
    assert "G-matches-points" in err


def test_verify_tampered_zero(bundle_file, capsys):
    path = bundle_file(10, 7)
    tamper(path, lambda obj: obj["G"][1].__setitem__(next(j for j, g in enumerate(obj["G"][1]) if g), 0))
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 3
    assert "FAIL sbgm" in out


def test_verify_truncated(bundle_file, capsys):
    path = bundle_file(10, 7)
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    assert run(["verify", str(path)], capsys)[0] == 1
    assert run(["verify", str(path.with_name("missing.json"))], capsys)[0] == 1


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_encode(bundle_file, fmt, capsys):
    path = bundle_file(10, 7, fmt)
    b = loads(path.read_text())
    code, out, _ = run(["encode", str(path), "-m", "0,0,0,0,0,0,0"], capsys)
    assert code == 0 and out.strip() == ",".join(["0"] * 10)
    code, out, _ = run(["encode", str(path), "-m", "1,0,0,0,0,0,0"], capsys)
    assert [int(x) for x in out.strip().split(",")] == b.G[0]


def test_encode_same_across_formats(bundle_file, capsys):
    outs = set()
    for fmt in ("json", "text"):
        path = bundle_file(13, 7, fmt)
        outs.add(run(["encode", str(path), "-m", "3,1,4,1,5,9,2"], capsys)[1])
    assert len(outs) == 1


@pytest.mark.parametrize("msg", ["1,2", "1,2,3,4,5,6,16", "a,b,c,d,e,f,g", "-1,0,0,0,0,0,0"])
def test_encode_bad_message(bundle_file, msg, capsys):
    path = bundle_file(10, 7)
    assert run(["encode", str(path), f"--message={msg}"], capsys)[0] == 1


@pytest.mark.parametrize("n,k,case", [(10, 7, "Case1"), (13, 7, "Case2")])
def test_oracle(n, k, case, capsys):
    code, out, _ = run(["oracle", "--n", str(n), "--k", str(k), "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["case"] == case and rep["claim3"]["count"] == 1
    assert all(rep["appendix_checks"].values()) and rep["claims12"]


def test_oracle_budget(capsys):
    code, out, err = run(["oracle", "--n", "20", "--k", "8", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 2
    assert "error" in rep["claim3"]
    assert rep["appendix_checks"] and all(rep["appendix_checks"].values())


def test_oracle_disjoint_and_bad_args(capsys):
    rep, code = oracle_report(12, 3)
    assert code == 0 and rep["case"] == "DisjointBlocks"
    assert run(["oracle", "--n", "4", "--k", "4"], capsys)[0] == 1


def test_bench(bundle_file, capsys):
    path = bundle_file(10, 7)
    code, out, _ = run(["bench", str(path), "--batch", "500"], capsys)
    stats = json.loads(out)
    assert code == 0 and stats["encodes"] == 500
    assert stats["load_spread"] <= 1


@pytest.mark.parametrize("n,k", [(10, 7), (13, 7), (6, 2), (9, 4), (14, 7)])
def test_bench_vandermonde_comparison(n, k):
    stats = bench_stats(construct_code(n, k), batch=10)
    v = stats["vandermonde"]
    assert stats["total_load"] == k * (n - k + 1)
    assert v["total_load"] > stats["total_load"]
    assert v["load_spread"] >= stats["load_spread"]


def test_construct_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"run{i}.json"
        subprocess.run([sys.executable, "-m", "sbgrs", "construct", "--n", "13", "--k", "7",
                        "--seed", "3", "-o", str(p)], check=True)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_console_exit_codes():
    r = subprocess.run([sys.executable, "-m", "sbgrs", "construct", "--n", "3", "--k", "5"],
                       capture_output=True, text=True)
    assert r.returncode == 1 and "k exceeds n" in r.stderr

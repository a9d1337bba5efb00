import json

from modhull.cli import main
from modhull.hyperbola import format_points


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hull_text(capsys):
    code, out, _ = run_cli(capsys, "hull", "--m", "7", "--a", "1")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "m=7 a=1 method=naive v=6"
    assert len(lines) == 7
    assert all(len(line.split()) == 2 for line in lines[1:])


def test_hull_json(capsys):
    code, out, _ = run_cli(capsys, "hull", "--m", "7", "--a", "1", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["v"] == 6
    assert obj["twice_area"] == 24
    assert [1, 1] in obj["vertices"]


def test_hull_method_flag(capsys):
    code, out, _ = run_cli(capsys, "hull", "--m", "7", "--a", "1", "--method", "fast", "--json")
    naive = run_cli(capsys, "hull", "--m", "7", "--a", "1", "--method", "naive", "--json")[1]
    assert json.loads(out)["vertices"] == json.loads(naive)["vertices"]


def test_hull_rejects_bad_residue(capsys):
    code, _, err = run_cli(capsys, "hull", "--m", "6", "--a", "2")
    assert code == 2
    assert "error" in err


def test_count(capsys):
    code, out, _ = run_cli(capsys, "count", "--m", "7", "--a", "1", "--U", "3", "--V", "5")
    assert code == 0
    assert "count: 3" in out
    assert "main term: 90/49" in out
    assert "difference: 57/49" in out


def test_census(capsys):
    code, out, _ = run_cli(capsys, "census", "--m-max", "60")
    assert code == 0
    assert "violations: none" in out


def test_verify_ok(capsys):
    code, out, _ = run_cli(capsys, "verify", "--m-min", "10", "--m-max", "30", "--a-policy", "one")
    assert code == 0
    assert "all 21 hulls match" in out


def test_verify_mismatch_exit_code(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--m-min", "7", "--m-max", "7",
        "--a-policy", "one",
        "--cutoff-factor", "1/1000000000000",
    )
    assert code == 1
    assert "MISMATCH" in out


def test_sweep_writes_csv(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MODHULL_CACHE_DIR", str(tmp_path / "cache"))
    out_file = tmp_path / "r.csv"
    code, out, _ = run_cli(
        capsys,
        "sweep",
        "--m-min", "10", "--m-max", "20",
        "--a-policy", "one",
        "--seed", "0",
        "--out", str(out_file),
    )
    assert code == 0
    lines = out_file.read_text().strip().split("\n")
    assert lines[0].startswith("m,a,v,phi")
    assert len(lines) == 12
    assert "wrote 11 records" in out


def test_sweep_byte_identical_reruns(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MODHULL_CACHE_DIR", str(tmp_path / "cache"))
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for f in (f1, f2):
        code, _, _ = run_cli(
            capsys,
            "sweep",
            "--m-min", "100", "--m-max", "130",
            "--a-policy", "sample:2",
            "--seed", "42",
            "--out", str(f),
        )
        assert code == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_conic_fit(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text(format_points(((1, 12), (2, 6), (3, 4), (4, 3), (6, 2), (12, 1))))
    code, out, _ = run_cli(capsys, "conic", "fit", "--points", str(pts))
    assert code == 0
    assert out.strip() == "0 1 0 0 0 -12"


def test_conic_fit_full_rank(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text(format_points(((0, 0), (1, 0), (0, 1), (2, 3), (5, 1), (7, 11))))
    code, out, _ = run_cli(capsys, "conic", "fit", "--points", str(pts))
    assert code == 0
    assert "no vanishing form" in out


def test_conic_count(capsys):
    code, out, _ = run_cli(
        capsys, "conic", "count", "--coeffs", "1", "0", "-2", "0", "0", "-1", "--H", "100"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "count: 4"
    assert lines[1:] == ["1 0", "3 2", "17 12", "99 70"]


def test_missing_points_file(capsys):
    code, _, err = run_cli(capsys, "conic", "fit", "--points", "/nonexistent/p.txt")
    assert code == 2
    assert "error" in err

import json
import subprocess
import sys

import pytest

from wreathext.cli import CliConfig, UsageError, main, resolve_config
from wreathext.identities import VerificationReport


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    for key in ("WREATHEXT_CACHE", "WREATHEXT_MODE", "WREATHEXT_QT_CAP", "WREATHEXT_P_CAP",
                "WREATHEXT_THREADS", "WREATHEXT_SEED", "WREATHEXT_CONFIG"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("HOME", str(tmp_path))


def test_partition_info(capsys):
    code, out, _ = run(capsys, "partition", "info", "6,4,1", "--r", "3")
    assert code == 0
    data = json.loads(out)
    assert data["core"] == [3, 1, 1]
    assert data["quotient"] == [[1, 1], [], []]
    assert data["size"] == 11 and data["transpose"] == [3, 2, 2, 2, 1, 1]
    assert data["hooks"][0] == [8, 6, 5, 4, 2, 1]
    assert data["maya"]["charge"] == 0


def test_partition_info_empty(capsys):
    code, out, _ = run(capsys, "partition", "info", "", "--r", "3")
    assert code == 0
    data = json.loads(out)
    assert data["partition"] == [] and data["size"] == 0 and data["core"] == []


def test_partition_info_bad_literal(capsys):
    code, _, err = run(capsys, "partition", "info", "1,2", "--r", "3")
    assert code == 2 and "usage error" in err


def test_hpoly_classical(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "hpoly", "--r", "1", "--core", "",
                       "--quot-size", "2")
    assert code == 0
    data = json.loads(out)
    lams = [entry["lambda"] for entry in data["polys"]]
    assert sorted(lams) == [[1, 1], [2]]
    code2, out2, _ = run(capsys, "--cache-dir", str(tmp_path), "hpoly", "--r", "1", "--core", "",
                         "--quot-size", "2")
    assert out2 == out
    assert list(tmp_path.glob("*.json"))


def test_hpoly_degree_zero(capsys):
    code, out, _ = run(capsys, "hpoly", "--r", "3", "--core", "1", "--quot-size", "0")
    data = json.loads(out)
    assert code == 0 and len(data["polys"]) == 1 and data["polys"][0]["lambda"] == [1]


def test_hpoly_rejects_non_core(capsys):
    code, _, _ = run(capsys, "hpoly", "--r", "3", "--core", "3", "--quot-size", "1")
    assert code == 2


def test_nekrasov(capsys):
    code, out, _ = run(capsys, "nekrasov", "--r", "3", "--lam", "3", "--mu", "3", "--check")
    data = json.loads(out)
    assert code == 0 and data["omega_route_agrees"] is True
    assert {(f["uexp"], f["qexp"], f["texp"]) for f in data["factors"]} == {(1, -2, 1), (1, 3, 0)}
    code, out, _ = run(capsys, "nekrasov", "3", "3", "--r", "3", "--format", "csv")
    assert out.splitlines()[0] == "uexp,qexp,texp" and len(out.splitlines()) == 3


def test_verify_norm_points(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "norm", "--r", "3", "--core", "", "--max-quot", "1",
                       "--mode", "points", "--seed", "7", "--report", str(report))
    assert code == 0 and "PASS" in out
    data = json.loads(report.read_text())
    assert VerificationReport.from_json(data).to_json() == data
    assert data["parameters"]["seed"] == 7


def test_verify_no_modular(capsys):
    code, out, _ = run(capsys, "verify", "no-modular", "--r", "3", "--core", "1", "--orderT", "2",
                       "--qt-cap", "10")
    assert code == 0, out


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "no-modular", "--r", "3", "--orderT", "1",
                       "--qt-cap", "6", "--pochhammer", "per-base")
    assert code == 1 and "FAIL core=[]:T^1" in out


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "bogus")
    assert code == 2 and "unknown suite" in err


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 2


def test_no_series_csv(capsys):
    code, out, _ = run(capsys, "no-series", "--r", "3", "--orderT", "1", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "side,n,value" and len(lines) == 5
    assert lines[1] == "sum,0,1"


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "solver" in capsys.readouterr().out


def test_config_precedence(tmp_path):
    cfg_file = tmp_path / "c.json"
    cfg_file.write_text(json.dumps({"mode": "series", "qt_cap": 7, "seed": 3, "p_cap": 5}))
    env = {"WREATHEXT_QT_CAP": "9", "WREATHEXT_SEED": "4"}
    cfg = resolve_config({"seed": 5}, env, str(cfg_file))
    assert cfg == CliConfig(cache_dir=None, mode="series", qt_cap=9, p_cap=5, threads=1, seed=5)
    assert resolve_config({}, {}) == CliConfig()
    env_file = {"WREATHEXT_CONFIG": str(cfg_file)}
    assert resolve_config({}, env_file).qt_cap == 7


def test_config_errors(tmp_path):
    with pytest.raises(UsageError):
        resolve_config({}, {"WREATHEXT_SEED": "x"})
    with pytest.raises(UsageError):
        resolve_config({}, {}, str(tmp_path / "missing.json"))
    with pytest.raises(UsageError):
        resolve_config({"mode": "fast"}, {})


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "wreathext", "partition", "info", "2,1", "--r", "2"],
                          capture_output=True, text=True, env={"HOME": str(tmp_path), "PATH": ""})
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["core"] == [2, 1]

import json

import pytest

from mckay_dt.cli import RunConfig, UsageError, main, parse_zeta
from mckay_dt.invariants import z_ncdt
from mckay_dt.roots import DynkinLabel
from mckay_dt.series import MultiSeries


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv("MCKAY_CACHE_DIR", raising=False)
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)


def test_roots_d5(capsys):
    code, out, _ = run(capsys, "roots", "D5")
    assert code == 0
    assert len(out.splitlines()) == 20


def test_roots_a1(capsys):
    code, out, _ = run(capsys, "roots", "a1")
    assert (code, out) == (0, "(1)\n")


def test_roots_affine_d5(capsys):
    code, out, _ = run(capsys, "roots", "D5", "--affine", "--bound", "16", "--output", "json")
    data = json.loads(out)
    assert code == 0
    assert {r["m"] for r in data["roots"] if r["sign"] < 0} == {1, 2}
    assert {r["m"] for r in data["roots"] if r["sign"] > 0} >= {0, 1}


def test_roots_invalid_label(capsys):
    code, _, err = run(capsys, "roots", "F4")
    assert code == 2
    assert "A3, D5, E7" in err


@pytest.mark.parametrize("argv", [
    ["roots", "A2", "--affine"],
    ["roots", "A2", "--bound", "3"],
    ["roots", "A2", "--output", "factors"],
    ["walls", "A2", "--bound", "3", "--from", "1,2,3"],
    ["check", "--which", "crepant"],
    ["partition", "--label", "A1", "--kind", "Chamber", "--order", "3"],
    ["partition", "--label", "A1", "--kind", "NCDT", "--order", "3", "--zeta", "1,1"],
    ["partition", "--label", "A1", "--kind", "Chamber", "--order", "3", "--zeta", "1,1,1"],
    ["partition", "--label", "A1", "--kind", "Chamber", "--order", "3", "--zeta", "0.5,1"],
    ["partition", "--label", "A1", "--kind", "NCDT", "--order", "-1"],
    ["partition", "--label", "A1", "--kind", "BOGUS", "--order", "3"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_zeta_on_wall_prints_root(capsys):
    code, _, err = run(capsys, "partition", "--label", "A1", "--kind", "Chamber",
                       "--order", "4", "--zeta=1,-1")
    assert code == 2
    assert "(1, 1)" in err


def test_partition_ncdt_plain(capsys):
    code, out, err = run(capsys, "partition", "--label", "A1", "--kind", "NCDT", "--order", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("# label=A1 kind=NCDT order=4")
    assert lines[1].strip() == "1"
    assert lines[2] == "-1 * q_0"
    assert "cache: disabled" in err


def test_partition_json_roundtrip(capsys):
    code, out, _ = run(capsys, "partition", "--label", "A1", "--kind", "NCDT",
                       "--order", "4", "--output", "json")
    data = json.loads(out)
    assert code == 0
    assert {k for k in data} >= {"label", "kind", "order", "assumed_dt_pt", "timestamp", "series"}
    assert data["timestamp"] is None
    assert MultiSeries.from_dict(data["series"]) == z_ncdt("A1", 4)


def test_partition_timestamp_pinned(capsys, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    _, out, _ = run(capsys, "partition", "--label", "A1", "--kind", "GW", "--order", "2", "--output", "json")
    assert json.loads(out)["timestamp"] == "1970-01-01T00:00:00+00:00"


def test_partition_positive_chamber(capsys):
    code, out, _ = run(capsys, "partition", "--label", "A1", "--kind", "Chamber",
                       "--zeta", "1,1", "--order", "4", "--output", "json")
    data = json.loads(out)
    assert code == 0
    assert data["series"]["terms"] == [[[0, 0], "1"]]
    assert data["assumed_dt_pt"] is False


def test_partition_d5_factors(capsys):
    code, out, _ = run(capsys, "partition", "--label", "D5", "--kind", "PT+",
                       "--order", "8", "--output", "factors")
    from mckay_dt.d5 import CHAMBER_FACTORS

    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 20
    assert {line.split()[1] for line in lines} == set(CHAMBER_FACTORS)


def test_partition_dt_factors_list_macmahon(capsys):
    _, out, _ = run(capsys, "partition", "--label", "A1", "--kind", "DT+", "--order", "4",
                    "--output", "factors")
    assert out.splitlines()[0].startswith("M(-q^delta)^2")


def test_partition_gw_factors(capsys):
    _, out, _ = run(capsys, "partition", "--label", "A1", "--kind", "GW", "--order", "3",
                    "--output", "factors")
    assert out.splitlines() == ["(1-ut_1)^{-1}", "(1-u^{2}t_1)^{-2}"]


def test_determinism(capsys):
    argv = ["partition", "--label", "A2", "--kind", "DT-", "--order", "5", "--output", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_cache_roundtrip(capsys, tmp_path, monkeypatch):
    argv = ["partition", "--label", "A2", "--kind", "NCDT", "--order", "5", "--output", "json"]
    _, fresh, err1 = run(capsys, *argv, "--cache-dir", str(tmp_path))
    assert "cache: miss" in err1
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    assert not list(tmp_path.glob("*.tmp"))
    monkeypatch.setenv("MCKAY_CACHE_DIR", str(tmp_path))
    _, cached, err2 = run(capsys, *argv)
    assert "cache: hit" in err2
    assert cached == fresh
    assert MultiSeries.from_dict(json.loads(cached)["series"]) == z_ncdt("A2", 5)
    _, _, err3 = run(capsys, *argv, "--no-cache")
    assert "cache: disabled" in err3


def test_cache_ignores_corrupt_file(capsys, tmp_path):
    argv = ["partition", "--label", "A1", "--kind", "PT+", "--order", "3", "--cache-dir", str(tmp_path)]
    run(capsys, *argv)
    (path,) = tmp_path.glob("*.json")
    path.write_text("{not json")
    code, _, err = run(capsys, *argv)
    assert code == 0 and "cache: miss" in err


def test_cache_key_depends_on_config():
    a = RunConfig(DynkinLabel.parse("A1"), 4, "NCDT")
    b = RunConfig(DynkinLabel.parse("A1"), 5, "NCDT")
    c = RunConfig(DynkinLabel.parse("A1"), 4, "Chamber", parse_zeta("1,2"))
    assert len({a.cache_key(), b.cache_key(), c.cache_key()}) == 3
    assert a.cache_key() == RunConfig(DynkinLabel.parse("a1"), 4, "NCDT").cache_key()


def test_run_config_invariants():
    with pytest.raises(UsageError):
        RunConfig(DynkinLabel.parse("A1"), 4, "Chamber")
    with pytest.raises(UsageError):
        RunConfig(DynkinLabel.parse("A1"), 4, "PT+", parse_zeta("1,1"))


def test_parse_zeta():
    assert parse_zeta("1/2,-3") == (0.5, -3)
    assert str(parse_zeta("1/2,-3")[0]) == "1/2"


@pytest.mark.parametrize("argv", [
    ["check", "--label", "A2", "--which", "crepant", "--order", "8"],
    ["check", "--label", "A2", "--which", "gw-pt", "--order", "8"],
    ["check", "--which", "d5", "--order", "6"],
])
def test_checks_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_check_bps_table(capsys):
    code, out, _ = run(capsys, "check", "--label", "A1", "--which", "bps", "--order", "8")
    assert code == 0
    assert "n_0(1) = -1" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--label", "A1", "--which", "bps", "--order", "6",
                       "--output", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["table"]["n"] == [{"g": 0, "beta": [1], "value": "-1"}]


def test_check_mismatch_exits_1(capsys, monkeypatch):
    from mckay_dt import cli
    from mckay_dt.invariants import IdentityReport

    monkeypatch.setattr(
        cli, "check_crepant",
        lambda label, order: IdentityReport("crepant", str(label), order, False, 3, (1, 0), 1, 2),
    )
    code, out, _ = run(capsys, "check", "--label", "A1", "--which", "crepant")
    assert code == 1
    assert out.startswith("FAIL crepant")


def test_quiver_and_walls(capsys):
    code, out, _ = run(capsys, "quiver", "A2", "--framed")
    assert code == 0 and "r_inf: inf -> 0" in out and "W:" in out
    code, out, _ = run(capsys, "quiver", "A2", "--output", "json")
    assert len(json.loads(out)["superpotential"]) == 6
    code, out, _ = run(capsys, "walls", "A1", "--bound", "2")
    assert out.splitlines() == ["(0, 1) real", "(1, 0) real", "(1, 1) imaginary"]
    code, out, _ = run(capsys, "walls", "A1", "--bound", "2", "--from", "2,1", "--to=-1,-2",
                       "--output", "json")
    assert [w["direction"] for w in json.loads(out)["walls"]] == [1, 1, 1]


def test_module_entry_point_exit_codes():
    import subprocess
    import sys

    ok = subprocess.run([sys.executable, "-m", "mckay_dt", "roots", "A2"], capture_output=True, text=True)
    assert ok.returncode == 0 and len(ok.stdout.splitlines()) == 3
    bad = subprocess.run([sys.executable, "-m", "mckay_dt", "roots", "Z2"], capture_output=True, text=True)
    assert bad.returncode == 2

import json
from importlib import resources

import jsonschema
import pytest

from qutrit_protocols import paper_data
from qutrit_protocols.analysis import parse_csv
from qutrit_protocols.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, main
from qutrit_protocols.config import ConfigError, RunConfig


@pytest.fixture(scope="module")
def schema():
    text = resources.files("qutrit_protocols").joinpath("schemas/campaign.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("protocol, cases", [("ss", "729 cases"), ("ccp", "243 cases"), ("dba", "324 cases")])
def test_ideal(capsys, protocol, cases):
    code, out, _ = run(capsys, "ideal", "--protocol", protocol)
    assert code == EXIT_OK
    assert cases in out and "PASS" in out


def test_ideal_dba_reports_retained_set(capsys):
    _, out, _ = run(capsys, "ideal", "--protocol", "dba")
    assert "retained_rounds=36" in out
    assert "(0, 0, 0), (1, 1, 1), (2, 0, 1), (2, 1, 0)" in out


def test_classical_bound(capsys):
    code, out, _ = run(capsys, "classical-bound", "--trials", "10000", "--seed", "3", "--verify-paper-strategy")
    assert code == EXIT_OK
    assert "7/9 = 0.7778" in out
    assert "paper strategy: 189/243" in out
    best = out.split("best ")[1].split(" ")[0]
    num, den = map(int, best.split("/"))
    assert num * 9 <= 7 * den


def test_settings_table_ccp(capsys):
    code, out, _ = run(capsys, "settings-table", "--protocol", "ccp", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert len(rows) == 9
    assert rows[0]["distributor"] == [0, 0, 0] and rows[0]["relay"] == [0, 0, 0]
    for row in rows:
        dist, relay = paper_data.ENCODING_TABLE_S2[row["setting"][0]]
        assert row["distributor"] == pytest.approx(dist, abs=1e-12)
        assert row["relay"] == pytest.approx(relay, abs=1e-12)


def test_settings_table_s1(capsys):
    code, out, _ = run(capsys, "settings-table", "--protocol", "ss", "--convention", "table-s1")
    assert code == EXIT_OK
    lines = parse_csv(out)
    assert len(lines) == 9
    for line in lines:
        dist, relay = paper_data.ENCODING_TABLE_S1[(int(line["x0"]), int(line["x1"]))]
        assert [float(line[f"relay_{k}"]) for k in "012"] == pytest.approx(relay, abs=1e-6)
        assert [float(line[f"distributor_{k}"]) for k in "012"] == pytest.approx(dist, abs=1e-6)


def test_calibrate_drift(capsys):
    code, out, _ = run(capsys, "calibrate-drift", "--target", "0.01")
    assert code == EXIT_OK
    assert "0.1506382576" in out


def test_simulate_table1_json(capsys, schema, tmp_path):
    out_file = tmp_path / "ss.json"
    code, _, _ = run(capsys, "simulate", "--protocol", "ss", "--format", "json", "--seed", "1", "--out", str(out_file))
    assert code == EXIT_OK
    doc = json.loads(out_file.read_text())
    jsonschema.validate(doc, schema)
    assert doc["seed"] == 1 and doc["protocol"] == "ss"
    valid = [s for s in doc["settings"] if s["expected"] is not None]
    assert len(valid) == 9
    # statistical band; single rows may cross 10% for a given seed
    assert all(0 < s["value"] <= 0.12 for s in valid)
    assert doc["summary"]["ss"]["all_secure"]


@pytest.mark.parametrize("protocol", ["dba", "ccp"])
def test_simulate_json_schema(capsys, schema, protocol):
    code, out, _ = run(capsys, "simulate", "--protocol", protocol, "--format", "json", "--triggers", "20000")
    assert code == EXIT_OK
    jsonschema.validate(json.loads(out), schema)


def test_simulate_zero_noise(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "protocol": "ss",
        "noise": {"dark_prob": [0, 0, 0], "click_prob": 1.0, "drift_sigma": 0.0, "triggers": 500},
        "settings": [[[0, 0], [0, 0], [2, 0]], [2, 0, 2, 1, 2, 2]],
    }))
    code, out, _ = run(capsys, "simulate", "--config", str(cfg))
    assert code == EXIT_OK
    rows = parse_csv(out)
    assert [r["qter_pct"] for r in rows] == ["0.00", "0.00"]
    assert rows[0]["d2"] == "500" and rows[1]["d0"] == "500"


def test_simulate_csv_header(capsys):
    _, out, _ = run(capsys, "simulate", "--protocol", "ccp", "--triggers", "2000")
    assert out.splitlines()[0] == "sa,sb,sc,T,d0,d1,d2,total,success_pct,stderr_pct"
    assert len(out.splitlines()) == 19


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_simulate_byte_identical(capsys, tmp_path, fmt):
    paths = [tmp_path / f"run{i}.{fmt}" for i in range(2)]
    for p in paths:
        assert run(capsys, "simulate", "--protocol", "dba", "--format", fmt, "--seed", "9", "--out", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_flags_override_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"protocol": "ss", "seed": 4, "noise": {"triggers": 20000}}))
    _, out, _ = run(capsys, "simulate", "--config", str(cfg), "--protocol", "ccp", "--format", "json")
    doc = json.loads(out)
    assert doc["protocol"] == "ccp" and doc["seed"] == 4
    assert doc["config_echo"]["noise"]["triggers"] == 20000


@pytest.mark.parametrize(
    "payload",
    [
        {"protocol": "ss", "bogus": 1},
        {"protocol": "qkd"},
        {"noise": {"click_prob": 2}},
        {"noise": {"shots": 3}},
        {"protocol": "ccp", "settings": [[0, 0, 1]]},
        {"protocol": "dba", "settings": [[0, 0, 2, 0, 0, 0]]},
        {"seed": -1},
    ],
)
def test_config_errors(capsys, tmp_path, payload):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps(payload))
    code, _, err = run(capsys, "simulate", "--config", str(cfg))
    assert code == EXIT_CONFIG
    assert "config error" in err


def test_malformed_json(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    assert run(capsys, "simulate", "--config", str(cfg))[0] == EXIT_CONFIG


def test_too_few_triggers(capsys):
    code, _, err = run(capsys, "simulate", "--protocol", "ccp", "--triggers", "10")
    assert code == EXIT_CONFIG and "no detections" in err


def test_io_error(capsys, tmp_path):
    assert run(capsys, "simulate", "--config", str(tmp_path / "missing.json"))[0] == EXIT_IO
    out = tmp_path / "no-such-dir" / "x.csv"
    assert run(capsys, "simulate", "--triggers", "20000", "--out", str(out))[0] == EXIT_IO


def test_run_config_direct():
    cfg = RunConfig(protocol="ccp", settings="exhaustive")
    assert len(cfg.resolved_settings()) == 243
    assert len(RunConfig(protocol="dba", settings="exhaustive").resolved_settings()) == 324
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"unknown": True})

import json

import pytest
from click.testing import CliRunner

from vwhecke.cli import ConfigError, RunConfig, main, parse_config_blocks, parse_nu


def run(*args):
    res = CliRunner().invoke(main, list(args))
    return res.exit_code, res.output


def test_verify_tensor_suite_reports_brauer_parameter():
    code, out = run("verify", "--group", "sp:4", "--k", "2", "--suite", "relations")
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["derived_constants"]["m0"] == "4"
    row = {r["quantity"]: r for r in doc["paper_discrepancies"]}["m0"]
    assert row["printed"] == "-2" and row["matches"] is False
    # relations that fail on the bare tensor space make the run fail
    assert code == 1


def test_verify_orthogonal_m1():
    code, out = run("verify", "--group", "opq:3,2", "--k", "2", "--suite", "relations")
    doc = json.loads(out)
    assert doc["derived_constants"]["m1"] in ("1", "-1")


def test_malformed_group_exits_2():
    assert run("verify", "--group", "sp:5", "--k", "1")[0] == 2
    assert run("psmap", "--group", "sp:4", "--delta", "9")[0] == 2
    assert run("psmap", "--group", "sp:4", "--delta", "1", "--nu", "1")[0] == 2


def test_psmap_symplectic():
    code, out = run("psmap", "--group", "sp:4", "--delta", "1", "--nu", "3/2,-1")
    doc = json.loads(out)
    assert code == 0
    assert doc["sides"]["mu"]["cHecke"] == "0"
    assert doc["sides"]["mubar"]["cHecke"] == "1"
    assert doc["sides"]["mu"]["isomorphic"] and doc["sides"]["mubar"]["isomorphic"]
    assert "paper_discrepancies" in doc["sides"]["mu"]


def test_psmap_orthogonal_and_tagged_delta():
    code, out = run("psmap", "--group", "opq:3,2", "--delta", "det:1")
    doc = json.loads(out)
    assert code == 0
    assert doc["case"]["sigma"] == "det"
    assert {doc["sides"][s]["cHecke"] for s in ("mu", "mubar")} == {"1/2"}


def test_psmap_zero_legs():
    code, out = run("psmap", "--group", "sp:4", "--delta", "0", "--side", "mu")
    doc = json.loads(out)
    assert code == 0 and doc["sides"]["mu"]["dim"] == 1


def test_unitary_sl2_grid():
    code, out = run("unitary", "--group", "sp:2", "--delta", "1", "--grid", "0;i;-i;1;-1;2;-2")
    assert code == 0
    verdicts = {v["nu"][0]: v["verdict"] for v in json.loads(out)["verdicts"]}
    for nu, verdict in verdicts.items():
        real_nonzero = nu not in ("0", "i", "-i")
        assert (verdict == "NOT_UNITARY") == real_nonzero


def test_unitary_sp4_imaginary():
    code, out = run("unitary", "--group", "sp:4", "--delta", "1", "--nu", "i,2*i")
    v = json.loads(out)["verdicts"][0]
    assert code == 0 and v["verdict"] == "UNKNOWN"
    assert all(s["verdict"] == "UNKNOWN" for s in v["sides"].values())


def test_unitary_empty_grid():
    code, out = run("unitary", "--group", "sp:2", "--delta", "1", "--grid", "")
    assert code == 0 and json.loads(out)["verdicts"] == []


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("psmap", "--group", "sp:4", "--delta", "1", "--out", str(a))
    run("psmap", "--group", "sp:4", "--delta", "1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_config_round_trip_and_file(tmp_path):
    cfg = RunConfig("psmap", "opq:3,2", delta="triv:1", nu="1/2,i", side="mu")
    assert RunConfig.parse(cfg.to_text()) == cfg
    with pytest.raises(ConfigError):
        RunConfig.parse("group: sp:4")
    with pytest.raises(ConfigError):
        parse_nu("1,2", 3)
    path = tmp_path / "cases.txt"
    path.write_text(cfg.to_text() + "\n\ncommand: unitary\ngroup: sp:2\ndelta: 1\nnu: i\n")
    assert len(parse_config_blocks(path.read_text())) == 2
    code, out = run("run-config", str(path))
    doc = json.loads(out)
    assert code == 0
    assert [c["command"] for c in doc["cases"]] == ["psmap", "unitary"]

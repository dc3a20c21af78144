"""End-to-end smoke tests for the python bindings."""

import json

import pytest

import dcc_sim


CONFIG = {
    "seed": 21,
    "epochs": 10,
    "agents": {
        "honest-creator": 2,
        "plagiarist": 1,
        "diligent-investor": 2,
        "active-governor": 2,
        "honest-reporter": 1,
    },
}


def test_ledger_ops_and_conservation():
    w = dcc_sim.World()
    w.genesis("{}")
    w.open_account("alice")
    w.open_account("bob")
    w.mint_labor("alice", 100)
    w.convert_labor_to_capital("alice", 100)  # 50 Capital at the default 2 L/C
    assert w.balance("alice", dcc_sim.TokenKind.Capital) == 50
    assert w.balance("alice", dcc_sim.TokenKind.Labor) == 0
    w.transfer("alice", "bob", dcc_sim.TokenKind.Capital, 10)
    assert w.balance("bob", dcc_sim.TokenKind.Capital) == 10
    assert w.conservation_violation() == ""


def test_non_capital_transfers_refuse():
    w = dcc_sim.World()
    w.genesis("{}")
    w.open_account("a")
    w.open_account("b")
    w.mint_labor("a", 10)
    with pytest.raises(dcc_sim.DccError):
        w.transfer("a", "b", dcc_sim.TokenKind.Labor, 1)


def test_run_replay_verify_round_trip(tmp_path):
    out = tmp_path / "run"
    result = dcc_sim.run(json.dumps(CONFIG), str(out))
    assert result["events"] > 0
    log = out / "events.ndjson"
    assert log.exists()
    assert dcc_sim.replay(str(log)) == result["final_state_hash"]
    assert dcc_sim.verify(str(log)) == []


def test_determinism_across_runs(tmp_path):
    a = dcc_sim.run(json.dumps(CONFIG), str(tmp_path / "a"))
    b = dcc_sim.run(json.dumps(CONFIG), str(tmp_path / "b"))
    assert a["final_state_hash"] == b["final_state_hash"]
    assert (tmp_path / "a" / "events.ndjson").read_bytes() == (
        tmp_path / "b" / "events.ndjson"
    ).read_bytes()


def test_reports_have_documented_schemas(tmp_path):
    out = tmp_path / "run"
    dcc_sim.run(json.dumps(CONFIG), str(out))
    log = str(out / "events.ndjson")
    metrics = dcc_sim.report(log, "metrics")
    assert metrics.startswith(
        "epoch,token_supply,total_information,invalid_information,valid_ratio,"
        "absorbed_tokens,circulation_ratio,inflation_ratio\n"
    )
    credit = dcc_sim.report(log, "credit")
    assert credit.startswith("epoch,subject,score,cause\n")
    with pytest.raises(dcc_sim.DccError):
        dcc_sim.report(log, "nonsense")


def test_nash_analysis():
    # investing strictly dominates for every community
    matrix = "\n".join(
        [
            "III 3 3 3",
            "IIN 3 3 1",
            "INI 3 1 3",
            "INN 3 1 1",
            "NII 1 3 3",
            "NIN 1 3 1",
            "NNI 1 1 3",
            "NNN 1 1 1",
        ]
    )
    result = dcc_sim.nash(matrix)
    assert result["nash"] == ["III"]
    assert "III" in result["pareto"]


def test_config_validation_is_closed_world():
    bad = dict(CONFIG)
    bad["unexpected_key"] = True
    with pytest.raises(dcc_sim.DccError):
        dcc_sim.run(json.dumps(bad), "")

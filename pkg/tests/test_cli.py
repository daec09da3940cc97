import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from wittenzeta.config import UserConfig, user_config
from wittenzeta.main import app, main


GOLDEN = Path(__file__).parent / "golden"

runner = CliRunner()


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setattr(UserConfig, "CONFIG_FILE", tmp_path / "config" / "config.ini")
    user_config.cache_clear()
    yield
    user_config.cache_clear()


def invoke(tmp_path, *args):
    return runner.invoke(app, ["--json", "--cache", str(tmp_path / "cache"), *args])


def record(result) -> dict:
    return json.loads(result.stdout.strip().splitlines()[-1])


def golden(name: str) -> dict:
    with open(GOLDEN / name) as f:
        return json.load(f)


def test_roots(tmp_path):
    result = invoke(tmp_path, "roots", "A2")
    assert result.exit_code == 0
    out = record(result)
    assert out["command"] == "roots"
    assert out["status"] == "ok"
    assert out["payload"] == golden("roots_A2.json")


@pytest.mark.parametrize("label", ["G2", "B3"])
def test_dset_matches_golden_and_cache(tmp_path, label):
    cold = invoke(tmp_path, "dset", label)
    warm = invoke(tmp_path, "dset", label)
    assert cold.exit_code == warm.exit_code == 0
    assert record(cold)["payload"] == golden(f"dset_{label}.json")
    assert record(warm)["payload"] == record(cold)["payload"]
    assert len(list((tmp_path / "cache").glob("*.json"))) == 1


def test_invalid_type(tmp_path):
    assert invoke(tmp_path, "roots", "X9").exit_code == 2
    assert invoke(tmp_path, "dset", "D3").exit_code == 2


def test_budget_exceeded(tmp_path):
    result = invoke(tmp_path, "dset", "E6", "--budget", "1000")
    assert result.exit_code == 1
    out = record(result)
    assert out["status"] == "error"
    assert out["payload"]["error"] == "BudgetExceeded"


def test_verify_commands(tmp_path):
    eh = invoke(tmp_path, "verify-eh", "G2")
    assert eh.exit_code == 0
    assert record(eh)["payload"]["holds"] is True
    assert record(eh)["payload"]["right"]["values"] == [1, 2, 3]
    de = invoke(tmp_path, "verify-de", "B3")
    assert de.exit_code == 0
    assert record(de)["payload"]["left"]["values"] == [1, 2]


def test_tset_values_are_strings_for_fractions(tmp_path):
    out = record(invoke(tmp_path, "tset", "G2"))
    assert out["payload"]["values"] == ["1/3", "1/2", "2/3", 1]


def test_even_value(tmp_path):
    result = invoke(tmp_path, "even-value", "A2", "--s", "2")
    assert result.exit_code == 0
    value = record(result)["payload"]["values"][0]
    assert value["exact"] == "4/2835"
    assert value["pi_power"] == 6
    assert value["integral"] == "-1/30240"
    assert value["numeric"]["value"].startswith("1.35")
    assert float(value["numeric"]["error"]) < 1e-30
    assert invoke(tmp_path, "even-value", "A2", "--s", "3").exit_code == 2


def test_even_value_table(tmp_path):
    result = invoke(tmp_path, "even-value", "A1", "--s", "4", "--all")
    values = record(result)["payload"]["values"]
    assert [(v["s"], v["exact"]) for v in values] == [(2, "1/6"), (4, "1/90")]


def test_multisum(tmp_path):
    result = invoke(tmp_path, "multisum", "A1", "--s", "2", "--cutoff", "100")
    assert result.exit_code == 0
    assert record(result)["payload"]["value"].startswith("1.63")
    assert invoke(tmp_path, "multisum", "A1", "--s", "1").exit_code == 1


def test_identity(tmp_path):
    result = invoke(tmp_path, "identity", "a2", "--n", "1")
    assert result.exit_code == 0
    payload = record(result)["payload"]
    assert payload["lhs"] == payload["rhs"] == "1/14400"
    assert invoke(tmp_path, "identity", "b2", "--n", "2").exit_code == 0
    assert invoke(tmp_path, "identity", "a2", "--n", "0").exit_code == 2


def test_pole_coefficient(tmp_path):
    payload = record(invoke(tmp_path, "pole-coeff-a2", "--m", "1"))["payload"]
    assert payload["collected"] == [
        dict(coefficient="4", zeta=[2, 3]),
        dict(coefficient="2", zeta=[5]),
    ]
    assert payload["derivative_order"] == 1
    assert payload["numeric"]["value"].startswith("9.983")
    assert float(payload["numeric"]["error"]) < 1e-30
    assert set(payload["zeta_derivative"]) == {"value", "error"}


def test_onodera(tmp_path):
    result = invoke(tmp_path, "onodera", "--m", "2")
    assert result.exit_code == 0
    assert record(result)["payload"]["terms_match"] is True
    assert float(record(result)["payload"]["closed_value"]["error"]) < 1e-30
    assert invoke(tmp_path, "onodera", "--m", "3").exit_code == 2


def test_triangulate(tmp_path):
    payload = record(invoke(tmp_path, "triangulate", "B2", "--emit-cells"))["payload"]
    assert payload["dim"] == 2
    assert payload["volume"] == "1"
    assert payload["levels"] == [1, 2]
    assert len(payload["cells"]) == payload["cell_count"]
    assert payload["denominators"] == [1, 2]


def test_int_rep_check(tmp_path):
    result = invoke(tmp_path, "int-rep-check", "A2", "--s", "2")
    assert result.exit_code == 0
    payload = record(result)["payload"]
    assert float(payload["residual"]) < 1e-6
    assert payload["holds"] is True
    graded = invoke(tmp_path, "int-rep-check", "A2", "--s", "2.5")
    assert graded.exit_code == 0
    assert record(graded)["payload"]["holds"] is True
    assert invoke(tmp_path, "int-rep-check", "G2").exit_code == 1


def test_text_output(tmp_path):
    result = runner.invoke(app, ["--cache", str(tmp_path / "cache"), "hset", "G2"])
    assert result.exit_code == 0
    assert "H(G2) = {2, 3}" in result.stdout
    result = runner.invoke(app, ["--cache", str(tmp_path / "cache"), "identity", "a2"])
    assert "identity a2 at n = 1: holds" in result.stdout


def test_invalid_global_option_exits_with_usage_code(tmp_path, monkeypatch):
    monkeypatch.setattr("sys.argv", ["wittenzeta", "--prec", "-3", "hset", "A2"])
    with pytest.raises(SystemExit) as exit_info:
        main()
    assert exit_info.value.code == 2

import json

import pytest
from typer.testing import CliRunner

from trs.cli import app
from trs.core.config import settings
from trs.core.logging import setup_logging
from trs.storage.report_store import ReportStore

runner = CliRunner()


@pytest.fixture(autouse=True)
def restore_log_sink():
    # the CLI callback points loguru at the runner's captured stderr
    yield
    setup_logging()


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write


@pytest.fixture
def star_file(write_json, squares13):
    return write_json(
        "star.json",
        {"field": {"p": 13}, "n": 7, "k": 3, "alpha": list(squares13) + [0], "t": [1], "h": [0], "eta": [2]},
    )


def _run(*args):
    result = runner.invoke(app, list(args))
    assert result.exit_code == 0, result.output
    return result


def test_tau_lb():
    assert _run("tau-lb", "22", "7", "1", "2").stdout.strip() == "6"


def test_construct(write_json, small_params):
    path = write_json("small.json", small_params)
    body = json.loads(_run("construct", "--params", path, "--emit-generator", "--message", "1,1").stdout)
    assert body["generator"] == [[4, 6, 0, 0], [1, 2, 3, 4]]
    assert body["codeword"] == [5, 1, 3, 4]


def test_mds_check(write_json, small_params):
    path = write_json("small.json", small_params)
    body = json.loads(_run("mds-check", "--params", path).stdout)
    assert body["mds"] is False and body["witness"] == [2, 3]


def test_dual(write_json):
    path = write_json("gf5.json", {"field": {"p": 5}, "n": 4, "k": 2, "alpha": [1, 2, 3, 4], "t": [1], "h": [1], "eta": [2]})
    body = json.loads(_run("dual", "--params", path).stdout)
    assert (body["dual"]["t"], body["dual"]["h"], body["dual"]["eta"]) == ([1], [1], [3])


def test_grs_check(star_file):
    body = json.loads(_run("grs-check", "--params", star_file).stdout)
    assert body["grs"] is False and body["certificate"] == "star_low_rate"


def test_eta_census(star_file, write_json):
    domain = write_json("domain.json", [[0], [2], [12]])
    body = json.loads(_run("eta-census", "--base", star_file, "--eta-domain", domain).stdout)
    assert body["counts"] == {"non_mds": 1, "mds_grs": 1, "mds_non_grs": 1}


@pytest.mark.parametrize("engine", ["linear", "popov", "brute"])
def test_decode(star_file, engine):
    body = json.loads(_run("decode", "--params", star_file, "--received", "0,0,0,0,0,0,0", "--engine", engine).stdout)
    assert body["status"] == "success" and body["error_weight"] == 0


def test_decode_received_from_file(star_file, write_json):
    received = write_json("received.json", [0, 0, 0, 0, 0, 0, 0])
    body = json.loads(_run("decode", "--params", star_file, "--received", received).stdout)
    assert body["codeword"] == [0] * 7


def test_mds_search():
    result = _run("mds-search", "--p", "7", "--n", "4", "--k", "2", "--t", "1", "--h", "0", "--attempts", "5", "--seed", "3")
    found = json.loads(result.stdout)
    assert all(code["k"] == 2 and code["t"] == [1] for code in found)


def test_simulate(write_json, tmp_path):
    config = write_json("sweep.json", {"field": {"p": 13}, "n": 12, "k_list": [4], "trials": 2, "codes": 1})
    out = tmp_path / "report.json"
    result = _run("simulate", "--config", config, "--table", "--name", "cli-sweep", "--out", str(out), "--seed", "5")
    assert "k\tell\tzeta\ttau=0" in result.stdout
    assert ReportStore().load("cli-sweep").config.seed == 5
    assert json.loads(out.read_text())["config"]["seed"] == 5


def test_simulate_summary(write_json):
    config = write_json("sweep.json", {"field": {"p": 13}, "n": 12, "k_list": [4], "trials": 2, "codes": 1})
    result = _run("simulate", "--config", config)
    assert "tau_max" in result.output


def test_simulate_paper_scale(write_json, tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "SIM_PAPER_TRIALS", 1)
    monkeypatch.setattr(settings, "SIM_PAPER_CODES", 1)
    config = write_json("sweep.json", {"field": {"p": 13}, "n": 12, "k_list": [4], "trials": 5, "codes": 3})
    out = tmp_path / "paper.json"
    _run("simulate", "--config", config, "--paper-scale", "--out", str(out))
    report = json.loads(out.read_text())
    assert (report["config"]["trials"], report["config"]["codes"]) == (1, 1)
    assert len(report["codes"]) == 1


def test_toolkit_error_exits_with_2(write_json, small_params):
    small_params["alpha"] = [1, 1, 2, 3]
    result = runner.invoke(app, ["construct", "--params", write_json("bad.json", small_params)])
    assert result.exit_code == 2
    assert "InvalidCodeParameters" in result.output


def test_unreadable_file_exits_with_2(tmp_path):
    result = runner.invoke(app, ["construct", "--params", str(tmp_path / "missing.json")])
    assert result.exit_code == 2

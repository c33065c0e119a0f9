import json

import pytest
from pydantic import ValidationError

from trs.core.config import settings
from trs.core.exceptions import OutOfRange
from trs.core.rng import make_rng
from trs.models.decoding import DecodeStatus
from trs.schemas.codes import FieldParams
from trs.schemas.simulation import SimConfig, SimReport
from trs.services.simulator import (
    emit_table,
    estimate_tau_max,
    expectation_violations,
    find_code,
    load_config,
    make_job,
    replay_cell,
    run_jobs,
    run_sweep,
    run_trial,
    sample_codes,
    sweep_size,
    tau_max_from_table,
    tau_range,
)
from trs.services.twisted_code import code_from_params, sample_random_code
from trs.workers.sweep_worker import SweepWorker


@pytest.fixture(scope="module")
def small_report():
    cfg = SimConfig(field=FieldParams(p=13), n=12, k_list=[4], trials=4, codes=2, seed=7)
    return run_sweep(cfg)


def _jobs(cfg):
    return [
        make_job(cfg, code_from_params(record.params), record.code_id, zeta)
        for record in sample_codes(cfg)
        for zeta in cfg.zeta_list
    ]


class TestRadiusSearch:
    def test_tau_range(self):
        assert tau_range(12, 4, 1, 1) == [1, 2, 3, 4, 5]
        assert tau_range(22, 7, 1, 2) == [4, 5, 6, 7, 8]
        assert tau_range(22, 7, 1, 2, beyond_radius=False) == [4, 5, 6, 7]

    def test_tau_max_from_table(self):
        assert tau_max_from_table({1: 0.0, 2: 0.1, 3: 0.3, 4: 0.1}, 0.2) == 4
        assert tau_max_from_table({1: 0.2, 2: 0.5}, 0.2) == -1
        assert tau_max_from_table({}, 0.2) == -1

    def test_estimate_with_a_stub_decoder(self, gf13, small_config):
        code = sample_random_code(gf13, 12, 4, 1, seed=0)

        def trial_fn(code, zeta, tau, seed, engine):
            return DecodeStatus.FAILURE if tau >= 4 else DecodeStatus.SUCCESS

        tau_max, table = estimate_tau_max(code, 1, small_config, trial_fn=trial_fn)
        assert tau_max == 3
        assert sorted(table) == [1, 2, 3, 4, 5]
        assert table[4].failures == table[4].trials == 4
        assert table[3].probability == 0.0


class TestTrials:
    def test_clean_word_decodes(self, gf13):
        code = sample_random_code(gf13, 12, 4, 1, seed=1)
        assert run_trial(code, 1, 0, make_rng(1)) == DecodeStatus.SUCCESS

    def test_reproducible(self, gf13):
        code = sample_random_code(gf13, 12, 4, 2, seed=2)
        first = [run_trial(code, 1, 3, make_rng(2, i)) for i in range(4)]
        assert first == [run_trial(code, 1, 3, make_rng(2, i)) for i in range(4)]

    def test_weight_out_of_range(self, small_code):
        with pytest.raises(OutOfRange):
            run_trial(small_code, 1, 5, make_rng(0))


class TestSweep:
    def test_sweep_size(self, small_config):
        assert sweep_size(small_config) == 5 * 4 * 2

    def test_code_sampling_ignores_trial_count(self, small_config):
        more = small_config.model_copy(update={"trials": 9})
        assert sample_codes(small_config) == sample_codes(more)

    def test_report_structure(self, small_report):
        assert len(small_report.codes) == 2
        assert len(small_report.tau_max) == 2
        assert len(small_report.cells) == 2 * 5
        (row,) = small_report.rows
        assert (row.k, row.tau_lb, row.half_distance) == (4, 3, 4)
        assert sum(row.histogram.values()) == 2
        assert all(c.failures == c.trials for c in small_report.cells if c.tau == 5)

    def test_probability_columns(self, small_report):
        (row,) = small_report.rows
        threshold = small_report.config.threshold
        if row.p_max_at is not None:
            assert row.p_max_at < threshold
        if row.p_min_above is not None:
            assert row.p_min_above >= threshold

    def test_sweep_is_deterministic(self, small_report):
        again = run_sweep(small_report.config)
        assert again.model_dump() == small_report.model_dump()

    def test_replay_cell(self, small_report):
        for cell in small_report.cells[:3]:
            assert replay_cell(small_report, cell) == cell.failures

    def test_find_code(self, small_report):
        code = find_code(small_report, 1, 4, 1)
        assert code.n == 12 and code.k == 4
        with pytest.raises(OutOfRange):
            find_code(small_report, 5, 4, 1)


class TestWorkers:
    def test_sequential_matches_run_jobs(self, small_config):
        jobs = _jobs(small_config)
        calls = []
        results = SweepWorker(workers=1, executor="local").map_jobs(jobs, lambda done, total: calls.append(done))
        assert results == run_jobs(jobs)
        assert calls == [1, 2]

    def test_process_pool(self, small_config):
        jobs = _jobs(small_config)
        assert SweepWorker(workers=2, executor="local").map_jobs(jobs) == run_jobs(jobs)

    def test_celery_eager(self, small_config):
        jobs = _jobs(small_config)
        assert SweepWorker(executor="celery").map_jobs(jobs) == run_jobs(jobs)

    def test_report_is_identical_across_worker_counts(self, small_config):
        wide = small_config.model_copy(update={"workers": 2})
        sequential = run_sweep(small_config, worker=SweepWorker(workers=1, executor="local"))
        pooled = run_sweep(wide, worker=SweepWorker(workers=2, executor="local"))
        assert pooled.model_dump_json() == sequential.model_dump_json()
        assert "workers" not in json.loads(pooled.model_dump_json())["config"]

    def test_no_jobs(self):
        assert SweepWorker().map_jobs([]) == []


class TestTables:
    def test_tsv(self, handmade_report):
        lines = emit_table(handmade_report).splitlines()
        assert lines[0].split("\t") == (
            ["k", "ell", "zeta"]
            + [f"tau={tau}" for tau in range(8)]
            + ["P_max(tau_max-1)", "P_max(tau_max)", "P_min(tau_max+1)", "tau<0", "tau>(n-k)/2"]
        )
        assert lines[1] == "\t".join(
            ["7", "1", "2", "0", "0", "0", "0", "0", "0", "1L", "49", "0.047", "0.150", "-", "0", "0"]
        )
        assert lines[2] == "\t".join(["15", "1", "2", "0", "0", "10L", "40", "", "", "", "", "-", "-", "-", "0", "0"])

    def test_tsv_keeps_radii_outside_the_columns(self, handmade_report):
        handmade_report.rows[1].histogram = {-1: 3, 2: 10, 3: 30, 4: 7}
        line = emit_table(handmade_report).splitlines()[2].split("\t")
        assert line[-2:] == ["3", "7"]
        assert line[3:7] == ["0", "0", "10L", "30"]

    def test_json(self, handmade_report):
        assert SimReport.model_validate_json(emit_table(handmade_report, "json")) == handmade_report

    def test_unknown_format(self, handmade_report):
        with pytest.raises(ValueError):
            emit_table(handmade_report, "csv")

    def test_violations(self, handmade_report):
        (record,) = expectation_violations(handmade_report)
        assert (record.k, record.tau_max, record.tau_lb) == (7, 5, 6)


class TestConfig:
    def test_defaults_from_settings(self):
        cfg = load_config({"field": {"p": 23}, "n": 22, "k_list": [7]})
        assert cfg.trials == settings.SIM_TRIALS
        assert cfg.codes == settings.SIM_CODES
        assert cfg.threshold == settings.SIM_FAILURE_THRESHOLD
        assert cfg.seed == settings.SIM_MASTER_SEED

    def test_paper_scale_and_seed(self, tmp_path):
        path = tmp_path / "sweep.json"
        path.write_text(json.dumps({"field": {"p": 23}, "n": 22, "k_list": [7], "trials": 3}))
        cfg = load_config(path, paper_scale=True, seed=11)
        assert (cfg.trials, cfg.codes, cfg.seed) == (settings.SIM_PAPER_TRIALS, settings.SIM_PAPER_CODES, 11)

    @pytest.mark.parametrize(
        "update",
        [{"k_list": [-1]}, {"k_list": []}, {"threshold": 1.0}, {"executor": "spark"}, {"engine": "brute"}],
    )
    def test_validation(self, update):
        data = {"field": {"p": 23}, "n": 22, "k_list": [7], **update}
        with pytest.raises(ValidationError):
            SimConfig.model_validate(data)


def _cell_probability(report, code_id, tau):
    (cell,) = [c for c in report.cells if (c.code_id, c.tau) == (code_id, tau)]
    return cell.probability


@pytest.mark.slow
def test_gf23_radius_band():
    cfg = SimConfig(field=FieldParams(p=23), n=22, k_list=[7], zeta_list=[2], trials=200, codes=10, seed=2024)
    report = run_sweep(cfg, worker=SweepWorker(workers=4, executor="local"))
    outside = [
        r.code_id
        for r in report.tau_max
        if r.tau_max not in (6, 7)
        or _cell_probability(report, r.code_id, 5) > 0.05
        or _cell_probability(report, r.code_id, 8) < 0.8
    ]
    assert len(outside) <= 1
    (row,) = report.rows
    assert row.tau_lb == 6 and sum(row.histogram.values()) == 10


@pytest.mark.slow
def test_gf64_smoke_row():
    cfg = SimConfig(field=FieldParams(p=2, m=6), n=63, k_list=[44], zeta_list=[2], trials=100, codes=3, seed=64)
    report = run_sweep(cfg, worker=SweepWorker(workers=3, executor="local"))
    assert all(r.tau_max in (7, 8) for r in report.tau_max)
    assert report.rows[0].tau_lb == 7

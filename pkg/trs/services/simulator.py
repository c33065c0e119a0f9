"""
🎲 Monte-Carlo Simulator
Random-code sweeps, failure-rate estimation, tau_max determination and
table emission. Every trial seed is derived from (master, k, ell, code id,
zeta, tau, trial index), so reports never depend on scheduling.
"""

import json
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Protocol, Tuple, Union

import numpy as np
from loguru import logger

from trs.core.config import settings
from trs.core.exceptions import InvariantViolation, OutOfRange
from trs.core.rng import SeedLike, as_generator, make_rng
from trs.models.code import TwistedCode
from trs.models.decoding import DecodeEngine, DecodeStatus
from trs.models.field import to_ints
from trs.schemas.simulation import CellStat, CodeRecord, RowStat, SimConfig, SimReport, TauMaxRecord
from trs.services.decoding import decode, tau_lb
from trs.services.finite_field import field_from_dict
from trs.services.twisted_code import code_from_params, code_to_params, encode, sample_random_code

TrialFn = Callable[[TwistedCode, int, int, SeedLike, DecodeEngine], DecodeStatus]
ProgressFn = Callable[[int, int], None]


class CellCount(NamedTuple):
    trials: int
    failures: int

    @property
    def probability(self) -> float:
        return self.failures / self.trials


class JobMapper(Protocol):
    def map_jobs(self, jobs: List[dict], progress: Optional[ProgressFn] = None) -> List[dict]: ...


# 🎯 Single trials


def run_trial(
    code: TwistedCode,
    zeta: int,
    tau: int,
    seed: SeedLike,
    engine: DecodeEngine = DecodeEngine.LINEAR,
) -> DecodeStatus:
    """Random codeword plus a uniform weight-tau error; success iff the codeword comes back"""
    if not 0 <= tau <= code.n:
        raise OutOfRange(f"error weight {tau} outside 0..{code.n}", tau=tau)
    rng = as_generator(seed)
    GF, q = code.GF, code.field.q

    message = GF(rng.integers(0, q, size=code.k))
    codeword = encode(code, message)
    error = GF.Zeros(code.n)
    support = rng.choice(code.n, size=tau, replace=False)
    error[support] = GF(rng.integers(1, q, size=tau))
    received = codeword + error

    outcome = decode(code, received, zeta=zeta, engine=engine)
    if not outcome.success:
        return DecodeStatus.FAILURE
    if int(np.count_nonzero(GF(list(outcome.codeword)) != received)) > (code.n - code.k) // 2:
        raise InvariantViolation("decoder returned a word outside the half-distance ball")
    if outcome.codeword != tuple(to_ints(codeword)):
        return DecodeStatus.FAILURE
    return DecodeStatus.SUCCESS


def trial_seed(cfg: SimConfig, code: TwistedCode, code_id: int, zeta: int, tau: int, trial: int):
    return make_rng(cfg.seed, code.k, code.ell, code_id, zeta, tau, trial)


# 📏 Decoding radius


def tau_range(n: int, k: int, ell: int, zeta: int, beyond_radius: bool = True) -> List[int]:
    half = (n - k) // 2
    top = half + 1 if beyond_radius else half
    return list(range(max(0, tau_lb(n, k, ell, zeta) - 2), min(top, n) + 1))


def tau_max_from_table(probabilities: Dict[int, float], threshold: float) -> int:
    """Largest tau whose estimated failure probability is below the threshold, -1 if none"""
    passing = [tau for tau, p in probabilities.items() if p < threshold]
    return max(passing, default=-1)


def estimate_tau_max(
    code: TwistedCode,
    zeta: int,
    cfg: SimConfig,
    code_id: int = 0,
    trial_fn: TrialFn = run_trial,
) -> Tuple[int, Dict[int, CellCount]]:
    engine = DecodeEngine(cfg.engine)
    table: Dict[int, CellCount] = {}
    for tau in tau_range(code.n, code.k, code.ell, zeta, cfg.beyond_radius):
        failures = sum(
            trial_fn(code, zeta, tau, trial_seed(cfg, code, code_id, zeta, tau, trial), engine)
            == DecodeStatus.FAILURE
            for trial in range(cfg.trials)
        )
        table[tau] = CellCount(cfg.trials, int(failures))
    tau_max = tau_max_from_table({tau: c.probability for tau, c in table.items()}, cfg.threshold)
    logger.debug(f"code {code_id} [{code.n},{code.k}] ell={code.ell} zeta={zeta}: tau_max={tau_max}")
    return tau_max, table


def make_job(cfg: SimConfig, code: TwistedCode, code_id: int, zeta: int) -> dict:
    """JSON-serialisable description of one tau_max estimation"""
    return {
        "config": cfg.model_dump(mode="json"),
        "params": code_to_params(code),
        "code_id": code_id,
        "zeta": zeta,
    }


def estimate_tau_max_job(job: dict) -> dict:
    """Process-pool and Celery entry point"""
    cfg = SimConfig.model_validate(job["config"])
    code = code_from_params(job["params"])
    tau_max, table = estimate_tau_max(code, job["zeta"], cfg, code_id=job["code_id"])
    return {
        "code_id": job["code_id"],
        "k": code.k,
        "ell": code.ell,
        "zeta": job["zeta"],
        "tau_max": tau_max,
        "cells": [[tau, c.trials, c.failures] for tau, c in sorted(table.items())],
    }


# 📊 Sweeps


def sample_codes(cfg: SimConfig) -> List[CodeRecord]:
    spec = field_from_dict(cfg.field.model_dump())
    records = []
    for k in cfg.k_list:
        for ell in cfg.ell_list:
            for code_id in range(cfg.codes):
                code = sample_random_code(spec, cfg.n, k, ell, make_rng(cfg.seed, k, ell, code_id))
                records.append(CodeRecord(code_id=code_id, k=k, ell=ell, params=code_to_params(code)))
    return records


def sweep_size(cfg: SimConfig) -> int:
    """Number of decodes a sweep performs"""
    total = 0
    for k in cfg.k_list:
        for ell in cfg.ell_list:
            for zeta in cfg.zeta_list:
                taus = tau_range(cfg.n, k, ell, zeta, cfg.beyond_radius)
                total += len(taus) * cfg.trials * cfg.codes
    return total


def run_jobs(jobs: List[dict], progress: Optional[ProgressFn] = None) -> List[dict]:
    results = []
    for done, job in enumerate(jobs, start=1):
        results.append(estimate_tau_max_job(job))
        if progress:
            progress(done, len(jobs))
    return results


def _row_stats(cfg: SimConfig, tau_records: List[TauMaxRecord], cells: List[CellStat]) -> List[RowStat]:
    probability = {(c.k, c.ell, c.code_id, c.zeta, c.tau): c.probability for c in cells}
    rows = []
    for k in cfg.k_list:
        half = (cfg.n - k) // 2
        for ell in cfg.ell_list:
            for zeta in cfg.zeta_list:
                records = [r for r in tau_records if (r.k, r.ell, r.zeta) == (k, ell, zeta)]
                histogram = {tau: 0 for tau in range(half + 1)}
                below, at, above = [], [], []
                for r in records:
                    histogram[r.tau_max] = histogram.get(r.tau_max, 0) + 1
                    key = (k, ell, r.code_id, zeta)
                    for offset, bucket in ((-1, below), (0, at), (1, above)):
                        p = probability.get(key + (r.tau_max + offset,))
                        if p is not None:
                            bucket.append(p)
                rows.append(
                    RowStat(
                        k=k,
                        ell=ell,
                        zeta=zeta,
                        tau_lb=tau_lb(cfg.n, k, ell, zeta),
                        half_distance=half,
                        histogram=dict(sorted(histogram.items())),
                        p_max_below=max(below, default=None),
                        p_max_at=max(at, default=None),
                        p_min_above=min(above, default=None),
                        violations=sum(r.tau_max < r.tau_lb for r in records),
                    )
                )
    return rows


def run_sweep(
    cfg: SimConfig,
    worker: Optional[JobMapper] = None,
    progress: Optional[ProgressFn] = None,
) -> SimReport:
    codes = sample_codes(cfg)
    jobs = [
        make_job(cfg, code_from_params(record.params), record.code_id, zeta)
        for record in codes
        for zeta in cfg.zeta_list
    ]
    logger.info(f"Sweep over {len(codes)} codes: {len(jobs)} jobs, {sweep_size(cfg)} decodes")
    results = worker.map_jobs(jobs, progress) if worker else run_jobs(jobs, progress)

    # completion order is irrelevant; everything is re-sorted by key
    results = sorted(results, key=lambda r: (r["k"], r["ell"], r["code_id"], r["zeta"]))
    cells, tau_records = [], []
    for r in results:
        for tau, trials, failures in r["cells"]:
            cells.append(
                CellStat(
                    code_id=r["code_id"],
                    k=r["k"],
                    ell=r["ell"],
                    zeta=r["zeta"],
                    tau=tau,
                    trials=trials,
                    failures=failures,
                    probability=failures / trials,
                )
            )
        tau_records.append(
            TauMaxRecord(
                code_id=r["code_id"],
                k=r["k"],
                ell=r["ell"],
                zeta=r["zeta"],
                tau_max=r["tau_max"],
                tau_lb=tau_lb(cfg.n, r["k"], r["ell"], r["zeta"]),
            )
        )

    report = SimReport(
        config=cfg,
        codes=codes,
        cells=cells,
        tau_max=tau_records,
        rows=_row_stats(cfg, tau_records, cells),
    )
    expectation_violations(report)
    return report


def expectation_violations(report: SimReport) -> List[TauMaxRecord]:
    """Codes whose measured radius falls below the expected lower bound"""
    violations = [r for r in report.tau_max if r.tau_max < r.tau_lb]
    for r in violations:
        logger.warning(
            f"tau_max={r.tau_max} below tau_LB={r.tau_lb} for code {r.code_id} "
            f"(k={r.k}, ell={r.ell}, zeta={r.zeta})"
        )
    return violations


# 📄 Tables


def _fmt(p: Optional[float]) -> str:
    return "-" if p is None else f"{p:.3f}"


def emit_table(report: SimReport, fmt: str = "tsv") -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2)
    if fmt != "tsv":
        raise ValueError(f"unknown table format {fmt!r}")

    cfg = report.config
    widest = max(((cfg.n - k) // 2 for k in cfg.k_list), default=-1)
    header = ["k", "ell", "zeta"] + [f"tau={tau}" for tau in range(widest + 1)]
    header += ["P_max(tau_max-1)", "P_max(tau_max)", "P_min(tau_max+1)"]
    # radii outside 0..(n-k)/2 have no tau column of their own
    header += ["tau<0", "tau>(n-k)/2"]
    lines = ["\t".join(header)]
    for row in report.rows:
        counts = []
        for tau in range(widest + 1):
            count = "" if tau > row.half_distance else str(row.histogram.get(tau, 0))
            counts.append(f"{count}L" if tau == row.tau_lb and count else count)
        values = [str(row.k), str(row.ell), str(row.zeta)] + counts
        values += [_fmt(row.p_max_below), _fmt(row.p_max_at), _fmt(row.p_min_above)]
        below = sum(c for tau, c in row.histogram.items() if tau < 0)
        above = sum(c for tau, c in row.histogram.items() if tau > row.half_distance)
        values += [str(below), str(above)]
        lines.append("\t".join(values))
    return "\n".join(lines) + "\n"


# ⚙️ Configuration and replay


def load_config(
    source: Union[str, Path, dict],
    paper_scale: bool = False,
    seed: Optional[int] = None,
) -> SimConfig:
    """Sweep config from a JSON file or dict; unset fields fall back to settings"""
    data = dict(source) if isinstance(source, dict) else json.loads(Path(source).read_text())
    data.setdefault("trials", settings.SIM_TRIALS)
    data.setdefault("codes", settings.SIM_CODES)
    data.setdefault("threshold", settings.SIM_FAILURE_THRESHOLD)
    data.setdefault("seed", settings.SIM_MASTER_SEED)
    data.setdefault("workers", settings.SIM_WORKERS)
    data.setdefault("executor", settings.SIM_EXECUTOR)
    data.setdefault("engine", settings.SIM_ENGINE)
    data.setdefault("beyond_radius", settings.SIM_BEYOND_RADIUS)
    if paper_scale:
        data["trials"] = settings.SIM_PAPER_TRIALS
        data["codes"] = settings.SIM_PAPER_CODES
    if seed is not None:
        data["seed"] = seed
    return SimConfig.model_validate(data)


def find_code(report: SimReport, code_id: int, k: int, ell: int) -> TwistedCode:
    for record in report.codes:
        if (record.code_id, record.k, record.ell) == (code_id, k, ell):
            return code_from_params(record.params)
    raise OutOfRange(f"no code {code_id} for k={k}, ell={ell} in the report")


def replay_trial(
    report: SimReport, code_id: int, k: int, ell: int, zeta: int, tau: int, trial: int
) -> DecodeStatus:
    """Re-run one recorded trial from the master seed"""
    cfg = report.config
    code = find_code(report, code_id, k, ell)
    seed = trial_seed(cfg, code, code_id, zeta, tau, trial)
    return run_trial(code, zeta, tau, seed, DecodeEngine(cfg.engine))


def replay_cell(report: SimReport, cell: CellStat) -> int:
    """Failures of a recorded cell, recomputed"""
    return sum(
        replay_trial(report, cell.code_id, cell.k, cell.ell, cell.zeta, cell.tau, trial)
        == DecodeStatus.FAILURE
        for trial in range(cell.trials)
    )


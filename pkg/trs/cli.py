"""
⌨️ Command Line Interface
`trs` entry point: every subcommand reads JSON parameter files and prints JSON
"""

import functools
import json
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.table import Table

from trs.core.config import settings
from trs.core.exceptions import TRSError
from trs.core.logging import setup_logging
from trs.schemas.codes import (
    CensusRequest,
    CodeParams,
    ConstructRequest,
    DecodeRequest,
    DualRequest,
    MdsCheckRequest,
)
from trs.schemas.simulation import SimReport
from trs.services.code_service import CodeService
from trs.services.decoding import tau_lb as tau_lb_value
from trs.services.finite_field import make_field
from trs.services.simulator import emit_table, load_config, run_sweep
from trs.services.twisted_code import code_to_params, random_mds_search
from trs.storage.report_store import ReportStore
from trs.workers.sweep_worker import SweepWorker

app = typer.Typer(name="trs", help="Twisted Reed-Solomon code toolkit", no_args_is_help=True)
console = Console(stderr=True)
service = CodeService()


def handle_errors(func):
    """Print toolkit and validation errors in red and exit with status 2"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except TRSError as e:
            console.print(f"[bold red]{e.__class__.__name__}:[/bold red] [red]{e.message}[/red]")
            raise typer.Exit(code=2)
        except ValidationError as e:
            console.print(f"[bold red]Invalid input:[/bold red] [red]{e}[/red]")
            raise typer.Exit(code=2)

    return wrapper


def _read_json(path: Path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        console.print(f"[bold red]Cannot read {path}:[/bold red] [red]{e}[/red]")
        raise typer.Exit(code=2)


def _load_params(path: Path) -> CodeParams:
    return CodeParams.model_validate(_read_json(path))


def _int_list(value: str) -> List[int]:
    """A JSON file holding a list, or an inline comma separated list"""
    if Path(value).is_file():
        return [int(v) for v in _read_json(Path(value))]
    return [int(v) for v in value.replace("[", "").replace("]", "").split(",") if v.strip()]


def _emit(model: BaseModel) -> None:
    typer.echo(model.model_dump_json(indent=2))


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging")):
    setup_logging(level="DEBUG" if verbose else None)


@app.command()
@handle_errors
def construct(
    params: Path = typer.Option(..., "--params", help="Code parameter file"),
    emit_generator: bool = typer.Option(False, "--emit-generator", help="Include the generator matrix"),
    systematic: bool = typer.Option(False, "--systematic", help="Include the block A of [I | A]"),
    message: Optional[str] = typer.Option(None, "--message", help="Message to encode"),
):
    """Validate a twisted code and print its description"""
    request = ConstructRequest(
        params=_load_params(params),
        emit_generator=emit_generator,
        systematic=systematic,
        message=_int_list(message) if message else None,
    )
    _emit(service.construct(request))


@app.command("mds-check")
@handle_errors
def mds_check(
    params: Path = typer.Option(..., "--params"),
    method: str = typer.Option("auto", "--method", help="auto | exhaustive | star | plus"),
):
    """Decide whether the code is MDS"""
    _emit(service.mds_check(MdsCheckRequest(params=_load_params(params), method=method)))


@app.command()
@handle_errors
def dual(
    params: Path = typer.Option(..., "--params"),
    allow_zero_point: bool = typer.Option(False, "--allow-zero-point"),
    emit_matrix: bool = typer.Option(False, "--emit-matrix", help="Include the parity-check matrix"),
):
    """Parameters of the dual twisted code"""
    request = DualRequest(
        params=_load_params(params), allow_zero_point=allow_zero_point, emit_matrix=emit_matrix
    )
    _emit(service.dual(request))


@app.command("grs-check")
@handle_errors
def grs_check(params: Path = typer.Option(..., "--params")):
    """Schur square dimension, its lower bounds and the GRS decision"""
    _emit(service.grs_check(_load_params(params)))


@app.command("eta-census")
@handle_errors
def eta_census(
    base: Path = typer.Option(..., "--base", help="Code parameter file; eta is ignored"),
    eta_domain: str = typer.Option("all", "--eta-domain", help="'all' or a JSON file of eta vectors"),
):
    """Classify every eta of a domain as non-MDS, GRS or non-GRS"""
    data = _read_json(base)
    data["eta"] = [0] * len(data.get("t", []))
    domain = eta_domain if eta_domain == "all" else _read_json(Path(eta_domain))
    _emit(service.eta_census(CensusRequest(base=CodeParams.model_validate(data), eta_domain=domain)))


@app.command()
@handle_errors
def decode(
    params: Path = typer.Option(..., "--params"),
    received: str = typer.Option(..., "--received", help="JSON file or comma separated symbols"),
    zeta: int = typer.Option(1, "--zeta"),
    engine: str = typer.Option("linear", "--engine", help="linear | popov | brute"),
):
    """Decode a received word"""
    request = DecodeRequest(
        params=_load_params(params), received=_int_list(received), zeta=zeta, engine=engine
    )
    _emit(service.decode(request))


def _summary(report: SimReport) -> Table:
    table = Table(title=f"tau_max over {report.config.codes} codes, q={report.config.field.p}^{report.config.field.m}, n={report.config.n}")
    for column in ("k", "ell", "zeta", "tau_LB", "histogram", "P_max(-1)", "P_max", "P_min(+1)"):
        table.add_column(column)
    for row in report.rows:
        histogram = " ".join(f"{tau}:{count}" for tau, count in row.histogram.items() if count)
        table.add_row(
            str(row.k),
            str(row.ell),
            str(row.zeta),
            str(row.tau_lb),
            histogram,
            *("-" if p is None else f"{p:.3f}" for p in (row.p_max_below, row.p_max_at, row.p_min_above)),
        )
    return table


@app.command()
@handle_errors
def simulate(
    config: Path = typer.Option(..., "--config", help="Sweep configuration file"),
    paper_scale: bool = typer.Option(False, "--paper-scale", help="Use the published trial and code counts"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here"),
    name: Optional[str] = typer.Option(None, "--name", help="Store the report under this name"),
    table: bool = typer.Option(False, "--table", help="Print the TSV table"),
    as_json: bool = typer.Option(False, "--json", help="Print the JSON report"),
    workers: Optional[int] = typer.Option(None, "--workers"),
    executor: Optional[str] = typer.Option(None, "--executor", help="local | celery"),
):
    """Monte-Carlo decoding-radius sweep"""
    cfg = load_config(_read_json(config), paper_scale=paper_scale, seed=seed)
    if workers is not None or executor is not None:
        cfg = cfg.model_copy(update={"workers": workers or cfg.workers, "executor": executor or cfg.executor})
    report = run_sweep(cfg, worker=SweepWorker(workers=cfg.workers, executor=cfg.executor))

    store = ReportStore()
    if out:
        store.save_to(out, report)
    if name:
        store.save(name, report, {"source": "cli"})
    if table:
        typer.echo(emit_table(report, "tsv"), nl=False)
    elif as_json:
        typer.echo(emit_table(report, "json"))
    else:
        console.print(_summary(report))


@app.command("tau-lb")
def tau_lb(
    n: int = typer.Argument(...),
    k: int = typer.Argument(...),
    ell: int = typer.Argument(...),
    zeta: int = typer.Argument(...),
):
    """Expected lower bound on the decoding radius"""
    typer.echo(str(tau_lb_value(n, k, ell, zeta)))


@app.command("mds-search")
@handle_errors
def mds_search(
    p: int = typer.Option(..., "--p"),
    m: int = typer.Option(1, "--m"),
    n: int = typer.Option(..., "--n"),
    k: int = typer.Option(..., "--k"),
    t: List[int] = typer.Option(..., "--t", help="Twist, repeat per twist"),
    h: List[int] = typer.Option(..., "--h", help="Hook, repeat per twist"),
    attempts: int = typer.Option(100, "--attempts"),
    seed: int = typer.Option(settings.SIM_MASTER_SEED, "--seed"),
):
    """Random search for (alpha, eta) giving MDS codes"""
    found = random_mds_search(make_field(p, m), n, k, t, h, attempts, seed)
    typer.echo(json.dumps([code_to_params(code) for code in found], indent=2))


@app.command()
def serve(
    host: str = typer.Option("0.0.0.0", "--host"),
    port: int = typer.Option(8000, "--port"),
):
    """Run the HTTP API"""
    import uvicorn

    uvicorn.run("trs.main:app", host=host, port=port, log_level=settings.LOG_LEVEL.lower())


if __name__ == "__main__":
    app()

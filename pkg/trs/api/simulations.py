"""
🎲 Simulation API Endpoints
Synchronous small sweeps, Celery-backed sweeps and stored reports
"""

from typing import List, Optional

from celery.result import AsyncResult
from fastapi import APIRouter, Depends
from fastapi.responses import PlainTextResponse

from celery_worker.tasks import celery_app, run_sweep_task
from trs.core.config import settings
from trs.dependencies.services import get_code_service, get_report_store
from trs.schemas.simulation import (
    SimConfig,
    SimReport,
    SimulationRunResponse,
    SimulationStatusResponse,
    SimulationSubmitResponse,
)
from trs.services.code_service import CodeService
from trs.services.simulator import emit_table
from trs.storage.report_store import ReportStore

# Initialize router
router = APIRouter()


@router.post("/run", response_model=SimulationRunResponse)
def run_simulation(
    cfg: SimConfig,
    name: Optional[str] = None,
    service: CodeService = Depends(get_code_service),
    store: ReportStore = Depends(get_report_store),
):
    """Run a sweep in-process; limited to API_MAX_SYNC_DECODES decodes"""
    report = service.simulate(cfg, limit=settings.API_MAX_SYNC_DECODES)
    if name:
        store.save(name, report, {"source": "api"})
    return SimulationRunResponse(report=report, table=emit_table(report, "tsv"))


@router.post("/submit", response_model=SimulationSubmitResponse)
def submit_simulation(cfg: SimConfig, name: Optional[str] = None):
    """Queue a sweep on the Celery workers"""
    task = run_sweep_task.delay(cfg.model_dump(mode="json"), name)
    return SimulationSubmitResponse(
        task_id=task.id,
        status=task.state,
        message="Sweep queued" + (f"; report will be stored as {name}" if name else ""),
    )


@router.get("/reports", response_model=List[str])
def list_reports(store: ReportStore = Depends(get_report_store)):
    return store.list_reports()


@router.get("/reports/{name}", response_model=SimReport)
def get_report(name: str, store: ReportStore = Depends(get_report_store)):
    return store.load(name)


@router.get("/reports/{name}/table", response_class=PlainTextResponse)
def get_report_table(name: str, store: ReportStore = Depends(get_report_store)):
    return store.table(name)


@router.get("/{task_id}", response_model=SimulationStatusResponse)
def simulation_status(task_id: str):
    """Celery state, progress meta and result of a submitted sweep"""
    result = AsyncResult(task_id, app=celery_app)
    response = SimulationStatusResponse(task_id=task_id, state=result.state)
    if result.state == "PROGRESS":
        response.progress = result.info
    elif result.successful():
        response.result = result.result
    elif result.failed():
        response.error = str(result.info)
    return response

"""
🔄 Celery Background Tasks
Handles asynchronous tau_max estimation and full simulation sweeps
"""

from typing import Any, Dict, Optional

from celery import Celery
from loguru import logger

from trs.core.config import settings
from trs.schemas.simulation import SimConfig
from trs.services.simulator import emit_table, estimate_tau_max_job, run_sweep

# Create Celery app
celery_app = Celery(
    "trs_worker",
    broker=settings.CELERY_BROKER_URL,
    backend=settings.CELERY_RESULT_BACKEND,
    include=["celery_worker.tasks"],
)

# Configure Celery
celery_app.conf.update(
    task_serializer=settings.CELERY_TASK_SERIALIZER,
    result_serializer=settings.CELERY_RESULT_SERIALIZER,
    accept_content=settings.CELERY_ACCEPT_CONTENT,
    timezone=settings.CELERY_TIMEZONE,
    task_routes={
        "estimate_tau_max": {"queue": "tau_max"},
        "run_sweep": {"queue": "sweeps"},
    },
    task_always_eager=settings.CELERY_TASK_ALWAYS_EAGER,
    task_eager_propagates=True,
    worker_prefetch_multiplier=1,
    task_acks_late=True,
    worker_max_tasks_per_child=100,
)


@celery_app.task(bind=True, name="estimate_tau_max")
def estimate_tau_max(self, job: Dict[str, Any]) -> Dict[str, Any]:
    """Estimate tau_max of one code for one zeta"""
    try:
        result = estimate_tau_max_job(job)
        return {"status": "completed", "result": result}
    except Exception as e:
        logger.error(f"tau_max job for code {job.get('code_id')} failed: {e}")
        if not self.request.is_eager:
            self.update_state(state="FAILURE", meta={"error": str(e), "code_id": job.get("code_id")})
        raise


@celery_app.task(bind=True, name="run_sweep")
def run_sweep_task(self, config: Dict[str, Any], name: Optional[str] = None) -> Dict[str, Any]:
    """
    Run a complete sweep
    - Sample the codes
    - Estimate tau_max for every (code, zeta)
    - Optionally store the report under `name`
    """
    from trs.storage.report_store import ReportStore
    from trs.workers.sweep_worker import SweepWorker

    def progress(done: int, total: int) -> None:
        if not self.request.is_eager:
            self.update_state(
                state="PROGRESS",
                meta={"current": done, "total": total, "status": f"{done}/{total} jobs done"},
            )

    try:
        cfg = SimConfig.model_validate(config)
        # subtasks never fan out to Celery again
        worker = SweepWorker(workers=cfg.workers, executor="local")
        report = run_sweep(cfg, worker=worker, progress=progress)
        if name:
            ReportStore().save(name, report, {"task_id": self.request.id})
        return {
            "status": "completed",
            "name": name,
            "report": report.model_dump(mode="json"),
            "table": emit_table(report, "tsv"),
        }
    except Exception as e:
        logger.error(f"Sweep failed: {e}")
        if not self.request.is_eager:
            self.update_state(state="FAILURE", meta={"error": str(e)})
        raise

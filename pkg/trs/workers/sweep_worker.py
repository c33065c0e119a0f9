"""
🏭 Sweep Worker
Fans tau_max estimation jobs out over a local process pool or Celery
"""

from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Dict, List, Optional

from loguru import logger

from trs.core.config import settings
from trs.services.simulator import ProgressFn, estimate_tau_max_job, run_jobs


def _job_key(result: Dict) -> tuple:
    return (result["k"], result["ell"], result["code_id"], result["zeta"])


class SweepWorker:
    """Worker class for running the jobs of a sweep"""

    def __init__(self, workers: Optional[int] = None, executor: Optional[str] = None):
        self.workers = workers or settings.SIM_WORKERS
        self.executor = executor or settings.SIM_EXECUTOR

    def map_jobs(self, jobs: List[dict], progress: Optional[ProgressFn] = None) -> List[dict]:
        if not jobs:
            return []
        if self.executor == "celery":
            results = self._celery(jobs)
        elif self.workers > 1:
            results = self._pool(jobs, progress)
        else:
            results = run_jobs(jobs, progress)
        return sorted(results, key=_job_key)

    def _pool(self, jobs: List[dict], progress: Optional[ProgressFn]) -> List[dict]:
        logger.info(f"Running {len(jobs)} jobs on {self.workers} processes")
        results = []
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            futures = [pool.submit(estimate_tau_max_job, job) for job in jobs]
            for done, future in enumerate(as_completed(futures), start=1):
                results.append(future.result())
                if progress:
                    progress(done, len(jobs))
        return results

    def _celery(self, jobs: List[dict]) -> List[dict]:
        from celery import group

        from celery_worker.tasks import estimate_tau_max

        logger.info(f"Dispatching {len(jobs)} jobs to Celery")
        outcome = group(estimate_tau_max.s(job) for job in jobs).apply_async()
        results = outcome.get(disable_sync_subtasks=False)
        return [r["result"] for r in results]

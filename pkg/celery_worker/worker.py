"""
🔄 Celery Worker Configuration
Main worker setup and configuration
"""

import os
import sys
from pathlib import Path

# Add parent directory to path to import trs modules
sys.path.append(str(Path(__file__).parent.parent))

from celery_worker.tasks import celery_app  # noqa: E402
from trs.core.config import settings  # noqa: E402
from trs.core.logging import setup_logging  # noqa: E402

# Worker configuration
celery_app.conf.update(
    # Worker settings
    worker_prefetch_multiplier=1,
    worker_max_tasks_per_child=100,
    # Task settings
    task_acks_late=True,
    task_reject_on_worker_lost=True,
    task_ignore_result=False,
    # Result backend settings
    result_expires=24 * 3600,
    result_persistent=True,
    # Queue configuration
    task_default_queue="default",
    # Monitoring
    worker_send_task_events=True,
    task_send_sent_event=True,
    # Error handling
    task_annotations={
        "run_sweep": {"time_limit": 6 * 3600, "soft_time_limit": 6 * 3600 - 300},
        "estimate_tau_max": {"time_limit": 3600},
    },
)


def create_directories():
    """Create necessary directories"""
    for directory in [Path(settings.LOG_FILE).parent, Path(settings.REPORTS_DIR)]:
        os.makedirs(directory, exist_ok=True)


# Setup
if __name__ == "__main__":
    setup_logging()
    create_directories()

    # Start worker on both queues
    celery_app.worker_main(["worker", "-Q", "tau_max,sweeps,default", "--loglevel", settings.LOG_LEVEL])


# Export the worker instance for Celery CLI
worker = celery_app

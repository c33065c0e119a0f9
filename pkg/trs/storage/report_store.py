"""
📁 Report Storage
Filesystem persistence of simulation reports: JSON, TSV table and a .meta sidecar
"""

import json
import re
import shutil
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

from loguru import logger

from trs.core.config import settings
from trs.core.exceptions import ReportNotFound
from trs.schemas.simulation import SimReport
from trs.services.simulator import emit_table

_NAME = re.compile(r"^[A-Za-z0-9_.-]+$")


class ReportStore:
    """Local filesystem store for sweep reports"""

    def __init__(self, base_path: Optional[str] = None):
        self.base_path = Path(base_path or settings.REPORTS_DIR)
        self.base_path.mkdir(parents=True, exist_ok=True)

    def _path(self, name: str, suffix: str) -> Path:
        if not _NAME.match(name):
            raise ReportNotFound(f"invalid report name {name!r}")
        return self.base_path / f"{name}{suffix}"

    def save(self, name: str, report: SimReport, metadata: Optional[dict] = None) -> Path:
        """Write <name>.json, <name>.tsv and <name>.meta"""
        json_path = self._path(name, ".json")
        json_path.write_text(emit_table(report, "json"))
        self._path(name, ".tsv").write_text(emit_table(report, "tsv"))
        meta = {
            **(metadata or {}),
            "saved_at": datetime.now(timezone.utc).isoformat(),
            "size": json_path.stat().st_size,
            "rows": len(report.rows),
            "seed": report.config.seed,
        }
        self._path(name, ".meta").write_text(json.dumps(meta, indent=2))
        logger.info(f"✅ Saved report {name} to {json_path}")
        return json_path

    def save_to(self, path: Path, report: SimReport) -> Path:
        """Write a report to an explicit path outside the store"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(emit_table(report, "json"))
        logger.info(f"✅ Saved report to {path}")
        return path

    def load(self, name: str) -> SimReport:
        path = self._path(name, ".json")
        if not path.exists():
            raise ReportNotFound(f"report {name} not found", name=name)
        return SimReport.model_validate_json(path.read_text())

    def table(self, name: str) -> str:
        path = self._path(name, ".tsv")
        if not path.exists():
            raise ReportNotFound(f"report {name} not found", name=name)
        return path.read_text()

    def info(self, name: str) -> dict:
        meta = self._path(name, ".meta")
        if not meta.exists():
            raise ReportNotFound(f"report {name} not found", name=name)
        return {"name": name, "path": str(self._path(name, ".json")), "metadata": json.loads(meta.read_text())}

    def list_reports(self) -> List[str]:
        return sorted(p.stem for p in self.base_path.glob("*.json"))

    def exists(self, name: str) -> bool:
        return self._path(name, ".json").exists()

    def delete(self, name: str) -> bool:
        removed = False
        for suffix in (".json", ".tsv", ".meta"):
            path = self._path(name, suffix)
            if path.exists():
                path.unlink()
                removed = True
        if removed:
            logger.info(f"✅ Deleted report {name}")
        return removed

    def health_check(self) -> dict:
        """Write/read/delete round trip in the report directory"""
        try:
            marker = self.base_path / "health_check.txt"
            content = f"Health check at {datetime.now(timezone.utc).isoformat()}"
            marker.write_text(content)
            readable = marker.read_text() == content
            marker.unlink()
            return {
                "status": "healthy" if readable else "unhealthy",
                "storage_type": "local",
                "base_path": str(self.base_path),
                "available_space_mb": round(shutil.disk_usage(self.base_path).free / (1024 * 1024), 2),
            }
        except OSError as e:
            logger.error(f"❌ Report storage unhealthy: {e}")
            return {"status": "unhealthy", "storage_type": "local", "error": str(e)}

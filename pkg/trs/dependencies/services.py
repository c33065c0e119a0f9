from trs.services.code_service import CodeService
from trs.storage.report_store import ReportStore


# Dependency for the code service
async def get_code_service() -> CodeService:
    return CodeService()


async def get_report_store() -> ReportStore:
    return ReportStore()

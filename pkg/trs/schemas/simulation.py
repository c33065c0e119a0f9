"""
🎲 Simulation Schemas - Pydantic Models for sweeps and reports
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_serializer, field_validator

from trs.schemas.codes import FieldParams

EXECUTION_FIELDS = {"workers", "executor"}


class SimConfig(BaseModel):
    """Monte-Carlo sweep configuration"""

    field: FieldParams
    n: int = Field(..., ge=2, description="Code length")
    k_list: List[int] = Field(..., min_length=1, description="Dimensions to sweep")
    ell_list: List[int] = Field(default=[1], description="Numbers of twists to sweep")
    zeta_list: List[int] = Field(default=[1], description="Decoder parameters to sweep")
    trials: int = Field(default=200, ge=1, description="Trials per (code, zeta, tau)")
    codes: int = Field(default=10, ge=1, description="Random codes per (k, ell)")
    threshold: float = Field(default=0.2, gt=0, lt=1, description="Failure threshold for tau_max")
    seed: int = Field(default=2024, ge=0, description="Master seed")
    workers: int = Field(default=1, ge=1)
    executor: str = Field(default="local", pattern="^(local|celery)$")
    engine: str = Field(default="linear", pattern="^(linear|popov)$")
    beyond_radius: bool = True

    @field_validator("k_list", "ell_list", "zeta_list")
    @classmethod
    def non_negative(cls, v: List[int]) -> List[int]:
        if any(x < 0 for x in v):
            raise ValueError("sweep values must be non-negative")
        return v


class CodeRecord(BaseModel):
    """A sampled code and the key its seed was derived from"""

    code_id: int
    k: int
    ell: int
    params: Dict


class CellStat(BaseModel):
    """Trials and failures of one (code, zeta, tau) cell"""

    code_id: int
    k: int
    ell: int
    zeta: int
    tau: int
    trials: int = Field(..., ge=1)
    failures: int = Field(..., ge=0)
    probability: float


class TauMaxRecord(BaseModel):
    code_id: int
    k: int
    ell: int
    zeta: int
    tau_max: int
    tau_lb: int


class RowStat(BaseModel):
    """One table row: histogram of tau_max over the codes and the three probability columns"""

    k: int
    ell: int
    zeta: int
    tau_lb: int
    half_distance: int
    histogram: Dict[int, int]
    p_max_below: Optional[float] = None
    p_max_at: Optional[float] = None
    p_min_above: Optional[float] = None
    violations: int = 0


class SimReport(BaseModel):
    """Complete sweep result; reproducible from config.seed"""

    config: SimConfig
    codes: List[CodeRecord] = Field(default=[])
    cells: List[CellStat] = Field(default=[])
    tau_max: List[TauMaxRecord] = Field(default=[])
    rows: List[RowStat] = Field(default=[])

    @field_serializer("config")
    def config_without_execution(self, config: SimConfig) -> Dict:
        # identical for every worker count and executor
        return config.model_dump(mode="json", exclude=EXECUTION_FIELDS)


# Request / response schemas
class SimulationRunResponse(BaseModel):
    report: SimReport
    table: str


class SimulationSubmitResponse(BaseModel):
    task_id: str
    status: str
    message: str


class SimulationStatusResponse(BaseModel):
    task_id: str
    state: str
    progress: Optional[Dict] = None
    result: Optional[Dict] = None
    error: Optional[str] = None

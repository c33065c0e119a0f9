"""
📐 Code API Endpoints
Construction, MDS checks, duals, GRS discrimination and decoding
"""

from fastapi import APIRouter, Depends

from trs.dependencies.services import get_code_service
from trs.schemas.codes import (
    CensusRequest,
    CensusResponse,
    CodeParams,
    ConstructRequest,
    ConstructResponse,
    DecodeRequest,
    DecodeResponse,
    DualRequest,
    DualResponse,
    GrsCheckResponse,
    MdsCheckRequest,
    MdsCheckResponse,
)
from trs.services.code_service import CodeService

# Initialize router
router = APIRouter()


# Endpoints are plain functions so the algebra runs in the threadpool
@router.post("/construct", response_model=ConstructResponse)
def construct_code(request: ConstructRequest, service: CodeService = Depends(get_code_service)):
    """Build a twisted code and optionally its generator matrices and a codeword"""
    return service.construct(request)


@router.post("/mds-check", response_model=MdsCheckResponse)
def check_mds(request: MdsCheckRequest, service: CodeService = Depends(get_code_service)):
    return service.mds_check(request)


@router.post("/dual", response_model=DualResponse)
def dual_code(request: DualRequest, service: CodeService = Depends(get_code_service)):
    """Closed-form dual parameters and the column scaling relating H to them"""
    return service.dual(request)


@router.post("/grs-check", response_model=GrsCheckResponse)
def check_grs(params: CodeParams, service: CodeService = Depends(get_code_service)):
    return service.grs_check(params)


@router.post("/eta-census", response_model=CensusResponse)
def eta_census(request: CensusRequest, service: CodeService = Depends(get_code_service)):
    return service.eta_census(request)


@router.post("/decode", response_model=DecodeResponse)
def decode_word(request: DecodeRequest, service: CodeService = Depends(get_code_service)):
    """Decoding failure is a normal response with status "failure" """
    return service.decode(request)

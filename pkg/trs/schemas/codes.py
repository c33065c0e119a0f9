"""
📐 Code Schemas - Pydantic Models for API and parameter files
Data validation and serialization schemas for code operations
"""

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field


# Base schemas
class FieldParams(BaseModel):
    """GF(p^m), optionally with an explicit modulus (low-to-high coefficients)"""

    p: int = Field(..., ge=2, description="Characteristic")
    m: int = Field(default=1, ge=1, description="Extension degree")
    modulus: Optional[List[int]] = Field(None, description="Monic irreducible modulus")


class CodeParams(BaseModel):
    """Twisted code parameter file; field elements are integer encoded"""

    field: FieldParams
    n: int = Field(..., ge=2)
    k: int = Field(..., ge=1)
    alpha: List[int]
    t: List[int] = Field(default=[])
    h: List[int] = Field(default=[])
    eta: List[int] = Field(default=[])
    at_infinity: bool = False


# Construction
class ConstructRequest(BaseModel):
    params: CodeParams
    emit_generator: bool = True
    systematic: bool = False
    message: Optional[List[int]] = Field(None, description="Message to encode")


class ConstructResponse(BaseModel):
    params: CodeParams
    description: str
    length: int
    degree_set: List[int]
    generator: Optional[List[List[int]]] = None
    systematic: Optional[List[List[int]]] = None
    codeword: Optional[List[int]] = None


# MDS
class MdsCheckRequest(BaseModel):
    params: CodeParams
    method: Literal["auto", "exhaustive", "star", "plus"] = "auto"


class MdsCheckResponse(BaseModel):
    mds: bool
    witness: Optional[List[int]] = None
    method: str


# Duality
class DualRequest(BaseModel):
    params: CodeParams
    allow_zero_point: bool = False
    emit_matrix: bool = False


class DualResponse(BaseModel):
    dual: CodeParams
    scaling: List[int]
    parity_check: Optional[List[List[int]]] = None


# GRS discrimination
class GrsCheckResponse(BaseModel):
    mds: bool
    grs: bool
    schur_dim: int
    grs_schur_dim: int
    sumset_bound: int
    reduced_bound: int
    certificate: Optional[str] = None


class CensusRequest(BaseModel):
    base: CodeParams
    eta_domain: Union[Literal["all"], List[List[int]]] = "all"


class CensusEntry(BaseModel):
    eta: List[int]
    cls: str


class CensusResponse(BaseModel):
    counts: Dict[str, int]
    grs_fraction: Optional[float] = None
    fraction_bound: Optional[float] = None
    classes: List[CensusEntry]


# Decoding
class DecodeRequest(BaseModel):
    params: CodeParams
    received: List[int]
    zeta: int = Field(default=1, ge=0)
    engine: Literal["linear", "popov", "brute"] = "linear"


class DecodeResponse(BaseModel):
    status: str
    codeword: Optional[List[int]] = None
    message: Optional[List[int]] = None
    error_weight: Optional[int] = None
    locator_degree: Optional[int] = None
    reason: Optional[str] = None

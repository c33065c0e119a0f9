"""
🧰 Code Service - Business Logic Layer
Turns parameter schemas into codes and runs the toolkit operations on them;
shared by the CLI and the HTTP API.
"""

from typing import Optional

from loguru import logger

from trs.core.exceptions import FeasibilityError
from trs.models.code import TwistedCode
from trs.models.decoding import DecodeEngine
from trs.models.field import to_ints
from trs.schemas.codes import (
    CensusEntry,
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
from trs.schemas.simulation import SimConfig, SimReport
from trs.services.decoding import decode
from trs.services.duality import dual_twisted, scaling_vector
from trs.services.equivalence import (
    degree_set,
    grs_eta_census,
    is_grs_matrix,
    reduced_lower_bound,
    schur_non_grs_certificate,
    schur_square_dim,
    sumset_lower_bound,
)
from trs.services.finite_field import field_from_dict
from trs.services.mds_families import MdsMethod, is_mds_matrix, mds_check
from trs.services.simulator import run_sweep, sweep_size
from trs.services.twisted_code import (
    code_from_params,
    code_to_params,
    encode,
    generator_canonical,
    systematic_form,
)


class CodeService:
    """Facade over the code services"""

    @staticmethod
    def to_code(params: CodeParams) -> TwistedCode:
        return code_from_params(params.model_dump())

    @staticmethod
    def to_params(code: TwistedCode) -> CodeParams:
        return CodeParams.model_validate(code_to_params(code))

    def construct(self, request: ConstructRequest) -> ConstructResponse:
        code = self.to_code(request.params)
        response = ConstructResponse(
            params=self.to_params(code),
            description=code.describe(),
            length=code.length,
            degree_set=list(degree_set(code)),
        )
        if request.emit_generator:
            response.generator = to_ints(generator_canonical(code))
        if request.systematic:
            response.systematic = to_ints(systematic_form(code))
        if request.message is not None:
            response.codeword = to_ints(encode(code, request.message))
        logger.info(f"Constructed {code.describe()}")
        return response

    def mds_check(self, request: MdsCheckRequest) -> MdsCheckResponse:
        code = self.to_code(request.params)
        verdict = mds_check(code, MdsMethod(request.method))
        logger.info(f"MDS check ({verdict.method.value}) on {code.describe()}: {verdict.mds}")
        return MdsCheckResponse(
            mds=verdict.mds,
            witness=list(verdict.witness) if verdict.witness is not None else None,
            method=verdict.method.value,
        )

    def dual(self, request: DualRequest) -> DualResponse:
        code = self.to_code(request.params)
        params, H = dual_twisted(code, allow_zero_point=request.allow_zero_point)
        dual_code = params.to_code(code.field, code.alpha)
        return DualResponse(
            dual=self.to_params(dual_code),
            scaling=scaling_vector(code),
            parity_check=to_ints(H) if request.emit_matrix else None,
        )

    def grs_check(self, params: CodeParams) -> GrsCheckResponse:
        code = self.to_code(params)
        G = generator_canonical(code)
        mds, _ = is_mds_matrix(G)
        certificate = schur_non_grs_certificate(code)
        return GrsCheckResponse(
            mds=mds,
            grs=mds and is_grs_matrix(G),
            schur_dim=schur_square_dim(G),
            grs_schur_dim=min(2 * code.k - 1, code.length),
            sumset_bound=sumset_lower_bound(code),
            reduced_bound=reduced_lower_bound(code),
            certificate=certificate.value if certificate else None,
        )

    def eta_census(self, request: CensusRequest) -> CensusResponse:
        base = request.base
        record = grs_eta_census(
            field_from_dict(base.field.model_dump()),
            base.n,
            base.k,
            base.t,
            base.h,
            base.alpha,
            request.eta_domain,
        )
        return CensusResponse(
            counts=record.counts,
            grs_fraction=record.grs_fraction,
            fraction_bound=record.fraction_bound,
            classes=[CensusEntry(eta=list(eta), cls=cls.value) for eta, cls in record.classes],
        )

    def decode(self, request: DecodeRequest) -> DecodeResponse:
        code = self.to_code(request.params)
        outcome = decode(code, request.received, zeta=request.zeta, engine=DecodeEngine(request.engine))
        logger.info(f"Decoded with {request.engine}: {outcome.status.value}")
        return DecodeResponse(**outcome.to_dict())

    def simulate(self, cfg: SimConfig, worker=None, limit: Optional[int] = None) -> SimReport:
        """Run a sweep, refusing sweeps larger than `limit` decodes"""
        size = sweep_size(cfg)
        if limit is not None and size > limit:
            raise FeasibilityError(f"sweep needs {size} decodes, synchronous limit is {limit}")
        return run_sweep(cfg, worker=worker)


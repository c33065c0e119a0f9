"""
🚨 Toolkit Errors
Exception hierarchy shared by the services, the API and the CLI
"""

from typing import Any, Dict


class TRSError(Exception):
    """Base class for every toolkit error"""

    status_code: int = 400

    def __init__(self, message: str = "", **context: Any):
        self.message = message or (self.__doc__ or self.__class__.__name__).strip()
        self.context = context
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        body: Dict[str, Any] = {
            "error": self.__class__.__name__,
            "message": self.message,
            "status_code": self.status_code,
        }
        if self.context:
            body["context"] = self.context
        return body


# 🔢 Field and polynomial errors


class FieldError(TRSError):
    """Invalid field description or element"""


class NotPrime(FieldError):
    """Characteristic is not prime"""


class NotIrreducible(FieldError):
    """Modulus is not irreducible over the prime field"""


class DegreeMismatch(FieldError):
    """Degrees do not match the requested extension"""


class FieldMismatch(FieldError):
    """Operands belong to different fields"""


class OutOfRange(FieldError):
    """Integer or index outside its admissible range"""


class PolynomialError(TRSError):
    """Invalid polynomial operation"""


class DivisionByZero(PolynomialError):
    """Division by the zero element or polynomial"""

    status_code = 422


class DuplicatePoint(PolynomialError):
    """Interpolation points are not pairwise distinct"""


# 📐 Code construction errors


class CodeError(TRSError):
    """Invalid code construction"""


class LengthMismatch(CodeError):
    """Vector length does not match the code"""


class InvalidCodeParameters(CodeError):
    """Code parameters violate the twisted code invariants"""


class SingularLeftBlock(CodeError):
    """The first k positions are not an information set"""

    status_code = 422


class InfeasibleParameters(CodeError):
    """No object satisfies the requested parameters"""

    status_code = 422


class NotASubgroupOrder(CodeError):
    """Order does not define a proper multiplicative subgroup"""

    status_code = 422


class EtaInGroup(CodeError):
    """(-1)^k / eta lies in the evaluation subgroup"""

    status_code = 422


class NotAdditiveSubgroup(CodeError):
    """Evaluation set is not a proper additive subgroup"""

    status_code = 422


class EtaInverseInGroup(CodeError):
    """1 / eta lies in the additive evaluation subgroup"""

    status_code = 422


class NotMultiplicativeGroup(CodeError):
    """Evaluation points do not form a multiplicative subgroup"""

    status_code = 422


class ZeroPointHypothesis(CodeError):
    """Zero-point dual needs all t_i != n-k or all h_i != 0"""

    status_code = 422


class EmptyDifference(CodeError):
    """Consecutive subfields of a chain coincide"""

    status_code = 422


# 🛡️ Feasibility guards


class FeasibilityError(TRSError):
    """Request exceeds a configured enumeration budget"""

    status_code = 413


class TooLarge(FeasibilityError):
    """Brute-force enumeration exceeds its budget"""


class BudgetExceeded(FeasibilityError):
    """Brute-force decoding exceeds its budget"""


# 🧩 Decoding internals


class DecodingError(TRSError):
    """Internal decoder invariant broken"""

    status_code = 500


class SingularMatrix(DecodingError):
    """Polynomial matrix is not of full rank"""

    status_code = 422


class NoSolution(DecodingError):
    """Linearised key equations have no solution up to the degree cap"""


class NoPivotOneRow(DecodingError):
    """Reduced module basis has no row with pivot on the first index"""


class InvariantViolation(TRSError):
    """An internal algebraic identity failed"""

    status_code = 500


# 📁 Storage


class ReportNotFound(TRSError):
    """No stored report with this name"""

    status_code = 404

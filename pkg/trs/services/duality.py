"""
🔁 Duality Service
Reversal and Vandermonde matrices, closed-form duals of twisted codes
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import galois
import numpy as np

from trs.core.exceptions import (
    EtaInGroup,
    InvalidCodeParameters,
    InvariantViolation,
    LengthMismatch,
    NotASubgroupOrder,
    NotMultiplicativeGroup,
    ZeroPointHypothesis,
)
from trs.models.code import TwistedCode
from trs.models.field import FieldSpec, to_ints
from trs.services.finite_field import multiplicative_subgroup
from trs.services.twisted_code import generator_canonical, power_table


@dataclass(frozen=True)
class DualParams:
    """Twist data of the dual code, of dimension k"""

    n: int
    k: int
    t: Tuple[int, ...]
    h: Tuple[int, ...]
    eta: Tuple[int, ...]

    def to_code(self, spec: FieldSpec, alpha: Sequence[int]) -> TwistedCode:
        return TwistedCode(spec, self.n, self.k, tuple(alpha), self.t, self.h, self.eta)


def reversal_matrix(GF, r: int) -> galois.FieldArray:
    return GF.Identity(r)[:, ::-1]


def vandermonde(alpha: galois.FieldArray, rows: int) -> galois.FieldArray:
    return power_table(alpha, rows)


def is_multiplicative_group(spec: FieldSpec, alpha: Sequence[int]) -> bool:
    n = len(alpha)
    if n == 0 or len(set(alpha)) != n or 0 in alpha or (spec.q - 1) % n:
        return False
    # n distinct n-th roots of unity are exactly the subgroup of order n
    return bool(np.all(spec.GF(list(alpha)) ** n == 1))


def _require_group(spec: FieldSpec, alpha: Sequence[int]) -> None:
    if not is_multiplicative_group(spec, alpha):
        raise NotMultiplicativeGroup("evaluation points must form a multiplicative subgroup")


def vandermonde_inverse_mult_group(spec: FieldSpec, alpha: Sequence[int]) -> galois.FieldArray:
    """(V_n(alpha)^T)^-1 = J_n V_n(alpha) diag(alpha / n)"""
    _require_group(spec, alpha)
    GF = spec.GF
    a = GF(list(alpha))
    n = a.size
    scale = a / GF(n % spec.p)
    return reversal_matrix(GF, n) @ vandermonde(a, n) * scale[None, :]


def twist_block(code: TwistedCode) -> galois.FieldArray:
    """L with canonical generator [I | L] V_n(alpha)"""
    GF = code.GF
    L = GF.Zeros((code.k, code.n - code.k))
    for h, t, eta in code.twists:
        L[h, t - 1] += GF(eta)
    return L


def _stack_identity(X: galois.FieldArray) -> galois.FieldArray:
    GF = type(X)
    r, c = X.shape
    M = GF.Zeros((r, r + c))
    M[:, :r] = GF.Identity(r)
    M[:, r:] = X
    return M


def dual_parity_check(spec: FieldSpec, L: galois.FieldArray, alpha: Sequence[int]) -> galois.FieldArray:
    """H = [I | -J L^T J] V_n(alpha) diag(alpha / n) for the code [I | L] V_n(alpha)"""
    _require_group(spec, alpha)
    GF = spec.GF
    n = len(alpha)
    k, r = L.shape
    if k + r != n:
        raise LengthMismatch(f"L is {k}x{r} but there are {n} points")
    X = -(reversal_matrix(GF, r) @ L.T @ reversal_matrix(GF, k))
    a = GF(list(alpha))
    return _stack_identity(X) @ vandermonde(a, n) * (a / GF(n % spec.p))[None, :]


def _params_from_block(X: galois.FieldArray) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    t, h, eta = [], [], []
    for a, b in zip(*np.nonzero(X != 0)):
        h.append(int(a))
        t.append(int(b) + 1)
        eta.append(int(X[a, b]))
    return tuple(t), tuple(h), tuple(eta)


def _check_orthogonal(G: galois.FieldArray, H: galois.FieldArray) -> None:
    if np.any(G @ H.T != 0) or np.linalg.matrix_rank(H) != H.shape[0]:
        raise InvariantViolation("dual generator is not orthogonal of full rank")


def _dual_group(code: TwistedCode) -> Tuple[DualParams, galois.FieldArray]:
    GF = code.GF
    n, k = code.n, code.k
    params = DualParams(
        n=n,
        k=n - k,
        t=tuple(k - h for h in code.h),
        h=tuple(n - k - t for t in code.t),
        eta=tuple(int(-GF(e)) for e in code.eta),
    )
    H = dual_parity_check(code.field, twist_block(code), code.alpha)
    a = code.alpha_array
    expected = generator_canonical(params.to_code(code.field, code.alpha)) * (a / GF(n % code.field.p))[None, :]
    if np.any(H != expected):
        raise InvariantViolation("closed-form dual differs from the twisted dual generator")
    return params, H


def dual_parity_check_zero_point(code: TwistedCode) -> Tuple[DualParams, galois.FieldArray]:
    """Dual for alpha = G and 0 (any order) through the bordered block"""
    GF = code.GF
    N, k = code.n, code.k
    alpha = list(code.alpha)
    group = [a for a in alpha if a != 0]
    _require_group(code.field, group)
    if not (all(t != N - k for t in code.t) or all(h != 0 for h in code.h)):
        raise ZeroPointHypothesis("need every t_i != n-k or every h_i != 0")

    r = N - k
    L = twist_block(code)
    border = GF.Identity(r)
    border[1:, 0] = L[0, : r - 1]
    X = -(border @ reversal_matrix(GF, r) @ L.T @ reversal_matrix(GF, k))
    t, h, eta = _params_from_block(X)
    params = DualParams(n=N, k=r, t=t, h=h, eta=eta)

    scale = GF.Zeros(N)
    inv_n = GF(1) / GF(len(group) % code.field.p)
    for j, a in enumerate(alpha):
        scale[j] = -GF(1) if a == 0 else inv_n
    H = generator_canonical(params.to_code(code.field, alpha)) * scale[None, :]
    _check_orthogonal(generator_canonical(code), H)
    return params, H


def dual_twisted(code: TwistedCode, allow_zero_point: bool = False) -> Tuple[DualParams, galois.FieldArray]:
    """Dual parameters (k-h, n-k-t, -eta) and an explicit parity-check matrix"""
    if code.at_infinity:
        raise InvalidCodeParameters("closed-form duals exclude the coordinate at infinity")
    if 0 in code.alpha:
        if not allow_zero_point:
            raise NotMultiplicativeGroup("0 is an evaluation point; enable the zero-point dual")
        return dual_parity_check_zero_point(code)
    return _dual_group(code)


def dual_generic(code: TwistedCode) -> galois.FieldArray:
    """Nullspace basis of the canonical generator"""
    return generator_canonical(code).null_space()


def same_row_space(A: galois.FieldArray, B: galois.FieldArray) -> bool:
    GF = type(A)
    stacked = GF.Zeros((A.shape[0] + B.shape[0], A.shape[1]))
    stacked[: A.shape[0]] = A
    stacked[A.shape[0] :] = B
    rank = np.linalg.matrix_rank(stacked)
    return rank == np.linalg.matrix_rank(A) == np.linalg.matrix_rank(B)


def star_dual_corollary_code(spec: FieldSpec, subgroup_order: int, k: int, eta: int) -> TwistedCode:
    """TRS(G, t=(n-k), h=(k-1), eta), MDS as the dual of a (*)-twisted code"""
    if subgroup_order >= spec.q - 1:
        raise NotASubgroupOrder(f"subgroup of order {subgroup_order} is not proper in {spec}")
    group = multiplicative_subgroup(spec, subgroup_order)
    n = len(group)
    GF = spec.GF
    if eta == 0 or int((-GF(1)) ** (n - k + 1) / GF(eta)) in group:
        raise EtaInGroup("(-1)^(n-k+1)/eta must avoid the subgroup and 0")
    return TwistedCode(spec, n, k, tuple(group), (n - k,), (k - 1,), (eta,))


def scaling_vector(code: TwistedCode) -> list:
    """Column multipliers relating H to the dual twisted code"""
    GF = code.GF
    inv_n = GF(1) / GF(len([a for a in code.alpha if a != 0]) % code.field.p)
    if 0 not in code.alpha:
        return to_ints(code.alpha_array * inv_n)
    return [int(-GF(1)) if a == 0 else int(inv_n) for a in code.alpha]

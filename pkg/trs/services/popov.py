"""
🧮 Module Basis Reduction
Shifted weak Popov form by simple transformations, and the key-equation
solver that reads a minimal solution off the reduced basis.
"""

import galois
import numpy as np
from loguru import logger

from trs.core.exceptions import InvariantViolation, NoPivotOneRow, SingularMatrix
from trs.models.code import TwistedCode
from trs.models.decoding import (
    NO_DEGREE,
    KeyEqSolution,
    PolyMatrix,
    _entry_degrees,
    index_set,
    shift_index,
)
from trs.services.polynomial import coeff_array

MAX_TRANSFORMATIONS = 10**6


def build_module_matrix(R: galois.Poly, G: galois.Poly, code: TwistedCode, zeta: int) -> PolyMatrix:
    """[[I, A], [0, G I]] with A[i, i] = R and A[j + delta_mu, j] = -eta_mu X^(k-1+t_mu)"""
    GF = code.GF
    n, k = G.degree, code.k
    large, small = index_set(code.ell, zeta + 1), index_set(code.ell, zeta)
    top, size = len(large), len(large) + len(small)
    coeffs = GF.Zeros((size, size, n + 1))

    R_low = coeff_array(R, n)
    for pos, i in enumerate(large):
        coeffs[pos, pos, 0] = 1
        if i in small:
            coeffs[pos, top + small.position(i), :n] = R_low
        for mu, (t, eta) in enumerate(zip(code.t, code.eta)):
            if i[mu] >= 1:
                j = shift_index(i, mu, -1)
                coeffs[pos, top + small.position(j), k - 1 + t] = -GF(eta)

    G_low = coeff_array(G, n + 1)
    for pos in range(len(small)):
        coeffs[top + pos, top + pos] = G_low

    shift = (k,) + (k - 1,) * (top - 1) + (0,) * len(small)
    return PolyMatrix(coeffs=coeffs, shift=shift)


def _profile(row: galois.FieldArray, shift: np.ndarray):
    """(entry degrees, shifted row degree, pivot) of one row"""
    deg = _entry_degrees(row)
    sdeg = np.where(deg == NO_DEGREE, NO_DEGREE, deg + shift)
    top = int(sdeg.max())
    if top == NO_DEGREE:
        return deg, top, -1
    return deg, top, int(len(sdeg) - 1 - np.argmax(sdeg[::-1] == top))


def weak_popov_reduce(m: PolyMatrix) -> PolyMatrix:
    """Make the shifted pivots pairwise distinct without changing the row module"""
    GF = m.GF
    shift = np.asarray(m.shift, dtype=np.int64)
    coeffs = m.coeffs.copy()

    # shifted row degrees never grow, so this many coefficients always suffice
    row_degrees = m.row_degrees()
    needed = int(row_degrees.max()) - int(shift.min()) + 1
    if needed > coeffs.shape[2]:
        padded = GF.Zeros(coeffs.shape[:2] + (needed,))
        padded[:, :, : coeffs.shape[2]] = coeffs
        coeffs = padded
    D = coeffs.shape[2]

    profiles = [_profile(coeffs[i], shift) for i in range(m.rows)]
    if any(p[2] == -1 for p in profiles):
        raise SingularMatrix("zero row in a square polynomial matrix")

    for step in range(MAX_TRANSFORMATIONS):
        order = sorted(range(m.rows), key=lambda i: (profiles[i][2], i))
        pair = next(((a, b) for a, b in zip(order, order[1:]) if profiles[a][2] == profiles[b][2]), None)
        if pair is None:
            logger.debug(f"weak Popov form after {step} transformations")
            return PolyMatrix(coeffs=coeffs, shift=m.shift)

        a, b = pair
        target, other = (b, a) if profiles[b][1] > profiles[a][1] else (a, b)
        p = profiles[target][2]
        d_target = int(profiles[target][0][p])
        d_other = int(profiles[other][0][p])
        e = d_target - d_other
        c = coeffs[target, p, d_target] / coeffs[other, p, d_other]

        moved = GF.Zeros((m.cols, D))
        moved[:, e:] = coeffs[other, :, : D - e]
        if e and np.any(coeffs[other, :, D - e :] != 0):
            raise InvariantViolation("coefficient capacity exceeded during reduction")
        coeffs[target] -= c * moved

        profiles[target] = _profile(coeffs[target], shift)
        if profiles[target][2] == -1:
            raise SingularMatrix("row reduced to zero; matrix is not of full rank")

    raise InvariantViolation("weak Popov reduction did not terminate")


def solve_problem1_popov(R: galois.Poly, G: galois.Poly, code: TwistedCode, zeta: int) -> KeyEqSolution:
    """Minimal key-equation solution from the pivot-0 row of the reduced module basis"""
    GF = code.GF
    reduced = weak_popov_reduce(build_module_matrix(R, G, code, zeta))
    large, small = index_set(code.ell, zeta + 1), index_set(code.ell, zeta)
    pivots = reduced.pivots()
    if 0 not in pivots:
        raise NoPivotOneRow("no reduced row has its pivot on lambda_0")
    row = pivots.index(0)

    entries = reduced.row(row)
    scale = GF(1) / GF(int(entries[0].coeffs[0]))
    norm = galois.Poly(scale[None], field=GF)
    lambdas = {i: entries[pos] * norm for pos, i in enumerate(large)}
    psis = {j: entries[len(large) + pos] * norm for pos, j in enumerate(small)}
    return KeyEqSolution(lambdas=lambdas, psis=psis, degree=lambdas[large.zero].degree)

"""
🔓 Key-Equation Decoder
Linearised key equations, the decoding algorithm, and a brute-force
oracle that guesses the hooked coefficients and decodes the RS remainder.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np
from loguru import logger

from trs.core.config import settings
from trs.core.exceptions import BudgetExceeded, InvalidCodeParameters, LengthMismatch, NoSolution
from trs.models.code import TwistedCode
from trs.models.decoding import (
    DecodeEngine,
    DecodeOutcome,
    DecodeStatus,
    IndexSet,
    KeyEqSolution,
    index_set,
    shift_index,
)
from trs.models.field import FieldSpec, to_ints
from trs.services.polynomial import (
    coeff_array,
    constant,
    degree,
    from_roots,
    interpolate,
    is_zero,
    monomial,
    poly_divrem,
)
from trs.services.popov import solve_problem1_popov
from trs.services.twisted_code import encode, power_table


def tau_lb(n: int, k: int, ell: int, zeta: int) -> int:
    """Expected lower bound on the decoding radius, in exact rational arithmetic"""
    size = math.comb(ell + zeta, ell)
    denom = 2 * (zeta + 1) + ell
    value = Fraction(zeta + 1, denom) * (n - k) - (
        Fraction(zeta + ell + 1) - Fraction(3 * (zeta + 1), size)
    ) / denom
    return math.ceil(value) - 1


def half_distance(code: TwistedCode) -> int:
    return (code.n - code.k) // 2


def _received(code: TwistedCode, received) -> galois.FieldArray:
    if code.at_infinity:
        raise InvalidCodeParameters("the key-equation decoder works on codes without infinity")
    r = received if isinstance(received, galois.FieldArray) else code.GF(list(received))
    if r.size != code.n:
        raise LengthMismatch(f"received word has {r.size} symbols, code length is {code.n}")
    return r


def build_key_equations(code: TwistedCode, received) -> Tuple[galois.Poly, galois.Poly]:
    """R interpolating the received word on alpha, and G = prod(X - alpha_i)"""
    r = _received(code, received)
    a = code.alpha_array
    return interpolate(a, r), from_roots(a)


# 🧮 Linearised key equations


def _times_x_mod(cur: galois.FieldArray, g_low: galois.FieldArray) -> galois.FieldArray:
    GF = type(cur)
    out = GF.Zeros(cur.size)
    out[1:] = cur[:-1]
    return out - cur[-1] * g_low


@lru_cache(maxsize=64)
def reduced_powers(spec: FieldSpec, alpha: Tuple[int, ...], count: int) -> galois.FieldArray:
    """Row e holds the coefficients of X^e mod prod(X - alpha_i)"""
    GF = spec.GF
    n = len(alpha)
    g_low = coeff_array(from_roots(GF(list(alpha))), n + 1)[:n]
    table = GF.Zeros((count, n))
    cur = GF.Zeros(n)
    cur[0] = 1
    for e in range(count):
        table[e] = cur
        cur = _times_x_mod(cur, g_low)
    return table


class KeyEquationSystem:
    """Problem-1 linear systems of one received word, one per locator degree"""

    def __init__(self, R: galois.Poly, G: galois.Poly, code: TwistedCode, zeta: int):
        self.code = code
        self.zeta = zeta
        self.GF = code.GF
        self.n = G.degree
        self.large: IndexSet = index_set(code.ell, zeta + 1)
        self.small: IndexSet = index_set(code.ell, zeta)
        self.powers = reduced_powers(code.field, code.alpha, 2 * self.n + 1)
        g_low = coeff_array(G, self.n + 1)[: self.n]

        # X^d R mod G for d = 0..n
        self.shifted_R = self.GF.Zeros((self.n + 1, self.n))
        cur = coeff_array(R, self.n)
        for d in range(self.n + 1):
            self.shifted_R[d] = cur
            cur = _times_x_mod(cur, g_low)

    def matrix(self, tau: int) -> galois.FieldArray:
        """Columns: lambda_i coefficients 0..tau for each i, then psi_j coefficients 0..tau+k-1"""
        GF, n, k = self.GF, self.n, self.code.k
        lam_w, psi_w = tau + 1, tau + k
        n_lam = len(self.large) * lam_w
        A = GF.Zeros((len(self.small) * n, n_lam + len(self.small) * psi_w))

        for pos, i in enumerate(self.large):
            cols = slice(pos * lam_w, (pos + 1) * lam_w)
            if i in self.small:
                b = self.small.position(i)
                A[b * n : (b + 1) * n, cols] += self.shifted_R[:lam_w].T
            for mu, (t, eta) in enumerate(zip(self.code.t, self.code.eta)):
                if i[mu] >= 1:
                    b = self.small.position(shift_index(i, mu, -1))
                    e0 = k - 1 + t
                    A[b * n : (b + 1) * n, cols] -= GF(eta) * self.powers[e0 : e0 + lam_w].T

        for pos in range(len(self.small)):
            cols = slice(n_lam + pos * psi_w, n_lam + (pos + 1) * psi_w)
            A[pos * n : (pos + 1) * n, cols] = -self.powers[:psi_w].T
        return A

    def solve(self, tau: int) -> Optional[KeyEqSolution]:
        """Solution with monic deg lambda_0 = tau (RREF, free variables zero), or None"""
        GF, k = self.GF, self.code.k
        A = self.matrix(tau)
        rows, cols = A.shape
        keep = [c for c in range(cols) if c != tau]

        # lambda_0's leading coefficient is fixed to 1 and moves to the right-hand side
        aug = GF.Zeros((rows, cols))
        aug[:, :-1] = A[:, keep]
        aug[:, -1] = -A[:, tau]
        rref = aug.row_reduce()

        nz = np.asarray(rref != 0)
        nonzero_rows = np.flatnonzero(nz.any(axis=1))
        pivots = nz[nonzero_rows].argmax(axis=1)
        if np.any(pivots == cols - 1):
            return None

        x = GF.Zeros(cols - 1)
        x[pivots] = rref[nonzero_rows, -1]
        full = GF.Zeros(cols)
        full[keep] = x
        full[tau] = 1

        lam_w, psi_w = tau + 1, tau + k
        n_lam = len(self.large) * lam_w
        lambdas = {
            i: galois.Poly(full[pos * lam_w : (pos + 1) * lam_w], field=GF, order="asc")
            for pos, i in enumerate(self.large)
        }
        psis = {
            j: galois.Poly(full[n_lam + pos * psi_w : n_lam + (pos + 1) * psi_w], field=GF, order="asc")
            for pos, j in enumerate(self.small)
        }
        return KeyEqSolution(lambdas=lambdas, psis=psis, degree=tau)


def solve_problem1_linear(R: galois.Poly, G: galois.Poly, code: TwistedCode, zeta: int) -> KeyEqSolution:
    """Solution of minimal deg lambda_0"""
    system = KeyEquationSystem(R, G, code, zeta)
    cap = system.n
    solution = system.solve(0)
    if solution is not None:
        return solution

    # solvability is monotone in tau (multiply a solution by X), so bisect
    low, high, best = 1, cap, None
    while low <= high:
        mid = (low + high) // 2
        candidate = system.solve(mid)
        if candidate is None:
            low = mid + 1
        else:
            best, high = candidate, mid - 1
    if best is None:
        raise NoSolution(f"no solution with deg lambda_0 <= {cap}")
    return best


SOLVERS = {
    DecodeEngine.LINEAR: solve_problem1_linear,
    DecodeEngine.POPOV: solve_problem1_popov,
}


# 🔓 Decoding


def _failure(reason: str, locator_degree: Optional[int] = None) -> DecodeOutcome:
    return DecodeOutcome(status=DecodeStatus.FAILURE, reason=reason, locator_degree=locator_degree)


def decode(
    code: TwistedCode,
    received,
    zeta: int = 1,
    engine: DecodeEngine = DecodeEngine.LINEAR,
) -> DecodeOutcome:
    engine = DecodeEngine(engine)
    if engine == DecodeEngine.BRUTE:
        return brute_force_decode(code, received)

    r = _received(code, received)
    R, G = build_key_equations(code, r)
    try:
        solution = SOLVERS[engine](R, G, code, zeta)
    except NoSolution as exc:
        return _failure(exc.message)

    zero = index_set(code.ell, zeta).zero
    g, remainder = poly_divrem(solution.psis[zero], solution.lambdas[zero])
    if not is_zero(remainder):
        return _failure("lambda_0 does not divide psi_0", solution.degree)
    if degree(g) >= code.k:
        return _failure("quotient has degree >= k", solution.degree)

    message = coeff_array(g, code.k)
    codeword = encode(code, message)
    weight = int(np.count_nonzero(codeword != r))
    if weight > half_distance(code):
        return _failure("re-encoded word outside the half-distance ball", solution.degree)
    return DecodeOutcome(
        status=DecodeStatus.SUCCESS,
        codeword=tuple(to_ints(codeword)),
        message=tuple(to_ints(message)),
        error_weight=weight,
        locator_degree=solution.degree,
    )


def rs_decode(spec: FieldSpec, alpha: Sequence[int], k: int, received) -> DecodeOutcome:
    """Untwisted decoding, the single-congruence case"""
    return decode(TwistedCode(spec, len(alpha), k, tuple(alpha)), received, zeta=0)


def brute_force_decode(code: TwistedCode, received) -> DecodeOutcome:
    """Guess every hooked coefficient, strip the twists and decode the RS remainder"""
    q, ell = code.field.q, code.ell
    if q**ell > settings.BRUTE_FORCE_BUDGET:
        raise BudgetExceeded(f"{q ** ell} twist guesses exceed {settings.BRUTE_FORCE_BUDGET}")
    GF = code.GF
    r = _received(code, received)
    rs = code.reed_solomon()
    powers = power_table(code.alpha_array, code.k + max(code.t, default=0))

    candidates: Dict[Tuple[int, ...], Tuple[int, Tuple[int, ...]]] = {}
    for guess in itertools.product(range(q), repeat=ell):
        twist = GF.Zeros(code.n)
        for (h, t, eta), f_h in zip(code.twists, guess):
            twist += GF(eta) * GF(f_h) * powers[code.k - 1 + t]
        outcome = decode(rs, r - twist, zeta=0)
        if not outcome.success:
            continue
        if any(outcome.message[h] != f_h for h, f_h in zip(code.h, guess)):
            continue
        codeword = encode(code, GF(list(outcome.message)))
        weight = int(np.count_nonzero(codeword != r))
        candidates[tuple(to_ints(codeword))] = (weight, outcome.message)

    if not candidates:
        return _failure("no twist guess decodes")
    best = min(weight for weight, _ in candidates.values())
    closest = [cw for cw, (weight, _) in candidates.items() if weight == best]
    if len(closest) > 1:
        logger.debug(f"brute force tie between {len(closest)} codewords at distance {best}")
        return _failure("several codewords at minimal distance")
    codeword = closest[0]
    return DecodeOutcome(
        status=DecodeStatus.SUCCESS,
        codeword=codeword,
        message=candidates[codeword][1],
        error_weight=best,
    )


# 🧪 Key-equation witnesses


def key_equation_witness(
    code: TwistedCode, msg, support: Sequence[int], zeta: int
) -> KeyEqSolution:
    """(Lambda_i, Psi_j) built from the true error locator and message"""
    GF = code.GF
    msg = msg if isinstance(msg, galois.FieldArray) else GF(list(msg))
    locator = from_roots(code.alpha_array[list(support)], GF)
    g = galois.Poly(msg, field=GF, order="asc")
    hooked = [msg[h] for h in code.h]

    lambdas = {}
    for i in index_set(code.ell, zeta + 1):
        scale = GF(1)
        for f_h, power in zip(hooked, i):
            if power:
                scale = scale * f_h**power
        lambdas[i] = locator * constant(GF, int(scale))
    psis = {j: lambdas[j] * g for j in index_set(code.ell, zeta)}
    return KeyEqSolution(lambdas=lambdas, psis=psis, degree=len(support))


def key_equation_residuals(
    solution: KeyEqSolution, R: galois.Poly, G: galois.Poly, code: TwistedCode, zeta: int
) -> List[galois.Poly]:
    """lambda_j R - psi_j - sum lambda_(j+delta_mu) eta_mu X^(k-1+t_mu), reduced mod G"""
    GF = code.GF
    residuals = []
    for j in index_set(code.ell, zeta):
        lhs = solution.lambdas[j] * R - solution.psis[j]
        for mu, (t, eta) in enumerate(zip(code.t, code.eta)):
            lhs = lhs - solution.lambdas[shift_index(j, mu, 1)] * monomial(GF, code.k - 1 + t, eta)
        residuals.append(lhs % G)
    return residuals


def satisfies_degree_bounds(solution: KeyEqSolution, k: int) -> bool:
    top = degree(solution.lambdas[min(solution.lambdas, key=sum)])
    return all(degree(lam) <= top for lam in solution.lambdas.values()) and all(
        degree(psi) <= top + k - 1 for psi in solution.psis.values()
    )

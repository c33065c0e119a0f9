"""
📐 Twisted Code Service
Basis polynomials, generator matrices, encoding and random sampling
"""

from typing import List, Sequence, Tuple

import galois
import numpy as np
from loguru import logger

from trs.core.exceptions import InfeasibleParameters, LengthMismatch, SingularLeftBlock
from trs.core.rng import SeedLike, as_generator
from trs.models.code import TwistedCode
from trs.models.field import FieldSpec
from trs.services.polynomial import from_coeffs


def power_table(alpha: galois.FieldArray, rows: int) -> galois.FieldArray:
    """rows x n matrix of alpha_j^i, built by repeated multiplication (0^0 = 1)"""
    GF = type(alpha)
    table = GF.Zeros((rows, alpha.size))
    if rows == 0:
        return table
    table[0] = GF.Ones(alpha.size)
    for i in range(1, rows):
        table[i] = table[i - 1] * alpha
    return table


def basis_polys(code: TwistedCode) -> List[galois.Poly]:
    """g_i = X^i + sum over twists hooked at i of eta_j X^(k-1+t_j)"""
    GF = code.GF
    top = code.k + max(code.t, default=0)
    polys = []
    for i in range(code.k):
        coeffs = [0] * top
        coeffs[i] = 1
        for h, t, eta in code.twists:
            if h == i:
                coeffs[code.k - 1 + t] = eta
        polys.append(from_coeffs(GF, coeffs))
    return polys


def twisted_poly(code: TwistedCode, msg: galois.FieldArray) -> galois.Poly:
    """f = sum f_i X^i + sum eta_j f_{h_j} X^(k-1+t_j)"""
    msg = _message(code, msg)
    top = code.k + max(code.t, default=0)
    coeffs = code.GF.Zeros(top)
    coeffs[: code.k] = msg
    for h, t, eta in code.twists:
        coeffs[code.k - 1 + t] += code.GF(eta) * msg[h]
    return galois.Poly(coeffs, field=code.GF, order="asc")


def generator_canonical(code: TwistedCode) -> galois.FieldArray:
    """k x n (or k x (n+1)) matrix whose rows evaluate the basis polynomials"""
    GF = code.GF
    powers = power_table(code.alpha_array, code.k + max(code.t, default=0))
    G = GF.Zeros((code.k, code.length))
    G[:, : code.n] = powers[: code.k]
    for h, t, eta in code.twists:
        G[h, : code.n] += GF(eta) * powers[code.k - 1 + t]
    if code.at_infinity:
        # f(inf) is the coefficient of X^(k-1+t_1)
        G[code.h[0], code.n] = code.eta[0]
    return G


def _message(code: TwistedCode, msg) -> galois.FieldArray:
    msg = msg if isinstance(msg, galois.FieldArray) else code.GF(list(msg))
    if msg.size != code.k:
        raise LengthMismatch(f"message has {msg.size} symbols, code dimension is {code.k}")
    return msg


def encode(code: TwistedCode, msg) -> galois.FieldArray:
    return _message(code, msg) @ generator_canonical(code)


def systematic_block(G: galois.FieldArray) -> galois.FieldArray:
    """A with [I | A] row-equivalent to G"""
    k = G.shape[0]
    left = G[:, :k]
    if np.linalg.matrix_rank(left) < k:
        raise SingularLeftBlock("first k coordinates are not an information set")
    return np.linalg.inv(left) @ G[:, k:]


def systematic_form(code: TwistedCode) -> galois.FieldArray:
    return systematic_block(generator_canonical(code))


def grs_generator(
    spec: FieldSpec, alpha: Sequence[int], multipliers: Sequence[int], k: int
) -> galois.FieldArray:
    """V_k(alpha) diag(v)"""
    GF = spec.GF
    v = GF(list(multipliers))
    if np.any(v == 0):
        raise InfeasibleParameters("column multipliers must be nonzero")
    return power_table(GF(list(alpha)), k) * v[None, :]


def code_from_block(spec: FieldSpec, alpha: Sequence[int], X: galois.FieldArray) -> TwistedCode:
    """Twisted code whose canonical generator is [I | X] V_n(alpha)"""
    k, r = X.shape
    t, h, eta = [], [], []
    for a, b in zip(*np.nonzero(X != 0)):
        h.append(int(a))
        t.append(int(b) + 1)
        eta.append(int(X[a, b]))
    return TwistedCode(spec, k + r, k, tuple(alpha), tuple(t), tuple(h), tuple(eta))


def _random_points(rng: np.random.Generator, spec: FieldSpec, n: int, low: int) -> Tuple[int, ...]:
    points = np.sort(rng.choice(np.arange(low, spec.q), size=n, replace=False))
    rng.shuffle(points)
    return tuple(int(a) for a in points)


def _random_twists(
    rng: np.random.Generator, n: int, k: int, ell: int
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    # rejection over the product space is uniform on vectors with distinct pairs
    while True:
        t = rng.integers(1, n - k + 1, size=ell)
        h = rng.integers(0, k, size=ell)
        if len(set(zip(h.tolist(), t.tolist()))) == ell:
            return tuple(t.tolist()), tuple(h.tolist())


def sample_random_code(spec: FieldSpec, n: int, k: int, ell: int, seed: SeedLike = None) -> TwistedCode:
    """alpha from F_q^*, (t, h) uniform with distinct pairs, eta from F_q^*"""
    if not 1 <= k < n <= spec.q - 1:
        raise InfeasibleParameters(f"need 1 <= k < n <= q-1, got k={k}, n={n}, q={spec.q}")
    if ell > k * (n - k):
        raise InfeasibleParameters(f"only {k * (n - k)} distinct (hook, twist) pairs exist, asked for {ell}")
    rng = as_generator(seed)
    alpha = _random_points(rng, spec, n, low=1)
    t, h = _random_twists(rng, n, k, ell)
    eta = tuple(int(e) for e in rng.integers(1, spec.q, size=ell))
    return TwistedCode(spec, n, k, alpha, t, h, eta)


def random_mds_search(
    spec: FieldSpec,
    n: int,
    k: int,
    t: Sequence[int],
    h: Sequence[int],
    attempts: int,
    seed: SeedLike = None,
) -> List[TwistedCode]:
    """Random (alpha, eta) over all of F_q that yield MDS codes"""
    from trs.services.mds_families import is_mds_exhaustive

    rng = as_generator(seed)
    found = []
    for attempt in range(attempts):
        alpha = _random_points(rng, spec, n, low=0)
        eta = tuple(int(e) for e in rng.integers(1, spec.q, size=len(t)))
        code = TwistedCode(spec, n, k, alpha, tuple(t), tuple(h), eta)
        if is_mds_exhaustive(code):
            found.append(code)
    logger.info(f"MDS search [{n},{k}] over {spec}: {len(found)}/{attempts} hits")
    return found


def code_to_params(code: TwistedCode) -> dict:
    return {
        "field": code.field.to_dict(),
        "n": code.n,
        "k": code.k,
        "alpha": list(code.alpha),
        "t": list(code.t),
        "h": list(code.h),
        "eta": list(code.eta),
        "at_infinity": code.at_infinity,
    }


def code_from_params(data: dict) -> TwistedCode:
    from trs.services.finite_field import field_from_dict

    return TwistedCode(
        field_from_dict(data["field"]),
        int(data["n"]),
        int(data["k"]),
        tuple(data["alpha"]),
        tuple(data.get("t", ())),
        tuple(data.get("h", ())),
        tuple(data.get("eta", ())),
        bool(data.get("at_infinity", False)),
    )

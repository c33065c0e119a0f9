"""
🏅 MDS Certification
Minor scan ground truth plus the constructive MDS families
"""

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Set, Tuple

import galois
import numpy as np
from loguru import logger

from trs.core.config import settings
from trs.core.exceptions import (
    DegreeMismatch,
    EmptyDifference,
    EtaInGroup,
    EtaInverseInGroup,
    InfeasibleParameters,
    InvalidCodeParameters,
    InvariantViolation,
    NotASubgroupOrder,
    NotAdditiveSubgroup,
    TooLarge,
)
from trs.models.code import TwistedCode
from trs.models.field import FieldSpec, SubfieldEmbedding, to_ints
from trs.services.finite_field import embed_subfield, make_field, multiplicative_subgroup
from trs.services.twisted_code import generator_canonical


class MdsMethod(str, Enum):
    """MDS decision procedures"""

    AUTO = "auto"
    EXHAUSTIVE = "exhaustive"
    STAR = "star"
    PLUS = "plus"


@dataclass(frozen=True)
class MdsVerdict:
    mds: bool
    witness: Optional[Tuple[int, ...]]
    method: MdsMethod


# 🔍 Ground truth


def is_mds_matrix(G: galois.FieldArray) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """Scan k x k minors in lexicographic column order; first zero minor is the witness"""
    k, length = G.shape
    for cols in itertools.combinations(range(length), k):
        if np.linalg.det(G[:, list(cols)]) == 0:
            return False, cols
    return True, None


def minimum_distance(G: galois.FieldArray, chunk: int = 1 << 14) -> int:
    """Minimum weight over all nonzero codewords, by enumeration"""
    GF = type(G)
    k, length = G.shape
    total = GF.order**k
    if total > settings.ENUMERATION_BUDGET:
        raise TooLarge(f"{total} codewords exceed the enumeration budget {settings.ENUMERATION_BUDGET}")
    best = length
    radix = GF.order ** np.arange(k, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        messages = GF((idx[:, None] // radix[None, :]) % GF.order)
        weights = np.count_nonzero((messages @ G) != 0, axis=1)
        best = min(best, int(weights.min()))
    return best


def is_mds_exhaustive(code: TwistedCode, cross_check: bool = False) -> bool:
    G = generator_canonical(code)
    mds, _ = is_mds_matrix(G)
    if cross_check and code.field.q**code.k <= settings.ENUMERATION_BUDGET:
        d = minimum_distance(G)
        if mds != (d == code.length - code.k + 1):
            raise InvariantViolation(
                f"minor scan says mds={mds} but minimum distance is {d} for {code.describe()}"
            )
    return mds


# ➕✖️ Subset sums and products


def _subset_witness(
    values: Sequence[int],
    k: int,
    target: int,
    combine: Callable[[int, int], int],
    unit: int,
) -> Optional[Tuple[int, ...]]:
    """Lexicographically first k-subset of positions whose combination equals target"""
    n = len(values)
    dead: Set[Tuple[int, int, int]] = set()
    chosen: List[int] = []

    def search(start: int, remaining: int, acc: int) -> bool:
        if remaining == 0:
            return acc == target
        if (start, remaining, acc) in dead:
            return False
        for pos in range(start, n - remaining + 1):
            chosen.append(pos)
            if search(pos + 1, remaining - 1, combine(acc, values[pos])):
                return True
            chosen.pop()
        dead.add((start, remaining, acc))
        return False

    return tuple(chosen) if search(0, k, unit) else None


def _field_ops(spec: FieldSpec):
    GF = spec.GF
    return (lambda a, b: int(GF(a) * GF(b))), (lambda a, b: int(GF(a) + GF(b)))


def star_mds_witness(spec: FieldSpec, k: int, alpha: Sequence[int], eta1: int) -> Optional[Tuple[int, ...]]:
    """k-subset I with eta (-1)^k prod_I alpha = 1, or None"""
    if eta1 == 0:
        return None
    GF = spec.GF
    target = int((-GF(1)) ** k / GF(eta1))
    mul, _ = _field_ops(spec)
    # subsets through 0 have product 0, never the (nonzero) target
    positions = [i for i, a in enumerate(alpha) if a != 0]
    hit = _subset_witness([alpha[i] for i in positions], k, target, mul, 1)
    return None if hit is None else tuple(positions[i] for i in hit)


def star_mds_condition(spec: FieldSpec, n: int, k: int, alpha: Sequence[int], eta1: int) -> bool:
    if len(alpha) != n:
        raise InvalidCodeParameters(f"expected {n} evaluation points")
    return star_mds_witness(spec, k, alpha, eta1) is None


def plus_mds_witness(spec: FieldSpec, k: int, alpha: Sequence[int], eta1: int) -> Optional[Tuple[int, ...]]:
    """k-subset I with eta sum_I alpha = -1, or None"""
    if eta1 == 0:
        return None
    GF = spec.GF
    target = int(-GF(1) / GF(eta1))
    _, add = _field_ops(spec)
    return _subset_witness(list(alpha), k, target, add, 0)


def plus_mds_condition(spec: FieldSpec, n: int, k: int, alpha: Sequence[int], eta1: int) -> bool:
    if len(alpha) != n:
        raise InvalidCodeParameters(f"expected {n} evaluation points")
    return plus_mds_witness(spec, k, alpha, eta1) is None


def k_fold_values(spec: FieldSpec, S: Sequence[int], k: int, group_op: str) -> Set[int]:
    """All sums (or products) of k distinct elements of S"""
    GF = spec.GF
    unit = 1 if group_op == "mul" else 0
    reach: List[Set[int]] = [{unit}] + [set() for _ in range(k)]
    for s in S:
        x = GF(s)
        for c in range(min(k, len(S)), 0, -1):
            if not reach[c - 1]:
                continue
            prev = GF(sorted(reach[c - 1]))
            combined = prev * x if group_op == "mul" else prev + x
            reach[c].update(to_ints(combined))
    return reach[k]


def is_k_sum_generator(spec: FieldSpec, S: Sequence[int], k: int, group_op: str) -> bool:
    """Every element of (F_q, +) or F_q^* is a sum/product of k distinct elements of S"""
    if group_op not in ("add", "mul"):
        raise ValueError(f"unknown group operation {group_op!r}")
    S = sorted(set(int(s) for s in S))
    if group_op == "mul" and 0 in S:
        raise InfeasibleParameters("0 is not an element of the multiplicative group")
    if len(S) < k:
        raise InfeasibleParameters(f"need at least k={k} elements, got {len(S)}")
    order = spec.q - 1 if group_op == "mul" else spec.q
    cost = math.comb(len(S), k) * order
    if cost > settings.K_SUM_BUDGET:
        raise TooLarge(f"k-sum check costs {cost} > {settings.K_SUM_BUDGET}")
    return len(k_fold_values(spec, S, k, group_op)) == order


def plus_k_sum_obstruction(spec: FieldSpec, alpha: Sequence[int], k: int) -> bool:
    """True when alpha is a k-sum generator of (F_q, +), forcing non-MDS for t=(1), h=(k-1), eta != 0"""
    return is_k_sum_generator(spec, alpha, k, "add")


# 🧱 Constructive families


def make_star_twisted(
    spec: FieldSpec,
    subgroup_order: int,
    k: int,
    eta1: int,
    n: Optional[int] = None,
    include_zero: bool = True,
) -> TwistedCode:
    """alpha within G and 0, t=(1), h=(0), (-1)^k / eta outside G"""
    if subgroup_order >= spec.q - 1:
        raise NotASubgroupOrder(f"subgroup of order {subgroup_order} is not proper in {spec}")
    group = multiplicative_subgroup(spec, subgroup_order)
    if eta1 == 0:
        raise EtaInGroup("eta must be nonzero for a (*)-twisted code")
    GF = spec.GF
    if int((-GF(1)) ** k / GF(eta1)) in group:
        raise EtaInGroup(f"(-1)^{k}/eta lies in the subgroup of order {subgroup_order}")
    points = group + ([0] if include_zero else [])
    n = n or len(points)
    if n > len(points):
        raise InfeasibleParameters(f"at most {len(points)} points available, asked for {n}")
    return TwistedCode(spec, n, k, tuple(points[:n]), (1,), (0,), (eta1,))


def check_additive_subgroup(spec: FieldSpec, V: Sequence[int]) -> List[int]:
    V = sorted(set(int(v) for v in V))
    if not V or 0 not in V or len(V) >= spec.q:
        raise NotAdditiveSubgroup("need a proper additive subgroup containing 0")
    Vf = spec.GF(V)
    if not set(to_ints((Vf[:, None] + Vf[None, :]).ravel())) <= set(V):
        raise NotAdditiveSubgroup("evaluation set is not closed under addition")
    return V


def make_plus_twisted(
    spec: FieldSpec,
    additive_subgroup: Sequence[int],
    k: int,
    eta1: int,
    n: Optional[int] = None,
    at_infinity: bool = False,
) -> TwistedCode:
    """alpha within an additive subgroup V, t=(1), h=(k-1), 1/eta outside V"""
    V = check_additive_subgroup(spec, additive_subgroup)
    if eta1 == 0 or int(spec.GF(eta1) ** -1) in V:
        raise EtaInverseInGroup("1/eta must lie outside the additive subgroup")
    n = n or len(V)
    if n > len(V):
        raise InfeasibleParameters(f"at most {len(V)} points available, asked for {n}")
    return TwistedCode(spec, n, k, tuple(V[:n]), (1,), (k - 1,), (eta1,), at_infinity)


@dataclass(frozen=True)
class ChainSpec:
    """Proper subfield chain F_q0 < ... < F_ql with embeddings into the top field"""

    chain: Tuple[FieldSpec, ...]
    embeddings: Tuple[SubfieldEmbedding, ...] = field(repr=False)

    @property
    def top(self) -> FieldSpec:
        return self.chain[-1]

    @property
    def ell(self) -> int:
        return len(self.chain) - 1

    def base_points(self) -> List[int]:
        """The base field F_q0 inside the top field"""
        return list(self.embeddings[0].image())


def make_chain_spec(p: int, degrees: Sequence[int]) -> ChainSpec:
    degrees = list(degrees)
    if not degrees or any(b <= a or b % a for a, b in zip(degrees, degrees[1:])):
        raise DegreeMismatch(f"degrees {degrees} do not form a proper divisibility chain")
    chain = tuple(make_field(p, m) for m in degrees)
    embeddings = tuple(embed_subfield(f, chain[-1]) for f in chain)
    return ChainSpec(chain=chain, embeddings=embeddings)


def make_chain_eta(cs: ChainSpec, rng: Optional[np.random.Generator] = None) -> List[int]:
    """eta_i in F_qi minus F_q(i-1); smallest encoding unless an rng is given"""
    eta = []
    for lower, upper in zip(cs.embeddings, cs.embeddings[1:]):
        diff = sorted(set(upper.image()) - set(lower.image()))
        if not diff:
            raise EmptyDifference(f"{upper.sub} adds nothing over {lower.sub}")
        eta.append(int(diff[0] if rng is None else rng.choice(diff)))
    return eta


@dataclass(frozen=True)
class PowerBasisSpec:
    """F_q over F_q0 with psi generating a power basis and scalars a_1..a_l in F_q0^*"""

    sub: FieldSpec
    sup: FieldSpec
    embedding: SubfieldEmbedding = field(repr=False)
    psi: int
    scalars: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.sup.m // self.sub.m

    def base_points(self) -> List[int]:
        return list(self.embedding.image())


def _is_power_basis(emb: SubfieldEmbedding, psi: int) -> bool:
    """1, psi, ..., psi^(d-1) independent over F_q0, as an F_p-rank check"""
    sup, sub = emb.sup, emb.sub
    d = sup.m // sub.m
    GF = sup.GF
    basis = emb.map(np.array([sub.p**i for i in range(sub.m)], dtype=np.int64))
    powers = [GF(1)]
    for _ in range(d - 1):
        powers.append(powers[-1] * GF(psi))
    spans = [int(b * x) for x in powers for b in basis]
    digits = [[(v // sup.p**i) % sup.p for i in range(sup.m)] for v in spans]
    return int(np.linalg.matrix_rank(galois.GF(sup.p)(digits))) == sup.m


def make_power_basis_spec(
    p: int,
    m0: int,
    m: int,
    scalars: Sequence[int],
    psi: Optional[int] = None,
) -> PowerBasisSpec:
    sub, sup = make_field(p, m0), make_field(p, m)
    emb = embed_subfield(sub, sup)
    ell = len(scalars)
    if m % m0 or m // m0 < ell + 1:
        raise InfeasibleParameters(f"[F_q : F_q0] = {m / m0:g} must be at least ell+1 = {ell + 1}")
    if any(not 0 < a < sub.q for a in scalars):
        raise InfeasibleParameters("scalars must be nonzero elements of the subfield")
    if psi is None:
        psi = next(x for x in range(sup.q) if _is_power_basis(emb, x))
    elif not _is_power_basis(emb, psi):
        raise InfeasibleParameters(f"{psi} does not generate a power basis over {sub}")
    return PowerBasisSpec(sub=sub, sup=sup, embedding=emb, psi=int(psi), scalars=tuple(scalars))


def make_power_basis_eta(pb: PowerBasisSpec) -> List[int]:
    """eta_i = a_i psi"""
    GF = pb.sup.GF
    return [int(pb.embedding.map(a) * GF(pb.psi)) for a in pb.scalars]


def sum_product_free_check(eta: Sequence[int], sub: SubfieldEmbedding) -> bool:
    """No sum of a_S prod_S eta over nonempty S (a_S in F_q0) lands in F_q0^*"""
    ell = len(eta)
    assignments = sub.sub.q ** (2**ell - 1)
    if assignments > settings.SUM_PRODUCT_BUDGET:
        raise TooLarge(f"{assignments} coefficient assignments exceed {settings.SUM_PRODUCT_BUDGET}")
    GF = sub.sup.GF
    eta_f = GF([int(e) for e in eta])
    scalars = GF(list(sub.image()))

    # every value reachable by the assignments, accumulated one subset at a time
    reachable = GF([0])
    for size in range(1, ell + 1):
        for S in itertools.combinations(range(ell), size):
            prod = GF(1)
            for i in S:
                prod = prod * eta_f[i]
            combined = (reachable[:, None] + scalars[None, :] * prod).ravel()
            reachable = GF(sorted(set(to_ints(combined))))
    hits = set(to_ints(reachable)) & (set(sub.image()) - {0})
    if hits:
        logger.debug(f"sum-product lands in the subfield at {sorted(hits)[:4]}")
    return not hits


# 🧭 Dispatcher


def _is_star_shape(code: TwistedCode) -> bool:
    return code.ell == 1 and code.t == (1,) and code.h == (0,) and not code.at_infinity


def _is_plus_shape(code: TwistedCode) -> bool:
    # the extension keeps MDS in both directions when h = k-1
    return code.ell == 1 and code.t == (1,) and code.h == (code.k - 1,)


def mds_check(code: TwistedCode, method: MdsMethod = MdsMethod.AUTO) -> MdsVerdict:
    method = MdsMethod(method)
    if method == MdsMethod.AUTO:
        if _is_star_shape(code):
            method = MdsMethod.STAR
        elif _is_plus_shape(code):
            method = MdsMethod.PLUS
        else:
            method = MdsMethod.EXHAUSTIVE

    if method == MdsMethod.STAR:
        if not _is_star_shape(code):
            raise InvalidCodeParameters("star condition needs t=(1), h=(0) without infinity")
        witness = star_mds_witness(code.field, code.k, code.alpha, code.eta[0])
    elif method == MdsMethod.PLUS:
        if not _is_plus_shape(code):
            raise InvalidCodeParameters("plus condition needs t=(1), h=(k-1)")
        if code.at_infinity and code.eta[0] == 0:
            # the infinity column is zero
            witness = tuple(range(code.k - 1)) + (code.n,)
        else:
            witness = plus_mds_witness(code.field, code.k, code.alpha, code.eta[0])
    else:
        _, witness = is_mds_matrix(generator_canonical(code))
    return MdsVerdict(mds=witness is None, witness=witness, method=method)

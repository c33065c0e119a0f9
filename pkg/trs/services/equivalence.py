"""
🧬 GRS Discrimination
Schur squares, degree-set bounds, the 3x3-minor GRS test and eta censuses
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np
from loguru import logger

from trs.core.config import settings
from trs.core.exceptions import InfeasibleParameters, TooLarge
from trs.models.code import TwistedCode
from trs.models.field import FieldSpec
from trs.services.duality import is_multiplicative_group
from trs.services.finite_field import product
from trs.services.mds_families import is_mds_exhaustive, is_mds_matrix
from trs.services.polynomial import degree, from_roots, poly_mod
from trs.services.twisted_code import basis_polys, generator_canonical, systematic_block

DegreeSet = Tuple[int, ...]


class EtaClass(str, Enum):
    """Census classification of one eta"""

    NON_MDS = "non_mds"
    MDS_GRS = "mds_grs"
    MDS_NON_GRS = "mds_non_grs"


class NonGrsCertificate(str, Enum):
    """Structural statements that force a Schur square larger than any GRS code's"""

    STAR_LOW_RATE = "star_low_rate"
    PLUS_LOW_RATE = "plus_low_rate"
    STAR_HIGH_RATE = "star_high_rate"
    SPREAD_HOOKS = "spread_hooks"


# 🔲 Schur square


def schur_square_dim(G: galois.FieldArray) -> int:
    """Rank of all coordinatewise products of unordered row pairs"""
    rows, cols = np.triu_indices(G.shape[0])
    return int(np.linalg.matrix_rank(G[rows] * G[cols]))


def degree_set(code: TwistedCode) -> DegreeSet:
    """deg g_i for every basis polynomial"""
    degrees = []
    for i in range(code.k):
        lifted = [t for h, t, eta in code.twists if h == i and eta != 0]
        degrees.append(code.k - 1 + max(lifted) if lifted else i)
    return tuple(sorted(degrees))


def sumset_lower_bound(code: TwistedCode) -> int:
    S = degree_set(code)
    return len({a + b for a in S for b in S if a + b < code.n})


def reduced_degree_set(code: TwistedCode) -> DegreeSet:
    """Degrees of g_i g_j mod prod(X - alpha)"""
    G = from_roots(code.alpha_array)
    g = basis_polys(code)
    degrees = set()
    for i, j in itertools.combinations_with_replacement(range(code.k), 2):
        d = degree(poly_mod(g[i] * g[j], G))
        if d != float("-inf"):
            degrees.add(int(d))
    return tuple(sorted(degrees))


def reduced_lower_bound(code: TwistedCode) -> int:
    return len(reduced_degree_set(code))


# 🧮 Roth characterisation


def _minors_2x2_nonzero(A: galois.FieldArray) -> bool:
    k, r = A.shape
    upper = np.triu(np.ones((r, r), dtype=bool), k=1)
    for i, j in itertools.combinations(range(k), 2):
        minors = A[i][:, None] * A[j][None, :] - A[j][:, None] * A[i][None, :]
        if np.any((minors == 0) & upper):
            return False
    return True


def _minors_3x3_zero(A: galois.FieldArray) -> bool:
    r = A.shape[1]
    triples = np.array(list(itertools.combinations(range(r), 3)), dtype=np.int64)
    c1, c2, c3 = triples[:, 0], triples[:, 1], triples[:, 2]
    for i, j, l in itertools.combinations(range(A.shape[0]), 3):
        a, b, c = A[i], A[j], A[l]
        det = (
            a[c1] * (b[c2] * c[c3] - b[c3] * c[c2])
            - a[c2] * (b[c1] * c[c3] - b[c3] * c[c1])
            + a[c3] * (b[c1] * c[c2] - b[c2] * c[c1])
        )
        if np.any(det != 0):
            return False
    return True


def is_grs_matrix(G: galois.FieldArray) -> bool:
    """GRS test on a generator whose first k coordinates are an information set"""
    k, length = G.shape
    if not is_mds_matrix(G)[0]:
        return False
    if min(k, length - k) < 3:
        return True
    A = systematic_block(G)
    if np.any(A == 0):
        return False
    inverse = A**-1
    return _minors_2x2_nonzero(inverse) and _minors_3x3_zero(inverse)


def is_grs(code: TwistedCode) -> bool:
    return is_grs_matrix(generator_canonical(code))


# 📜 Non-GRS certificates


def star_half_rate_non_grs(code: TwistedCode) -> Tuple[bool, int]:
    """For t=(1), h=(0), n=2k: constant term eta^2 prod(alpha) - 1 decides dim C^2 = n"""
    if not (code.t == (1,) and code.h == (0,) and code.n == 2 * code.k and code.k >= 3):
        raise InfeasibleParameters("needs t=(1), h=(0), n=2k and k >= 3")
    GF = code.GF
    eta = GF(code.eta[0])
    value = eta**2 * product(code.alpha_array, GF(1)) - GF(1)
    return bool(value != 0), int(value)


def _star_shape(code: TwistedCode) -> bool:
    return code.ell == 1 and code.t == (1,) and code.h == (0,) and code.eta[0] != 0


def _plus_shape(code: TwistedCode) -> bool:
    return code.ell == 1 and code.t == (1,) and code.h == (code.k - 1,) and code.eta[0] != 0


def _spread_hooks(code: TwistedCode) -> bool:
    if code.ell == 0 or any(e == 0 for e in code.eta):
        return False
    if any(not 1 < h < code.k - 2 for h in code.h):
        return False
    return all(a == b or abs(a - b) > 1 for a, b in itertools.combinations(code.h, 2))


def schur_non_grs_certificate(code: TwistedCode) -> Optional[NonGrsCertificate]:
    n, k = code.n, code.k
    if code.at_infinity:
        return None
    low_rate = 3 <= k and 2 * k < n
    if low_rate and _star_shape(code):
        return NonGrsCertificate.STAR_LOW_RATE
    if low_rate and _plus_shape(code):
        return NonGrsCertificate.PLUS_LOW_RATE
    if (
        _star_shape(code)
        and n < 2 * k
        and k <= n - 3
        and len(code.alpha) < code.field.q - 1
        and is_multiplicative_group(code.field, code.alpha)
    ):
        return NonGrsCertificate.STAR_HIGH_RATE
    if 2 * k < n and _spread_hooks(code):
        return NonGrsCertificate.SPREAD_HOOKS
    return None


# 📊 Census


def census_fraction_bound(domain_sizes: Sequence[int]) -> Optional[float]:
    """Guaranteed non-GRS fraction prod(1 - 6/|H_i|), or None when some |H_i| <= 6"""
    if not domain_sizes or any(size <= 6 for size in domain_sizes):
        return None
    bound = Fraction(1)
    for size in domain_sizes:
        bound *= 1 - Fraction(6, size)
    return float(bound)


@dataclass
class CensusRecord:
    counts: Dict[str, int]
    classes: List[Tuple[Tuple[int, ...], EtaClass]] = field(default_factory=list)
    # |H_1|, ..., |H_l| when the domain is a full product H_1 x ... x H_l
    domain_sizes: Optional[List[int]] = None

    @property
    def mds_total(self) -> int:
        return self.counts[EtaClass.MDS_GRS.value] + self.counts[EtaClass.MDS_NON_GRS.value]

    @property
    def grs_fraction(self) -> Optional[float]:
        if not self.mds_total:
            return None
        return self.counts[EtaClass.MDS_GRS.value] / self.mds_total

    @property
    def fraction_bound(self) -> Optional[float]:
        if not self.domain_sizes:
            return None
        return census_fraction_bound(self.domain_sizes)

    def etas(self, cls: EtaClass) -> List[Tuple[int, ...]]:
        return [eta for eta, c in self.classes if c == cls]


def classify_eta(code: TwistedCode) -> EtaClass:
    if not is_mds_exhaustive(code):
        return EtaClass.NON_MDS
    return EtaClass.MDS_GRS if is_grs(code) else EtaClass.MDS_NON_GRS


def product_domain_sizes(domain: Sequence[Tuple[int, ...]]) -> Optional[List[int]]:
    """Coordinate set sizes if the domain is exactly their Cartesian product, else None"""
    distinct = set(domain)
    if not distinct or len(distinct) != len(domain):
        return None
    width = len(domain[0])
    sizes = [len({eta[i] for eta in distinct}) for i in range(width)]
    return sizes if int(np.prod(sizes)) == len(distinct) else None


def grs_eta_census(
    spec: FieldSpec,
    n: int,
    k: int,
    t: Sequence[int],
    h: Sequence[int],
    alpha: Sequence[int],
    eta_domain: Union[str, Sequence[Sequence[int]]] = "all",
) -> CensusRecord:
    """Classify every eta of the domain as non-MDS, MDS and GRS, or MDS and non-GRS"""
    if isinstance(eta_domain, str):
        if eta_domain != "all" or len(t) != 1:
            raise InfeasibleParameters("the implicit 'all' domain needs exactly one twist")
        domain = [(e,) for e in range(spec.q)]
    else:
        domain = [tuple(int(e) for e in eta) for eta in eta_domain]
    if len(domain) > settings.CENSUS_BUDGET:
        raise TooLarge(f"{len(domain)} eta values exceed the census budget {settings.CENSUS_BUDGET}")

    base = TwistedCode(spec, n, k, tuple(alpha), tuple(t), tuple(h), (0,) * len(t))
    record = CensusRecord(
        counts={cls.value: 0 for cls in EtaClass},
        domain_sizes=product_domain_sizes(domain),
    )
    for eta in domain:
        cls = classify_eta(base.with_eta(eta))
        record.counts[cls.value] += 1
        record.classes.append((eta, cls))
    logger.info(f"Census [{n},{k}] t={list(t)} h={list(h)}: {record.counts}")
    return record

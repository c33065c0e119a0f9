"""
🧩 Decoder Models
Index sets, key-equation solutions, decoding outcomes and polynomial matrices
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np

from trs.core.exceptions import TooLarge

Index = Tuple[int, ...]
NO_DEGREE = -(10**9)


@dataclass(frozen=True)
class IndexSet:
    """All l-tuples with entry sum <= zeta, graded lexicographic, zero tuple first"""

    ell: int
    zeta: int
    tuples: Tuple[Index, ...]

    @cached_property
    def _positions(self) -> Dict[Index, int]:
        return {i: pos for pos, i in enumerate(self.tuples)}

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def __contains__(self, i) -> bool:
        return tuple(i) in self._positions

    def position(self, i: Sequence[int]) -> int:
        return self._positions[tuple(i)]

    @property
    def zero(self) -> Index:
        return self.tuples[0]

    def units(self) -> List[Index]:
        """delta_1 .. delta_l"""
        return [tuple(int(mu == nu) for nu in range(self.ell)) for mu in range(self.ell)]


@lru_cache(maxsize=None)
def index_set(ell: int, zeta: int) -> IndexSet:
    tuples = [i for i in itertools.product(range(zeta + 1), repeat=ell) if sum(i) <= zeta]
    tuples.sort(key=lambda i: (sum(i), i))
    return IndexSet(ell=ell, zeta=zeta, tuples=tuple(tuples))


def shift_index(i: Index, mu: int, step: int) -> Index:
    return tuple(v + step if nu == mu else v for nu, v in enumerate(i))


@dataclass
class KeyEqSolution:
    """lambda_i for i in I_(zeta+1), psi_j for j in I_zeta"""

    lambdas: Dict[Index, galois.Poly]
    psis: Dict[Index, galois.Poly]
    degree: int

    @property
    def locator(self) -> galois.Poly:
        return self.lambdas[min(self.lambdas, key=sum)]


class DecodeStatus(str, Enum):
    """Decoder verdict"""

    SUCCESS = "success"
    FAILURE = "failure"


class DecodeEngine(str, Enum):
    """Ways of solving the key equations"""

    LINEAR = "linear"
    POPOV = "popov"
    BRUTE = "brute"


@dataclass(frozen=True)
class DecodeOutcome:
    status: DecodeStatus
    codeword: Optional[Tuple[int, ...]] = None
    message: Optional[Tuple[int, ...]] = None
    error_weight: Optional[int] = None
    locator_degree: Optional[int] = None
    reason: Optional[str] = None

    @property
    def success(self) -> bool:
        return self.status == DecodeStatus.SUCCESS

    def same_result(self, other: "DecodeOutcome") -> bool:
        return (self.status, self.codeword, self.message, self.error_weight) == (
            other.status,
            other.codeword,
            other.message,
            other.error_weight,
        )

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "codeword": list(self.codeword) if self.codeword is not None else None,
            "message": list(self.message) if self.message is not None else None,
            "error_weight": self.error_weight,
            "locator_degree": self.locator_degree,
            "reason": self.reason,
        }


def _entry_degrees(block: galois.FieldArray) -> np.ndarray:
    """Degrees of the polynomials stored along the last axis (NO_DEGREE for zero)"""
    nz = np.asarray(block != 0)
    D = nz.shape[-1]
    last = D - 1 - np.argmax(nz[..., ::-1], axis=-1)
    return np.where(nz.any(axis=-1), last, NO_DEGREE)


@dataclass
class PolyMatrix:
    """Polynomial matrix as a rows x cols x (max degree + 1) coefficient array"""

    coeffs: galois.FieldArray
    shift: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.shift:
            self.shift = (0,) * self.cols
        self.shift = tuple(int(s) for s in self.shift)

    @classmethod
    def from_polys(
        cls, entries: Sequence[Sequence[galois.Poly]], shift: Sequence[int] = ()
    ) -> "PolyMatrix":
        GF = entries[0][0].field
        D = 1 + max(max(p.degree for p in row) for row in entries)
        coeffs = GF.Zeros((len(entries), len(entries[0]), D))
        for i, row in enumerate(entries):
            for j, p in enumerate(row):
                coeffs[i, j, : p.degree + 1] = p.coeffs[::-1]
        return cls(coeffs=coeffs, shift=tuple(shift))

    @property
    def rows(self) -> int:
        return self.coeffs.shape[0]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[1]

    @property
    def GF(self):
        return type(self.coeffs)

    def entry(self, i: int, j: int) -> galois.Poly:
        return galois.Poly(self.coeffs[i, j], field=self.GF, order="asc")

    def row(self, i: int) -> List[galois.Poly]:
        return [self.entry(i, j) for j in range(self.cols)]

    def degrees(self) -> np.ndarray:
        return _entry_degrees(self.coeffs)

    def shifted_degrees(self) -> np.ndarray:
        deg = self.degrees()
        return np.where(deg == NO_DEGREE, NO_DEGREE, deg + np.asarray(self.shift)[None, :])

    def row_degrees(self) -> np.ndarray:
        return self.shifted_degrees().max(axis=1)

    def pivots(self) -> List[int]:
        """Rightmost index attaining the shifted row degree; -1 for zero rows"""
        sdeg = self.shifted_degrees()
        out = []
        for row in sdeg:
            top = row.max()
            out.append(-1 if top == NO_DEGREE else int(len(row) - 1 - np.argmax(row[::-1] == top)))
        return out

    def is_weak_popov(self) -> bool:
        piv = self.pivots()
        return -1 not in piv and len(set(piv)) == len(piv)

    def determinant(self) -> galois.Poly:
        """Leibniz expansion; small matrices only"""
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        if self.rows > 7:
            raise TooLarge("determinant expansion limited to 7x7 matrices")
        GF = self.GF
        entries = [self.row(i) for i in range(self.rows)]
        total = galois.Poly.Zero(field=GF)
        for perm in itertools.permutations(range(self.rows)):
            inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
            term = galois.Poly.One(field=GF)
            for i, j in enumerate(perm):
                term = term * entries[i][j]
            total = total - term if inversions % 2 else total + term
        return total

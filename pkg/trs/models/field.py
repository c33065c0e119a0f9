"""
🔢 Field Models
Finite field descriptions and subfield embeddings
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Sequence, Tuple, Type

import galois
import numpy as np


@lru_cache(maxsize=None)
def galois_field(p: int, m: int, modulus: Tuple[int, ...]) -> Type[galois.FieldArray]:
    """galois class for GF(p^m) in the polynomial basis of `modulus`"""
    if m == 1:
        return galois.GF(p)
    prime = galois.GF(p)
    irreducible = galois.Poly(list(modulus), field=prime, order="asc")
    return galois.GF(p**m, irreducible_poly=irreducible)


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with a fixed monic modulus (low-to-high coefficients)"""

    p: int
    m: int
    modulus: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def GF(self) -> Type[galois.FieldArray]:
        return galois_field(self.p, self.m, self.modulus)

    def __call__(self, values) -> galois.FieldArray:
        return self.GF(values)

    @property
    def zero(self) -> galois.FieldArray:
        return self.GF(0)

    @property
    def one(self) -> galois.FieldArray:
        return self.GF(1)

    def contains(self, x) -> bool:
        return type(x) is self.GF

    def to_dict(self) -> Dict[str, object]:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __str__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


@dataclass(frozen=True)
class SubfieldEmbedding:
    """Field homomorphism sub -> sup fixed by the image of sub's generator"""

    sub: FieldSpec
    sup: FieldSpec
    image_of_sub_generator: int
    table: Tuple[int, ...] = field(repr=False, compare=False, default=())

    def map(self, x) -> galois.FieldArray:
        """Image of sub-field element(s) inside sup"""
        values = np.asarray(x).view(np.ndarray).astype(np.int64)
        return self.sup.GF(np.asarray(self.table, dtype=np.int64)[values])

    def image(self) -> Tuple[int, ...]:
        """Integer encodings (in sup) of the embedded subfield, sorted"""
        return tuple(sorted(self.table))

    def preimage(self, y: int) -> int:
        return self.table.index(int(y))


def to_ints(x: Sequence) -> list:
    """Integer encodings of a field array (nested lists for matrices)"""
    return np.asarray(x).view(np.ndarray).astype(np.int64).tolist()

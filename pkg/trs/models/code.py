"""
📐 Twisted Code Model
Parameters (n, k, alpha, t, h, eta) of a twisted Reed-Solomon code
"""

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import galois

from trs.core.exceptions import InvalidCodeParameters
from trs.models.field import FieldSpec


@dataclass(frozen=True)
class TwistedCode:
    """Twisted RS code; every field element is stored by its integer encoding"""

    field: FieldSpec
    n: int
    k: int
    alpha: Tuple[int, ...]
    t: Tuple[int, ...] = ()
    h: Tuple[int, ...] = ()
    eta: Tuple[int, ...] = ()
    at_infinity: bool = False

    def __post_init__(self):
        # normalise list inputs so the dataclass stays hashable
        for name in ("alpha", "t", "h", "eta"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        self.validate()

    def validate(self) -> None:
        q = self.field.q
        if not 1 <= self.k < self.n <= q:
            raise InvalidCodeParameters(
                f"need 1 <= k < n <= q, got k={self.k}, n={self.n}, q={q}"
            )
        if len(self.alpha) != self.n:
            raise InvalidCodeParameters(f"expected {self.n} evaluation points, got {len(self.alpha)}")
        if len(set(self.alpha)) != self.n:
            raise InvalidCodeParameters("evaluation points must be pairwise distinct")
        if any(not 0 <= a < q for a in self.alpha + self.eta):
            raise InvalidCodeParameters(f"field elements must be encoded in [0, {q})")
        if not len(self.t) == len(self.h) == len(self.eta):
            raise InvalidCodeParameters("t, h and eta must have the same length")
        if any(not 1 <= t <= self.n - self.k for t in self.t):
            raise InvalidCodeParameters(f"twists must lie in 1..{self.n - self.k}")
        if any(not 0 <= h < self.k for h in self.h):
            raise InvalidCodeParameters(f"hooks must lie in 0..{self.k - 1}")
        if len(set(zip(self.h, self.t))) != self.ell:
            raise InvalidCodeParameters("(hook, twist) pairs must be pairwise distinct")
        if self.at_infinity and self.ell != 1:
            raise InvalidCodeParameters("evaluation at infinity needs exactly one twist")

    @property
    def ell(self) -> int:
        return len(self.t)

    @property
    def length(self) -> int:
        """Code length including the coordinate at infinity"""
        return self.n + int(self.at_infinity)

    @property
    def GF(self):
        return self.field.GF

    @property
    def alpha_array(self) -> galois.FieldArray:
        return self.field.GF(list(self.alpha))

    @property
    def eta_array(self) -> galois.FieldArray:
        return self.field.GF(list(self.eta))

    @property
    def twists(self) -> Sequence[Tuple[int, int, int]]:
        """(h, t, eta) triples in declaration order"""
        return list(zip(self.h, self.t, self.eta))

    def with_eta(self, eta: Sequence[int]) -> "TwistedCode":
        return replace(self, eta=tuple(eta))

    def reed_solomon(self, k: Optional[int] = None) -> "TwistedCode":
        """The untwisted code on the same points"""
        return TwistedCode(self.field, self.n, k or self.k, self.alpha)

    def describe(self) -> str:
        return (
            f"[{self.length},{self.k}] over {self.field} "
            f"t={list(self.t)} h={list(self.h)} eta={list(self.eta)}"
            + (" +inf" if self.at_infinity else "")
        )

"""
🔢 Finite Field Service
Construction of GF(p^m), element codec, subfields and subgroups
"""

import itertools
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np
from loguru import logger

from trs.core.config import settings
from trs.core.exceptions import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NotASubgroupOrder,
    NotIrreducible,
    NotPrime,
    OutOfRange,
    InvariantViolation,
    TooLarge,
)
from trs.models.field import FieldSpec, SubfieldEmbedding, to_ints

ARITH_OPS = ("add", "sub", "mul", "div", "inv", "pow")


def _is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    return galois.Poly(list(modulus), field=galois.GF(p), order="asc").is_irreducible()


def default_modulus(p: int, m: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (by c_0, ..., c_{m-1})"""
    if m == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=m):
        if low[0] == 0:
            continue
        candidate = low + (1,)
        if _is_irreducible(p, candidate):
            return candidate
    raise NotIrreducible(f"no irreducible polynomial of degree {m} over GF({p})")


def make_field(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Validated FieldSpec for GF(p^m)"""
    if not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime", p=p)
    if m < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {m}", m=m)
    if p**m > settings.MAX_FIELD_ORDER:
        raise TooLarge(f"GF({p}^{m}) exceeds the maximal field order {settings.MAX_FIELD_ORDER}")

    if modulus is None:
        coeffs = default_modulus(p, m)
    else:
        coeffs = tuple(int(c) for c in modulus)
        if len(coeffs) != m + 1 or coeffs[-1] != 1:
            raise DegreeMismatch(
                f"modulus must be monic of degree {m}, got {list(coeffs)}", modulus=list(coeffs)
            )
        if any(not 0 <= c < p for c in coeffs):
            raise OutOfRange(f"modulus coefficients must lie in [0, {p})")
        if m == 1 and coeffs != (0, 1):
            # prime fields use the X convention; every linear modulus gives the same field
            coeffs = (0, 1)
        elif m > 1 and not _is_irreducible(p, coeffs):
            raise NotIrreducible(f"{list(coeffs)} is reducible over GF({p})", modulus=list(coeffs))

    spec = FieldSpec(p=p, m=m, modulus=coeffs)
    logger.debug(f"Field ready: {spec} modulus={list(coeffs)}")
    return spec


def field_from_dict(data: dict) -> FieldSpec:
    return make_field(int(data["p"]), int(data.get("m", 1)), data.get("modulus"))


def encode_element(x) -> int:
    return int(x)


def decode_element(spec: FieldSpec, value: int) -> galois.FieldArray:
    if not 0 <= int(value) < spec.q:
        raise OutOfRange(f"{value} is not an element encoding of {spec}", value=int(value))
    return spec.GF(int(value))


def element_coeffs(spec: FieldSpec, x) -> Tuple[int, ...]:
    """Residues c_0..c_{m-1} of the polynomial-basis representation"""
    value = int(x)
    return tuple((value // spec.p**i) % spec.p for i in range(spec.m))


def element_from_coeffs(spec: FieldSpec, coeffs: Sequence[int]) -> galois.FieldArray:
    if len(coeffs) != spec.m or any(not 0 <= c < spec.p for c in coeffs):
        raise OutOfRange(f"expected {spec.m} residues in [0, {spec.p})")
    return spec.GF(sum(int(c) * spec.p**i for i, c in enumerate(coeffs)))


def arith(a, b, op: str):
    """Exact field arithmetic on two elements of the same field"""
    if op not in ARITH_OPS:
        raise ValueError(f"unknown operation {op!r}")
    if op == "pow":
        if not isinstance(b, (int, np.integer)):
            raise FieldMismatch("exponent must be an integer")
        if int(b) < 0 and a == 0:
            raise DivisionByZero("zero has no inverse")
        return a ** int(b)
    if op == "inv":
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return a**-1
    if type(a) is not type(b):
        raise FieldMismatch(f"operands live in {type(a).__name__} and {type(b).__name__}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if b == 0:
        raise DivisionByZero("division by zero")
    return a / b


def subfield_elements(spec: FieldSpec, q0: int) -> List[int]:
    """The unique subfield of order q0, i.e. {x : x^q0 = x}"""
    e = 1
    while spec.p**e < q0:
        e += 1
    if spec.p**e != q0 or spec.m % e:
        raise DegreeMismatch(f"{spec} has no subfield of order {q0}")
    elements = spec.GF.elements
    return sorted(to_ints(elements[elements**q0 == elements]))


def multiplicative_subgroup(spec: FieldSpec, order: int) -> List[int]:
    """Sorted elements of the subgroup of F_q^* with the given order"""
    if order < 1 or (spec.q - 1) % order:
        raise NotASubgroupOrder(f"{order} does not divide q-1 = {spec.q - 1}", order=order)
    g = spec.GF.primitive_element ** ((spec.q - 1) // order)
    members = [spec.GF(1)]
    for _ in range(order - 1):
        members.append(members[-1] * g)
    return sorted(int(x) for x in members)


def additive_subgroup(spec: FieldSpec, generators: Iterable[int]) -> List[int]:
    """F_p-span of the generators, i.e. the additive subgroup they generate"""
    span = spec.GF([0])
    scalars = spec.GF(list(range(spec.p)))
    for value in generators:
        g = decode_element(spec, value)
        span = (span[:, None] + scalars[None, :] * g).ravel()
        span = spec.GF(sorted(set(to_ints(span))))
    return to_ints(span)


def _homomorphism_holds(emb: SubfieldEmbedding) -> bool:
    sub = emb.sub.GF.elements
    image = emb.map(sub)
    a, b = np.meshgrid(np.arange(emb.sub.q), np.arange(emb.sub.q), indexing="ij")
    a, b = a.ravel(), b.ravel()
    sa, sb = sub[a], sub[b]
    adds = image[a] + image[b] == emb.map(sa + sb)
    muls = image[a] * image[b] == emb.map(sa * sb)
    return bool(image[0] == 0 and image[1] == 1 and np.all(adds) and np.all(muls))


def embed_subfield(sub: FieldSpec, sup: FieldSpec) -> SubfieldEmbedding:
    """Embedding sending the class of X in sub to the smallest root of sub's modulus in sup"""
    if sub.p != sup.p or sup.m % sub.m:
        raise DegreeMismatch(f"{sub} is not a subfield of {sup}")

    if sub.m == 1:
        theta = 0
    else:
        modulus = galois.Poly(list(sub.modulus), field=sup.GF, order="asc")
        theta = min(to_ints(modulus.roots()))

    # row c of `digits` holds the residues of sub element c
    q_sub = sub.q
    digits = np.array(
        [[(c // sub.p**i) % sub.p for i in range(sub.m)] for c in range(q_sub)], dtype=np.int64
    )
    powers = [sup.GF(1)]
    for _ in range(sub.m - 1):
        powers.append(powers[-1] * sup.GF(theta))
    table = sup.GF(digits) @ sup.GF(to_ints(powers)) if sub.m > 1 else sup.GF(digits[:, 0])

    emb = SubfieldEmbedding(sub=sub, sup=sup, image_of_sub_generator=theta, table=tuple(to_ints(table)))
    if len(set(emb.table)) != q_sub:
        raise InvariantViolation(f"embedding {sub} -> {sup} is not injective")
    if q_sub <= settings.EMBEDDING_CHECK_LIMIT and not _homomorphism_holds(emb):
        raise InvariantViolation(f"embedding {sub} -> {sup} is not a homomorphism")
    return emb


def product(values: Sequence, one):
    return reduce(lambda x, y: x * y, values, one)

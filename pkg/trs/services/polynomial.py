"""
📈 Polynomial Service
Dense univariate polynomials over a FieldSpec, backed by galois.Poly
"""

from collections import Counter
from typing import List, Optional, Sequence, Tuple, Type, Union

import galois
import numpy as np

from trs.core.exceptions import DivisionByZero, DuplicatePoint, FieldMismatch, LengthMismatch
from trs.models.field import to_ints

NEG_INF = float("-inf")
Degree = Union[int, float]


def is_zero(f: galois.Poly) -> bool:
    return f.degree == 0 and int(f.coeffs[0]) == 0


def degree(f: galois.Poly) -> Degree:
    """Degree with the zero polynomial at -inf"""
    return NEG_INF if is_zero(f) else f.degree


def zero(GF: Type[galois.FieldArray]) -> galois.Poly:
    return galois.Poly.Zero(field=GF)


def one(GF: Type[galois.FieldArray]) -> galois.Poly:
    return galois.Poly.One(field=GF)


def monomial(GF: Type[galois.FieldArray], d: int, coeff=1) -> galois.Poly:
    if int(coeff) == 0:
        return zero(GF)
    return galois.Poly.Degrees([d], coeffs=GF([int(coeff)]), field=GF)


def constant(GF: Type[galois.FieldArray], c) -> galois.Poly:
    return galois.Poly(GF([int(c)]), field=GF)


def from_coeffs(GF: Type[galois.FieldArray], coeffs: Sequence[int]) -> galois.Poly:
    """Polynomial from integer-encoded coefficients, low-to-high"""
    if len(coeffs) == 0:
        return zero(GF)
    return galois.Poly(GF([int(c) for c in coeffs]), field=GF, order="asc")


def coeff_array(f: galois.Poly, size: Optional[int] = None) -> galois.FieldArray:
    """Coefficients low-to-high as a field array, zero padded to `size`"""
    GF = f.field
    low = f.coeffs[::-1]
    if size is None:
        return GF.Zeros(0) if is_zero(f) else low
    if not is_zero(f) and f.degree >= size:
        raise LengthMismatch(f"degree {f.degree} does not fit in {size} coefficients")
    out = GF.Zeros(size)
    if not is_zero(f):
        out[: f.degree + 1] = low
    return out


def to_coeffs(f: galois.Poly, size: Optional[int] = None) -> List[int]:
    """Integer-encoded coefficients low-to-high; the zero polynomial gives []"""
    return to_ints(coeff_array(f, size))


def coeff(f: galois.Poly, d: int) -> int:
    if is_zero(f) or d > f.degree or d < 0:
        return 0
    return int(f.coeffs[f.degree - d])


def _same_field(a: galois.Poly, b: galois.Poly) -> None:
    if a.field is not b.field:
        raise FieldMismatch(f"polynomials over {a.field.name} and {b.field.name}")


def poly_divrem(a: galois.Poly, b: galois.Poly) -> Tuple[galois.Poly, galois.Poly]:
    _same_field(a, b)
    if is_zero(b):
        raise DivisionByZero("polynomial division by zero")
    return divmod(a, b)


def poly_mod(a: galois.Poly, b: galois.Poly) -> galois.Poly:
    return poly_divrem(a, b)[1]


def eval_many(f: galois.Poly, points: galois.FieldArray) -> galois.FieldArray:
    if type(points) is not f.field:
        raise FieldMismatch(f"points are not elements of {f.field.name}")
    return f(points)


def interpolate(xs: galois.FieldArray, ys: galois.FieldArray) -> galois.Poly:
    """Unique polynomial of degree < len(xs) through the points"""
    if type(xs) is not type(ys):
        raise FieldMismatch("abscissae and ordinates live in different fields")
    if xs.size != ys.size:
        raise LengthMismatch(f"{xs.size} abscissae but {ys.size} ordinates")
    if len(set(to_ints(xs))) != xs.size:
        raise DuplicatePoint("interpolation abscissae must be pairwise distinct")
    if xs.size == 0 or not np.any(ys != 0):
        return zero(type(xs))
    return galois.lagrange_poly(xs, ys)


def from_roots(roots: galois.FieldArray, GF: Optional[Type[galois.FieldArray]] = None) -> galois.Poly:
    """Monic product of (X - r) over the roots, repeated roots allowed"""
    GF = GF or type(roots)
    values = to_ints(roots) if len(roots) else []
    if not values:
        return one(GF)
    counts = Counter(values)
    unique = sorted(counts)
    return galois.Poly.Roots(GF(unique), multiplicities=[counts[r] for r in unique], field=GF)

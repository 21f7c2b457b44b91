#!/usr/bin/env python3
"""
AlgInt Certify - Number Field Module
Number fields L = Q(theta) given by a monic irreducible defining polynomial,
element arithmetic in the power basis, and the exact invariants every certifier
relies on: trace, norm, characteristic and minimal polynomials, the integrality
oracle and the denominator of an element.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import factorint

from modules.errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidArgument,
    IrreducibilityUndecided,
    NotMonic,
    NotSquarefree,
    Reducible,
    ZeroPolynomial,
)
from modules.exact_core import (
    UniPoly,
    format_rational,
    poly_gcd,
    poly_xgcd,
    power_sums_from_poly,
    rational_valuation,
    to_rational,
)
from modules.irreducibility import (
    EXHAUSTIVE_DEGREE_LIMIT,
    SCREEN_PRIME_COUNT,
    screen_irreducibility,
)
from modules.rat_matrix import RatMatrix, charpoly_matrix, kernel_basis

logger = logging.getLogger(__name__)


class NumberField:
    """
    Number field Q(theta) with theta a root of a monic irreducible polynomial

    Construction validates the defining polynomial and fails with a precise
    error unless irreducibility is established.
    """

    def __init__(self, defpoly: UniPoly,
                 prime_count: int = SCREEN_PRIME_COUNT,
                 search_degree: int = EXHAUSTIVE_DEGREE_LIMIT):
        """
        Validate the defining polynomial and precompute the trace form

        Args:
            defpoly: Monic squarefree irreducible polynomial of degree >= 1
            prime_count: Primes tried by the mod-p irreducibility screen
            search_degree: Largest degree covered by the divisor search
        """
        if defpoly.is_zero:
            raise ZeroPolynomial("Defining polynomial is zero")
        if not defpoly.is_monic:
            raise NotMonic(f"Defining polynomial {defpoly} is not monic")
        if defpoly.degree < 1:
            raise InvalidArgument("Defining polynomial must have degree >= 1")
        if poly_gcd(defpoly, defpoly.derivative()).degree >= 1:
            raise NotSquarefree(f"Defining polynomial {defpoly} has a repeated factor")

        screen = screen_irreducibility(defpoly, prime_count, search_degree)
        if screen.status == "rejected":
            raise Reducible(f"{defpoly} is reducible over Q (factor {screen.witness})", witness=screen.witness)
        if screen.status == "undecided":
            raise IrreducibilityUndecided(
                f"Could not establish irreducibility of {defpoly} (degree {defpoly.degree})")

        self.defpoly = defpoly
        self.degree = defpoly.degree
        self.irreducibility_status = screen.status
        self.irreducibility_method = screen.method
        # Tr(theta^i) are the power sums of the roots of defpoly
        sums = power_sums_from_poly(defpoly, self.degree - 1) if self.degree > 1 else []
        self._trace_vector: Tuple[Fraction, ...] = (Fraction(self.degree), *sums)
        logger.debug(f"Field Q(theta), theta root of {defpoly}: {screen.status} via {screen.method}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.defpoly == other.defpoly

    def __hash__(self) -> int:
        return hash(("NumberField", self.defpoly))

    def __repr__(self) -> str:
        return f"NumberField({self.defpoly})"

    def to_json(self) -> Dict[str, Any]:
        return {"defpoly": self.defpoly.to_json()}

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def trace_vector(self) -> Tuple[Fraction, ...]:
        return self._trace_vector

    # Element constructors

    def element(self, coords: Iterable[Any]) -> "NFElement":
        values = [to_rational(c) for c in coords]
        if len(values) > self.degree:
            raise InvalidArgument(f"Element has {len(values)} coordinates, field degree is {self.degree}")
        values.extend([Fraction(0)] * (self.degree - len(values)))
        return NFElement(self, values)

    def from_rational(self, value: Any) -> "NFElement":
        return self.element([to_rational(value)])

    def from_poly(self, poly: UniPoly) -> "NFElement":
        return NFElement(self, _pad((poly % self.defpoly).coefficients, self.degree))

    def zero(self) -> "NFElement":
        return self.element([])

    def one(self) -> "NFElement":
        return self.from_rational(1)

    def theta(self) -> "NFElement":
        return self.from_poly(UniPoly.x())

    def coerce(self, value: Any) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field != self:
                raise FieldMismatch(f"Element of {value.field} used in {self}")
            return value
        return self.from_rational(value)


def _pad(values: Sequence[Fraction], length: int) -> List[Fraction]:
    return list(values) + [Fraction(0)] * (length - len(values))


class NFElement:
    """Immutable element of a number field in the power basis 1, theta, ..., theta^(d-1)"""

    __slots__ = ("field", "coords", "_minpoly")

    def __init__(self, field: NumberField, coords: Sequence[Fraction]):
        if len(coords) != field.degree:
            raise InvalidArgument(f"Expected {field.degree} coordinates, got {len(coords)}")
        self.field = field
        self.coords: Tuple[Fraction, ...] = tuple(coords)
        self._minpoly: Optional[UniPoly] = None

    def to_poly(self) -> UniPoly:
        return UniPoly(self.coords)

    def to_json(self) -> Dict[str, List[str]]:
        return {"coords": [format_rational(c) for c in self.coords]}

    @classmethod
    def from_json(cls, field: NumberField, data: Dict[str, List[str]]) -> "NFElement":
        return field.element(data["coords"])

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise InvalidArgument(f"{self} is not rational")
        return self.coords[0]

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"NFElement({self})"

    def __str__(self) -> str:
        return self.to_poly().pretty("t")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NFElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coords[0])
        return hash((self.field.defpoly, self.coords))

    # Arithmetic

    def _other(self, other: Any) -> Optional["NFElement"]:
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise FieldMismatch("Elements of different number fields cannot be combined")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.from_rational(other)
        return None

    def __neg__(self) -> "NFElement":
        return NFElement(self.field, [-c for c in self.coords])

    def __add__(self, other: Any) -> "NFElement":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __sub__(self, other: Any) -> "NFElement":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other: Any) -> "NFElement":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> "NFElement":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return NFElement(self.field, [c * other for c in self.coords])
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.is_rational:
            return o * self.coords[0]
        if o.is_rational:
            return self * o.coords[0]
        return self.field.from_poly(self.to_poly() * o.to_poly())

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "NFElement":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * elem_inv(o)

    def __rtruediv__(self, other: Any) -> "NFElement":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * elem_inv(self)

    def __pow__(self, exponent: int) -> "NFElement":
        if exponent < 0:
            return elem_inv(self) ** (-exponent)
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "NFElement":
        return elem_inv(self)


@dataclass(frozen=True)
class IntegralityCheck:
    """Answer of the integrality oracle together with the minimal polynomial that decides it"""
    integral: bool
    minpoly: UniPoly

    def __bool__(self) -> bool:
        return self.integral


def field_new(defpoly: UniPoly, **screen_options: int) -> NumberField:
    return NumberField(defpoly, **screen_options)


def same_field(elements: Sequence[NFElement]) -> NumberField:
    """
    Common field of a non-empty element list

    Returns:
        The field shared by every element
    """
    if not elements:
        raise InvalidArgument("Expected at least one element")
    field = elements[0].field
    for e in elements[1:]:
        if e.field != field:
            raise FieldMismatch("Elements belong to different number fields")
    return field


def elem_inv(x: NFElement) -> NFElement:
    """
    Multiplicative inverse by extended Euclid against the defining polynomial

    Args:
        x: Nonzero element

    Returns:
        y with x * y = 1
    """
    if x.is_zero:
        raise DivisionByZero("Inverse of zero")
    if x.is_rational:
        return x.field.from_rational(1 / x.coords[0])
    g, s, _ = poly_xgcd(x.to_poly(), x.field.defpoly)
    if g.degree != 0:
        raise Reducible(f"{x.field.defpoly} shares the factor {g} with {x}", witness=g)
    return x.field.from_poly(s)


def multiplication_matrix(x: NFElement) -> RatMatrix:
    """Matrix of y -> x*y in the power basis; column j holds x*theta^j"""
    field = x.field
    theta = field.theta()
    columns = []
    current = x
    for _ in range(field.degree):
        columns.append(current.coords)
        current = current * theta
    return RatMatrix.from_columns(columns)


def trace(x: NFElement) -> Fraction:
    return sum((c * t for c, t in zip(x.coords, x.field.trace_vector) if c), Fraction(0))


def charpoly_elem(x: NFElement) -> UniPoly:
    if x.is_rational:
        return UniPoly([-x.coords[0], 1]) ** x.field.degree
    return charpoly_matrix(multiplication_matrix(x))


def minpoly_elem(x: NFElement) -> UniPoly:
    """
    Minimal polynomial over Q from the first linear dependency among 1, x, x^2, ...

    Args:
        x: Any element

    Returns:
        Monic minimal polynomial
    """
    if x._minpoly is not None:
        return x._minpoly
    if x.is_rational:
        result = UniPoly([-x.coords[0], 1])
    else:
        columns = [x.field.one().coords]
        power = x.field.one()
        result = None
        for m in range(1, x.field.degree + 1):
            power = power * x
            columns.append(power.coords)
            kernel = kernel_basis(RatMatrix.from_columns(columns))
            if kernel:
                relation = kernel[0]
                result = UniPoly(c / relation[m] for c in relation)
                break
        if result is None:
            # a degree-d field always has a dependency by m = d
            raise InvalidArgument(f"No linear dependency found for {x}")
    x._minpoly = result
    return result


def is_algebraic_integer(x: NFElement) -> IntegralityCheck:
    minpoly = minpoly_elem(x)
    return IntegralityCheck(minpoly.has_integer_coefficients, minpoly)


def denominator(x: NFElement) -> int:
    """
    Smallest positive integer D with D*x an algebraic integer

    Args:
        x: Any element

    Returns:
        D, computed prime by prime from the minimal polynomial coefficients
    """
    minpoly = minpoly_elem(x)
    m = minpoly.degree
    primes = set()
    for c in minpoly.coefficients:
        primes.update(factorint(c.denominator))
    result = 1
    for p in sorted(primes):
        exponent = 0
        for i in range(1, m + 1):
            v = rational_valuation(minpoly[m - i], p)
            if v is None:
                continue
            # ceil(-v / i)
            exponent = max(exponent, -(v // i))
        result *= p ** exponent
    return result


def norm(x: NFElement) -> Fraction:
    constant = charpoly_elem(x)[0]
    return constant if x.field.degree % 2 == 0 else -constant

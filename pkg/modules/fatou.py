#!/usr/bin/env python3
"""
AlgInt Certify - Fatou Module
Polynomials and rational functions over a number field, power-series expansion,
the Fatou certifier and witness search, integrality of polynomial combinations
sum lambda_i f_i^n, multivariate polynomials with the axis (monomial) condition,
and a sufficient multiplicative-independence test.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from modules.certificate import Certificate, Verdict, Witness
from modules.errors import (
    DenominatorConstantTermNotOne,
    IndexOutOfRange,
    InvalidArgument,
    LengthMismatch,
    NotCoprime,
    RatioConstant,
    ZeroElement,
    ZeroPolynomial,
)
from modules.numfield import NFElement, NumberField, is_algebraic_integer, same_field
from modules.rat_matrix import RatMatrix
from modules.valuation import mean_valuation, prime_support

logger = logging.getLogger(__name__)

DEFAULT_NMAX_SCALE = 64


class FieldPoly:
    """Immutable univariate polynomial with number field coefficients, lowest degree first"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coefficients: Iterable[Any] = ()):
        coeffs = [field.coerce(c) for c in coefficients]
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.field = field
        self.coeffs: Tuple[NFElement, ...] = tuple(coeffs)

    @classmethod
    def x(cls, field: NumberField) -> "FieldPoly":
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coefficient(self) -> NFElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero()

    def __getitem__(self, index: int) -> NFElement:
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return self.field.zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"FieldPoly({[str(c) for c in self.coeffs]})"

    def to_json(self) -> List[Dict[str, List[str]]]:
        return [c.to_json() for c in self.coeffs]

    def _coerce(self, other: Any) -> "FieldPoly":
        if isinstance(other, FieldPoly):
            if other.field != self.field:
                raise InvalidArgument("Polynomials over different fields")
            return other
        return FieldPoly(self.field, [other])

    def __neg__(self) -> "FieldPoly":
        return FieldPoly(self.field, [-c for c in self.coeffs])

    def __add__(self, other: Any) -> "FieldPoly":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return FieldPoly(self.field, [self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FieldPoly":
        return self + (-self._coerce(other))

    def __mul__(self, other: Any) -> "FieldPoly":
        if not isinstance(other, FieldPoly):
            scalar = self.field.coerce(other)
            return FieldPoly(self.field, [c * scalar for c in self.coeffs])
        o = self._coerce(other)
        if self.is_zero or o.is_zero:
            return FieldPoly(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return FieldPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "FieldPoly":
        result = FieldPoly(self.field, [1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divmod(self, divisor: "FieldPoly") -> Tuple["FieldPoly", "FieldPoly"]:
        if divisor.is_zero:
            raise ZeroPolynomial("Division by the zero polynomial")
        remainder = list(self.coeffs)
        dd = divisor.degree
        if len(remainder) - 1 < dd:
            return FieldPoly(self.field), self
        lead_inv = divisor.leading_coefficient.inverse()
        quotient = [self.field.zero()] * (len(remainder) - dd)
        for shift in range(len(remainder) - 1 - dd, -1, -1):
            factor = remainder[shift + dd] * lead_inv
            quotient[shift] = factor
            if factor.is_zero:
                continue
            for i, c in enumerate(divisor.coeffs):
                remainder[shift + i] = remainder[shift + i] - factor * c
        return FieldPoly(self.field, quotient), FieldPoly(self.field, remainder[:dd])

    def monic(self) -> "FieldPoly":
        if self.is_zero:
            return self
        return self * self.leading_coefficient.inverse()

    def __call__(self, point: Any) -> NFElement:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc


def field_poly_gcd(f: FieldPoly, g: FieldPoly) -> FieldPoly:
    a, b = f, g
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RationalFunction:
    """g / h with g, h polynomials over a number field, h nonzero"""

    __slots__ = ("num", "den")

    def __init__(self, num: FieldPoly, den: FieldPoly):
        if den.is_zero:
            raise ZeroPolynomial("Rational function with zero denominator")
        if num.field != den.field:
            raise InvalidArgument("Numerator and denominator over different fields")
        self.num = num
        self.den = den

    @property
    def field(self) -> NumberField:
        return self.num.field

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r} / {self.den!r})"

    def to_json(self) -> Dict[str, Any]:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    def is_coprime(self) -> bool:
        return field_poly_gcd(self.num, self.den).degree < 1

    def reduced(self) -> "RationalFunction":
        """
        Cancel the gcd and normalize the denominator

        Returns:
            Equal function with coprime parts and den(0) = 1, or a monic
            denominator when den(0) = 0
        """
        g = field_poly_gcd(self.num, self.den)
        num, den = self.num, self.den
        if g.degree >= 1:
            num, den = num.divmod(g)[0], den.divmod(g)[0]
        anchor = den[0] if not den[0].is_zero else den.leading_coefficient
        scale = anchor.inverse()
        return RationalFunction(num * scale, den * scale)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: Any) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num * other, self.den)

    def __pow__(self, exponent: int) -> "RationalFunction":
        return RationalFunction(self.num ** exponent, self.den ** exponent)


def _require_unit_constant_term(f: RationalFunction) -> None:
    if f.den[0] != 1:
        raise DenominatorConstantTermNotOne(f"Denominator constant term is {f.den[0]}, expected 1")


def series_prefix(f: RationalFunction, count: int) -> List[NFElement]:
    """
    Power-series coefficients c_0..c_N of g/h with h(0) = 1

    c_n = g_n - sum_{i >= 1} h_i c_{n-i}

    Args:
        f: Rational function with denominator constant term 1
        count: N

    Returns:
        [c_0, ..., c_N]
    """
    _require_unit_constant_term(f)
    if count < 0:
        raise InvalidArgument(f"Series length must be nonnegative, got {count}")
    h = f.den.coeffs
    out: List[NFElement] = []
    for n in range(count + 1):
        c = f.num[n]
        for i in range(1, min(n, len(h) - 1) + 1):
            if not h[i].is_zero:
                c = c - h[i] * out[n - i]
        out.append(c)
    return out


def default_nmax(f: RationalFunction, scale: int = DEFAULT_NMAX_SCALE) -> int:
    """scale * (deg h + 1) * (1 + total bit length of coordinate denominators)"""
    bits = 0
    for poly in (f.num, f.den):
        for c in poly.coeffs:
            bits += sum(coord.denominator.bit_length() - 1 for coord in c.coords)
    return scale * (f.den.degree + 1) * (1 + bits)


def _first_non_integral(poly: FieldPoly) -> Optional[int]:
    for i, c in enumerate(poly.coeffs):
        if not is_algebraic_integer(c).integral:
            return i
    return None


def fatou_certify(f: RationalFunction, n_max: Optional[int] = None,
                  nmax_scale: int = DEFAULT_NMAX_SCALE) -> Certificate:
    """
    Certify the Fatou conclusion for g/h or find a non-integral series coefficient

    Args:
        f: Coprime g/h with h(0) = 1
        n_max: Search limit; derived from the denominators when omitted
        nmax_scale: Leading factor of the derived limit

    Returns:
        Certificate with verdict Conforms, FailWitness or Inconclusive
    """
    _require_unit_constant_term(f)
    if not f.is_coprime():
        raise NotCoprime("Numerator and denominator share a factor")
    limit = n_max if n_max is not None else default_nmax(f, nmax_scale)
    if limit < 1:
        raise InvalidArgument(f"N_max must be positive, got {limit}")
    series = series_prefix(f, limit)
    bad_num = _first_non_integral(f.num)
    bad_den = _first_non_integral(f.den)
    data: Dict[str, Any] = {"n_max": limit}
    notes: List[str] = []

    if bad_num is None and bad_den is None:
        failures = [n for n, c in enumerate(series) if not is_algebraic_integer(c).integral]
        data["series_integral_up_to"] = limit if not failures else failures[0] - 1
        notes.append("g and h have algebraic-integer coefficients; series coefficients are integral on the scan")
        return Certificate(kind="fatou", criterion="Fatou: integral coprime g/h with h(0) = 1",
                           verdict=Verdict.CONFORMS, window=(0, limit), notes=notes, data=data)

    data["non_integral_coefficient"] = {
        "polynomial": "num" if bad_num is not None else "den",
        "degree": bad_num if bad_num is not None else bad_den,
    }
    for n, c in enumerate(series):
        if not is_algebraic_integer(c).integral:
            logger.info(f"Fatou witness at n = {n}")
            return Certificate(kind="fatou", criterion="Fatou: integral coprime g/h with h(0) = 1",
                               verdict=Verdict.FAIL_WITNESS, window=(0, limit),
                               witnesses=[Witness(index=n, detail={"coefficient": c.to_json()})],
                               bound_used=limit, notes=notes, data=data)
    notes.append(f"No non-integral series coefficient up to n = {limit}; no effective bound is known")
    return Certificate(kind="fatou", criterion="Fatou: integral coprime g/h with h(0) = 1",
                       verdict=Verdict.INCONCLUSIVE, window=(0, limit), bound_used=limit, notes=notes, data=data)


def poly_integral_check(f: FieldPoly) -> Certificate:
    witnesses = [
        Witness(index=i, detail={"coefficient": c.to_json()})
        for i, c in enumerate(f.coeffs)
        if not is_algebraic_integer(c).integral
    ]
    return Certificate(
        kind="poly-integral",
        criterion="every coefficient is an algebraic integer",
        verdict=Verdict.FAIL_WITNESS if witnesses else Verdict.PASS,
        window=(0, max(f.degree, 0)),
        witnesses=witnesses,
        data={"polynomial": f.to_json()},
    )


def _ratio_is_constant(f: RationalFunction, g: RationalFunction) -> bool:
    p = f.num * g.den
    q = g.num * f.den
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    return p * q.leading_coefficient == q * p.leading_coefficient


def ratfunc_power_combo(fs: Sequence[RationalFunction], lambdas: Sequence[NFElement], n: int) -> RationalFunction:
    """
    Reduced sum of lambda_i * f_i^n

    Args:
        fs: Rational functions with pairwise non-constant ratios
        lambdas: Nonzero coefficients
        n: Positive exponent

    Returns:
        The reduced rational function
    """
    if len(fs) != len(lambdas):
        raise LengthMismatch(f"{len(fs)} functions for {len(lambdas)} coefficients")
    if not fs:
        raise InvalidArgument("At least one function is required")
    if n < 1:
        raise InvalidArgument(f"Exponent must be positive, got {n}")
    if any(lam.is_zero for lam in lambdas):
        raise ZeroElement("Coefficients lambda must be nonzero")
    for i in range(len(fs)):
        for j in range(i):
            if _ratio_is_constant(fs[i], fs[j]):
                raise RatioConstant(f"f_{j + 1} / f_{i + 1} is constant", i=j, j=i)
    total: Optional[RationalFunction] = None
    for f, lam in zip(fs, lambdas):
        term = (f ** n) * lam
        total = term if total is None else total + term
    assert total is not None
    return total.reduced()


def is_integral_polynomial(f: RationalFunction) -> bool:
    reduced = f.reduced()
    if not reduced.is_polynomial:
        return False
    poly = reduced.num * reduced.den[0].inverse()
    return poly_integral_check(poly).verdict == Verdict.PASS


# Multivariate polynomials

class MultiPoly:
    """Polynomial in k variables: exponent vectors mapped to nonzero field coefficients"""

    def __init__(self, field: NumberField, nvars: int, terms: Dict[Tuple[int, ...], Any]):
        if nvars < 1:
            raise InvalidArgument("A multivariate polynomial needs at least one variable")
        clean: Dict[Tuple[int, ...], NFElement] = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise InvalidArgument(f"Bad exponent vector {exps} for {nvars} variables")
            coeff = field.coerce(c)
            total = clean.get(exps, field.zero()) + coeff
            if total.is_zero:
                clean.pop(exps, None)
            else:
                clean[exps] = total
        self.field = field
        self.nvars = nvars
        self.terms = clean

    def __call__(self, points: Sequence[NFElement]) -> NFElement:
        if len(points) != self.nvars:
            raise LengthMismatch(f"{len(points)} values for {self.nvars} variables")
        total = self.field.zero()
        for exps, c in self.terms.items():
            value = c
            for x, e in zip(points, exps):
                if e:
                    value = value * x ** e
            total = total + value
        return total

    def restrict_to_axis(self, m: int) -> FieldPoly:
        """P(0, ..., 0, X_m, 0, ..., 0) as a univariate polynomial (m is 1-based)"""
        if not 1 <= m <= self.nvars:
            raise IndexOutOfRange(f"Variable index {m} outside 1..{self.nvars}")
        axis = m - 1
        degree = max((exps[axis] for exps in self.terms), default=0)
        coeffs = [self.field.zero()] * (degree + 1)
        for exps, c in self.terms.items():
            if all(e == 0 for i, e in enumerate(exps) if i != axis):
                coeffs[exps[axis]] = coeffs[exps[axis]] + c
        return FieldPoly(self.field, coeffs)

    def to_json(self) -> Dict[str, Any]:
        return {
            "nvars": self.nvars,
            "terms": [{"exponents": list(exps), "coeff": c.to_json()} for exps, c in sorted(self.terms.items())],
        }


def monomial_condition(p: MultiPoly, m: int) -> bool:
    return not p.restrict_to_axis(m).is_constant


class Independence(str, Enum):
    INDEPENDENT = "Independent"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class IndependenceReport:
    verdict: Independence
    primes: Tuple[int, ...]
    matrix: RatMatrix
    rank: int

    def to_json(self) -> Dict[str, Any]:
        return {"verdict": self.verdict.value, "primes": list(self.primes),
                "matrix": self.matrix.to_json(), "rank": self.rank}


def mult_indep_sufficient(alphas: Sequence[NFElement]) -> IndependenceReport:
    """
    Sufficient test for multiplicative independence via valuation vectors

    Column j holds v_p(N(alpha_j)) / d for each prime p of the joint support; a
    multiplicative relation forces a linear relation among the columns, so full
    column rank proves independence.

    Returns:
        IndependenceReport; never reports dependence
    """
    if not alphas:
        raise InvalidArgument("At least one element is required")
    if any(a.is_zero for a in alphas):
        raise ZeroElement("Multiplicative independence of zero")
    same_field(alphas)
    primes = sorted(set().union(*(prime_support(a) for a in alphas)))
    if primes:
        matrix = RatMatrix.from_rows([[mean_valuation(a, p) for a in alphas] for p in primes])
    else:
        matrix = RatMatrix(0, len(alphas), [])
    rank = matrix.rank
    verdict = Independence.INDEPENDENT if rank == len(alphas) else Independence.INCONCLUSIVE
    return IndependenceReport(verdict, tuple(primes), matrix, rank)


def polyvalue_scan(p: MultiPoly, alphas: Sequence[NFElement], window: int) -> Certificate:
    """
    Scan P(alpha_1^n, ..., alpha_k^n) for n = 1..N next to the integrality of the alphas

    Returns:
        Pass when every value is integral and nonzero, FailWitness at the first
        value that is not
    """
    if len(alphas) != p.nvars:
        raise LengthMismatch(f"{len(alphas)} roots for {p.nvars} variables")
    if any(a.is_zero for a in alphas):
        raise ZeroElement("Roots must be nonzero")
    same_field([*alphas, *p.terms.values()] if p.terms else list(alphas))
    if window < 1:
        raise InvalidArgument(f"Window must be positive, got {window}")
    rows = []
    witnesses = []
    powers = list(alphas)
    for n in range(1, window + 1):
        value = p(powers)
        integral = is_algebraic_integer(value).integral
        rows.append({"n": n, "value": value.to_json(), "integral": integral, "zero": value.is_zero})
        if (not integral or value.is_zero) and not witnesses:
            witnesses.append(Witness(index=n, detail={"value": value.to_json()}))
        powers = [x * a for x, a in zip(powers, alphas)]
    alphas_integral = [is_algebraic_integer(a).integral for a in alphas]
    axes = [monomial_condition(p, m) for m in range(1, p.nvars + 1)]
    notes = []
    if not witnesses and not all(alphas_integral):
        if not any(axes):
            notes.append("Values are integral and nonzero although some root is not integral; "
                         "the monomial condition fails on every axis")
        else:
            notes.append("Values are integral and nonzero on the window although some root is not integral")
    return Certificate(
        kind="polyvalue",
        criterion="P evaluated at powers of the roots",
        verdict=Verdict.FAIL_WITNESS if witnesses else Verdict.PASS,
        window=(1, window),
        witnesses=witnesses,
        notes=notes,
        data={
            "rows": rows,
            "alphas_integral": alphas_integral,
            "monomial_condition": axes,
            "independence": mult_indep_sufficient(alphas).verdict.value,
        },
    )

#!/usr/bin/env python3
"""
AlgInt Certify - Valuation Module
p-adic valuation data of algebraic numbers from Newton polygons of their minimal
polynomials, prime supports, conservative maximal-valuation bounds, and certified
two-sided enclosures of the absolute logarithmic Weil height.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb
from typing import Any, Dict, List, Set, Tuple

from mpmath import iv
from mpmath.ctx_mp import PrecisionManager
from mpmath.libmp import to_rational as mpf_to_rational
from sympy import factorint

from modules.errors import InvalidArgument, ZeroConstantTerm, ZeroElement, ZeroPolynomial
from modules.exact_core import UniPoly, format_rational, rational_valuation
from modules.numfield import NFElement, denominator, minpoly_elem, norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ValuationProfile:
    """Root valuations at p (normalized v_p(p) = 1) as (slope, multiplicity), nonincreasing"""
    prime: int
    slopes: Tuple[Tuple[Fraction, int], ...]

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self.slopes)

    @property
    def total(self) -> Fraction:
        """Sum of slope times multiplicity: v_p of the product of the roots"""
        return sum((s * mult for s, mult in self.slopes), Fraction(0))

    @property
    def max_slope(self) -> Fraction:
        return self.slopes[0][0] if self.slopes else Fraction(0)

    @property
    def is_trivial(self) -> bool:
        return all(s == 0 for s, _ in self.slopes)

    def multiset(self) -> Dict[Fraction, int]:
        return {s: mult for s, mult in self.slopes}

    def negated(self) -> "ValuationProfile":
        return ValuationProfile(self.prime, tuple((-s, mult) for s, mult in reversed(self.slopes)))

    def to_json(self) -> Dict[str, Any]:
        return {"p": self.prime, "slopes": [[format_rational(s), mult] for s, mult in self.slopes]}


@dataclass(frozen=True)
class HeightBound:
    """Enclosure lower <= h(x) <= upper of the absolute logarithmic height"""
    lower: Fraction
    upper: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, value: Any) -> bool:
        v = Fraction(value)
        return self.lower <= v <= self.upper

    def overlaps(self, other: "HeightBound") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def scaled(self, factor: int) -> "HeightBound":
        return HeightBound(self.lower * factor, self.upper * factor)

    def to_json(self) -> Dict[str, str]:
        return {"lower": format_rational(self.lower), "upper": format_rational(self.upper)}


def _cross(o: Tuple[int, int], a: Tuple[int, int], b: Tuple[int, int]):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: UniPoly, p: int) -> ValuationProfile:
    """
    Root valuations of f at p from the lower convex hull of (i, v_p(a_i))

    Args:
        f: Nonzero polynomial with f(0) != 0
        p: Rational prime

    Returns:
        ValuationProfile listing the negated hull slopes, nonincreasing
    """
    if f.is_zero:
        raise ZeroPolynomial("Newton polygon of the zero polynomial")
    if f[0] == 0:
        raise ZeroConstantTerm(f"{f} vanishes at 0; strip the monomial factor first")
    points = [(i, rational_valuation(c, p)) for i, c in enumerate(f.coefficients) if c != 0]
    hull: List[Tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    slopes = []
    for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
        slopes.append((-Fraction(v1 - v0, i1 - i0), i1 - i0))
    return ValuationProfile(p, tuple(slopes))


def element_valuations(x: NFElement, p: int) -> ValuationProfile:
    if x.is_zero:
        raise ZeroElement("Valuations of zero are infinite")
    return newton_polygon(minpoly_elem(x), p)


def mean_valuation(x: NFElement, p: int) -> Fraction:
    """v_p(N(x)) / [L:Q], the average of the root valuations; additive in x"""
    profile = element_valuations(x, p)
    return profile.total / profile.degree


def prime_support(x: NFElement) -> Set[int]:
    """
    Primes at which x has a nonzero valuation somewhere

    Args:
        x: Nonzero element

    Returns:
        Set of rational primes
    """
    if x.is_zero:
        raise ZeroElement("Prime support of zero")
    n = norm(x)
    candidates: Set[int] = set()
    candidates.update(factorint(n.numerator))
    candidates.update(factorint(n.denominator))
    candidates.update(factorint(denominator(x)))
    candidates.discard(-1)
    return {p for p in candidates if not element_valuations(x, p).is_trivial}


def max_valuation_upper_bound(x: NFElement) -> int:
    """
    Conservative bound U(x) >= v_P(x) for every prime ideal P of any field of degree <= d

    Ramification indices e <= d are absorbed by scaling the largest root
    valuation by the ambient degree d.

    Args:
        x: Nonzero element

    Returns:
        Nonnegative integer U(x)
    """
    if x.is_zero:
        raise ZeroElement("Valuation bound of zero")
    d = x.field.degree
    bound = 0
    for p in prime_support(x):
        top = max(Fraction(0), element_valuations(x, p).max_slope)
        bound = max(bound, ceil(d * top))
    return bound


def _interval_to_fractions(value) -> Tuple[Fraction, Fraction]:
    lo, hi = value._mpi_
    return Fraction(*mpf_to_rational(lo)), Fraction(*mpf_to_rational(hi))


def _graeffe_step(coeffs: List[Any]) -> List[Any]:
    # G(x^2) = +-F(x)F(-x); only magnitudes are used downstream
    n = len(coeffs) - 1
    out = []
    for j in range(n + 1):
        acc = coeffs[j] * coeffs[j]
        for i in range(1, min(j, n - j) + 1):
            term = 2 * coeffs[j - i] * coeffs[j + i]
            acc = acc - term if i % 2 else acc + term
        out.append(acc if j % 2 == 0 else -acc)
    return out


def log_height_bounds(x: NFElement, precision_bits: int = 64) -> HeightBound:
    """
    Certified enclosure of h(x) = log M(F) / deg F, F the primitive integer minimal polynomial

    The Mahler measure is bracketed through Graeffe root squaring evaluated in
    outward-rounded interval arithmetic: after k squarings M(G) = M(F)^(2^k) and
    max_j |g_j| / C(n, j) <= M(G) <= ||G||_2.

    Args:
        x: Nonzero element
        precision_bits: Target precision; the enclosure width shrinks as it grows

    Returns:
        HeightBound with nonnegative endpoints
    """
    if x.is_zero:
        raise ZeroElement("Height of zero")
    if precision_bits < 1:
        raise InvalidArgument(f"precision_bits must be positive, got {precision_bits}")
    _, ints = minpoly_elem(x).primitive_part()
    n = len(ints) - 1
    steps = max(8, precision_bits // 3)
    with PrecisionManager(iv, lambda _: precision_bits + 2 * steps + 32, None):
        if n == 1:
            value = iv.log(max(abs(ints[0]), abs(ints[1])))
            lower, upper = _interval_to_fractions(value)
            return HeightBound(max(lower, Fraction(0)), max(upper, Fraction(0)))

        coeffs = [iv.mpf(c) for c in ints]
        for _ in range(steps):
            coeffs = _graeffe_step(coeffs)

        norm_sq = sum((c * c for c in coeffs), iv.mpf(0))
        _, upper_log = _interval_to_fractions(iv.log(norm_sq) / 2)
        lower_log = None
        for j, c in enumerate(coeffs):
            magnitude = abs(c)
            if magnitude._mpi_[0][1] == 0:
                continue
            candidate, _ = _interval_to_fractions(iv.log(magnitude) - iv.log(comb(n, j)))
            if lower_log is None or candidate > lower_log:
                lower_log = candidate
    scale = n * 2 ** steps
    lower = max(Fraction(0), lower_log / scale) if lower_log is not None else Fraction(0)
    upper = max(Fraction(0), upper_log / scale)
    logger.debug(f"Height of {x}: [{float(lower)}, {float(upper)}] after {steps} Graeffe steps")
    return HeightBound(lower, upper)

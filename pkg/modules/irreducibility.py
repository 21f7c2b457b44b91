#!/usr/bin/env python3
"""
AlgInt Certify - Irreducibility Screening Module
Decides irreducibility of monic rational polynomials for number field construction:
direct check in degree <= 2, distinct-degree factorization modulo small primes,
and a Mignotte-bounded Kronecker divisor search for degree <= 8.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt
from typing import List, Optional, Set

from sympy import ZZ, divisors, primerange
from sympy.polys.galoistools import gf_ddf_zassenhaus, gf_from_int_poly

from modules.exact_core import UniPoly, poly_discriminant

logger = logging.getLogger(__name__)

SCREEN_PRIME_COUNT = 25
EXHAUSTIVE_DEGREE_LIMIT = 8


@dataclass(frozen=True)
class ScreenResult:
    """Outcome of the irreducibility screen"""
    status: str  # "verified", "verified-mod-p", "rejected" or "undecided"
    witness: Optional[UniPoly] = None
    prime: Optional[int] = None
    method: str = ""


def distinct_degree_pattern(coeffs: List[int], p: int) -> List[int]:
    """
    Degrees of the irreducible factors of a squarefree polynomial over F_p

    Args:
        coeffs: Monic integer coefficients, lowest first
        p: Odd prime not dividing the discriminant

    Returns:
        Sorted list of factor degrees
    """
    f = gf_from_int_poly(ZZ.map(coeffs[::-1]), p)
    degrees: List[int] = []
    for g, d in gf_ddf_zassenhaus(f, p, ZZ):
        degrees.extend([d] * ((len(g) - 1) // d))
    return sorted(degrees)


def _subset_sums(degrees: List[int]) -> Set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _integral_rescaling(f: UniPoly):
    # x^n + a_{n-1} x^{n-1} + ... -> D^n f(x/D), monic with integer coefficients
    scale = 1
    for c in f.coefficients:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    n = f.degree
    ints = [int(c * scale ** (n - i)) for i, c in enumerate(f.coefficients)]
    return scale, ints


def _rational_square_root(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num_root = isqrt(value.numerator)
    den_root = isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def _lagrange_basis(points: List[int]) -> List[UniPoly]:
    basis = []
    for t, xt in enumerate(points):
        poly = UniPoly.constant(1)
        for s, xs in enumerate(points):
            if s != t:
                poly = poly * UniPoly([Fraction(-xs, xt - xs), Fraction(1, xt - xs)])
        basis.append(poly)
    return basis


def _sample_points():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def kronecker_factor(ints: List[int], k: int) -> Optional[UniPoly]:
    """
    Search a monic integer factor of degree k with Kronecker's divisor method

    Candidates are interpolated from divisors of the values at k integer points
    and pruned with the Mignotte coefficient bound before trial division.

    Args:
        ints: Monic integer polynomial coefficients, lowest first
        k: Factor degree, 1 <= k <= n/2

    Returns:
        A monic factor, or None when no factor of that degree exists
    """
    f = UniPoly(ints)
    norm_sq = sum(c * c for c in ints)
    points: List[int] = []
    values: List[int] = []
    for x in _sample_points():
        v = int(f(Fraction(x)))
        if v == 0:
            return UniPoly([-x, 1])
        points.append(x)
        values.append(v)
        if len(points) == k:
            break
    basis = _lagrange_basis(points)
    choices = [[s * d for d in divisors(abs(v)) for s in (1, -1)] for v in values]
    for combo in itertools.product(*choices):
        h = UniPoly()
        for value, x, b in zip(combo, points, basis):
            h = h + b * (value - x ** k)
        g = h + UniPoly.monomial(k)
        if not g.has_integer_coefficients:
            continue
        if any(c * c > comb(k, j) ** 2 * norm_sq for j, c in enumerate(g.coefficients)):
            continue
        if (f % g).is_zero:
            return g
    return None


def screen_irreducibility(f: UniPoly,
                          prime_count: int = SCREEN_PRIME_COUNT,
                          exhaustive_limit: int = EXHAUSTIVE_DEGREE_LIMIT) -> ScreenResult:
    """
    Establish irreducibility of a monic squarefree rational polynomial

    Args:
        f: Monic squarefree polynomial of degree >= 1
        prime_count: Number of odd primes to try in the mod-p screen
        exhaustive_limit: Largest degree handled by the divisor search

    Returns:
        ScreenResult with status verified / verified-mod-p / rejected / undecided
    """
    n = f.degree
    if n == 1:
        return ScreenResult("verified", method="linear")
    if f[0] == 0:
        return ScreenResult("rejected", witness=UniPoly.x(), method="zero root")
    if n == 2:
        b, c = f[1], f[0]
        root = _rational_square_root(b * b - 4 * c)
        if root is None:
            return ScreenResult("verified", method="quadratic discriminant")
        return ScreenResult("rejected", witness=UniPoly([(b - root) / 2, 1]), method="quadratic discriminant")

    scale, ints = _integral_rescaling(f)
    disc = poly_discriminant(UniPoly(ints))
    allowed = set(range(1, n // 2 + 1))
    tried = 0
    for p in primerange(3, 10 ** 6):
        if tried >= prime_count or not allowed:
            break
        if disc.numerator % p == 0:
            continue
        tried += 1
        pattern = distinct_degree_pattern(ints, p)
        logger.debug(f"Factor degree pattern of {f} mod {p}: {pattern}")
        if pattern == [n]:
            return ScreenResult("verified-mod-p", prime=p, method="irreducible mod p")
        allowed &= _subset_sums(pattern)
    if not allowed:
        return ScreenResult("verified-mod-p", method="incompatible factor degree patterns")
    if n > exhaustive_limit:
        return ScreenResult("undecided", method="mod-p screen inconclusive")

    for k in sorted(allowed):
        factor = kronecker_factor(ints, k)
        if factor is not None:
            # undo x -> x/D
            witness = factor.scale_variable(scale) * Fraction(1, scale ** k)
            return ScreenResult("rejected", witness=witness, method="divisor search")
    return ScreenResult("verified", method="divisor search")

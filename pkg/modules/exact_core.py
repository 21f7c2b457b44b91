#!/usr/bin/env python3
"""
AlgInt Certify - Exact Core Module
Arbitrary-precision rationals, univariate polynomials over Q, the subresultant
resultant, cyclotomic polynomials and Newton power sums.
Every other module builds on these exact objects; nothing here uses floating point.
"""

import json
import logging
import os
import re
import threading
from fractions import Fraction
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from sympy import divisors

from modules.errors import InvalidArgument, NotMonic, RationalFormatError, ZeroPolynomial

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """
    Parse a rational written as "p/q" or "p"

    Args:
        text: Rational string

    Returns:
        The reduced Fraction
    """
    cleaned = text.strip()
    if not _RATIONAL_PATTERN.match(cleaned):
        raise RationalFormatError(f"Not a rational literal: {text!r}")
    try:
        return Fraction(cleaned)
    except ZeroDivisionError as e:
        raise RationalFormatError(f"Zero denominator in {text!r}") from e


def format_rational(value: Fraction) -> str:
    # Fraction already prints lowest terms, sign on the numerator and "0" for zero
    return str(Fraction(value))


def to_rational(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"Cannot interpret {value!r} as a rational number")


def is_integer(value: Fraction) -> bool:
    return Fraction(value).denominator == 1


def rational_valuation(value: Fraction, p: int) -> Optional[int]:
    """
    p-adic valuation of a rational number

    Args:
        value: Rational number
        p: Prime

    Returns:
        v_p(value), or None for zero (infinite valuation)
    """
    value = Fraction(value)
    if value == 0:
        return None
    v = 0
    num, den = value.numerator, value.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


class UniPoly:
    """
    Immutable univariate polynomial with rational coefficients.
    Coefficients are stored lowest degree first; the zero polynomial is empty.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        coeffs = [to_rational(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, value: RationalLike) -> "UniPoly":
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, coefficient: RationalLike = 1) -> "UniPoly":
        return cls([0] * degree + [coefficient])

    @classmethod
    def from_json(cls, data: List[Any]) -> "UniPoly":
        return cls(to_rational(c) for c in data)

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    @property
    def is_monic(self) -> bool:
        return bool(self._coeffs) and self._coeffs[-1] == 1

    @property
    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    @property
    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def __getitem__(self, index: int) -> Fraction:
        if 0 <= index < len(self._coeffs):
            return self._coeffs[index]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == UniPoly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UniPoly", self._coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        return self.pretty("x")

    def pretty(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = var if i == 1 else f"{var}^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self._coeffs]

    # Arithmetic

    def _coerce(self, other: Any) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        raise TypeError(f"Cannot combine UniPoly with {type(other).__name__}")

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self._coeffs)

    def __add__(self, other: Any) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self._coeffs)
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if exponent < 0:
            raise InvalidArgument("Polynomial powers must be nonnegative")
        result = UniPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divmod(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """
        Euclidean division over Q

        Args:
            divisor: Nonzero polynomial

        Returns:
            (quotient, remainder) with deg remainder < deg divisor
        """
        if divisor.is_zero:
            raise ZeroPolynomial("Division by the zero polynomial")
        remainder = list(self._coeffs)
        dd = divisor.degree
        lead = divisor.leading_coefficient
        if len(remainder) - 1 < dd:
            return UniPoly(), self
        quotient = [Fraction(0)] * (len(remainder) - dd)
        for shift in range(len(remainder) - 1 - dd, -1, -1):
            factor = remainder[shift + dd] / lead
            quotient[shift] = factor
            if factor == 0:
                continue
            for i, c in enumerate(divisor._coeffs):
                remainder[shift + i] -= factor * c
        return UniPoly(quotient), UniPoly(remainder[:dd])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        quotient, remainder = self.divmod(other)
        if not remainder.is_zero:
            raise InvalidArgument(f"{other} does not divide {self}")
        return quotient

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self * (1 / self.leading_coefficient)

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self._coeffs) if i > 0)

    def __call__(self, point: Any) -> Any:
        # Horner; works for rationals and for any ring element that accepts rational scalars
        if self.is_zero:
            return Fraction(0)
        acc: Any = self._coeffs[-1]
        for c in reversed(self._coeffs[:-1]):
            acc = acc * point + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        result = UniPoly()
        for c in reversed(self._coeffs):
            result = result * inner + c
        return result

    def scale_variable(self, factor: RationalLike) -> "UniPoly":
        """Return f(factor * x)"""
        factor = to_rational(factor)
        return UniPoly(c * factor ** i for i, c in enumerate(self._coeffs))

    def primitive_part(self) -> Tuple[Fraction, List[int]]:
        """
        Split into a positive rational content and a primitive integer polynomial

        Returns:
            (content, integer coefficients) with self = content * primitive
        """
        if self.is_zero:
            raise ZeroPolynomial("The zero polynomial has no primitive part")
        common_den = 1
        for c in self._coeffs:
            common_den = common_den * c.denominator // gcd(common_den, c.denominator)
        ints = [int(c * common_den) for c in self._coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return Fraction(g, common_den), [v // g for v in ints]


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """
    Monic greatest common divisor over Q

    Args:
        f: First polynomial
        g: Second polynomial

    Returns:
        Monic gcd; gcd(f, 0) is f made monic and gcd(0, 0) is 0
    """
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: UniPoly, g: UniPoly) -> Tuple[UniPoly, UniPoly, UniPoly]:
    """
    Extended Euclid over Q

    Returns:
        (d, s, t) with s*f + t*g = d and d monic
    """
    r0, r1 = f, g
    s0, s1 = UniPoly.constant(1), UniPoly()
    t0, t1 = UniPoly(), UniPoly.constant(1)
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = 1 / r0.leading_coefficient
    return r0 * inv, s0 * inv, t0 * inv


def _pseudo_remainder(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    # lc(b)^(deg a - deg b + 1) * a = q * b + r
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    scale = lb ** e
    return [c * scale for c in r]


def _subresultant_prs(a: List[Fraction], b: List[Fraction]) -> Fraction:
    deg_a, deg_b = len(a) - 1, len(b) - 1
    sign = 1
    if deg_a < deg_b:
        a, b = b, a
        deg_a, deg_b = deg_b, deg_a
        if deg_a % 2 == 1 and deg_b % 2 == 1:
            sign = -1
    g = Fraction(1)
    h = Fraction(1)
    while deg_b > 0:
        delta = deg_a - deg_b
        if deg_a % 2 == 1 and deg_b % 2 == 1:
            sign = -sign
        r = _pseudo_remainder(a, b)
        divisor = g * h ** delta
        a = b
        b = [c / divisor for c in r]
        deg_a, deg_b = deg_b, len(b) - 1
        g = a[-1]
        h = h ** (1 - delta) * g ** delta
    if deg_b < 0:
        return Fraction(0)
    return sign * h ** (1 - deg_a) * b[-1] ** deg_a


def poly_resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """
    Resultant via the subresultant PRS on primitive integer parts

    Res(f, g) = lc(f)^deg(g) * prod g(rho) over the roots rho of f.

    Args:
        f: Nonzero polynomial
        g: Nonzero polynomial

    Returns:
        The resultant; zero exactly when f and g share a root
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("Resultant needs nonzero polynomials")
    content_f, prim_f = f.primitive_part()
    content_g, prim_g = g.primitive_part()
    core = _subresultant_prs([Fraction(c) for c in prim_f], [Fraction(c) for c in prim_g])
    return content_f ** g.degree * content_g ** f.degree * core


def poly_discriminant(f: UniPoly) -> Fraction:
    n = f.degree
    if n < 1:
        raise InvalidArgument("Discriminant needs a polynomial of degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * poly_resultant(f, f.derivative()) / f.leading_coefficient


# Cyclotomic polynomials, memoized per process and optionally persisted

_CYCLOTOMIC_CACHE: Dict[int, UniPoly] = {}
_CYCLOTOMIC_LOCK = threading.RLock()
_CYCLOTOMIC_CACHE_FILE = "cyclotomic_table.json"
_cyclotomic_cache_dir: Optional[str] = None


def configure_cyclotomic_cache(directory: Optional[str]) -> int:
    """
    Point the cyclotomic table at a directory and preload whatever it holds

    Args:
        directory: Cache directory, or None to keep the table in memory only

    Returns:
        Number of polynomials loaded from disk
    """
    global _cyclotomic_cache_dir
    with _CYCLOTOMIC_LOCK:
        _cyclotomic_cache_dir = directory
        if not directory:
            return 0
        path = os.path.join(directory, _CYCLOTOMIC_CACHE_FILE)
        if not os.path.exists(path):
            return 0
        try:
            with open(path, "r", encoding="utf-8") as f:
                table = json.load(f)
            for key, coeffs in table.items():
                _CYCLOTOMIC_CACHE.setdefault(int(key), UniPoly.from_json(coeffs))
            logger.info(f"Loaded {len(table)} cyclotomic polynomials from {path}")
            return len(table)
        except (OSError, ValueError) as e:
            logger.warning(f"Ignoring unreadable cyclotomic cache {path}: {e}")
            return 0


def save_cyclotomic_cache() -> Optional[str]:
    with _CYCLOTOMIC_LOCK:
        if not _cyclotomic_cache_dir:
            return None
        os.makedirs(_cyclotomic_cache_dir, exist_ok=True)
        path = os.path.join(_cyclotomic_cache_dir, _CYCLOTOMIC_CACHE_FILE)
        table = {str(n): poly.to_json() for n, poly in sorted(_CYCLOTOMIC_CACHE.items())}
        with open(path, "w", encoding="utf-8") as f:
            json.dump(table, f, sort_keys=True)
        return path


def cyclotomic(n: int) -> UniPoly:
    """
    The n-th cyclotomic polynomial

    Computed by exact division of x^n - 1 by Phi_d for every proper divisor d of n.

    Args:
        n: Positive integer

    Returns:
        Phi_n
    """
    if n < 1:
        raise InvalidArgument(f"Cyclotomic index must be positive, got {n}")
    with _CYCLOTOMIC_LOCK:
        cached = _CYCLOTOMIC_CACHE.get(n)
        if cached is not None:
            return cached
        result = UniPoly.monomial(n) - 1
        for d in divisors(n):
            if d < n:
                result = result.exact_div(cyclotomic(d))
        _CYCLOTOMIC_CACHE[n] = result
        return result


def power_sums_from_poly(f: UniPoly, count: int) -> List[Fraction]:
    """
    Power sums p_1..p_J of the roots of a monic polynomial via Newton's identities

    Args:
        f: Monic polynomial of degree >= 1
        count: Number of power sums J

    Returns:
        [p_1, ..., p_J]
    """
    if not f.is_monic:
        raise NotMonic(f"Power sums need a monic polynomial, got {f}")
    m = f.degree
    if m < 1:
        raise InvalidArgument("Power sums need a polynomial of degree >= 1")
    c = f.coefficients
    sums: List[Fraction] = [Fraction(m)]  # p_0
    for k in range(1, count + 1):
        total = Fraction(0)
        for i in range(1, min(k - 1, m) + 1):
            total += c[m - i] * sums[k - i]
        if k <= m:
            total += k * c[m - k]
        sums.append(-total)
    return sums[1:]

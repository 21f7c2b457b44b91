#!/usr/bin/env python3
"""
AlgInt Certify - Rational Matrix Module
Exact dense matrices over Q: row reduction, null spaces, rank and
characteristic polynomials (Faddeev-LeVerrier, exact).
"""

from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple

from modules.errors import InvalidArgument, NotSquare
from modules.exact_core import UniPoly, format_rational, to_rational

Vector = Tuple[Fraction, ...]


class RatMatrix:
    """Immutable row-major matrix of rationals"""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Any]):
        values = tuple(to_rational(e) for e in entries)
        if rows < 0 or cols < 0:
            raise InvalidArgument("Matrix dimensions must be nonnegative")
        if len(values) != rows * cols:
            raise InvalidArgument(f"Expected {rows * cols} entries, got {len(values)}")
        self.rows = rows
        self.cols = cols
        self.entries: Tuple[Fraction, ...] = values

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "RatMatrix":
        if not rows:
            return cls(0, 0, [])
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InvalidArgument("Ragged rows")
        return cls(len(rows), width, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]]) -> "RatMatrix":
        if not columns:
            return cls(0, 0, [])
        height = len(columns[0])
        return cls(height, len(columns), [columns[j][i] for i in range(height) for j in range(len(columns))])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"RatMatrix({self.to_json()})"

    def to_json(self) -> List[List[str]]:
        return [[format_rational(e) for e in row] for row in self.to_rows()]

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_shape(other)
        return RatMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_shape(other)
        return RatMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def _check_shape(self, other: "RatMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidArgument("Matrix shapes differ")

    def __mul__(self, other: Any) -> "RatMatrix":
        if isinstance(other, (int, Fraction)):
            return RatMatrix(self.rows, self.cols, [e * other for e in self.entries])
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise InvalidArgument("Inner dimensions differ")
        out = []
        other_cols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for col in other_cols:
                out.append(sum((a * b for a, b in zip(r, col) if a and b), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def __rmul__(self, other: Any) -> "RatMatrix":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        if len(vector) != self.cols:
            raise InvalidArgument("Vector length differs from column count")
        return tuple(sum((a * b for a, b in zip(self.row(i), vector)), Fraction(0)) for i in range(self.rows))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise NotSquare(f"Trace of a {self.rows}x{self.cols} matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def rref(self) -> Tuple["RatMatrix", List[int]]:
        """
        Reduced row echelon form

        Returns:
            (reduced matrix, pivot column indices)
        """
        m = self.to_rows()
        pivots: List[int] = []
        piv_r = 0
        for piv_c in range(self.cols):
            if piv_r >= self.rows:
                break
            for i_row in range(piv_r, self.rows):
                if m[i_row][piv_c] != 0:
                    break
            else:
                continue
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            fp = m[piv_r][piv_c]
            m[piv_r] = [e / fp for e in m[piv_r]]
            for r in range(self.rows):
                if r == piv_r:
                    continue
                fr = m[r][piv_c]
                if fr == 0:
                    continue
                m[r] = [a - fr * b for a, b in zip(m[r], m[piv_r])]
            pivots.append(piv_c)
            piv_r += 1
        return RatMatrix(self.rows, self.cols, [e for r in m for e in r]), pivots

    @property
    def rank(self) -> int:
        return len(self.rref()[1])

    def power(self, exponent: int) -> "RatMatrix":
        if not self.is_square:
            raise NotSquare("Powers need a square matrix")
        result = RatMatrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


def kernel_basis(matrix: RatMatrix) -> List[Vector]:
    """
    Basis of the right null space, itself in reduced echelon form

    Args:
        matrix: Any rational matrix

    Returns:
        Basis vectors; empty exactly when the matrix is injective
    """
    reduced, pivots = matrix.rref()
    free = [c for c in range(matrix.cols) if c not in pivots]
    vectors = []
    for f in free:
        v = [Fraction(0)] * matrix.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r, f]
        vectors.append(v)
    if not vectors:
        return []
    basis, _ = RatMatrix.from_rows(vectors).rref()
    return [basis.row(i) for i in range(len(vectors))]


def charpoly_matrix(matrix: RatMatrix) -> UniPoly:
    """
    Monic characteristic polynomial det(x*I - M) by Faddeev-LeVerrier

    Args:
        matrix: Square rational matrix

    Returns:
        Characteristic polynomial of degree matrix.rows
    """
    if not matrix.is_square:
        raise NotSquare(f"Characteristic polynomial of a {matrix.rows}x{matrix.cols} matrix")
    n = matrix.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    identity = RatMatrix.identity(n)
    current = RatMatrix.zero(n, n)
    for k in range(1, n + 1):
        current = matrix * current + identity * coeffs[n - k + 1]
        coeffs[n - k] = -(matrix * current).trace() / k
    return UniPoly(coeffs)


def poly_at_matrix(poly: UniPoly, matrix: RatMatrix) -> RatMatrix:
    if not matrix.is_square:
        raise NotSquare("Polynomial evaluation needs a square matrix")
    result = RatMatrix.zero(matrix.rows, matrix.cols)
    identity = RatMatrix.identity(matrix.rows)
    for c in reversed(poly.coefficients):
        result = result * matrix + identity * c
    return result

#!/usr/bin/env python3
"""
AlgInt Certify - Error Definitions
Every precondition failure raised by the kernel and the certifiers.
Each error names the hypothesis it protects so the CLI can report it.
"""

from typing import Any, Dict, Optional, Sequence


class AlgIntError(ValueError):
    """Base class for all kernel and certifier errors"""

    hypothesis = "input validation"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    @property
    def code(self) -> str:
        return type(self).__name__

    def describe(self) -> str:
        """
        Build the one-line description printed on stderr by the CLI

        Returns:
            Error code, message and the violated hypothesis
        """
        return f"{self.code}: {self.message} (hypothesis: {self.hypothesis})"


# Exact core

class InvalidArgument(AlgIntError):
    hypothesis = "argument in documented range"


class RationalFormatError(AlgIntError):
    hypothesis = "rationals are written as 'p/q' strings in lowest terms"


class ZeroPolynomial(AlgIntError):
    hypothesis = "polynomial arguments are nonzero"


class NotMonic(AlgIntError):
    hypothesis = "polynomial is monic"


class NotSquare(AlgIntError):
    hypothesis = "matrix is square"


# Number fields

class NotSquarefree(AlgIntError):
    hypothesis = "defining polynomial is squarefree"


class Reducible(AlgIntError):
    hypothesis = "defining polynomial is irreducible over Q"

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message, witness=witness)
        self.witness = witness


class IrreducibilityUndecided(AlgIntError):
    hypothesis = "irreducibility is established by the mod-p screen or bounded divisor search"


class DivisionByZero(AlgIntError, ZeroDivisionError):
    hypothesis = "divisor is a nonzero field element"


class ZeroElement(AlgIntError):
    hypothesis = "algebraic numbers are nonzero"


class FieldMismatch(AlgIntError):
    hypothesis = "all elements live in one ambient number field"


# Valuations

class ZeroConstantTerm(AlgIntError):
    hypothesis = "monomial factors are stripped before taking a Newton polygon"


# Roots of unity and Galois data

class ImageNotRoot(AlgIntError):
    hypothesis = "every automorphism image is a root of the defining polynomial"

    def __init__(self, message: str, index: int):
        super().__init__(message, index=index)
        self.index = index


class DuplicateImage(AlgIntError):
    hypothesis = "automorphism images are pairwise distinct"

    def __init__(self, message: str, indices: Sequence[int]):
        super().__init__(message, indices=list(indices))
        self.indices = list(indices)


class NotFullGroup(AlgIntError):
    hypothesis = "Galois data lists the full automorphism group of a Galois field"


# Certifiers

class ZeroWeightSum(AlgIntError):
    hypothesis = "weights sum to a nonzero integer (b_1 + ... + b_k = n != 0) and Tr(lambda) != 0"


class ClosureDegreeMismatch(AlgIntError):
    hypothesis = "the Galois closure degree is a multiple of the ambient field degree"


class DegenerateDifference(AlgIntError):
    hypothesis = "the two roots of a binary power sum are distinct"


class TooManyTerms(AlgIntError):
    hypothesis = "subsum enumeration is limited to a bounded number of terms"


class LengthMismatch(AlgIntError):
    hypothesis = "coefficient and root lists have matching lengths"


class RootOfUnityInput(AlgIntError):
    hypothesis = "none of the roots is a root of unity"

    def __init__(self, message: str, index: int):
        super().__init__(message, index=index)
        self.index = index


class ZeroTarget(AlgIntError):
    hypothesis = "the Diophantine target p/q is nonzero"


# Rational functions

class DenominatorConstantTermNotOne(AlgIntError):
    hypothesis = "denominator has constant term 1 (h(0) = 1)"


class NotCoprime(AlgIntError):
    hypothesis = "numerator and denominator are coprime"


class RatioConstant(AlgIntError):
    hypothesis = "no ratio f_i / f_j is a constant function"

    def __init__(self, message: str, i: int, j: int):
        super().__init__(message, i=i, j=j)
        self.i = i
        self.j = j


class IndexOutOfRange(AlgIntError):
    hypothesis = "variable index satisfies 1 <= m <= k"


# CLI surface

class ParseError(AlgIntError):
    hypothesis = "instance file is well-formed JSON"


class SchemaError(AlgIntError):
    hypothesis = "instance payload matches the schema of its kind"

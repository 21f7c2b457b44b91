#!/usr/bin/env python3
"""
AlgInt Certify - Unity Module
Root-of-unity detection, the partition of a tuple of algebraic numbers into
classes whose ratios are roots of unity (with twist exponents and the effective
torsion order), and verified user-supplied Galois data with stabilizer subgroups.

Indices are 0-based in the Python API; serialized forms are 1-based.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from math import lcm
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import factorint, totient

from modules.errors import DuplicateImage, ImageNotRoot, NotFullGroup, ZeroElement
from modules.exact_core import cyclotomic
from modules.numfield import NFElement, NumberField, is_algebraic_integer, same_field

logger = logging.getLogger(__name__)

# n with phi(n) = m satisfies n <= 2 m^2
TOTIENT_TABLE_DEGREE = 64


@lru_cache(maxsize=None)
def _totient_table(limit: int) -> Dict[int, Tuple[int, ...]]:
    table: Dict[int, List[int]] = {}
    for n in range(1, 2 * limit * limit + 1):
        phi = int(totient(n))
        if phi <= limit:
            table.setdefault(phi, []).append(n)
    return {phi: tuple(ns) for phi, ns in table.items()}


def orders_with_totient(m: int) -> Tuple[int, ...]:
    """All n with Euler phi(n) = m, ascending"""
    limit = TOTIENT_TABLE_DEGREE if m <= TOTIENT_TABLE_DEGREE else m
    return _totient_table(limit).get(m, ())


def root_of_unity_order(x: NFElement) -> Optional[int]:
    """
    Multiplicative order of x when x is a root of unity

    Args:
        x: Nonzero element

    Returns:
        Smallest n >= 1 with x^n = 1, or None
    """
    if x.is_zero:
        raise ZeroElement("Zero is not a root of unity")
    if x.is_rational:
        value = x.rational_value
        return 1 if value == 1 else 2 if value == -1 else None
    check = is_algebraic_integer(x)
    if not check.integral or abs(check.minpoly[0]) != 1:
        return None
    for n in orders_with_totient(check.minpoly.degree):
        if check.minpoly == cyclotomic(n):
            if x ** n == 1:
                return n
    return None


def ratio_unity(a: NFElement, b: NFElement) -> Optional[int]:
    if a.is_zero or b.is_zero:
        raise ZeroElement("Ratio test needs nonzero elements")
    same_field([a, b])
    return root_of_unity_order(a / b)


@dataclass(frozen=True)
class ClassMember:
    index: int
    twist_order: int
    twist_exponent: int


@dataclass(frozen=True)
class UnityClass:
    representative: int
    members: Tuple[ClassMember, ...]

    @property
    def indices(self) -> List[int]:
        return [m.index for m in self.members]

    @property
    def is_singleton(self) -> bool:
        return len(self.members) == 1


@dataclass(frozen=True)
class UnityClassPartition:
    """Classes of alphas under 'ratio is a root of unity' with twists alpha_a = alpha_rep * zeta^omega_a"""
    classes: Tuple[UnityClass, ...]
    effective_torsion: int
    generator: Optional[NFElement] = None

    def class_of(self, index: int) -> UnityClass:
        for block in self.classes:
            if index in block.indices:
                return block
        raise KeyError(index)

    @property
    def all_singletons(self) -> bool:
        return all(b.is_singleton for b in self.classes)

    def to_json(self) -> Dict[str, Any]:
        return {
            "h_star": self.effective_torsion,
            "zeta": self.generator.to_json() if self.generator is not None else None,
            "classes": [
                {
                    "representative": block.representative + 1,
                    "members": [
                        {"index": m.index + 1, "twist_order": m.twist_order, "twist_exponent": m.twist_exponent}
                        for m in block.members
                    ],
                }
                for block in self.classes
            ],
        }


def _element_of_order(roots: Sequence[Tuple[NFElement, int]], target: int, one: NFElement) -> NFElement:
    # In the cyclic group they generate, pick for each prime power of target a root carrying it
    result = one
    for p, e in factorint(target).items():
        pe = p ** e
        for root, order in roots:
            if order % pe == 0:
                result = result * root ** (order // pe)
                break
    return result


def partition_classes(alphas: Sequence[NFElement]) -> UnityClassPartition:
    """
    Partition alphas into classes whose pairwise ratios are roots of unity

    Args:
        alphas: Nonzero elements of one field

    Returns:
        UnityClassPartition with effective torsion h* and twist exponents
    """
    if any(a.is_zero for a in alphas):
        raise ZeroElement("Partition needs nonzero elements")
    if not alphas:
        return UnityClassPartition((), 1)
    field = same_field(alphas)

    blocks: List[List[Tuple[int, int]]] = []  # (index, order of alpha_index / alpha_rep)
    ratios: List[Tuple[NFElement, int]] = []
    for i, a in enumerate(alphas):
        for block in blocks:
            rep = block[0][0]
            order = ratio_unity(a, alphas[rep])
            if order is not None:
                block.append((i, order))
                ratios.append((a / alphas[rep], order))
                break
        else:
            blocks.append([(i, 1)])

    torsion = 1
    for _, order in ratios:
        torsion = lcm(torsion, order)
    generator = None
    if any(len(b) > 1 for b in blocks):
        if torsion == 1:
            torsion = 2
            generator = field.from_rational(-1)
        else:
            generator = _element_of_order(ratios, torsion, field.one())

    powers = [field.one()]
    if generator is not None:
        for _ in range(1, torsion):
            powers.append(powers[-1] * generator)

    classes = []
    for block in blocks:
        rep = block[0][0]
        members = []
        for index, order in block:
            exponent = 0
            if index != rep:
                ratio = alphas[index] / alphas[rep]
                exponent = next(e for e, z in enumerate(powers) if z == ratio)
            members.append(ClassMember(index, order, exponent))
        classes.append(UnityClass(rep, tuple(members)))
    logger.debug(f"Partitioned {len(alphas)} elements into {len(classes)} classes, h* = {torsion}")
    return UnityClassPartition(tuple(classes), torsion, generator)


def evaluate_at(x: NFElement, point: NFElement) -> NFElement:
    """Image of x under theta -> point: the coordinate polynomial of x evaluated at point"""
    return point.field.coerce(x.to_poly()(point))


@dataclass
class GaloisData:
    """User-supplied automorphism images sigma_i(theta), verified to be distinct roots"""
    field: NumberField
    images: Tuple[NFElement, ...]
    verified: bool = True
    _composition: Optional[List[List[int]]] = dataclass_field(default=None, repr=False)

    @property
    def full_group(self) -> bool:
        return len(self.images) == self.field.degree

    @property
    def order(self) -> int:
        return len(self.images)

    def apply(self, i: int, x: NFElement) -> NFElement:
        return evaluate_at(x, self.images[i])

    def index_of(self, image: NFElement) -> int:
        for i, candidate in enumerate(self.images):
            if candidate == image:
                return i
        raise NotFullGroup(f"{image} is not among the supplied automorphism images")

    def composition_table(self) -> List[List[int]]:
        """
        Table comp[i][j] = index of sigma_i o sigma_j

        sigma_i(sigma_j(theta)) is the coordinate polynomial of image_j evaluated at image_i.
        """
        if not self.full_group:
            raise NotFullGroup("Composition needs the full automorphism group")
        if self._composition is None:
            self._composition = [
                [self.index_of(self.apply(i, self.images[j])) for j in range(self.order)]
                for i in range(self.order)
            ]
        return self._composition

    def compose(self, i: int, j: int) -> int:
        return self.composition_table()[i][j]

    @property
    def identity(self) -> int:
        return self.index_of(self.field.theta())

    def inverse(self, i: int) -> int:
        row = self.composition_table()[i]
        return row.index(self.identity)

    def to_json(self) -> Dict[str, Any]:
        return {"images": [img.to_json() for img in self.images], "full_group": self.full_group}


def verify_galois_data(field: NumberField, images: Sequence[Any]) -> GaloisData:
    """
    Check candidate automorphism images exactly

    Args:
        field: Ambient field
        images: Candidate values of sigma(theta)

    Returns:
        Verified GaloisData
    """
    elements = [field.coerce(img) for img in images]
    for i, img in enumerate(elements):
        if field.defpoly(img) != 0:
            raise ImageNotRoot(f"Image {i + 1} ({img}) is not a root of {field.defpoly}", index=i)
    for i in range(len(elements)):
        for j in range(i):
            if elements[i] == elements[j]:
                raise DuplicateImage(f"Images {j + 1} and {i + 1} coincide", indices=[j, i])
    logger.debug(f"Verified {len(elements)} automorphism images of {field}")
    return GaloisData(field, tuple(elements))


def is_closed(gd: GaloisData, indices: Sequence[int]) -> bool:
    table = gd.composition_table()
    members = set(indices)
    return all(table[a][b] in members for a in members for b in members)


def unity_stabilizer(gd: GaloisData, x: NFElement) -> List[int]:
    """
    Automorphisms sigma with sigma(x) / x a root of unity

    Args:
        gd: Verified full Galois data
        x: Nonzero element

    Returns:
        Sorted indices forming a subgroup
    """
    if not gd.full_group:
        raise NotFullGroup(f"Stabilizer needs all {gd.field.degree} automorphisms, got {gd.order}")
    if x.is_zero:
        raise ZeroElement("Stabilizer of zero")
    members = [i for i in range(gd.order) if root_of_unity_order(gd.apply(i, x) / x) is not None]
    if not is_closed(gd, members):
        raise NotFullGroup(f"Stabilizer {members} is not closed; the images do not form a group")
    return members


def conjugate_indices(gd: GaloisData, indices: Sequence[int], tau: int) -> List[int]:
    """The set tau H tau^-1 under the composition table"""
    table = gd.composition_table()
    tau_inv = gd.inverse(tau)
    return sorted({table[table[tau][h]][tau_inv] for h in indices})


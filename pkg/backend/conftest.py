#!/usr/bin/env python3
"""
Shared fixtures for the certifier tests
"""

import os
import sys
import random

import pytest

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from modules.exact_core import UniPoly
from modules.numfield import NumberField
from modules.unity import verify_galois_data


@pytest.fixture(scope="session")
def q_field():
    return NumberField(UniPoly.x())


@pytest.fixture(scope="session")
def sqrt2_field():
    return NumberField(UniPoly([-2, 0, 1]))


@pytest.fixture(scope="session")
def golden_field():
    return NumberField(UniPoly([-1, -1, 1]))


@pytest.fixture(scope="session")
def biquadratic_field():
    # theta = sqrt(2) + sqrt(3)
    return NumberField(UniPoly([1, 0, -10, 0, 1]))


@pytest.fixture(scope="session")
def biquadratic_galois(biquadratic_field):
    field = biquadratic_field
    images = [
        field.element([0, 1, 0, 0]),     # theta
        field.element([0, 10, 0, -1]),   # -sqrt2 + sqrt3
        field.element([0, -10, 0, 1]),   # sqrt2 - sqrt3
        field.element([0, -1, 0, 0]),    # -theta
    ]
    return verify_galois_data(field, images)


@pytest.fixture
def rng():
    return random.Random(20240607)

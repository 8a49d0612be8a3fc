import math

import pytest

from gul import fock
from gul.counterexamples import base_pair, perturb_pair
from gul.gabor import LineFamily

REFERENCE_DELTA = math.exp(-10.0 * math.pi) / 50.0
REFERENCE_A = 0.25


@pytest.fixture(scope="session")
def reference_pair():
    """Showcase pair: fifth Hermite factor, a = 1/4, delta = e^{-10 pi}/50."""
    fam = LineFamily(a=REFERENCE_A)
    return perturb_pair(fock.normalized_monomial(5), fam, delta=REFERENCE_DELTA)


@pytest.fixture(scope="session")
def base_quarter():
    return base_pair(0.25)


@pytest.fixture(scope="session")
def base_half():
    return base_pair(0.5)

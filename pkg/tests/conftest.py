# tests/conftest.py
import random
from fractions import Fraction

import pytest

from core.chains import Chain, chain_basis
from core.natural_splitting import build_tower
from core.semilattice import chain_semilattice, free_unital_semilattice, null_monoid


@pytest.fixture
def chain2():
    return chain_semilattice(2)


@pytest.fixture
def chain3():
    return chain_semilattice(3)


@pytest.fixture
def free2():
    return free_unital_semilattice(2)


@pytest.fixture
def monoid():
    return null_monoid()


@pytest.fixture(scope="session")
def tower():
    return build_tower(2)


def random_chain(table, degree, seed=0, terms=6, module=None):
    """A chain with a few random small rational coefficients."""
    rng = random.Random(seed)
    keys = list(chain_basis(table, degree, module))
    coeffs = {}
    for key in rng.sample(keys, min(terms, len(keys))):
        coeffs[key] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Chain(table, degree, coeffs, module)

# tests/test_homotopy_free.py
from fractions import Fraction

import pytest

from core.chains import Chain, boundary, chain_basis, primitive_tensor
from core.errors import ArityMismatch, BaseMismatch
from core.homotopy_free import HomotopyFree, apply_s, check_homotopy, operator_l1_norm

from .conftest import random_chain


@pytest.fixture(scope="module")
def h1():
    return HomotopyFree(1)


@pytest.fixture(scope="module")
def h2():
    return HomotopyFree(2)


def test_s1_on_unit_tensor(h1):
    s = apply_s(h1, 1, primitive_tensor(h1.free, (0, 0)))
    assert s.coeffs == {(0, 0, 0): 1, (0, 1, 0): -1, (1, 0, 0): -1, (1, 1, 0): 2}


def test_s0_is_zero(h1):
    s = apply_s(h1, 0, primitive_tensor(h1.free, (1,)))
    assert s.degree == 1
    assert not s


@pytest.mark.parametrize("k", [1, 2, 3])
def test_diagonal_identities_hold(k):
    h = HomotopyFree(k)
    assert len(h.u) == 2 ** k
    assert h.diagonal_square_sum() <= 5 ** k


@pytest.mark.parametrize("k, n", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1)])
def test_homotopy_identity_and_norm_bound(k, n):
    report = check_homotopy(HomotopyFree(k), n)
    assert report.identity_verified
    assert report.witness is None
    assert report.within_bound
    assert report.bound == f"5^{k}"
    assert report.checked == (2 ** k) ** (n + 1)


@pytest.mark.slow
def test_homotopy_identity_k3_n2():
    assert check_homotopy(HomotopyFree(3), 2).identity_verified


def test_homotopy_identity_on_random_chains(h2):
    for seed in range(3):
        c = random_chain(h2.free, 2, seed=seed)
        lhs = boundary(apply_s(h2, 2, c)) + apply_s(h2, 1, boundary(c))
        assert lhs == c


def test_operator_norm_of_s1(h1):
    report = check_homotopy(h1, 1)
    assert Fraction(report.exact_norm) >= 5
    assert operator_l1_norm(lambda key: {key: Fraction(-3)}, [(0,), (1,)]) == 3


def test_operator_norm_of_identity_and_zero_maps(h2):
    domain = list(chain_basis(h2.free, 1))
    assert operator_l1_norm(lambda key: {key: Fraction(1)}, domain) == 1
    assert operator_l1_norm(lambda key: {}, domain) == 0
    assert operator_l1_norm(lambda key: {key: Fraction(1)}, []) == 0


def test_argument_checks(h1, chain2):
    with pytest.raises(ArityMismatch):
        check_homotopy(h1, 0)
    with pytest.raises(ArityMismatch):
        apply_s(h1, 2, primitive_tensor(h1.free, (0, 0)))
    with pytest.raises(BaseMismatch):
        apply_s(h1, 1, Chain(chain2, 1, {(0, 1): 1}))

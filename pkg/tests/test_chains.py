# tests/test_chains.py
import random
from fractions import Fraction

import pytest

from core.chains import (
    Chain,
    boundary,
    boundary_matrix,
    chain_basis,
    character_bimodule,
    chain_dim,
    coboundary,
    coboundary_matrix,
    cochain_from_function,
    dual_bimodule,
    extend_unit_linked,
    face_map,
    induced_map,
    left_action,
    module_map_check,
    primitive_tensor,
    regular_bimodule,
    require_symmetric,
    tuple_index,
    validate_bimodule,
    zero_bimodule,
)
from core.errors import ArityMismatch, BimoduleError, DegreeTooLow, IndexOutOfRange, NotSymmetric
from core.semilattice import (
    chain_semilattice,
    collapse_morphism,
    enumerate_unital_semilattices,
    free_unital_semilattice,
    left_zero_band,
    null_monoid,
    null_semigroup,
    relabel,
    substitution_morphism,
    threshold_morphism,
    unitize,
    validate_table,
)

from .conftest import random_chain


def test_boundary_squares_to_zero(free2, monoid):
    for table in (free2, monoid, left_zero_band()):
        for seed in range(3):
            c = random_chain(table, 3, seed=seed)
            assert not boundary(boundary(c))


def test_boundary_squares_to_zero_with_dual_coefficients(chain3):
    module = dual_bimodule(chain3)
    c = random_chain(chain3, 2, seed=7, module=module)
    assert not boundary(boundary(c))


def test_boundary_is_alternating_sum_of_faces(monoid):
    c = random_chain(monoid, 2, seed=1)
    total = face_map(c, 0) - face_map(c, 1) + face_map(c, 2)
    assert boundary(c) == total


def test_boundary_of_a_primitive_tensor(chain2):
    # d(x, a) = xa - ax vanishes on a commutative table
    assert not boundary(primitive_tensor(chain2, (1, 0)))
    d = boundary(primitive_tensor(chain2, (0, 1, 1)))
    assert d.coeffs == {(1, 1): 2, (0, 1): -1}


def test_singleton_boundary_matrices():
    point = validate_table(["e"], [[0]], unit=0)
    for n in range(5):
        expected = [[1]] if n % 2 == 1 else [[0]]
        assert boundary_matrix(point, n).to_dense() == expected


def test_degree_and_arity_errors(chain2):
    with pytest.raises(DegreeTooLow):
        boundary(primitive_tensor(chain2, (0,)))
    with pytest.raises(ArityMismatch):
        Chain(chain2, 2, {(0, 1): 1})
    with pytest.raises(IndexOutOfRange):
        primitive_tensor(chain2, (0, 2))


def test_chain_arithmetic(chain2):
    a = Chain(chain2, 1, {(0, 1): 1, (1, 1): Fraction(1, 2)})
    b = Chain(chain2, 1, {(0, 1): -1})
    assert (a + b).coeffs == {(1, 1): Fraction(1, 2)}
    assert (2 * a).norm() == 3
    assert not (a - a)
    assert len(a) == 2


def test_tuple_index_matches_basis_order(chain3):
    assert tuple_index((0, 0, 0), 3) == 0
    assert tuple_index((1, 0, 2), 3) == 11
    assert chain_dim(chain3, 2) == 27
    assert chain_dim(chain3, 1, dual_bimodule(chain3)) == 9


def test_boundary_is_a_left_module_map_on_semilattices(chain3):
    for n in range(3):
        for b in range(chain3.size):
            report = module_map_check(chain3, n, b)
            assert report.passed
            assert report.checked == chain3.size ** (n + 2)


def test_boundary_is_not_a_left_module_map_on_the_left_zero_band():
    band = left_zero_band()
    for b in range(band.size):
        report = module_map_check(band, 0, b)
        assert not report.passed
        x, a = report.witness
        assert a != b


def test_left_action_on_slot_zero(chain3):
    c = primitive_tensor(chain3, (0, 2, 1))
    assert left_action(1, c).coeffs == {(1, 2, 1): 1}


def test_induced_maps_commute_with_boundary(free2):
    theta = collapse_morphism(2)
    c = random_chain(free2, 2, seed=3)
    assert induced_map(theta, boundary(c)) == boundary(induced_map(theta, c))


def test_induced_maps_are_functorial(free2):
    psi = threshold_morphism(chain_semilattice(4), 2)
    theta = relabel(chain_semilattice(2), [1, 0])[1]
    c = random_chain(psi.source, 2, seed=5)
    assert induced_map(theta.compose(psi), c) == induced_map(theta, induced_map(psi, c))

    sub = substitution_morphism(free2, (1, 2))
    collapse = collapse_morphism(2)
    c = random_chain(free2, 3, seed=6)
    assert induced_map(collapse.compose(sub), c) == induced_map(collapse, induced_map(sub, c))


def test_dual_coboundary_is_transpose_of_boundary(chain3, monoid):
    for table in (chain3, monoid):
        module = dual_bimodule(table)
        for n in range(3):
            assert coboundary_matrix(table, n, module) == boundary_matrix(table, n).transpose()


def test_coboundary_squares_to_zero_and_matches_its_matrix(monoid):
    rng = random.Random(11)
    module = regular_bimodule(monoid)
    f = cochain_from_function(
        monoid, 1, module, lambda a: [Fraction(rng.randint(-3, 3)) for _ in range(module.dim)]
    )
    df = coboundary(f)
    assert coboundary(df).is_zero()
    assert coboundary_matrix(monoid, 1, module).apply(f.to_vector()) == df.to_vector()


def test_standard_bimodules(chain2):
    regular = regular_bimodule(chain2)
    assert regular.symmetric and regular.unit_linked
    chi = character_bimodule(chain2, [1, 0])
    assert chi.dim == 1 and chi.symmetric and chi.unit_linked
    zero = zero_bimodule(chain2)
    assert zero.dim == 0 and zero.unit_linked


def test_bimodule_axioms_are_checked(chain2):
    ok = [[[1]], [[1]]]
    with pytest.raises(BimoduleError) as err:
        validate_bimodule(chain2, 1, [[[1]], [[2]]], ok)
    assert err.value.witness == (1, 1)
    with pytest.raises(BimoduleError):
        validate_bimodule(chain2, 2, ok, ok)


def test_regular_bimodule_of_left_zero_band_is_not_symmetric():
    with pytest.raises(NotSymmetric):
        require_symmetric(regular_bimodule(left_zero_band()))


def test_unit_linked_extension():
    table = null_semigroup()
    module = regular_bimodule(table)
    assert not module.unit_linked
    extended = extend_unit_linked(module, unitize(table))
    assert extended.name == "A_1"
    assert extended.unit_linked
    assert extended.dim == module.dim
    with pytest.raises(BimoduleError):
        extend_unit_linked(regular_bimodule(chain_semilattice(2)), unitize(table))


def _matrix_corpus():
    named = [
        ("null-monoid", null_monoid()),
        ("left-zero-band", left_zero_band()),
        ("free-2", free_unital_semilattice(2)),
    ]
    enumerated = [(f"usl3-{i}", t) for i, t in enumerate(enumerate_unital_semilattices(3))]
    return [pytest.param(t, id=name) for name, t in named + enumerated]


@pytest.mark.parametrize("table", _matrix_corpus())
def test_boundary_matrices_compose_to_zero(table):
    for n in range(3):
        assert boundary_matrix(table, n).matmul(boundary_matrix(table, n + 1)).is_zero()


@pytest.mark.parametrize("table", _matrix_corpus())
def test_coboundary_matrices_compose_to_zero(table):
    for module in (regular_bimodule(table), dual_bimodule(table)):
        for n in range(3):
            delta = coboundary_matrix(table, n, module)
            assert coboundary_matrix(table, n + 1, module).matmul(delta).is_zero()


def test_boundary_squares_to_zero_on_every_basis_tuple():
    for table in (null_monoid(), left_zero_band(), chain_semilattice(3)):
        for degree in range(2, 5):
            for key in chain_basis(table, degree):
                assert not boundary(boundary(primitive_tensor(table, key)))


@pytest.mark.parametrize(
    "table", [null_monoid(), left_zero_band(), chain_semilattice(3)], ids=["null-monoid", "left-zero-band", "chain-3"]
)
def test_boundary_matrix_agrees_with_boundary_on_basis_tuples(table):
    size = table.size
    for module in (None, dual_bimodule(table)):
        for n in range(3):
            matrix = boundary_matrix(table, n, module)
            for key in chain_basis(table, n + 1, module):
                d = boundary(primitive_tensor(table, key, module=module))
                expected = {tuple_index(k, size): v for k, v in d.coeffs.items()}
                assert matrix.apply({tuple_index(key, size): 1}) == expected

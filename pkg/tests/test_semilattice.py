# tests/test_semilattice.py
from itertools import product

import pytest

from core.config import Caps
from core.errors import (
    BadUnit,
    HochlatError,
    MalformedTable,
    NonAssociative,
    NotHomomorphism,
    NotIdempotent,
    ResourceLimit,
    UnitNotPreserved,
)
from core.semilattice import (
    chain_semilattice,
    collapse_morphism,
    enumerate_commutative_semigroups,
    enumerate_unital_semilattices,
    find_unit,
    free_unital_semilattice,
    identity_morphism,
    left_zero_band,
    null_monoid,
    null_semigroup,
    relabel,
    substitution_map,
    substitution_morphism,
    threshold_morphism,
    unitize,
    validate_morphism,
    validate_table,
)


def test_validate_chain_table():
    table = validate_table(["0", "1"], [[0, 1], [1, 1]], unit=0)
    assert table.size == 2
    assert table.commutative and table.idempotent
    assert table.is_unital_semilattice
    assert table.describe() == "unital semilattice of size 2"


def test_non_associative_table_reports_first_triple():
    with pytest.raises(NonAssociative) as err:
        validate_table(["a", "b"], [[1, 1], [0, 0]])
    assert err.value.triple == (0, 0, 0)
    assert err.value.labels == ("a", "a", "a")


def test_malformed_tables():
    with pytest.raises(MalformedTable):
        validate_table([], [])
    with pytest.raises(MalformedTable):
        validate_table(["a", "b"], [[0, 1], [1]])
    with pytest.raises(MalformedTable):
        validate_table(["a", "b"], [[0, 2], [1, 1]])
    with pytest.raises(MalformedTable):
        validate_table(["a", "a"], [[0, 0], [0, 0]])


def test_bad_unit_carries_witness():
    with pytest.raises(BadUnit) as err:
        validate_table(["0", "1"], [[0, 1], [1, 1]], unit=1)
    assert err.value.witness == 0


def test_cap_on_elements():
    with pytest.raises(ResourceLimit):
        free_unital_semilattice(7, Caps(max_elements=64))
    assert free_unital_semilattice(6, Caps(max_elements=64)).size == 64


def test_flags_of_named_tables():
    band = left_zero_band()
    assert band.idempotent and not band.commutative
    assert null_monoid().unit == 0
    assert not null_monoid().idempotent
    assert null_semigroup().unit is None


def test_find_unit():
    assert find_unit(null_monoid().product) == 0
    assert find_unit(null_semigroup().product) is None


def test_free_unital_semilattice_is_powerset_under_union(free2):
    assert free2.elements == ("{}", "{0}", "{1}", "{0,1}")
    assert free2.unit == 0
    assert free2.mul(1, 2) == 3
    assert free2.mul(3, 1) == 3
    assert free2.is_unital_semilattice


@pytest.mark.parametrize("size, expected", [(1, 1), (2, 2), (3, 6), (4, 36)])
def test_labeled_unital_semilattice_counts(size, expected):
    tables = list(enumerate_unital_semilattices(size))
    assert len(tables) == expected
    assert all(t.is_unital_semilattice for t in tables)


def test_commutative_semigroup_enumeration_contains_null_semigroup():
    tables = list(enumerate_commutative_semigroups(2))
    assert all(t.commutative for t in tables)
    assert null_semigroup().product in [t.product for t in tables]
    assert any(t.unit is None for t in tables)


def test_substitution_maps(free2, chain3):
    assert substitution_map(free2, (1, 2)) == (0, 1, 2, 3)
    assert substitution_map(chain3, (1, 2)) == (0, 1, 2, 2)


def test_substitution_morphism_is_the_unique_morphism_with_its_generator_images(free2, chain3):
    x = (1, 2)
    matches = []
    for images in product(range(chain3.size), repeat=free2.size):
        try:
            theta = validate_morphism(free2, chain3, images)
        except HochlatError:
            continue
        if theta.map[1] == x[0] and theta.map[2] == x[1]:
            matches.append(theta)
    assert matches == [substitution_morphism(chain3, x)]


def test_substitution_morphism_needs_semilattice():
    with pytest.raises(NotIdempotent):
        substitution_morphism(null_monoid(), (1, 2))


def test_collapse_and_threshold_maps():
    assert collapse_morphism(2).map == (0, 1, 1, 1)
    assert threshold_morphism(chain_semilattice(4), 2).map == (0, 0, 1, 1)


def test_morphism_law_violations(chain2):
    with pytest.raises(NotHomomorphism) as err:
        validate_morphism(chain2, chain2, [1, 0])
    assert err.value.pair == (0, 1)
    with pytest.raises(UnitNotPreserved):
        validate_morphism(chain2, chain2, [1, 1])


def test_relabel_and_compose(chain3):
    copy, theta = relabel(chain3, [2, 0, 1])
    assert theta.map == (2, 0, 1)
    assert copy.unit == 2
    back = validate_morphism(copy, chain3, [1, 2, 0])
    assert back.compose(theta).map == identity_morphism(chain3).map


def test_unitize():
    unitized = unitize(null_semigroup())
    assert unitized.size == 3
    assert unitized.unit == 2
    assert unitized.elements[2] == "1"
    assert unitized.product[0][:2] == null_semigroup().product[0]
    monoid = null_monoid()
    assert unitize(monoid) is monoid


def test_unitize_is_idempotent():
    for table in [null_semigroup(), left_zero_band(), *enumerate_commutative_semigroups(2)]:
        once = unitize(table)
        assert once.unit is not None
        assert unitize(once) == once

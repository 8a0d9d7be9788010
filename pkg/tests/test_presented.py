import pytest

from ebt.algebra.presented import PresentedAbelianGroup, class_order, classes_equal
from ebt.core.errors import GroupMismatchError, InvalidInputError


@pytest.fixture
def z2_times_z3():
    return PresentedAbelianGroup(["x", "y"], [{0: 2}, {1: 3}], name="Z/2 x Z/3")


def test_structure(z2_times_z3):
    assert z2_times_z3.rank == 0
    assert z2_times_z3.torsion == [6]


def test_orders(z2_times_z3):
    x, y = z2_times_z3.generator("x"), z2_times_z3.generator("y")
    assert x.order == 2
    assert y.order == 3
    assert (x + y).order == 6
    assert z2_times_z3.zero().order == 1
    assert (2 * x).is_zero


def test_order_is_least_annihilator(z2_times_z3):
    for coords in ([1, 0], [0, 1], [1, 1], [5, 4], [-3, 2]):
        element = z2_times_z3.element(coords)
        m = class_order(element)
        assert (m * element).is_zero
        for k in range(1, m):
            assert not (k * element).is_zero


def test_equality_uses_reduced_coordinates(z2_times_z3):
    assert z2_times_z3.element([3, 0]) == z2_times_z3.element([1, 0])
    assert z2_times_z3.element([0, 4]) == z2_times_z3.element([0, 1])
    assert z2_times_z3.element([1, 0]) != z2_times_z3.element([0, 1])


def test_free_generator_has_infinite_order():
    group = PresentedAbelianGroup(["x"], [])
    assert group.rank == 1
    assert group.torsion == []
    assert group.generator("x").order is None
    assert group.zero().order == 1


def test_mixed_free_and_torsion():
    group = PresentedAbelianGroup(["x", "y", "z"], [{0: 4}, {1: 1, 2: -1}])
    assert group.rank == 1
    assert group.torsion == [4]
    assert group.generator("x").order == 4
    assert group.generator("y") == group.generator("z")
    assert group.generator("y").order is None


def test_classes_from_different_groups_do_not_mix(z2_times_z3):
    other = PresentedAbelianGroup(["x", "y"], [{0: 2}, {1: 3}])
    with pytest.raises(GroupMismatchError):
        classes_equal(z2_times_z3.generator("x"), other.generator("x"))
    with pytest.raises(GroupMismatchError):
        z2_times_z3.generator("x") + other.generator("y")


def test_unknown_generator(z2_times_z3):
    with pytest.raises(InvalidInputError):
        z2_times_z3.generator("w")

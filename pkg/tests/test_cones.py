from itertools import product

import pytest

from ebt.algebra.smith import determinant
from ebt.core.errors import InvalidInputError
from ebt.lattice.cones import (
    ChiVector,
    Cone,
    Lattice,
    LatticeTriple,
    all_faces,
    apply_to_characters,
    chi_condition,
    cone_coordinates,
    is_basic,
    is_smooth,
    primitive,
    random_unimodular,
    star_subdivision,
    subdivide_smooth,
    symbol_of_basic_triple,
)
from ebt.symbols.characters import FinAbelianGroupSpec, Symbol, enumerate_symbols

Z3 = FinAbelianGroupSpec.cyclic(3)
Z5 = FinAbelianGroupSpec.cyclic(5)


def triple(group, chi, generators):
    n = len(chi)
    return LatticeTriple(group, Lattice.standard(n), ChiVector.of(group, chi), Cone(tuple(generators)))


def columns(matrix):
    return tuple(tuple(int(matrix[i, j]) for i in range(matrix.shape[0])) for j in range(matrix.shape[1]))


def test_primitive():
    assert primitive((2, -4, 6)) == (1, -2, 3)
    with pytest.raises(InvalidInputError):
        primitive((0, 0))


def test_cone_validation():
    assert Cone(((2, 0), (0, 3))).generators == ((1, 0), (0, 1))
    with pytest.raises(InvalidInputError):
        Cone(((1, 2), (2, 4)))
    with pytest.raises(InvalidInputError):
        Cone(())


def test_lattice_validation():
    with pytest.raises(InvalidInputError):
        Lattice(((1, 2), (2, 4)))
    with pytest.raises(InvalidInputError):
        Lattice(((1, 0), (0, 1)), 0)


@pytest.mark.parametrize(
    "generators, smooth, basic",
    [
        (((1, 0), (0, 1)), True, True),
        (((1, 0), (1, 1)), True, True),
        (((1, 0), (1, 2)), False, False),
        (((1, 1),), True, False),
        (((1, 0, 0), (0, 1, 0)), True, False),
        (((1, 0, 0), (0, 1, 0), (1, 1, 2)), False, False),
    ],
)
def test_smooth_and_basic(generators, smooth, basic):
    cone = Cone(generators)
    assert is_smooth(cone) is smooth
    assert is_basic(cone) is basic


def test_identity_triple_gives_back_the_symbol():
    for symbol in enumerate_symbols(Z5, 2):
        assert symbol_of_basic_triple(LatticeTriple.identity(Z5, symbol)) == symbol


def test_symbol_of_sheared_cone():
    # chi = (a1, a2) on <e1 + e2, e2> reads [a1, a2 - a1]
    assert symbol_of_basic_triple(triple(Z5, [1, 3], [(1, 1), (0, 1)])) == Symbol.of(Z5, [1, 2])
    with pytest.raises(InvalidInputError):
        symbol_of_basic_triple(triple(Z5, [1, 3], [(1, 0), (1, 2)]))


def test_symbol_is_invariant_under_change_of_basis(rng):
    for _ in range(50):
        n = rng.choice([2, 3])
        symbol = rng.choice(enumerate_symbols(Z5, n))
        cone_matrix = random_unimodular(n, rng)
        chi = apply_to_characters(Z5, cone_matrix, symbol.entries)
        base = LatticeTriple(Z5, Lattice.standard(n), ChiVector(chi), Cone(columns(cone_matrix)))

        g = random_unimodular(n, rng)
        moved = LatticeTriple(
            Z5,
            Lattice.standard(n),
            ChiVector(apply_to_characters(Z5, g, chi)),
            Cone(columns(g.dot(cone_matrix))),
        )
        assert symbol_of_basic_triple(base) == symbol
        assert symbol_of_basic_triple(moved) == symbol


def test_chi_condition():
    assert chi_condition(triple(Z5, [1, 1], [(1, 1)]))
    assert not chi_condition(triple(Z5, [1, 2], [(1, 1)]))
    assert chi_condition(triple(Z3, [1, 1], [(1, 0), (1, 2)]))
    two = FinAbelianGroupSpec.cyclic(2)
    assert not chi_condition(triple(two, [0, 1], [(1, 0), (1, 2)]))
    assert chi_condition(triple(two, [0, 1], [(1, 0), (1, 2)]), saturated=True)
    assert chi_condition(triple(FinAbelianGroupSpec.cyclic(1), [(), ()], [(1, 1)]))


def test_star_subdivision_of_a_square():
    cone = Cone(((1, 0), (0, 1)))
    pieces = star_subdivision(cone, cone)
    assert [(sub.key(), sign) for sub, sign in pieces] == [
        (frozenset({(1, 1), (1, 0)}), 1),
        (frozenset({(1, 1), (0, 1)}), 1),
        (frozenset({(1, 1)}), -1),
    ]


def test_star_subdivision_counts_and_signs():
    cone = Cone(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    full = star_subdivision(cone, cone)
    assert len(full) == 7
    assert [sign for _, sign in full] == [1, 1, 1, -1, -1, -1, 1]
    assert all((1, 1, 1) in sub.generators for sub, _ in full)

    partial = star_subdivision(cone, Cone(((1, 0, 0), (0, 1, 0))))
    assert [(sub.dim, sign) for sub, sign in partial] == [(3, 1), (3, 1), (2, -1)]
    assert all((0, 0, 1) in sub.generators for sub, _ in partial)

    with pytest.raises(InvalidInputError):
        star_subdivision(cone, Cone(((1, 0, 0),)))
    with pytest.raises(InvalidInputError):
        star_subdivision(cone, Cone(((1, 1, 0), (0, 0, 1))))


@pytest.mark.parametrize("ell", [2, 3, 5, 7])
def test_hirzebruch_jung_of_thin_cone(ell):
    pieces = subdivide_smooth(Cone(((1, 0), (1, ell))))
    assert {piece.key() for piece in pieces} == {
        frozenset({(1, k), (1, k + 1)}) for k in range(ell)
    }


def test_hirzebruch_jung_example():
    pieces = subdivide_smooth(Cone(((1, 0), (2, 3))))
    assert {piece.key() for piece in pieces} == {
        frozenset({(1, 0), (1, 1)}),
        frozenset({(1, 1), (2, 3)}),
    }


def test_smooth_cone_is_its_own_subdivision():
    cone = Cone(((1, 0, 0), (1, 1, 0)))
    assert subdivide_smooth(cone) == [cone]


def test_subdivision_in_dimension_three():
    cone = Cone(((1, 0, 0), (0, 1, 0), (1, 1, 2)))
    pieces = subdivide_smooth(cone)
    assert len(pieces) == 3
    for piece in pieces:
        assert is_basic(piece)
        for generator in piece.generators:
            assert all(c >= 0 for c in cone_coordinates(cone, generator))
    assert all((1, 1, 1) in piece.generators for piece in pieces)


def test_subdivision_of_a_non_full_cone():
    cone = Cone(((1, 0, 0), (1, 3, 0)))
    pieces = subdivide_smooth(cone)
    assert all(is_smooth(piece) and piece.dim == 2 for piece in pieces)
    for piece in pieces:
        for generator in piece.generators:
            assert generator[2] == 0
            assert all(c >= 0 for c in cone_coordinates(cone, generator))


def test_random_unimodular_is_unimodular(rng):
    for n in (1, 2, 3, 4):
        assert abs(determinant(random_unimodular(n, rng))) == 1


def test_cone_coordinates_and_faces():
    cone = Cone(((1, 0), (1, 2)))
    assert cone_coordinates(cone, (1, 1)) == (0.5, 0.5)
    with pytest.raises(InvalidInputError):
        cone_coordinates(Cone(((1, 0, 0),)), (0, 1, 0))
    faces = all_faces([Cone(((1, 0), (1, 1))), Cone(((1, 1), (1, 2)))])
    assert len(faces) == 5


@pytest.mark.parametrize(
    "generators",
    [
        ((1, 0, 0), (0, 1, 0), (1, 1, 2)),
        ((1, 0, 0), (0, 1, 0), (1, 1, 3)),
        ((1, 0, 0), (0, 1, 0), (1, 2, 5)),
        ((1, 0, 0), (0, 1, 0), (2, 3, 7)),
    ],
)
def test_subdivision_in_dimension_three_covers_with_disjoint_interiors(generators):
    cone = Cone(generators)
    pieces = subdivide_smooth(cone)
    assert all(is_basic(piece) for piece in pieces)
    for piece in pieces:
        for generator in piece.generators:
            assert all(c >= 0 for c in cone_coordinates(cone, generator))

    for weights in product(range(1, 5), repeat=3):
        point = tuple(sum(w * g[k] for w, g in zip(weights, generators)) for k in range(3))
        coords = [cone_coordinates(piece, point) for piece in pieces]
        assert any(all(c >= 0 for c in cs) for cs in coords), point
        assert sum(all(c > 0 for c in cs) for cs in coords) <= 1, point

from itertools import combinations

import pytest

from ebt.birational.relations import Variant, class_of, presented_group
from ebt.core.errors import InvalidInputError
from ebt.lattice.cones import (
    ChiVector,
    Cone,
    Lattice,
    LatticeTriple,
    all_faces,
    apply_to_characters,
    cone_coordinates,
    random_unimodular,
    subdivide_smooth,
)
from ebt.lattice.psi import (
    interior_faces,
    psi_tilde,
    psi_tilde_expression,
    refine_once,
    subdivision_relation,
    verify_subdivision_relations,
)
from ebt.symbols.characters import FinAbelianGroupSpec, Symbol, enumerate_symbols
from ebt.symbols.expressions import SymbolExpression

Z3 = FinAbelianGroupSpec.cyclic(3)
Z5 = FinAbelianGroupSpec.cyclic(5)


def triple(group, chi, generators):
    return LatticeTriple(group, Lattice.standard(len(chi)), ChiVector.of(group, chi), Cone(tuple(generators)))


def test_smooth_ray():
    for a in range(1, 5):
        expr = psi_tilde_expression(triple(Z5, [a, a], [(1, 1)]))
        assert expr == SymbolExpression.of(Symbol.of(Z5, [a, 0]))


def test_basic_triple_is_its_symbol():
    for symbol in enumerate_symbols(Z5, 2):
        expr = psi_tilde_expression(LatticeTriple.identity(Z5, symbol))
        assert expr == SymbolExpression.of(symbol)


def test_non_smooth_cone_over_z3():
    expr = psi_tilde_expression(triple(Z3, [1, 1], [(1, 0), (1, 2)]))
    assert expr == SymbolExpression.of(Symbol.of(Z3, [0, 1]))


def test_interior_faces():
    cone = Cone(((1, 0), (2, 3)))
    kept = {face.key() for face in interior_faces(cone, subdivide_smooth(cone))}
    assert kept == {
        frozenset({(1, 0), (1, 1)}),
        frozenset({(1, 1), (2, 3)}),
        frozenset({(1, 1)}),
    }


def test_invalid_triples():
    with pytest.raises(InvalidInputError):
        psi_tilde_expression(triple(Z5, [1, 2], [(1, 1)]))
    with pytest.raises(InvalidInputError):
        psi_tilde_expression(triple(Z5, [0, 0], [(1, 0), (0, 1)]))


def test_star_relation_for_the_unit_square():
    target = presented_group(Z5, 2, Variant.B)
    for a in range(1, 5):
        base = triple(Z5, [a, a], [(1, 0), (0, 1)])
        assert class_of(subdivision_relation(base, base.cone), target).is_zero


def test_psi_does_not_depend_on_the_subdivision():
    target = presented_group(Z5, 2, Variant.B)
    cone = Cone(((1, 0), (2, 5)))
    coarse = subdivide_smooth(cone)
    for index in range(len(coarse)):
        fine = refine_once(coarse, index)
        for a in range(5):
            for b in range(5):
                if (a, b) == (0, 0):
                    continue
                base = triple(Z5, [a, b], cone.generators)
                assert psi_tilde(base, target) == psi_tilde(base, target, subdivision=fine)


def test_psi_is_invariant_under_change_of_basis(rng):
    target = presented_group(Z5, 2, Variant.B)
    cone = Cone(((1, 0), (2, 3)))
    for _ in range(20):
        chi = (rng.randrange(5), rng.randrange(1, 5))
        g = random_unimodular(2, rng)
        moved_generators = tuple(
            tuple(int(v) for v in g.dot(list(generator))) for generator in cone.generators
        )
        moved = LatticeTriple(
            Z5, Lattice.standard(2), ChiVector(apply_to_characters(Z5, g, [(c,) for c in chi])), Cone(moved_generators)
        )
        assert psi_tilde(triple(Z5, list(chi), cone.generators), target) == psi_tilde(moved, target)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_subdivision_relations_in_dimension_two(p):
    report = verify_subdivision_relations(FinAbelianGroupSpec.cyclic(p), 2, samples=5, seed=p)
    assert report.passed, [c for c in report.checks if not c.passed]


def test_subdivision_relations_in_dimension_three():
    report = verify_subdivision_relations(Z5, 3, samples=3, seed=1)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert "star subdivision relation, r=3" in {check.name for check in report.checks}


def symbol_expr(group, entries):
    return SymbolExpression.of(Symbol.of(group, entries))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_star_subdivision_reproduces_the_blowup_relation(p):
    group = FinAbelianGroupSpec.cyclic(p)
    for symbol in enumerate_symbols(group, 2):
        (a1,), (a2,) = symbol.entries
        if a1 == a2:
            expected = symbol_expr(group, [a1, a2]) - symbol_expr(group, [0, a1])
        else:
            expected = (
                symbol_expr(group, [a1, a2])
                - symbol_expr(group, [a1, a2 - a1])
                - symbol_expr(group, [a1 - a2, a2])
            )
        base = LatticeTriple.identity(group, symbol)
        assert subdivision_relation(base, base.cone) == expected, symbol.format(group)


def in_proper_face(cone, face):
    coords = [cone_coordinates(cone, generator) for generator in face.generators]
    for size in range(1, cone.dim):
        for subset in combinations(range(cone.dim), size):
            if all(all(c[i] == 0 for i in range(cone.dim) if i not in subset) for c in coords):
                return True
    return False


@pytest.mark.parametrize(
    "generators",
    [
        ((1, 0), (2, 3)),
        ((1, 0), (2, 5)),
        ((1, 0), (3, 7)),
        ((2, 1), (1, 3)),
        ((1, 0, 0), (0, 1, 0), (1, 1, 2)),
        ((1, 0, 0), (0, 1, 0), (1, 2, 5)),
    ],
)
def test_interior_faces_match_brute_force(generators):
    cone = Cone(generators)
    subdivision = subdivide_smooth(cone)
    expected = {face.key() for face in all_faces(subdivision) if not in_proper_face(cone, face)}
    assert {face.key() for face in interior_faces(cone, subdivision)} == expected

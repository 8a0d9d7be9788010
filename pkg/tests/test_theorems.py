import pytest
import sympy

from ebt.algebra.presented import class_order
from ebt.birational.relations import Variant, apply_sparse, mu_matrix, presented_group
from ebt.birational.theorems import (
    class_from_fixed_point_data,
    comparison_battery,
    delta_class,
    delta_expression,
    delta_is_independent,
    divides,
    rank_compare,
    torsion_bound,
    verify_001n,
    verify_compare,
    verify_lemma_suite,
    verify_mu_descends,
    verify_pn,
    zero_zero_one_class,
    zero_zero_one_symbol,
)
from ebt.core.errors import InvalidInputError
from ebt.symbols.characters import FinAbelianGroupSpec, Symbol
from ebt.symbols.expressions import SymbolExpression


@pytest.mark.parametrize("p", [2, 3, 5])
def test_delta_vanishes_for_small_primes(p):
    assert delta_class(p).is_zero


@pytest.mark.parametrize("p", [7, 11, 13])
def test_delta_order_divides_bound(p):
    assert divides(class_order(delta_class(p)), (p * p - 1) // 24)


@pytest.mark.parametrize("p", list(sympy.primerange(2, 14)))
def test_delta_is_independent_of_unit(p):
    independent, witnesses = delta_is_independent(p)
    assert independent, witnesses


@pytest.mark.parametrize("N", [4, 6, 8, 9, 10, 12])
def test_delta_is_torsion_for_composite_n(N):
    for a in range(1, N):
        if sympy.gcd(a, N) == 1:
            assert class_order(delta_class(N, 2, a)) is not None


@pytest.mark.parametrize("p", [2, 3, 5])
def test_zero_zero_one_vanishes_for_small_primes(p):
    assert zero_zero_one_class(FinAbelianGroupSpec.cyclic(p), 3).is_zero


def test_zero_zero_one_bound_for_seven():
    assert divides(class_order(zero_zero_one_class(FinAbelianGroupSpec.cyclic(7), 3)), 2)


@pytest.mark.parametrize("N", [4, 6, 9])
def test_zero_zero_one_torsion_for_composite_n(N):
    assert class_order(zero_zero_one_class(FinAbelianGroupSpec.cyclic(N), 3)) is not None


def test_zero_zero_one_symbol_over_noncyclic_group():
    group = FinAbelianGroupSpec((2, 2))
    assert zero_zero_one_symbol(group, 4) == Symbol.of(group, [(0, 0), (0, 0), (1, 0), (0, 1)])
    with pytest.raises(InvalidInputError):
        zero_zero_one_symbol(group, 3)


@pytest.mark.parametrize("p", list(sympy.primerange(2, 14)))
def test_lemma_suite(p):
    report = verify_lemma_suite(p)
    assert report.passed, [c for c in report.checks if not c.passed]


def test_lemma_suite_rejects_composites():
    with pytest.raises(InvalidInputError):
        verify_lemma_suite(9)


def test_pn_suite():
    report = verify_pn(pmax=13, order_max=10)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert report.parameters == {"pmax": 13, "Nmax": 10}


def test_001n_suite():
    report = verify_001n(pmax=7, order_max=6)
    assert report.passed, [c for c in report.checks if not c.passed]


@pytest.mark.parametrize(
    "group, n", comparison_battery(15, 7), ids=lambda value: str(value)
)
def test_mu_is_rational_isomorphism(group, n):
    for minus in (False, True):
        comparison = rank_compare(group, n, minus)
        assert comparison.iso_over_Q, comparison
        assert verify_mu_descends(group, n, minus)


def test_compare_suite_small():
    report = verify_compare(order_max=6, order_max3=4)
    assert report.passed
    assert {c.map for c in report.comparisons} == {"mu", "mu-"}


def test_dimension_bound_skips_the_n3_battery():
    battery = comparison_battery(6, 4, dim_max=2)
    assert battery
    assert {n for _, n in battery} == {2}
    report = verify_compare(order_max=5, order_max3=4, dim_max=2)
    assert report.passed
    assert {c.n for c in report.comparisons} == {2}
    assert report.parameters["nmax"] == 2


def test_001n_suite_needs_dimension_three():
    report = verify_001n(pmax=7, order_max=6, dim_max=2)
    assert report.passed
    assert report.checks == []


def test_fixed_point_data():
    group = FinAbelianGroupSpec.cyclic(5)
    presentation = presented_group(group, 2, Variant.B)
    cls = class_from_fixed_point_data([[1, 2], [3, 4]], group, 2)
    expected = presentation.element_from_terms([(Symbol.of(group, [1, 2]), 1), (Symbol.of(group, [3, 4]), 1)])
    assert cls == expected
    with pytest.raises(InvalidInputError):
        class_from_fixed_point_data([[0, 0]], group, 2)
    with pytest.raises(InvalidInputError):
        class_from_fixed_point_data([[1, 2, 3]], group, 2)


def test_torsion_bound():
    group = FinAbelianGroupSpec.cyclic(7)
    assert torsion_bound(group, 2, Variant.B, delta_expression(group, 2, 3)) == 2
    assert torsion_bound(FinAbelianGroupSpec.cyclic(5), 2, Variant.B, delta_expression(FinAbelianGroupSpec.cyclic(5), 2)) == 1
    other = SymbolExpression.of(Symbol.of(group, [1, 2]))
    assert torsion_bound(group, 2, Variant.B, other) is None
    assert torsion_bound(group, 2, Variant.M, delta_expression(group, 2)) is None


@pytest.mark.parametrize("factors, n", [((5,), 2), ((4,), 2), ((2, 2), 2), ((3,), 3)])
def test_mu_square_commutes_on_minus_quotients(factors, n, rng):
    group = FinAbelianGroupSpec(factors)
    B = presented_group(group, n, Variant.B)
    M = presented_group(group, n, Variant.M)
    B_minus = presented_group(group, n, Variant.Bminus)
    M_minus = presented_group(group, n, Variant.Mminus)
    assert B.symbols == M.symbols == B_minus.symbols == M_minus.symbols
    mu = mu_matrix(group, n)
    size = B.num_generators

    for _ in range(20):
        x = [rng.randrange(-3, 4) for _ in range(size)]
        # B -> M -> M-
        through_M = M_minus.element(apply_sparse(mu, x, size))
        # B -> B- -> M-, from another representative of the class of x in B-
        representative = list(x)
        for relation in B_minus.relations:
            k = rng.randrange(-2, 3)
            for i, c in relation.items():
                representative[i] += k * c
        assert B_minus.element(representative) == B_minus.element(x)
        assert M_minus.element(apply_sparse(mu, representative, size)) == through_M

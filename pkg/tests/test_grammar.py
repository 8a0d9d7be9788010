import pytest

from ebt.core.errors import InvalidInputError, ParseError
from ebt.symbols.characters import FinAbelianGroupSpec, Symbol
from ebt.symbols.expressions import SymbolExpression
from ebt.symbols.grammar import parse_character_list, parse_expression, parse_group_spec, parse_symbol

Z5 = FinAbelianGroupSpec.cyclic(5)
Z2xZ2 = FinAbelianGroupSpec((2, 2))


@pytest.mark.parametrize(
    "text, factors",
    [
        ("Z/5", (5,)),
        ("z/5", (5,)),
        ("Z/4 x Z/2", (2, 4)),
        ("Z/2×Z/6", (2, 6)),
        ("Z/2 X Z/3", (6,)),
        ("Z/1", ()),
    ],
)
def test_group_specs(text, factors):
    assert parse_group_spec(text).invariant_factors == factors


@pytest.mark.parametrize("text", ["Z/", "Z5", "Z/4 x", "Q/3", ""])
def test_malformed_group_specs(text):
    with pytest.raises(ParseError) as excinfo:
        parse_group_spec(text)
    assert excinfo.value.position >= 0
    assert excinfo.value.exit_code == 2


def test_zero_order_group_is_rejected():
    with pytest.raises(InvalidInputError):
        parse_group_spec("Z/0")


def test_expression_terms_are_merged_and_reduced():
    expr = parse_expression("[1,0] + [-1,0]", Z5)
    assert expr == SymbolExpression.from_terms(
        [(1, Symbol.of(Z5, [0, 1])), (1, Symbol.of(Z5, [0, 4]))]
    )
    assert parse_expression("[1,0] - [0,6]", Z5).is_zero
    assert parse_expression("0", Z5).is_zero
    assert parse_expression("-2*[1,2] + 3*[2,1]", Z5) == SymbolExpression.of(Symbol.of(Z5, [1, 2]))


def test_tuple_entries():
    expr = parse_expression("2*[(1,0),(0,1)]", Z2xZ2)
    assert expr == SymbolExpression.of(Symbol.of(Z2xZ2, [(0, 1), (1, 0)]), 2)


def test_formatting_reparses_to_the_same_expression():
    for group, text in [(Z5, "[1,0] + 2*[2,3] - [4,4]"), (Z2xZ2, "[(1,0),(0,1)] - 3*[(1,1),(0,1)]")]:
        expr = parse_expression(text, group)
        assert parse_expression(expr.format(group), group) == expr


@pytest.mark.parametrize("text", ["[1,0] +", "[1,", "1,0]", "[1,0] [2,0]", "2[1,0]"])
def test_malformed_expressions(text):
    with pytest.raises(ParseError):
        parse_expression(text, Z5)


def test_mixed_lengths_are_rejected():
    with pytest.raises(InvalidInputError):
        parse_expression("[1,0] + [1,0,0]", Z5)


def test_bare_integers_need_a_cyclic_group():
    with pytest.raises(InvalidInputError):
        parse_expression("[1,0]", Z2xZ2)


def test_parse_symbol_and_character_list():
    assert parse_symbol("[3,1]", Z5) == Symbol.of(Z5, [1, 3])
    with pytest.raises(InvalidInputError):
        parse_symbol("[1,0] + [2,0]", Z5)
    assert parse_character_list("1,7", Z5) == [(1,), (2,)]
    assert parse_character_list("(1,0),(1,1)", Z2xZ2) == [(1, 0), (1, 1)]

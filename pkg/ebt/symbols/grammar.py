"""Text grammars for group specs and symbol expressions.

Group specs: ``Z/<d>`` factors joined by ``x`` (or ``×``), e.g. ``Z/4 x Z/2``.
Expressions: ``[sign] [k*] [entries]`` terms joined by ``+``/``-``, or ``0``.
Entries are integers over a cyclic group and parenthesized tuples otherwise,
e.g. ``[1,0] + [-1,0]`` or ``2*[(1,0),(0,1)]``.
"""

from __future__ import annotations

import pyparsing as pp

from ebt.core.errors import InvalidInputError, ParseError
from ebt.symbols.characters import FinAbelianGroupSpec, Symbol
from ebt.symbols.expressions import SymbolExpression

_natural = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
_signed = pp.Regex(r"[+-]?\s*\d+").set_parse_action(lambda t: int(t[0].replace(" ", "")))

_cyclic_factor = pp.Suppress(pp.CaselessLiteral("Z") + pp.Literal("/")) + _natural
_times = pp.Suppress(pp.one_of("x X ×"))
GROUP_SPEC = _cyclic_factor + pp.ZeroOrMore(_times + _cyclic_factor)

_tuple_entry = pp.Group(pp.Suppress("(") + pp.DelimitedList(_signed) + pp.Suppress(")"))
_entry = _tuple_entry | _signed
_symbol = pp.Group(pp.Suppress("[") + pp.DelimitedList(_entry) + pp.Suppress("]"))
_coefficient = _natural + pp.Suppress("*")
_sign = pp.one_of("+ -")
_first_term = pp.Group(pp.Opt(_sign, default="+") + pp.Opt(_coefficient, default=1) + _symbol)
_next_term = pp.Group(_sign + pp.Opt(_coefficient, default=1) + _symbol)
_zero = pp.Suppress(pp.Literal("0"))
EXPRESSION = (_first_term + pp.ZeroOrMore(_next_term)) | _zero


def _parse(grammar: pp.ParserElement, text: str, what: str) -> pp.ParseResults:
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseException as exc:
        raise ParseError(f"invalid {what}: {exc.msg}", text=text, position=exc.loc) from exc


def parse_group_spec(text: str) -> FinAbelianGroupSpec:
    orders = _parse(GROUP_SPEC, text, "group spec").as_list()
    return FinAbelianGroupSpec.from_cyclic_orders(orders)


def parse_character(group: FinAbelianGroupSpec, raw: int | list[int]) -> tuple[int, ...]:
    if isinstance(raw, list):
        if group.rank <= 1 and len(raw) == 1:
            return group.reduce(raw[0])
        return group.reduce(raw)
    if group.is_trivial:
        return ()
    return group.reduce(raw)


def parse_symbol(text: str, group: FinAbelianGroupSpec) -> Symbol:
    expression = parse_expression(text, group)
    if len(expression.terms) != 1 or expression.terms[0][0] != 1:
        raise InvalidInputError(f"expected a single symbol, got {text!r}")
    return expression.terms[0][1]


def parse_expression(text: str, group: FinAbelianGroupSpec) -> SymbolExpression:
    parsed = _parse(EXPRESSION, text, "symbol expression")
    terms = []
    lengths = set()
    for sign, coefficient, raw_entries in parsed.as_list():
        symbol = Symbol.of(group, [parse_character(group, raw) for raw in raw_entries])
        lengths.add(symbol.n)
        terms.append((coefficient if sign == "+" else -coefficient, symbol))
    if len(lengths) > 1:
        raise InvalidInputError(f"symbols of different lengths {sorted(lengths)} in {text!r}")
    return SymbolExpression.from_terms(terms)


def parse_character_list(text: str, group: FinAbelianGroupSpec) -> list[tuple[int, ...]]:
    """A bare comma-separated character list like ``1,2`` or ``(1,0),(0,1)``."""
    parsed = _parse(pp.DelimitedList(_entry), text, "character list")
    return [parse_character(group, raw) for raw in parsed.as_list()]

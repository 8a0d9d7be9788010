from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from ebt.symbols.characters import FinAbelianGroupSpec, Symbol


@dataclass(frozen=True)
class SymbolExpression:
    """Formal integer combination of symbols; merged, zero-free, sorted by symbol."""

    terms: tuple[tuple[int, Symbol], ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Symbol]]) -> SymbolExpression:
        merged: dict[Symbol, int] = defaultdict(int)
        for coefficient, symbol in terms:
            merged[symbol] += int(coefficient)
        return cls(tuple((c, s) for s, c in sorted(merged.items()) if c))

    @classmethod
    def of(cls, symbol: Symbol, coefficient: int = 1) -> SymbolExpression:
        return cls.from_terms([(coefficient, symbol)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def symbols(self) -> list[Symbol]:
        return [s for _, s in self.terms]

    def __add__(self, other: SymbolExpression) -> SymbolExpression:
        return SymbolExpression.from_terms(self.terms + other.terms)

    def __sub__(self, other: SymbolExpression) -> SymbolExpression:
        return self + (-other)

    def __neg__(self) -> SymbolExpression:
        return SymbolExpression(tuple((-c, s) for c, s in self.terms))

    def __rmul__(self, scalar: int) -> SymbolExpression:
        return SymbolExpression.from_terms((scalar * c, s) for c, s in self.terms)

    def format(self, group: FinAbelianGroupSpec) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (c, s) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            body = s.format(group) if abs(c) == 1 else f"{abs(c)}*{s.format(group)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

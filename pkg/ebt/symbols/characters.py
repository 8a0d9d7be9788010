"""The group G, its character group A and the faithful symbols over it.

G and A are both stored by invariant factors d1 | d2 | ... | dk; a character is
a tuple of residues ``(c1, ..., ck)`` with ``0 <= ci < di``. The trivial group
has no factors and a single character ``()``.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import gcd, prod
from typing import Iterable, Sequence

from cachetools import LRUCache, cached

from ebt.algebra.smith import cokernel_structure, int_matrix, smith_normal_form
from ebt.core.errors import InvalidInputError
from ebt.core.settings import settings

logger = logging.getLogger(__name__)

Character = tuple[int, ...]


@dataclass(frozen=True)
class FinAbelianGroupSpec:
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        factors = tuple(int(d) for d in self.invariant_factors)
        for d in factors:
            if d < 2:
                raise InvalidInputError(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise InvalidInputError(
                    f"invariant factors must form a divisibility chain, got {list(factors)}"
                )
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> FinAbelianGroupSpec:
        """Normalize any product of cyclic groups Z/m1 x Z/m2 x ... to invariant factors."""
        orders = [int(m) for m in orders]
        for m in orders:
            if m < 1:
                raise InvalidInputError(f"cyclic factor Z/{m} is not a finite group")
        if not orders:
            return cls(())
        diagonal = int_matrix([[m if i == j else 0 for j in range(len(orders))] for i in range(len(orders))])
        factors = [d for d in smith_normal_form(diagonal).diag if d > 1]
        return cls(tuple(factors))

    @classmethod
    def cyclic(cls, order: int) -> FinAbelianGroupSpec:
        return cls.from_cyclic_orders([order])

    @property
    def rank(self) -> int:
        """Number of invariant factors (minimal number of generators)."""
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return self.rank <= 1

    def canonical(self) -> str:
        if self.is_trivial:
            return "Z/1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)

    def __str__(self) -> str:
        return self.canonical()

    # Character arithmetic, componentwise modulo the invariant factors.

    def reduce(self, character: Sequence[int] | int) -> Character:
        if isinstance(character, int):
            if self.rank > 1:
                raise InvalidInputError(
                    f"character {character} needs {self.rank} coordinates over {self}"
                )
            character = (character,) if self.rank == 1 else ()
        if len(character) != self.rank:
            raise InvalidInputError(
                f"character {tuple(character)} needs {self.rank} coordinates over {self}"
            )
        return tuple(int(c) % d for c, d in zip(character, self.invariant_factors))

    def zero(self) -> Character:
        return (0,) * self.rank

    def add(self, a: Character, b: Character) -> Character:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def sub(self, a: Character, b: Character) -> Character:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a: Character) -> Character:
        return tuple(-x % d for x, d in zip(a, self.invariant_factors))

    def scale(self, k: int, a: Character) -> Character:
        return tuple(k * x % d for x, d in zip(a, self.invariant_factors))

    def format_character(self, a: Character) -> str:
        if self.rank == 0:
            return "0"
        if self.rank == 1:
            return str(a[0])
        return "(" + ",".join(str(c) for c in a) + ")"


def enumerate_characters(group: FinAbelianGroupSpec) -> list[Character]:
    return list(product(*(range(d) for d in group.invariant_factors)))


def is_faithful(group: FinAbelianGroupSpec, entries: Sequence[Character]) -> bool:
    """True iff the entries generate the whole character group."""
    if group.is_trivial:
        return True
    if group.is_cyclic:
        return gcd(*(a[0] for a in entries), group.exponent) == 1
    columns = [list(a) for a in entries] + [
        [d if i == j else 0 for i in range(group.rank)] for j, d in enumerate(group.invariant_factors)
    ]
    matrix = int_matrix([[column[i] for column in columns] for i in range(group.rank)])
    rank, torsion = cokernel_structure(matrix)
    return rank == 0 and not torsion


@dataclass(frozen=True, order=True)
class Symbol:
    """Unordered multiset of characters, stored sorted."""

    entries: tuple[Character, ...]

    @classmethod
    def of(cls, group: FinAbelianGroupSpec, entries: Iterable[Sequence[int] | int]) -> Symbol:
        return cls(tuple(sorted(group.reduce(a) for a in entries)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def zero_count(self) -> int:
        return sum(1 for a in self.entries if not any(a))

    def format(self, group: FinAbelianGroupSpec) -> str:
        return "[" + ",".join(group.format_character(a) for a in self.entries) + "]"

    def replace(self, group: FinAbelianGroupSpec, index: int, character: Character) -> Symbol:
        entries = list(self.entries)
        entries[index] = character
        return Symbol.of(group, entries)


def require_faithful(group: FinAbelianGroupSpec, symbol: Symbol) -> Symbol:
    if not is_faithful(group, symbol.entries):
        raise InvalidInputError(
            f"symbol {symbol.format(group)} is not faithful: its characters do not span the character group of {group}"
        )
    return symbol


_symbol_cache: LRUCache = LRUCache(maxsize=settings.PRESENTATION_CACHE_SIZE)
_symbol_lock = threading.Lock()


@cached(_symbol_cache, lock=_symbol_lock)
def _symbols(group: FinAbelianGroupSpec, n: int) -> tuple[Symbol, ...]:
    if group.is_trivial:
        return (Symbol(((),) * n),)
    characters = enumerate_characters(group)
    symbols = tuple(
        Symbol(entries)
        for entries in combinations_with_replacement(characters, n)
        if is_faithful(group, entries)
    )
    logger.debug("Enumerated %d faithful symbols", len(symbols), extra={"group": group.canonical(), "n": n})
    return symbols


def enumerate_symbols(group: FinAbelianGroupSpec, n: int) -> list[Symbol]:
    """All faithful symbols of length n, in lexicographic order of their sorted entries."""
    if n < 1:
        raise InvalidInputError(f"symbol length must be >= 1, got {n}")
    if n < group.rank:
        return []
    return list(_symbols(group, n))


def negate_entry(group: FinAbelianGroupSpec, symbol: Symbol, index: int) -> Symbol:
    if not 0 <= index < symbol.n:
        raise InvalidInputError(f"entry index {index} out of range for a symbol of length {symbol.n}")
    return symbol.replace(group, index, group.neg(symbol.entries[index]))

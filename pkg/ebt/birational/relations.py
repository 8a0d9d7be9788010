"""Presentations of B_n(G), M_n(G) and their antisymmetric quotients.

Generators are the faithful symbols of length n, relations are sparse integer
columns over them:

* (B) for each symbol and each pair of positions {i, j} with entries a, b:
  ``[a, b, ...] - [a, b - a, ...] - [a - b, b, ...]`` when a != b, and
  ``[a, a, ...] - [0, a, ...]`` when a == b;
* (M) the two-term form for every pair, so ``[a, a, ...] = 2 [0, a, ...]``;
* antisymmetry (minus variants) ``[..., -a, ...] + [..., a, ...]`` for every entry.
"""

from __future__ import annotations

import logging
import threading
from collections import defaultdict
from enum import Enum
from itertools import combinations

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from ebt.algebra.presented import GroupElementClass, PresentedAbelianGroup
from ebt.algebra.smith import SmithForm
from ebt.core.errors import InvalidInputError
from ebt.core.settings import settings
from ebt.symbols.characters import FinAbelianGroupSpec, Symbol, enumerate_symbols
from ebt.symbols.expressions import SymbolExpression

logger = logging.getLogger(__name__)

SparseColumn = dict[int, int]


class Variant(str, Enum):
    B = "B"
    M = "M"
    Bminus = "Bminus"
    Mminus = "Mminus"

    @classmethod
    def parse(cls, text: str) -> Variant:
        aliases = {"B-": cls.Bminus, "M-": cls.Mminus}
        value = text.strip()
        if value in aliases:
            return aliases[value]
        try:
            return cls(value)
        except ValueError as exc:
            raise InvalidInputError(
                f"unknown variant {text!r}; expected one of B, M, Bminus (B-), Mminus (M-)"
            ) from exc

    @property
    def modular(self) -> bool:
        return self in (Variant.M, Variant.Mminus)

    @property
    def antisymmetric(self) -> bool:
        return self in (Variant.Bminus, Variant.Mminus)

    @property
    def label(self) -> str:
        return {"B": "B", "M": "M", "Bminus": "B-", "Mminus": "M-"}[self.value]


class SymbolPresentation(PresentedAbelianGroup):
    """A presented group whose generators are the faithful symbols over G."""

    def __init__(
        self,
        group: FinAbelianGroupSpec,
        n: int,
        variant: Variant,
        *,
        smith: SmithForm | None = None,
    ) -> None:
        symbols = enumerate_symbols(group, n)
        super().__init__(
            symbols,
            build_relations(group, n, variant, symbols=symbols),
            name=f"{variant.label}_{n}({group.canonical()})",
            smith=smith,
        )
        self.group = group
        self.n = n
        self.variant = variant

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return self.generator_labels  # type: ignore[return-value]

    def format_generator(self, index: int) -> str:
        return self.symbols[index].format(self.group)


def _check_group(group: FinAbelianGroupSpec, n: int, variant: Variant) -> None:
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if variant.antisymmetric and group.is_trivial:
        raise InvalidInputError(
            f"variant {variant.label} is defined only for nontrivial groups"
        )


def _blowup_columns(
    group: FinAbelianGroupSpec, symbol: Symbol, modular: bool
) -> list[dict[Symbol, int]]:
    columns = []
    for i, j in combinations(range(symbol.n), 2):
        a, b = symbol.entries[i], symbol.entries[j]
        rest = [c for k, c in enumerate(symbol.entries) if k not in (i, j)]
        column: dict[Symbol, int] = defaultdict(int)
        column[symbol] += 1
        if a == b and not modular:
            column[Symbol.of(group, [group.zero(), a, *rest])] -= 1
        else:
            column[Symbol.of(group, [a, group.sub(b, a), *rest])] -= 1
            column[Symbol.of(group, [group.sub(a, b), b, *rest])] -= 1
        columns.append(column)
    return columns


def _antisymmetry_columns(group: FinAbelianGroupSpec, symbol: Symbol) -> list[dict[Symbol, int]]:
    columns = []
    for i, a in enumerate(symbol.entries):
        column: dict[Symbol, int] = defaultdict(int)
        column[symbol] += 1
        column[symbol.replace(group, i, group.neg(a))] += 1
        columns.append(column)
    return columns


def build_relations(
    group: FinAbelianGroupSpec,
    n: int,
    variant: Variant,
    *,
    symbols: list[Symbol] | None = None,
) -> list[SparseColumn]:
    """Relation columns over ``enumerate_symbols(group, n)``, deduplicated, in generation order."""
    _check_group(group, n, variant)
    if symbols is None:
        symbols = enumerate_symbols(group, n)
    index = {symbol: i for i, symbol in enumerate(symbols)}

    seen: set[tuple[tuple[int, int], ...]] = set()
    relations: list[SparseColumn] = []
    for symbol in symbols:
        raw = _blowup_columns(group, symbol, variant.modular)
        if variant.antisymmetric:
            raw += _antisymmetry_columns(group, symbol)
        for column in raw:
            sparse: SparseColumn = {}
            for term, coefficient in column.items():
                if coefficient == 0:
                    continue
                position = index.get(term)
                if position is None:
                    raise RuntimeError(
                        f"relation for {symbol.format(group)} produced non-generator {term.format(group)}"
                    )
                sparse[position] = coefficient
            if not sparse:
                continue
            key = tuple(sorted(sparse.items()))
            if key in seen:
                continue
            seen.add(key)
            relations.append(dict(key))
    return relations


_presentation_cache: LRUCache = LRUCache(maxsize=settings.PRESENTATION_CACHE_SIZE)
_presentation_lock = threading.Lock()


@cached(_presentation_cache, lock=_presentation_lock)
def presented_group(group: FinAbelianGroupSpec, n: int, variant: Variant) -> SymbolPresentation:
    _check_group(group, n, variant)
    presentation = SymbolPresentation(group, n, variant)
    logger.info(
        "Built presentation %s",
        presentation.name,
        extra={"generators": presentation.num_generators, "relations": len(presentation.relations)},
    )
    return presentation


def class_of(expr: SymbolExpression, presentation: SymbolPresentation) -> GroupElementClass:
    coords = [0] * presentation.num_generators
    for coefficient, symbol in expr.terms:
        position = presentation.index_of(symbol)
        if position is None:
            text = symbol.format(presentation.group)
            if symbol.n != presentation.n:
                raise InvalidInputError(
                    f"symbol {text} has {symbol.n} entries; {presentation.name} needs {presentation.n}"
                )
            raise InvalidInputError(
                f"symbol {text} is not a generator of {presentation.name}: "
                "its characters do not span the character group"
            )
        coords[position] += coefficient
    return presentation.element(coords)


def symbol_class(presentation: SymbolPresentation, entries: list) -> GroupElementClass:
    return class_of(SymbolExpression.of(Symbol.of(presentation.group, entries)), presentation)


def mu_coefficient(symbol: Symbol) -> int:
    zeros = symbol.zero_count()
    if zeros == 0:
        return 1
    if zeros == 1:
        return 2
    return 0


def mu_matrix(group: FinAbelianGroupSpec, n: int) -> list[SparseColumn]:
    """Sparse columns of mu: B_n(G) -> M_n(G) on the common symbol basis (also mu-)."""
    if n < 2:
        raise InvalidInputError(f"mu needs n >= 2, got {n}")
    columns = []
    for j, symbol in enumerate(enumerate_symbols(group, n)):
        c = mu_coefficient(symbol)
        columns.append({j: c} if c else {})
    return columns


def apply_sparse(columns: list[SparseColumn], coords: list[int] | tuple[int, ...], size: int) -> list[int]:
    """Image of a coordinate vector under the map whose j-th column is ``columns[j]``."""
    out = [0] * size
    for j, c in enumerate(coords):
        if c:
            for i, value in columns[j].items():
                out[i] += c * value
    return out


def seed_presentation(presentation: SymbolPresentation) -> None:
    """Make a presentation loaded from elsewhere (the disk cache) the in-process one."""
    key = hashkey(presentation.group, presentation.n, presentation.variant)
    with _presentation_lock:
        _presentation_cache[key] = presentation
